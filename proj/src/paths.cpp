// Copyright (c) 2026 The dlopt developers. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#include "dlopt/paths.hpp"

#include <sstream>

#include "dlopt/errors.hpp"

namespace dlopt {

namespace {

int term_child_count(const Term& t) {
  switch (t->tag) {
    case TermTag::Plus:
    case TermTag::Minus:
    case TermTag::Times:
      return 2;
    case TermTag::Neg:
    case TermTag::Power:
      return 1;
    case TermTag::Func:
      return t->has_arg ? 1 : 0;
    default:
      return 0;
  }
}

int formula_child_count(const Formula& f) {
  switch (f->tag) {
    case FormulaTag::Less:
    case FormulaTag::LessEq:
    case FormulaTag::Equal:
    case FormulaTag::GreaterEq:
    case FormulaTag::Greater:
      return 2;
    case FormulaTag::True:
    case FormulaTag::False:
      return 0;
    case FormulaTag::Not:
    case FormulaTag::Forall:
    case FormulaTag::Exists:
      return 1;
    case FormulaTag::And:
    case FormulaTag::Or:
    case FormulaTag::Implies:
    case FormulaTag::Equiv:
    case FormulaTag::Box:
    case FormulaTag::Diamond:
      return 2;
    case FormulaTag::Pred:
      return f->has_arg ? 1 : 0;
  }
  return 0;
}

int program_child_count(const Program& p) {
  switch (p->tag) {
    case ProgramTag::Assign:
    case ProgramTag::Test:
    case ProgramTag::Repeat:
      return 1;
    case ProgramTag::Choice:
    case ProgramTag::Seq:
    case ProgramTag::While:
      return 2;
    case ProgramTag::IfThenElse:
      return 3;
    case ProgramTag::ODE:
      return static_cast<int>(p->odes.size()) + 1;
    case ProgramTag::Const:
      return 0;
  }
  return 0;
}

Expr term_child(const Term& t, int i) {
  switch (t->tag) {
    case TermTag::Plus:
    case TermTag::Minus:
    case TermTag::Times:
      return i == 0 ? Expr(t->lhs) : Expr(t->rhs);
    case TermTag::Neg:
    case TermTag::Power:
    case TermTag::Func:
      return Expr(t->lhs);
    default:
      throw PathError("term node has no children");
  }
}

Expr formula_child(const Formula& f, int i) {
  switch (f->tag) {
    case FormulaTag::Less:
    case FormulaTag::LessEq:
    case FormulaTag::Equal:
    case FormulaTag::GreaterEq:
    case FormulaTag::Greater:
      return i == 0 ? Expr(f->t1) : Expr(f->t2);
    case FormulaTag::Not:
    case FormulaTag::Forall:
    case FormulaTag::Exists:
      return Expr(f->f1);
    case FormulaTag::And:
    case FormulaTag::Or:
    case FormulaTag::Implies:
    case FormulaTag::Equiv:
      return i == 0 ? Expr(f->f1) : Expr(f->f2);
    case FormulaTag::Box:
    case FormulaTag::Diamond:
      return i == 0 ? Expr(f->prog) : Expr(f->f1);
    case FormulaTag::Pred:
      return Expr(f->t1);
    default:
      throw PathError("formula node has no children");
  }
}

Expr program_child(const Program& p, int i) {
  switch (p->tag) {
    case ProgramTag::Assign:
      return Expr(p->term);
    case ProgramTag::Test:
      return Expr(p->fml);
    case ProgramTag::Choice:
    case ProgramTag::Seq:
      return i == 0 ? Expr(p->p1) : Expr(p->p2);
    case ProgramTag::Repeat:
      return Expr(p->p1);
    case ProgramTag::While:
      return i == 0 ? Expr(p->fml) : Expr(p->p1);
    case ProgramTag::IfThenElse:
      return i == 0 ? Expr(p->fml) : (i == 1 ? Expr(p->p1) : Expr(p->p2));
    case ProgramTag::ODE:
      if (i < static_cast<int>(p->odes.size())) return Expr(p->odes[i].rhs);
      return Expr(p->fml);
    default:
      throw PathError("program node has no children");
  }
}

template <typename T>
T expect_kind(const Expr& e, const char* what) {
  if (!std::holds_alternative<T>(e))
    throw PathError(std::string("replacement does not have the required kind: ") + what);
  return std::get<T>(e);
}

Expr term_with_child(const Term& t, int i, const Expr& c) {
  Term nc = expect_kind<Term>(c, "term");
  switch (t->tag) {
    case TermTag::Plus:
      return i == 0 ? mk_plus(nc, t->rhs) : mk_plus(t->lhs, nc);
    case TermTag::Minus:
      return i == 0 ? mk_minus(nc, t->rhs) : mk_minus(t->lhs, nc);
    case TermTag::Times:
      return i == 0 ? mk_times(nc, t->rhs) : mk_times(t->lhs, nc);
    case TermTag::Neg:
      return mk_neg(nc);
    case TermTag::Power:
      return mk_power(nc, t->exponent);
    case TermTag::Func:
      return mk_func(t->name, nc);
    default:
      throw PathError("term node has no children");
  }
}

Expr formula_with_child(const Formula& f, int i, const Expr& c) {
  switch (f->tag) {
    case FormulaTag::Less:
    case FormulaTag::LessEq:
    case FormulaTag::Equal:
    case FormulaTag::GreaterEq:
    case FormulaTag::Greater: {
      Term nc = expect_kind<Term>(c, "term");
      return i == 0 ? mk_cmp(f->tag, nc, f->t2) : mk_cmp(f->tag, f->t1, nc);
    }
    case FormulaTag::Not:
      return mk_not(expect_kind<Formula>(c, "formula"));
    case FormulaTag::Forall:
      return mk_forall(f->var, expect_kind<Formula>(c, "formula"));
    case FormulaTag::Exists:
      return mk_exists(f->var, expect_kind<Formula>(c, "formula"));
    case FormulaTag::And:
    case FormulaTag::Or:
    case FormulaTag::Implies:
    case FormulaTag::Equiv: {
      Formula nc = expect_kind<Formula>(c, "formula");
      Formula l = i == 0 ? nc : f->f1;
      Formula r = i == 0 ? f->f2 : nc;
      switch (f->tag) {
        case FormulaTag::And:
          return mk_and(l, r);
        case FormulaTag::Or:
          return mk_or(l, r);
        case FormulaTag::Implies:
          return mk_implies(l, r);
        default:
          return mk_equiv(l, r);
      }
    }
    case FormulaTag::Box:
    case FormulaTag::Diamond: {
      Program pr = i == 0 ? expect_kind<Program>(c, "program") : f->prog;
      Formula fm = i == 0 ? f->f1 : expect_kind<Formula>(c, "formula");
      return f->tag == FormulaTag::Box ? mk_box(pr, fm) : mk_diamond(pr, fm);
    }
    case FormulaTag::Pred:
      return mk_pred(f->name, expect_kind<Term>(c, "term"));
    default:
      throw PathError("formula node has no children");
  }
}

Expr program_with_child(const Program& p, int i, const Expr& c) {
  switch (p->tag) {
    case ProgramTag::Assign:
      return mk_assign(p->var, expect_kind<Term>(c, "term"));
    case ProgramTag::Test:
      return mk_test(expect_kind<Formula>(c, "formula"));
    case ProgramTag::Choice:
    case ProgramTag::Seq: {
      Program nc = expect_kind<Program>(c, "program");
      Program l = i == 0 ? nc : p->p1;
      Program r = i == 0 ? p->p2 : nc;
      return p->tag == ProgramTag::Choice ? mk_choice(l, r) : mk_seq(l, r);
    }
    case ProgramTag::Repeat:
      return mk_repeat(expect_kind<Program>(c, "program"));
    case ProgramTag::While:
      return i == 0 ? mk_while(expect_kind<Formula>(c, "formula"), p->p1)
                    : mk_while(p->fml, expect_kind<Program>(c, "program"));
    case ProgramTag::IfThenElse:
      if (i == 0) return mk_if(expect_kind<Formula>(c, "formula"), p->p1, p->p2);
      if (i == 1) return mk_if(p->fml, expect_kind<Program>(c, "program"), p->p2);
      return mk_if(p->fml, p->p1, expect_kind<Program>(c, "program"));
    case ProgramTag::ODE: {
      if (i < static_cast<int>(p->odes.size())) {
        auto odes = p->odes;
        odes[i].rhs = expect_kind<Term>(c, "term");
        return mk_ode(std::move(odes), p->fml);
      }
      return mk_ode(p->odes, expect_kind<Formula>(c, "formula"));
    }
    default:
      throw PathError("program node has no children");
  }
}

}  // namespace

int child_count(const Expr& e) {
  if (std::holds_alternative<Term>(e)) return term_child_count(std::get<Term>(e));
  if (std::holds_alternative<Formula>(e)) return formula_child_count(std::get<Formula>(e));
  return program_child_count(std::get<Program>(e));
}

Expr child_at(const Expr& e, int i) {
  if (i < 0 || i >= child_count(e))
    throw PathError("path index " + std::to_string(i) + " out of range");
  if (std::holds_alternative<Term>(e)) return term_child(std::get<Term>(e), i);
  if (std::holds_alternative<Formula>(e)) return formula_child(std::get<Formula>(e), i);
  return program_child(std::get<Program>(e), i);
}

Expr subtree_at(const Expr& root, const Path& path) {
  Expr cur = root;
  for (int step : path) cur = child_at(cur, step);
  return cur;
}

Expr replace_at(const Expr& root, const Path& path, const Expr& replacement) {
  if (path.empty()) {
    if (root.index() != replacement.index())
      throw PathError("replacement does not match the kind of the addressed subtree");
    return replacement;
  }
  int i = path.front();
  if (i < 0 || i >= child_count(root))
    throw PathError("path index " + std::to_string(i) + " out of range");
  Path rest(path.begin() + 1, path.end());
  Expr new_child = replace_at(child_at(root, i), rest, replacement);
  if (std::holds_alternative<Term>(root))
    return term_with_child(std::get<Term>(root), i, new_child);
  if (std::holds_alternative<Formula>(root))
    return formula_with_child(std::get<Formula>(root), i, new_child);
  return program_with_child(std::get<Program>(root), i, new_child);
}

std::string path_to_string(const Path& path) {
  if (path.empty()) return "e";
  std::ostringstream out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out << '.';
    out << path[i];
  }
  return out.str();
}

Path path_from_string(const std::string& text) {
  if (text == "e" || text.empty()) return {};
  Path path;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t dot = text.find('.', pos);
    std::string piece = text.substr(pos, dot == std::string::npos ? dot : dot - pos);
    try {
      path.push_back(std::stoi(piece));
    } catch (const std::exception&) {
      throw PathError("malformed path component '" + piece + "'");
    }
    if (dot == std::string::npos) break;
    pos = dot + 1;
  }
  return path;
}

namespace {

void find_occurrences_rec(const Expr& e, const Term& needle, Path& prefix,
                          std::vector<Path>& out) {
  if (std::holds_alternative<Term>(e) && structural_equal(std::get<Term>(e), needle)) {
    out.push_back(prefix);
    return;  // maximal occurrences; a term never strictly contains itself
  }
  int n = child_count(e);
  for (int i = 0; i < n; ++i) {
    prefix.push_back(i);
    find_occurrences_rec(child_at(e, i), needle, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Path> find_term_occurrences(const Expr& root, const Term& needle) {
  std::vector<Path> out;
  Path prefix;
  find_occurrences_rec(root, needle, prefix, out);
  return out;
}

}  // namespace dlopt
