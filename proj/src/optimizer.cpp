// Copyright (c) 2026 The dlopt developers. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#include "dlopt/optimizer.hpp"

#include <algorithm>
#include <functional>

#include "dlopt/errors.hpp"
#include "dlopt/printer.hpp"
#include "dlopt/semantics.hpp"
#include "dlopt/statics.hpp"

namespace dlopt {

namespace {

Formula replace_all(const Formula& f, const std::vector<Path>& sites, const Term& to) {
  Expr cur(f);
  for (const Path& p : sites) cur = replace_at(cur, p, Expr(to));
  return std::get<Formula>(cur);
}

// Adds sigma entries, skipping identity mappings (a symbol replaced by
// itself would trip the self-reference rule and changes nothing).
void add_program_unless_identity(UniformSubstitution& sigma, const std::string& name,
                                 const Program& repl) {
  if (repl->tag == ProgramTag::Const && repl->name == name) return;
  sigma.add_program(name, repl);
}

void add_predicate_unless_identity(UniformSubstitution& sigma, const std::string& name,
                                   const Formula& repl) {
  if (repl->tag == FormulaTag::Pred && !repl->has_arg && repl->name == name) return;
  sigma.add_predicate(name, 0, repl);
}

// ComposeB instance  [first;rest]post <-> [first][rest]post.
Certificate composeb_certificate(const Program& first, const Program& rest,
                                 const Formula& post) {
  UniformSubstitution sigma;
  add_program_unless_identity(sigma, "a", first);
  add_program_unless_identity(sigma, "b", rest);
  add_predicate_unless_identity(sigma, "P", post);
  return axiom_certificate(AxiomId::ComposeB, sigma);
}

// AssignB instance  [x:=e]replaced[.:=x] <-> replaced[.:=e]  where
// `dotted` is the postcondition with the abstracted positions as dots.
Certificate assignb_certificate(const Variable& x, const Term& e, const Formula& dotted) {
  UniformSubstitution sigma;
  sigma.add_function("f", 0, e);
  sigma.add_predicate("p", 1, dotted);
  std::vector<std::pair<Variable, Variable>> renamings;
  if (x.name != "x") renamings.emplace_back(Variable{"x"}, x);
  return axiom_certificate(AxiomId::AssignB, sigma, renamings);
}

OptResult unapplied(const Formula& f) {
  return OptResult{f, equiv_reflexivity(f), false};
}

const Formula& equiv_rhs(const Certificate& c) { return c->conclusion.formula->f2; }

}  // namespace

// ----------------------------------------------------------------------------
// Common subexpression elimination

OptResult cse(const Formula& f, const Term& subexpr, const Variable& fresh) {
  if (occurs_variable(fresh, f))
    throw NotApplicableError("fresh variable '" + fresh.name + "' occurs in the formula");
  if (contains_dot(subexpr) || !signature(subexpr).empty())
    throw NotApplicableError("subexpression must be placeholder-free");

  std::vector<Path> sites = find_term_occurrences(Expr(f), subexpr);
  if (sites.empty()) return unapplied(f);
  if (f->tag != FormulaTag::Box)
    throw NotApplicableError("cse expects a box-modality formula");

  Formula dotted = replace_all(f, sites, mk_dot());
  Formula with_fresh = replace_all(f, sites, mk_var(fresh));

  Certificate e_cert;  // [fresh:=subexpr]with_fresh <-> f
  try {
    e_cert = assignb_certificate(fresh, subexpr, dotted);
  } catch (const ClashError& err) {
    throw NotApplicableError(std::string("cannot pull out ") + pretty_print(subexpr) +
                             ": " + err.what());
  }

  // with_fresh is still a box; split it to wrap the introduced assignment.
  Program gamma = with_fresh->prog;
  Formula psi = with_fresh->f1;
  Program intro = mk_assign(fresh, subexpr);
  Certificate c_cert = composeb_certificate(intro, gamma, psi);
  // c_cert: [fresh:=subexpr; gamma]psi <-> [fresh:=subexpr][gamma]psi

  Formula output = mk_box(mk_seq(intro, gamma), psi);
  Certificate chain = equiv_trans(equiv_symm(e_cert), equiv_symm(c_cert));
  return OptResult{output, chain, true};
}

// ----------------------------------------------------------------------------
// Copy propagation

namespace {

// Variables written between the assignment and the read, conservatively:
// loop bodies enclosing either endpoint count in full, and so does every
// statement sequenced between them.
VarSet written_between(const Formula& f, const Path& assign_path, const Path& read_path);

VarSet writes_after_within(const Expr& node, const Path& path, std::size_t i) {
  if (i >= path.size()) return VarSet::none();
  VarSet w = writes_after_within(child_at(node, path[i]), path, i + 1);
  if (std::holds_alternative<Program>(node)) {
    const Program& p = std::get<Program>(node);
    switch (p->tag) {
      case ProgramTag::Seq:
        if (path[i] == 0) w = w.union_with(bound_vars(p->p2));
        break;
      case ProgramTag::Repeat:
      case ProgramTag::While:
        w = w.union_with(bound_vars(p->p1));
        break;
      default:
        break;
    }
  }
  return w;
}

VarSet writes_before_within(const Expr& node, const Path& path, std::size_t i) {
  if (i >= path.size()) return VarSet::none();
  VarSet w = writes_before_within(child_at(node, path[i]), path, i + 1);
  if (std::holds_alternative<Program>(node)) {
    const Program& p = std::get<Program>(node);
    switch (p->tag) {
      case ProgramTag::Seq:
        if (path[i] == 1) w = w.union_with(bound_vars(p->p1));
        break;
      case ProgramTag::Repeat:
      case ProgramTag::While:
        // Loop-carried: a read inside the guard or body also sees values from
        // earlier iterations.
        w = w.union_with(bound_vars(p->p1));
        break;
      case ProgramTag::ODE: {
        for (const auto& eq : p->odes) w.insert(eq.var);
        break;
      }
      default:
        break;
    }
  }
  return w;
}

VarSet loops_enclosing(const Formula& f, const Path& path) {
  VarSet w;
  Expr cur(f);
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (std::holds_alternative<Program>(cur)) {
      const Program& p = std::get<Program>(cur);
      if (p->tag == ProgramTag::Repeat || p->tag == ProgramTag::While)
        w = w.union_with(bound_vars(p->p1));
    }
    cur = child_at(cur, path[i]);
  }
  return w;
}

VarSet written_between(const Formula& f, const Path& assign_path, const Path& read_path) {
  // In-place reads (the assignment's own right-hand side) are "later" only
  // through a loop; the enclosing loop bodies carry all the writes.
  std::size_t common = 0;
  while (common < assign_path.size() && common < read_path.size() &&
         assign_path[common] == read_path[common])
    ++common;

  if (common == assign_path.size())  // read inside the assignment itself
    return loops_enclosing(f, assign_path);

  if (common == read_path.size())
    throw NotApplicableError("occurrence is not sequenced after the assignment");

  Expr lca = subtree_at(Expr(f), Path(assign_path.begin(), assign_path.begin() + common));
  bool sequenced = std::holds_alternative<Program>(lca) &&
                   std::get<Program>(lca)->tag == ProgramTag::Seq &&
                   assign_path[common] == 0 && read_path[common] == 1;
  if (!sequenced)
    throw NotApplicableError("occurrence is not sequenced after the assignment");

  VarSet w = loops_enclosing(f, Path(assign_path.begin(), assign_path.begin() + common));
  w = w.union_with(writes_after_within(child_at(lca, 0), assign_path, common + 1));
  w = w.union_with(writes_before_within(child_at(lca, 1), read_path, common + 1));
  return w;
}

}  // namespace

OptResult copy_propagate(const Formula& f, const Path& assign_path,
                         const std::vector<Path>& occurrence_paths) {
  Expr assign_expr = subtree_at(Expr(f), assign_path);
  if (!std::holds_alternative<Program>(assign_expr) ||
      std::get<Program>(assign_expr)->tag != ProgramTag::Assign)
    throw PathError("assign site does not address an assignment");
  const Program assign = std::get<Program>(assign_expr);
  const Variable x = assign->var;
  const Term e = assign->term;

  if (occurrence_paths.empty()) return unapplied(f);

  for (const Path& site : occurrence_paths) {
    Expr sub = subtree_at(Expr(f), site);
    if (!std::holds_alternative<Term>(sub) ||
        std::get<Term>(sub)->tag != TermTag::Var ||
        std::get<Term>(sub)->var != x)
      throw PathError("occurrence site does not address a read of " + x.name);
    VarSet between = written_between(f, assign_path, site);
    VarSet needed = substitution_free_vars(e);
    needed.insert(x);
    VarSet captured = between.intersect(needed);
    if (!captured.empty())
      throw NotApplicableError("cannot propagate " + pretty_print(e) + " for " + x.name +
                               ": " + captured.vars.begin()->name +
                               " is rewritten between the assignment and the occurrence");
  }

  // Certified shape: the assignment heads the boxed program.
  if (f->tag != FormulaTag::Box || f->prog->tag != ProgramTag::Seq ||
      f->prog->p1.get() != assign.get())
    throw NotApplicableError(
        "certified propagation requires the assignment to head the boxed program");

  const Program gamma = f->prog->p2;
  const Formula psi = f->f1;
  const Formula inner = mk_box(gamma, psi);

  // Occurrence paths relative to f = [x:=e; gamma]psi map onto
  // inner = [gamma]psi: [0,1,...] -> [0,...] and [1,...] -> [1,...].
  auto to_inner = [](const Path& p) -> std::optional<Path> {
    if (p.size() >= 2 && p[0] == 0 && p[1] == 1) {
      Path q{0};
      q.insert(q.end(), p.begin() + 2, p.end());
      return q;
    }
    if (!p.empty() && p[0] == 1) return p;
    return std::nullopt;
  };

  std::vector<Path> selected;
  for (const Path& p : occurrence_paths) {
    auto q = to_inner(p);
    if (!q)
      throw NotApplicableError("occurrence does not follow the heading assignment");
    selected.push_back(*q);
  }

  std::vector<Path> all_reads;
  for (const Path& p : variable_read_paths(inner, x)) all_reads.push_back(p);

  auto is_selected = [&](const Path& p) {
    return std::find(selected.begin(), selected.end(), p) != selected.end();
  };

  // p1 abstracts every read; p2 keeps the unselected reads as dots and
  // inlines e at the selected ones.
  Formula all_dotted = replace_all(inner, all_reads, mk_dot());
  Expr partial(inner);
  for (const Path& p : all_reads)
    partial = replace_at(partial, p, Expr(is_selected(p) ? e : mk_dot()));
  Formula selected_inlined = std::get<Formula>(partial);

  Certificate e1, e2;
  try {
    e1 = assignb_certificate(x, e, all_dotted);        // [x:=e]inner <-> inner[e]
    e2 = assignb_certificate(x, e, selected_inlined);  // [x:=e]inner' <-> inner[e]
  } catch (const ClashError& err) {
    throw NotApplicableError(std::string("cannot propagate: ") + err.what());
  }

  Certificate mid = equiv_trans(e1, equiv_symm(e2));
  // mid: [x:=e]inner <-> [x:=e]inner-with-selected-reads-inlined

  const Formula nested_new = equiv_rhs(mid);
  const Program gamma_new = nested_new->f1->prog;
  const Formula psi_new = nested_new->f1->f1;

  Certificate c1 = composeb_certificate(assign, gamma, psi);          // f <-> [x:=e]inner
  Certificate c2 = composeb_certificate(assign, gamma_new, psi_new);  // out <-> nested_new

  Certificate chain = equiv_trans(equiv_trans(c1, mid), equiv_symm(c2));
  Formula output = mk_box(mk_seq(assign, gamma_new), psi_new);
  return OptResult{output, chain, true};
}

// ----------------------------------------------------------------------------
// Constant folding

namespace {

Term folded_constant(const Rational& value) {
  if (value >= 0) return mk_lit(value);
  return mk_neg(mk_lit(-value));
}

void collect_foldable(const Expr& e, Path& prefix, std::vector<Path>& out) {
  if (std::holds_alternative<Term>(e)) {
    const Term& t = std::get<Term>(e);
    if (!contains_dot(t) && signature(t).empty() && free_vars(t).empty()) {
      Polynomial p = ring_normalize(t);
      Term target = folded_constant(p.constant_value());
      if (!structural_equal(t, target)) out.push_back(prefix);
      return;  // maximal site; nothing left to fold below
    }
  }
  int n = child_count(e);
  for (int i = 0; i < n; ++i) {
    prefix.push_back(i);
    collect_foldable(child_at(e, i), prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Path> foldable_paths(const Formula& f) {
  std::vector<Path> out;
  Path prefix;
  collect_foldable(Expr(f), prefix, out);
  return out;
}

OptResult const_fold(const Formula& f) {
  std::vector<Path> sites = foldable_paths(f);
  if (sites.empty()) return unapplied(f);

  Formula cur = f;
  Certificate chain;
  for (const Path& site : sites) {
    Term s = std::get<Term>(subtree_at(Expr(cur), site));
    Term target = folded_constant(ring_normalize(s).constant_value());
    RuleParams poly;
    poly.equation = mk_equal(s, target);
    Certificate eq = apply_rule(RuleId::PolyIdentity, poly, {});
    RuleParams cq;
    cq.context_formula = cur;
    cq.path = site;
    Certificate step = apply_rule(RuleId::CQ, cq, {eq});  // cur <-> cur[target]
    cur = equiv_rhs(step);
    chain = chain ? equiv_trans(chain, step) : step;
  }
  return OptResult{cur, chain, true};
}

// ----------------------------------------------------------------------------
// Term commutation

OptResult commute_term(const Formula& f, const Path& site, const Term& to) {
  Expr sub = subtree_at(Expr(f), site);
  if (!std::holds_alternative<Term>(sub))
    throw PathError("site does not address a term");
  Term s = std::get<Term>(sub);
  if (structural_equal(s, to)) return unapplied(f);

  RuleParams poly;
  poly.equation = mk_equal(s, to);
  Certificate eq = apply_rule(RuleId::PolyIdentity, poly, {});  // OracleError if unequal
  RuleParams cq;
  cq.context_formula = f;
  cq.path = site;
  Certificate step = apply_rule(RuleId::CQ, cq, {eq});
  return OptResult{equiv_rhs(step), step, true};
}

// ----------------------------------------------------------------------------
// Loop unwinding

OptResult unwind_loop(const Formula& f, const Path& site) {
  Expr sub = subtree_at(Expr(f), site);
  if (!std::holds_alternative<Program>(sub) ||
      std::get<Program>(sub)->tag != ProgramTag::While)
    throw PathError("site does not address a while loop");
  const Program loop = std::get<Program>(sub);

  UniformSubstitution sigma;
  add_predicate_unless_identity(sigma, "Q", loop->fml);
  add_program_unless_identity(sigma, "a", loop->p1);
  Certificate unfold = axiom_certificate(AxiomId::LoopUnwindEq, sigma);

  RuleParams cp;
  cp.context_formula = f;
  cp.path = site;
  Certificate step = apply_rule(RuleId::CP, cp, {unfold});
  return OptResult{equiv_rhs(step), step, true};
}

// ----------------------------------------------------------------------------
// Site discovery

namespace {

void collect_paths(const Expr& e, Path& prefix, std::vector<Path>& out,
                   const std::function<bool(const Expr&)>& want) {
  if (want(e)) {
    out.push_back(prefix);
    if (std::holds_alternative<Term>(e)) return;
  }
  int n = child_count(e);
  for (int i = 0; i < n; ++i) {
    prefix.push_back(i);
    collect_paths(child_at(e, i), prefix, out, want);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Path> variable_read_paths(const Formula& f, const Variable& x) {
  std::vector<Path> out;
  Path prefix;
  collect_paths(Expr(f), prefix, out, [&](const Expr& e) {
    return std::holds_alternative<Term>(e) &&
           std::get<Term>(e)->tag == TermTag::Var && std::get<Term>(e)->var == x;
  });
  return out;
}

std::vector<Path> assign_paths(const Formula& f) {
  std::vector<Path> out;
  Path prefix;
  collect_paths(Expr(f), prefix, out, [](const Expr& e) {
    return std::holds_alternative<Program>(e) &&
           std::get<Program>(e)->tag == ProgramTag::Assign;
  });
  return out;
}

std::vector<Path> while_paths(const Formula& f) {
  std::vector<Path> out;
  Path prefix;
  collect_paths(Expr(f), prefix, out, [](const Expr& e) {
    return std::holds_alternative<Program>(e) &&
           std::get<Program>(e)->tag == ProgramTag::While;
  });
  return out;
}

// ----------------------------------------------------------------------------
// Quiz-style axiom use

namespace {

// Replaces free read occurrences of v in f by dots (stops under rebinding).
Formula abstract_variable(const Formula& f, const Variable& v);

Term abstract_variable(const Term& t, const Variable& v) {
  switch (t->tag) {
    case TermTag::Var:
      return t->var == v ? mk_dot() : t;
    case TermTag::Lit:
    case TermTag::Dot:
      return t;
    case TermTag::Plus:
      return mk_plus(abstract_variable(t->lhs, v), abstract_variable(t->rhs, v));
    case TermTag::Minus:
      return mk_minus(abstract_variable(t->lhs, v), abstract_variable(t->rhs, v));
    case TermTag::Times:
      return mk_times(abstract_variable(t->lhs, v), abstract_variable(t->rhs, v));
    case TermTag::Neg:
      return mk_neg(abstract_variable(t->lhs, v));
    case TermTag::Power:
      return mk_power(abstract_variable(t->lhs, v), t->exponent);
    case TermTag::Func:
      return t->has_arg ? mk_func(t->name, abstract_variable(t->lhs, v)) : t;
  }
  return t;
}

Program abstract_variable(const Program& p, const Variable& v, bool& rebound) {
  switch (p->tag) {
    case ProgramTag::Assign: {
      Term rhs = abstract_variable(p->term, v);
      if (p->var == v) rebound = true;
      return mk_assign(p->var, rhs);
    }
    case ProgramTag::Test:
      return mk_test(abstract_variable(p->fml, v));
    case ProgramTag::Choice: {
      bool r1 = false, r2 = false;
      Program l = abstract_variable(p->p1, v, r1);
      Program r = abstract_variable(p->p2, v, r2);
      rebound |= r1 || r2;
      return mk_choice(l, r);
    }
    case ProgramTag::Seq: {
      bool r1 = false;
      Program l = abstract_variable(p->p1, v, r1);
      if (r1) {
        rebound = true;
        return mk_seq(l, p->p2);  // later occurrences read the new binding
      }
      bool r2 = false;
      Program r = abstract_variable(p->p2, v, r2);
      rebound |= r2;
      return mk_seq(l, r);
    }
    case ProgramTag::Repeat: {
      // A loop that rebinds v makes every occurrence inside ambiguous
      // between iterations; leave the body alone in that case.
      if (bound_vars(p->p1).contains(v)) {
        rebound = true;
        return p;
      }
      bool r = false;
      return mk_repeat(abstract_variable(p->p1, v, r));
    }
    case ProgramTag::While: {
      if (bound_vars(p->p1).contains(v)) {
        rebound = true;
        return p;
      }
      bool r = false;
      Program body = abstract_variable(p->p1, v, r);
      return mk_while(abstract_variable(p->fml, v), body);
    }
    case ProgramTag::IfThenElse: {
      bool r1 = false, r2 = false;
      Formula g = abstract_variable(p->fml, v);
      Program t = abstract_variable(p->p1, v, r1);
      Program e = abstract_variable(p->p2, v, r2);
      rebound |= r1 || r2;
      return mk_if(g, t, e);
    }
    case ProgramTag::ODE: {
      for (const auto& eq : p->odes)
        if (eq.var == v) {
          rebound = true;
          return p;
        }
      std::vector<OdeEquation> odes;
      for (const auto& eq : p->odes)
        odes.push_back(OdeEquation{eq.var, abstract_variable(eq.rhs, v)});
      return mk_ode(std::move(odes), abstract_variable(p->fml, v));
    }
    case ProgramTag::Const:
      rebound = true;  // may write v
      return p;
  }
  return p;
}

Formula abstract_variable(const Formula& f, const Variable& v) {
  switch (f->tag) {
    case FormulaTag::Less:
    case FormulaTag::LessEq:
    case FormulaTag::Equal:
    case FormulaTag::GreaterEq:
    case FormulaTag::Greater:
      return mk_cmp(f->tag, abstract_variable(f->t1, v), abstract_variable(f->t2, v));
    case FormulaTag::True:
    case FormulaTag::False:
      return f;
    case FormulaTag::Not:
      return mk_not(abstract_variable(f->f1, v));
    case FormulaTag::And:
      return mk_and(abstract_variable(f->f1, v), abstract_variable(f->f2, v));
    case FormulaTag::Or:
      return mk_or(abstract_variable(f->f1, v), abstract_variable(f->f2, v));
    case FormulaTag::Implies:
      return mk_implies(abstract_variable(f->f1, v), abstract_variable(f->f2, v));
    case FormulaTag::Equiv:
      return mk_equiv(abstract_variable(f->f1, v), abstract_variable(f->f2, v));
    case FormulaTag::Forall:
    case FormulaTag::Exists: {
      if (f->var == v) return f;  // shadowed
      Formula body = abstract_variable(f->f1, v);
      return f->tag == FormulaTag::Forall ? mk_forall(f->var, body)
                                          : mk_exists(f->var, body);
    }
    case FormulaTag::Box:
    case FormulaTag::Diamond: {
      bool rebound = false;
      Program prog = abstract_variable(f->prog, v, rebound);
      Formula post = rebound ? f->f1 : abstract_variable(f->f1, v);
      return f->tag == FormulaTag::Box ? mk_box(prog, post) : mk_diamond(prog, post);
    }
    case FormulaTag::Pred:
      return f->has_arg ? mk_pred(f->name, abstract_variable(f->t1, v)) : f;
  }
  return f;
}

// Derives the instantiation for one top-level left-to-right axiom use.
std::optional<Certificate> match_axiom_top(AxiomId id, const Formula& f) {
  switch (id) {
    case AxiomId::ComposeB: {
      if (f->tag != FormulaTag::Box || f->prog->tag != ProgramTag::Seq) return std::nullopt;
      UniformSubstitution sigma;
      add_program_unless_identity(sigma, "a", f->prog->p1);
      add_program_unless_identity(sigma, "b", f->prog->p2);
      add_predicate_unless_identity(sigma, "P", f->f1);
      return axiom_certificate(AxiomId::ComposeB, sigma);
    }
    case AxiomId::BAnd: {
      if (f->tag != FormulaTag::Box || f->f1->tag != FormulaTag::And) return std::nullopt;
      UniformSubstitution sigma;
      add_program_unless_identity(sigma, "a", f->prog);
      add_predicate_unless_identity(sigma, "P", f->f1->f1);
      add_predicate_unless_identity(sigma, "Q", f->f1->f2);
      return axiom_certificate(AxiomId::BAnd, sigma);
    }
    case AxiomId::AssignB: {
      if (f->tag != FormulaTag::Box || f->prog->tag != ProgramTag::Assign)
        return std::nullopt;
      return assignb_certificate(f->prog->var, f->prog->term,
                                 abstract_variable(f->f1, f->prog->var));
    }
    case AxiomId::ChoiceB: {
      if (f->tag != FormulaTag::Box || f->prog->tag != ProgramTag::Choice)
        return std::nullopt;
      UniformSubstitution sigma;
      add_program_unless_identity(sigma, "a", f->prog->p1);
      add_program_unless_identity(sigma, "b", f->prog->p2);
      add_predicate_unless_identity(sigma, "P", f->f1);
      return axiom_certificate(AxiomId::ChoiceB, sigma);
    }
    case AxiomId::TestB: {
      if (f->tag != FormulaTag::Box || f->prog->tag != ProgramTag::Test)
        return std::nullopt;
      UniformSubstitution sigma;
      add_predicate_unless_identity(sigma, "Q", f->prog->fml);
      add_predicate_unless_identity(sigma, "P", f->f1);
      return axiom_certificate(AxiomId::TestB, sigma);
    }
    case AxiomId::LoopUnwindEq:
      return std::nullopt;  // a program equivalence, not a formula key
  }
  return std::nullopt;
}

}  // namespace

std::optional<Formula> axiom_use_once(AxiomId id, const Formula& f, Certificate* cert_out) {
  // Match at the formula's top level; for an implication, also at the top
  // level of its consequent (the goal position in sequent-style use).
  Path position;
  std::optional<Certificate> instance = match_axiom_top(id, f);
  if (!instance && f->tag == FormulaTag::Implies) {
    instance = match_axiom_top(id, f->f2);
    position = {1};
  }
  if (!instance) return std::nullopt;

  // Rewrite inside the right-hand copy of Valid(f <-> f).
  Certificate refl = equiv_reflexivity(f);
  Path rewrite_path{1};
  rewrite_path.insert(rewrite_path.end(), position.begin(), position.end());
  Certificate rewritten = rewrite_with(*instance, refl, rewrite_path);
  if (cert_out) *cert_out = rewritten;
  return equiv_rhs(rewritten);
}

}  // namespace dlopt
