// Copyright (c) 2026 The dlopt developers. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#include "dlopt/usubst.hpp"

#include <map>
#include <sstream>
#include <utility>

#include "dlopt/parser.hpp"
#include "dlopt/printer.hpp"
#include "lexer.hpp"
#include "parser_impl.hpp"

namespace dlopt {

// ----------------------------------------------------------------------------
// UniformSubstitution container

void UniformSubstitution::check_new_name(const std::string& name) const {
  if (maps_name(name)) throw DomainError("symbol '" + name + "' mapped twice");
}

void UniformSubstitution::add_function(std::string name, int arity, Term replacement) {
  check_new_name(name);
  if (arity == 0 && contains_dot(replacement))
    throw DomainError("replacement for nullary '" + name + "' must be dot-free");
  Entry e;
  e.kind = SymbolKind::Function;
  e.name = std::move(name);
  e.arity = arity;
  e.term = std::move(replacement);
  entries_.push_back(std::move(e));
}

void UniformSubstitution::add_predicate(std::string name, int arity, Formula replacement) {
  check_new_name(name);
  if (arity == 0 && contains_dot(replacement))
    throw DomainError("replacement for nullary '" + name + "' must be dot-free");
  Entry e;
  e.kind = SymbolKind::Predicate;
  e.name = std::move(name);
  e.arity = arity;
  e.formula = std::move(replacement);
  entries_.push_back(std::move(e));
}

void UniformSubstitution::add_program(std::string name, Program replacement) {
  check_new_name(name);
  if (contains_dot(replacement))
    throw DomainError("replacement for program constant '" + name + "' must be dot-free");
  Entry e;
  e.kind = SymbolKind::ProgramConst;
  e.name = std::move(name);
  e.program = std::move(replacement);
  entries_.push_back(std::move(e));
}

const UniformSubstitution::Entry* UniformSubstitution::find(SymbolKind kind,
                                                            const std::string& name,
                                                            int arity) const {
  for (const Entry& e : entries_)
    if (e.kind == kind && e.name == name && e.arity == arity) return &e;
  return nullptr;
}

bool UniformSubstitution::maps_name(const std::string& name) const {
  for (const Entry& e : entries_)
    if (e.name == name) return true;
  return false;
}

void UniformSubstitution::validate_no_self_reference() const {
  for (const Entry& e : entries_) {
    std::set<SymbolDescr> sig;
    switch (e.kind) {
      case SymbolKind::Function: sig = signature(e.term); break;
      case SymbolKind::Predicate: sig = signature(e.formula); break;
      case SymbolKind::ProgramConst: sig = signature(e.program); break;
    }
    for (const SymbolDescr& s : sig)
      if (maps_name(s.name))
        throw DomainError("replacement for '" + e.name + "' mentions mapped symbol '" +
                          s.name + "'");
  }
}

// ----------------------------------------------------------------------------
// Taboo sets: bound variables accumulated along the current branch, each with
// a description of the binder that introduced it (for clash messages).

namespace {

struct Taboo {
  bool all = false;
  std::string all_why;
  std::map<Variable, std::string> vars;

  void add(const Variable& v, const std::string& why) {
    if (!all) vars.emplace(v, why);
  }
  void add_set(const VarSet& vs, const std::string& why) {
    if (all) return;
    if (vs.all) {
      all = true;
      all_why = why;
      vars.clear();
      return;
    }
    for (const Variable& v : vs.vars) vars.emplace(v, why);
  }

  // Throws ClashError if any free variable of `fv` is taboo.
  void check(const VarSet& fv, const std::string& symbol) const {
    if (fv.empty()) return;
    if (all) {
      Variable witness = fv.is_finite() ? *fv.vars.begin() : Variable{"(any)"};
      throw ClashError(symbol, witness.name, all_why);
    }
    if (!fv.is_finite()) {
      if (!vars.empty())
        throw ClashError(symbol, vars.begin()->first.name,
                         vars.begin()->second + " (replacement may read anything)");
      return;
    }
    for (const Variable& v : fv.vars) {
      auto it = vars.find(v);
      if (it != vars.end()) throw ClashError(symbol, v.name, it->second);
    }
  }
};

std::string describe_assign(const Variable& v) { return "assignment to " + v.name; }

// ----------------------------------------------------------------------------
// Dot plugging: replaces every DotTerm in a replacement by the (already
// substituted) argument, checking that no free variable of the argument is
// captured by a binder inside the replacement.

class DotPlugger {
 public:
  DotPlugger(Term argument, std::string symbol, bool checked)
      : arg_(std::move(argument)),
        arg_fv_(substitution_free_vars(arg_)),
        symbol_(std::move(symbol)),
        checked_(checked) {}

  Term plug(const Term& t, const Taboo& taboo) {
    switch (t->tag) {
      case TermTag::Dot:
        if (checked_) taboo.check(arg_fv_, symbol_);
        return arg_;
      case TermTag::Var:
      case TermTag::Lit:
        return t;
      case TermTag::Plus:
        return mk_plus(plug(t->lhs, taboo), plug(t->rhs, taboo));
      case TermTag::Minus:
        return mk_minus(plug(t->lhs, taboo), plug(t->rhs, taboo));
      case TermTag::Times:
        return mk_times(plug(t->lhs, taboo), plug(t->rhs, taboo));
      case TermTag::Neg:
        return mk_neg(plug(t->lhs, taboo));
      case TermTag::Power:
        return mk_power(plug(t->lhs, taboo), t->exponent);
      case TermTag::Func:
        return t->has_arg ? mk_func(t->name, plug(t->lhs, taboo)) : t;
    }
    return t;
  }

  Formula plug(const Formula& f, const Taboo& taboo) {
    switch (f->tag) {
      case FormulaTag::Less:
      case FormulaTag::LessEq:
      case FormulaTag::Equal:
      case FormulaTag::GreaterEq:
      case FormulaTag::Greater:
        return mk_cmp(f->tag, plug(f->t1, taboo), plug(f->t2, taboo));
      case FormulaTag::True:
      case FormulaTag::False:
        return f;
      case FormulaTag::Not:
        return mk_not(plug(f->f1, taboo));
      case FormulaTag::And:
        return mk_and(plug(f->f1, taboo), plug(f->f2, taboo));
      case FormulaTag::Or:
        return mk_or(plug(f->f1, taboo), plug(f->f2, taboo));
      case FormulaTag::Implies:
        return mk_implies(plug(f->f1, taboo), plug(f->f2, taboo));
      case FormulaTag::Equiv:
        return mk_equiv(plug(f->f1, taboo), plug(f->f2, taboo));
      case FormulaTag::Forall:
      case FormulaTag::Exists: {
        Taboo inner = taboo;
        inner.add(f->var, "quantifier binding " + f->var.name);
        Formula body = plug(f->f1, inner);
        return f->tag == FormulaTag::Forall ? mk_forall(f->var, body)
                                            : mk_exists(f->var, body);
      }
      case FormulaTag::Box:
      case FormulaTag::Diamond: {
        auto [prog, after] = plug_program(f->prog, taboo);
        Formula post = plug(f->f1, after);
        return f->tag == FormulaTag::Box ? mk_box(prog, post) : mk_diamond(prog, post);
      }
      case FormulaTag::Pred:
        return f->has_arg ? mk_pred(f->name, plug(f->t1, taboo)) : f;
    }
    return f;
  }

  std::pair<Program, Taboo> plug_program(const Program& p, const Taboo& taboo) {
    switch (p->tag) {
      case ProgramTag::Assign: {
        Term rhs = plug(p->term, taboo);
        Taboo after = taboo;
        after.add(p->var, describe_assign(p->var));
        return {mk_assign(p->var, rhs), after};
      }
      case ProgramTag::Test:
        return {mk_test(plug(p->fml, taboo)), taboo};
      case ProgramTag::Choice: {
        auto [l, la] = plug_program(p->p1, taboo);
        auto [r, ra] = plug_program(p->p2, taboo);
        Taboo after = la;
        for (const auto& [v, why] : ra.vars) after.vars.emplace(v, why);
        if (ra.all) after.add_set(VarSet::all_vars(), ra.all_why);
        return {mk_choice(l, r), after};
      }
      case ProgramTag::Seq: {
        auto [l, la] = plug_program(p->p1, taboo);
        auto [r, ra] = plug_program(p->p2, la);
        return {mk_seq(l, r), ra};
      }
      case ProgramTag::Repeat: {
        Taboo inner = taboo;
        inner.add_set(bound_vars(p->p1), "loop body");
        auto [body, after] = plug_program(p->p1, inner);
        return {mk_repeat(body), after};
      }
      case ProgramTag::While: {
        Taboo inner = taboo;
        inner.add_set(bound_vars(p->p1), "loop body");
        Formula guard = plug(p->fml, inner);
        auto [body, after] = plug_program(p->p1, inner);
        return {mk_while(guard, body), after};
      }
      case ProgramTag::IfThenElse: {
        Formula guard = plug(p->fml, taboo);
        auto [t, ta] = plug_program(p->p1, taboo);
        auto [e, ea] = plug_program(p->p2, taboo);
        Taboo after = ta;
        for (const auto& [v, why] : ea.vars) after.vars.emplace(v, why);
        if (ea.all) after.add_set(VarSet::all_vars(), ea.all_why);
        return {mk_if(guard, t, e), after};
      }
      case ProgramTag::ODE: {
        Taboo inner = taboo;
        for (const auto& eq : p->odes) inner.add(eq.var, "ODE binding " + eq.var.name);
        std::vector<OdeEquation> odes;
        for (const auto& eq : p->odes)
          odes.push_back(OdeEquation{eq.var, plug(eq.rhs, inner)});
        Formula dom = plug(p->fml, inner);
        return {mk_ode(std::move(odes), dom), inner};
      }
      case ProgramTag::Const: {
        Taboo after = taboo;
        after.add_set(VarSet::all_vars(), "program constant " + p->name);
        return {p, after};
      }
    }
    return {p, taboo};
  }

 private:
  Term arg_;
  VarSet arg_fv_;
  std::string symbol_;
  bool checked_;
};

// ----------------------------------------------------------------------------
// The substitution pass itself.

class Applier {
 public:
  Applier(const UniformSubstitution& sigma, bool checked)
      : sigma_(sigma), checked_(checked) {}

  Term apply(const Term& t, const Taboo& taboo) {
    switch (t->tag) {
      case TermTag::Var:
      case TermTag::Lit:
      case TermTag::Dot:
        return t;
      case TermTag::Plus:
        return mk_plus(apply(t->lhs, taboo), apply(t->rhs, taboo));
      case TermTag::Minus:
        return mk_minus(apply(t->lhs, taboo), apply(t->rhs, taboo));
      case TermTag::Times:
        return mk_times(apply(t->lhs, taboo), apply(t->rhs, taboo));
      case TermTag::Neg:
        return mk_neg(apply(t->lhs, taboo));
      case TermTag::Power:
        return mk_power(apply(t->lhs, taboo), t->exponent);
      case TermTag::Func: {
        const auto* e =
            sigma_.find(SymbolKind::Function, t->name, t->has_arg ? 1 : 0);
        if (!e) return t->has_arg ? mk_func(t->name, apply(t->lhs, taboo)) : t;
        if (checked_)
          taboo.check(substitution_free_vars(e->term), t->name);
        if (!t->has_arg) return e->term;
        Term arg = apply(t->lhs, taboo);
        DotPlugger plugger(arg, t->name, checked_);
        return plugger.plug(e->term, Taboo{});
      }
    }
    return t;
  }

  Formula apply(const Formula& f, const Taboo& taboo) {
    switch (f->tag) {
      case FormulaTag::Less:
      case FormulaTag::LessEq:
      case FormulaTag::Equal:
      case FormulaTag::GreaterEq:
      case FormulaTag::Greater:
        return mk_cmp(f->tag, apply(f->t1, taboo), apply(f->t2, taboo));
      case FormulaTag::True:
      case FormulaTag::False:
        return f;
      case FormulaTag::Not:
        return mk_not(apply(f->f1, taboo));
      case FormulaTag::And:
        return mk_and(apply(f->f1, taboo), apply(f->f2, taboo));
      case FormulaTag::Or:
        return mk_or(apply(f->f1, taboo), apply(f->f2, taboo));
      case FormulaTag::Implies:
        return mk_implies(apply(f->f1, taboo), apply(f->f2, taboo));
      case FormulaTag::Equiv:
        return mk_equiv(apply(f->f1, taboo), apply(f->f2, taboo));
      case FormulaTag::Forall:
      case FormulaTag::Exists: {
        Taboo inner = taboo;
        inner.add(f->var, "quantifier binding " + f->var.name);
        Formula body = apply(f->f1, inner);
        return f->tag == FormulaTag::Forall ? mk_forall(f->var, body)
                                            : mk_exists(f->var, body);
      }
      case FormulaTag::Box:
      case FormulaTag::Diamond: {
        auto [prog, after] = apply_program(f->prog, taboo);
        Formula post = apply(f->f1, after);
        return f->tag == FormulaTag::Box ? mk_box(prog, post) : mk_diamond(prog, post);
      }
      case FormulaTag::Pred: {
        const auto* e =
            sigma_.find(SymbolKind::Predicate, f->name, f->has_arg ? 1 : 0);
        if (!e) return f->has_arg ? mk_pred(f->name, apply(f->t1, taboo)) : f;
        if (!f->has_arg) return e->formula;  // postcondition placeholder
        if (checked_)
          taboo.check(substitution_free_vars(e->formula), f->name);
        Term arg = apply(f->t1, taboo);
        DotPlugger plugger(arg, f->name, checked_);
        return plugger.plug(e->formula, Taboo{});
      }
    }
    return f;
  }

  std::pair<Program, Taboo> apply_program(const Program& p, const Taboo& taboo) {
    switch (p->tag) {
      case ProgramTag::Assign: {
        Term rhs = apply(p->term, taboo);
        Taboo after = taboo;
        after.add(p->var, describe_assign(p->var));
        return {mk_assign(p->var, rhs), after};
      }
      case ProgramTag::Test:
        return {mk_test(apply(p->fml, taboo)), taboo};
      case ProgramTag::Choice: {
        auto [l, la] = apply_program(p->p1, taboo);
        auto [r, ra] = apply_program(p->p2, taboo);
        Taboo after = la;
        for (const auto& [v, why] : ra.vars) after.vars.emplace(v, why);
        if (ra.all) after.add_set(VarSet::all_vars(), ra.all_why);
        return {mk_choice(l, r), after};
      }
      case ProgramTag::Seq: {
        auto [l, la] = apply_program(p->p1, taboo);
        auto [r, ra] = apply_program(p->p2, la);
        return {mk_seq(l, r), ra};
      }
      case ProgramTag::Repeat: {
        // The loop body reads what earlier iterations wrote, so the body is
        // substituted under the taboo of its own substituted bound variables.
        // A trial pass determines those; the taboo only grows, so a clash in
        // the trial pass implies one in the final pass.
        auto trial = apply_program(p->p1, taboo);
        Taboo inner = taboo;
        inner.add_set(bound_vars(trial.first), "loop body");
        auto [body, after] = apply_program(p->p1, inner);
        return {mk_repeat(body), after};
      }
      case ProgramTag::While: {
        auto trial = apply_program(p->p1, taboo);
        Taboo inner = taboo;
        inner.add_set(bound_vars(trial.first), "loop body");
        Formula guard = apply(p->fml, inner);
        auto [body, after] = apply_program(p->p1, inner);
        return {mk_while(guard, body), after};
      }
      case ProgramTag::IfThenElse: {
        Formula guard = apply(p->fml, taboo);
        auto [t, ta] = apply_program(p->p1, taboo);
        auto [e, ea] = apply_program(p->p2, taboo);
        Taboo after = ta;
        for (const auto& [v, why] : ea.vars) after.vars.emplace(v, why);
        if (ea.all) after.add_set(VarSet::all_vars(), ea.all_why);
        return {mk_if(guard, t, e), after};
      }
      case ProgramTag::ODE: {
        Taboo inner = taboo;
        for (const auto& eq : p->odes) inner.add(eq.var, "ODE binding " + eq.var.name);
        std::vector<OdeEquation> odes;
        for (const auto& eq : p->odes)
          odes.push_back(OdeEquation{eq.var, apply(eq.rhs, inner)});
        Formula dom = apply(p->fml, inner);
        return {mk_ode(std::move(odes), dom), inner};
      }
      case ProgramTag::Const: {
        const auto* e = sigma_.find(SymbolKind::ProgramConst, p->name, 0);
        Taboo after = taboo;
        if (!e) {
          after.add_set(VarSet::all_vars(), "program constant " + p->name);
          return {p, after};
        }
        after.add_set(bound_vars(e->program), "replacement of program constant " + p->name);
        return {e->program, after};
      }
    }
    return {p, taboo};
  }

 private:
  const UniformSubstitution& sigma_;
  bool checked_;
};

}  // namespace

Term apply_usubst(const UniformSubstitution& sigma, const Term& t) {
  sigma.validate_no_self_reference();
  Applier a(sigma, true);
  return a.apply(t, Taboo{});
}

Formula apply_usubst(const UniformSubstitution& sigma, const Formula& f) {
  sigma.validate_no_self_reference();
  Applier a(sigma, true);
  return a.apply(f, Taboo{});
}

Program apply_usubst(const UniformSubstitution& sigma, const Program& p) {
  sigma.validate_no_self_reference();
  Applier a(sigma, true);
  return a.apply_program(p, Taboo{}).first;
}

Expr apply_usubst(const UniformSubstitution& sigma, const Expr& e) {
  if (std::holds_alternative<Term>(e)) return apply_usubst(sigma, std::get<Term>(e));
  if (std::holds_alternative<Formula>(e)) return apply_usubst(sigma, std::get<Formula>(e));
  return apply_usubst(sigma, std::get<Program>(e));
}

Formula apply_usubst_unchecked(const UniformSubstitution& sigma, const Formula& f) {
  sigma.validate_no_self_reference();
  Applier a(sigma, false);
  return a.apply(f, Taboo{});
}

// ----------------------------------------------------------------------------
// Uniform renaming

namespace {

Variable rename_var(const Variable& v, const Variable& x, const Variable& y) {
  return v == x ? y : v;
}

Term rename_term(const Term& t, const Variable& x, const Variable& y) {
  switch (t->tag) {
    case TermTag::Var:
      return t->var == x ? mk_var(y) : t;
    case TermTag::Lit:
    case TermTag::Dot:
      return t;
    case TermTag::Plus:
      return mk_plus(rename_term(t->lhs, x, y), rename_term(t->rhs, x, y));
    case TermTag::Minus:
      return mk_minus(rename_term(t->lhs, x, y), rename_term(t->rhs, x, y));
    case TermTag::Times:
      return mk_times(rename_term(t->lhs, x, y), rename_term(t->rhs, x, y));
    case TermTag::Neg:
      return mk_neg(rename_term(t->lhs, x, y));
    case TermTag::Power:
      return mk_power(rename_term(t->lhs, x, y), t->exponent);
    case TermTag::Func:
      return t->has_arg ? mk_func(t->name, rename_term(t->lhs, x, y)) : t;
  }
  return t;
}

Formula rename_formula(const Formula& f, const Variable& x, const Variable& y);

Program rename_program(const Program& p, const Variable& x, const Variable& y) {
  switch (p->tag) {
    case ProgramTag::Assign:
      return mk_assign(rename_var(p->var, x, y), rename_term(p->term, x, y));
    case ProgramTag::Test:
      return mk_test(rename_formula(p->fml, x, y));
    case ProgramTag::Choice:
      return mk_choice(rename_program(p->p1, x, y), rename_program(p->p2, x, y));
    case ProgramTag::Seq:
      return mk_seq(rename_program(p->p1, x, y), rename_program(p->p2, x, y));
    case ProgramTag::Repeat:
      return mk_repeat(rename_program(p->p1, x, y));
    case ProgramTag::While:
      return mk_while(rename_formula(p->fml, x, y), rename_program(p->p1, x, y));
    case ProgramTag::IfThenElse:
      return mk_if(rename_formula(p->fml, x, y), rename_program(p->p1, x, y),
                   rename_program(p->p2, x, y));
    case ProgramTag::ODE: {
      std::vector<OdeEquation> odes;
      for (const auto& eq : p->odes)
        odes.push_back(OdeEquation{rename_var(eq.var, x, y), rename_term(eq.rhs, x, y)});
      return mk_ode(std::move(odes), rename_formula(p->fml, x, y));
    }
    case ProgramTag::Const:
      return p;
  }
  return p;
}

Formula rename_formula(const Formula& f, const Variable& x, const Variable& y) {
  switch (f->tag) {
    case FormulaTag::Less:
    case FormulaTag::LessEq:
    case FormulaTag::Equal:
    case FormulaTag::GreaterEq:
    case FormulaTag::Greater:
      return mk_cmp(f->tag, rename_term(f->t1, x, y), rename_term(f->t2, x, y));
    case FormulaTag::True:
    case FormulaTag::False:
      return f;
    case FormulaTag::Not:
      return mk_not(rename_formula(f->f1, x, y));
    case FormulaTag::And:
      return mk_and(rename_formula(f->f1, x, y), rename_formula(f->f2, x, y));
    case FormulaTag::Or:
      return mk_or(rename_formula(f->f1, x, y), rename_formula(f->f2, x, y));
    case FormulaTag::Implies:
      return mk_implies(rename_formula(f->f1, x, y), rename_formula(f->f2, x, y));
    case FormulaTag::Equiv:
      return mk_equiv(rename_formula(f->f1, x, y), rename_formula(f->f2, x, y));
    case FormulaTag::Forall:
      return mk_forall(rename_var(f->var, x, y), rename_formula(f->f1, x, y));
    case FormulaTag::Exists:
      return mk_exists(rename_var(f->var, x, y), rename_formula(f->f1, x, y));
    case FormulaTag::Box:
      return mk_box(rename_program(f->prog, x, y), rename_formula(f->f1, x, y));
    case FormulaTag::Diamond:
      return mk_diamond(rename_program(f->prog, x, y), rename_formula(f->f1, x, y));
    case FormulaTag::Pred:
      return f->has_arg ? mk_pred(f->name, rename_term(f->t1, x, y)) : f;
  }
  return f;
}

}  // namespace

bool occurs_variable(const Variable& v, const Term& t) {
  switch (t->tag) {
    case TermTag::Var:
      return t->var == v;
    case TermTag::Lit:
    case TermTag::Dot:
      return false;
    case TermTag::Plus:
    case TermTag::Minus:
    case TermTag::Times:
      return occurs_variable(v, t->lhs) || occurs_variable(v, t->rhs);
    case TermTag::Neg:
    case TermTag::Power:
      return occurs_variable(v, t->lhs);
    case TermTag::Func:
      return t->has_arg && occurs_variable(v, t->lhs);
  }
  return false;
}

bool occurs_variable(const Variable& v, const Program& p);

bool occurs_variable(const Variable& v, const Formula& f) {
  switch (f->tag) {
    case FormulaTag::Less:
    case FormulaTag::LessEq:
    case FormulaTag::Equal:
    case FormulaTag::GreaterEq:
    case FormulaTag::Greater:
      return occurs_variable(v, f->t1) || occurs_variable(v, f->t2);
    case FormulaTag::True:
    case FormulaTag::False:
      return false;
    case FormulaTag::Not:
      return occurs_variable(v, f->f1);
    case FormulaTag::And:
    case FormulaTag::Or:
    case FormulaTag::Implies:
    case FormulaTag::Equiv:
      return occurs_variable(v, f->f1) || occurs_variable(v, f->f2);
    case FormulaTag::Forall:
    case FormulaTag::Exists:
      return f->var == v || occurs_variable(v, f->f1);
    case FormulaTag::Box:
    case FormulaTag::Diamond:
      return occurs_variable(v, f->prog) || occurs_variable(v, f->f1);
    case FormulaTag::Pred:
      return f->has_arg && occurs_variable(v, f->t1);
  }
  return false;
}

bool occurs_variable(const Variable& v, const Program& p) {
  switch (p->tag) {
    case ProgramTag::Assign:
      return p->var == v || occurs_variable(v, p->term);
    case ProgramTag::Test:
      return occurs_variable(v, p->fml);
    case ProgramTag::Choice:
    case ProgramTag::Seq:
      return occurs_variable(v, p->p1) || occurs_variable(v, p->p2);
    case ProgramTag::Repeat:
      return occurs_variable(v, p->p1);
    case ProgramTag::While:
      return occurs_variable(v, p->fml) || occurs_variable(v, p->p1);
    case ProgramTag::IfThenElse:
      return occurs_variable(v, p->fml) || occurs_variable(v, p->p1) ||
             occurs_variable(v, p->p2);
    case ProgramTag::ODE: {
      for (const auto& eq : p->odes)
        if (eq.var == v || occurs_variable(v, eq.rhs)) return true;
      return occurs_variable(v, p->fml);
    }
    case ProgramTag::Const:
      return false;
  }
  return false;
}

Formula uniform_rename(const Variable& x, const Variable& y, const Formula& f) {
  if (occurs_variable(y, f))
    throw RenameError("cannot rename " + x.name + " to " + y.name + ": " + y.name +
                      " already occurs");
  return rename_formula(f, x, y);
}

Term uniform_rename(const Variable& x, const Variable& y, const Term& t) {
  if (occurs_variable(y, t))
    throw RenameError("cannot rename " + x.name + " to " + y.name + ": " + y.name +
                      " already occurs");
  return rename_term(t, x, y);
}

Program uniform_rename(const Variable& x, const Variable& y, const Program& p) {
  if (occurs_variable(y, p))
    throw RenameError("cannot rename " + x.name + " to " + y.name + ": " + y.name +
                      " already occurs");
  return rename_program(p, x, y);
}

// ----------------------------------------------------------------------------
// Textual form

namespace {

// Entry heads look like `f()`, `p(.)` or `a{}` followed by `~>`. `~>` cannot
// occur inside a replacement, so each entry's extent runs to the next head.
struct EntryHead {
  std::string name;
  SymbolKind kind;
  int arity;
  std::size_t head_len;  // tokens in the head, excluding '~>'
};

bool match_head(const std::vector<Token>& toks, std::size_t i, EntryHead& out) {
  if (toks[i].kind != Tok::Ident) return false;
  if (toks[i + 1].kind == Tok::LParen) {
    if (toks[i + 2].kind == Tok::RParen && toks[i + 3].kind == Tok::SubstArrow) {
      out = {toks[i].text, SymbolKind::Function, 0, 3};
      return true;
    }
    if (toks[i + 2].kind == Tok::Dot && toks[i + 3].kind == Tok::RParen &&
        toks[i + 4].kind == Tok::SubstArrow) {
      out = {toks[i].text, SymbolKind::Function, 1, 4};
      return true;
    }
    return false;
  }
  if (toks[i + 1].kind == Tok::LBrace && toks[i + 2].kind == Tok::RBrace &&
      toks[i + 3].kind == Tok::SubstArrow) {
    out = {toks[i].text, SymbolKind::ProgramConst, 0, 3};
    return true;
  }
  return false;
}

}  // namespace

UniformSubstitution UniformSubstitution::from_text(std::string_view text) {
  std::vector<Token> toks = lex(text);
  UniformSubstitution sigma;
  std::size_t i = 0;
  while (toks[i].kind != Tok::End) {
    EntryHead head;
    if (!match_head(toks, i, head))
      throw ParseError("expected a substitution entry like f(), p(.) or a{}",
                       toks[i].span);
    std::size_t body_start = i + head.head_len + 1;  // skip '~>'
    // Extent: up to the next entry head or end of input.
    std::size_t body_end = body_start;
    while (toks[body_end].kind != Tok::End) {
      EntryHead next;
      if (match_head(toks, body_end, next)) break;
      ++body_end;
    }
    Parser parser(toks, body_start, body_end);
    if (head.kind == SymbolKind::ProgramConst) {
      Program prog = parser.program();
      parser.accept(Tok::Semi);
      if (parser.pos() != body_end && toks[parser.pos()].kind != Tok::End)
        parser.fail("end of substitution entry");
      sigma.add_program(head.name, prog);
    } else {
      // Try a term first; if the extent is not entirely a term, it is a
      // predicate replacement.
      bool is_term = false;
      Term term;
      std::size_t save = parser.pos();
      try {
        term = parser.term();
        parser.accept(Tok::Semi);
        is_term = parser.pos() == body_end || toks[parser.pos()].kind == Tok::End;
      } catch (const ParseError&) {
        is_term = false;
      }
      if (is_term) {
        sigma.add_function(head.name, head.arity, term);
      } else {
        parser.seek(save);
        Formula fml = parser.formula();
        parser.accept(Tok::Semi);
        if (parser.pos() != body_end && toks[parser.pos()].kind != Tok::End)
          parser.fail("end of substitution entry");
        sigma.add_predicate(head.name, head.arity, fml);
      }
    }
    i = body_end;
  }
  return sigma;
}

std::string UniformSubstitution::to_text() const {
  std::ostringstream out;
  bool first = true;
  for (const Entry& e : entries_) {
    if (!first) out << ' ';
    first = false;
    out << e.name;
    switch (e.kind) {
      case SymbolKind::Function: {
        out << (e.arity == 1 ? "(.)" : "()") << " ~> " << pretty_print(e.term) << ';';
        break;
      }
      case SymbolKind::Predicate: {
        std::string body = pretty_print(e.formula);
        // A replacement that reads back as a bare term would change kind on
        // the round trip; no substitution built by this library produces one.
        out << (e.arity == 1 ? "(.)" : "()") << " ~> " << body << ';';
        break;
      }
      case SymbolKind::ProgramConst: {
        std::string body = pretty_print(e.program);
        out << "{} ~> " << body;
        if (body.empty() || body.back() != ';') out << ';';
        break;
      }
    }
  }
  return out.str();
}

}  // namespace dlopt
