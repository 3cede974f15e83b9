// Copyright (c) 2026 The dlopt developers. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#include "dlopt/statics.hpp"

#include <algorithm>
#include <sstream>

namespace dlopt {

VarSet VarSet::union_with(const VarSet& o) const {
  if (all || o.all) return all_vars();
  VarSet r = *this;
  r.vars.insert(o.vars.begin(), o.vars.end());
  return r;
}

VarSet VarSet::intersect(const VarSet& o) const {
  if (all) return o;
  if (o.all) return *this;
  VarSet r;
  std::set_intersection(vars.begin(), vars.end(), o.vars.begin(), o.vars.end(),
                        std::inserter(r.vars, r.vars.begin()));
  return r;
}

VarSet VarSet::minus(const VarSet& o) const {
  if (all) return all_vars();  // cofinite sets round up to AllVars
  if (o.all) return none();
  VarSet r;
  std::set_difference(vars.begin(), vars.end(), o.vars.begin(), o.vars.end(),
                      std::inserter(r.vars, r.vars.begin()));
  return r;
}

bool VarSet::subset_of(const VarSet& o) const {
  if (o.all) return true;
  if (all) return false;
  return std::includes(o.vars.begin(), o.vars.end(), vars.begin(), vars.end());
}

bool VarSet::disjoint(const VarSet& o) const {
  if (empty() || o.empty()) return true;
  if (all || o.all) return false;
  return intersect(o).empty();
}

std::string VarSet::to_string() const {
  if (all) return "{all}";
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (const auto& v : vars) {
    if (!first) out << ',';
    out << v.name;
    first = false;
  }
  out << '}';
  return out.str();
}

namespace {

// The two symbol policies behind free-variable computation. Spec reads
// placeholders as AllVars; the substitution machinery uses the per-kind
// static semantics (see statics.hpp).
enum class SymbolPolicy { Spec, Substitution };

VarSet fv_term(const Term& t, SymbolPolicy pol);
VarSet fv_formula(const Formula& f, SymbolPolicy pol);
VarSet fv_program(const Program& p, SymbolPolicy pol);
VarSet mbv_program(const Program& p);

VarSet fv_term(const Term& t, SymbolPolicy pol) {
  switch (t->tag) {
    case TermTag::Var:
      return VarSet::of({t->var});
    case TermTag::Lit:
    case TermTag::Dot:
      return VarSet::none();
    case TermTag::Plus:
    case TermTag::Minus:
    case TermTag::Times:
      return fv_term(t->lhs, pol).union_with(fv_term(t->rhs, pol));
    case TermTag::Neg:
    case TermTag::Power:
      return fv_term(t->lhs, pol);
    case TermTag::Func:
      if (pol == SymbolPolicy::Spec) return VarSet::all_vars();
      return t->has_arg ? fv_term(t->lhs, pol) : VarSet::none();
  }
  return VarSet::none();
}

VarSet fv_formula(const Formula& f, SymbolPolicy pol) {
  switch (f->tag) {
    case FormulaTag::Less:
    case FormulaTag::LessEq:
    case FormulaTag::Equal:
    case FormulaTag::GreaterEq:
    case FormulaTag::Greater:
      return fv_term(f->t1, pol).union_with(fv_term(f->t2, pol));
    case FormulaTag::True:
    case FormulaTag::False:
      return VarSet::none();
    case FormulaTag::Not:
      return fv_formula(f->f1, pol);
    case FormulaTag::And:
    case FormulaTag::Or:
    case FormulaTag::Implies:
    case FormulaTag::Equiv:
      return fv_formula(f->f1, pol).union_with(fv_formula(f->f2, pol));
    case FormulaTag::Forall:
    case FormulaTag::Exists:
      return fv_formula(f->f1, pol).minus(VarSet::of({f->var}));
    case FormulaTag::Box:
    case FormulaTag::Diamond:
      return fv_program(f->prog, pol)
          .union_with(fv_formula(f->f1, pol).minus(mbv_program(f->prog)));
    case FormulaTag::Pred:
      if (pol == SymbolPolicy::Spec) return VarSet::all_vars();
      return f->has_arg ? fv_term(f->t1, pol) : VarSet::none();
  }
  return VarSet::none();
}

VarSet fv_program(const Program& p, SymbolPolicy pol) {
  switch (p->tag) {
    case ProgramTag::Assign:
      return fv_term(p->term, pol);
    case ProgramTag::Test:
      return fv_formula(p->fml, pol);
    case ProgramTag::Choice:
      return fv_program(p->p1, pol).union_with(fv_program(p->p2, pol));
    case ProgramTag::Seq:
      return fv_program(p->p1, pol)
          .union_with(fv_program(p->p2, pol).minus(mbv_program(p->p1)));
    case ProgramTag::Repeat:
      return fv_program(p->p1, pol);
    case ProgramTag::While:
      return fv_formula(p->fml, pol).union_with(fv_program(p->p1, pol));
    case ProgramTag::IfThenElse:
      return fv_formula(p->fml, pol)
          .union_with(fv_program(p->p1, pol))
          .union_with(fv_program(p->p2, pol));
    case ProgramTag::ODE: {
      // Initial values of the evolving variables are read by the flow.
      VarSet r;
      for (const auto& eq : p->odes) {
        r.insert(eq.var);
        r = r.union_with(fv_term(eq.rhs, pol));
      }
      return r.union_with(fv_formula(p->fml, pol));
    }
    case ProgramTag::Const:
      return VarSet::all_vars();
  }
  return VarSet::none();
}

VarSet mbv_program(const Program& p) {
  switch (p->tag) {
    case ProgramTag::Assign:
      return VarSet::of({p->var});
    case ProgramTag::Test:
      return VarSet::none();
    case ProgramTag::Choice:
      return mbv_program(p->p1).intersect(mbv_program(p->p2));
    case ProgramTag::Seq:
      return mbv_program(p->p1).union_with(mbv_program(p->p2));
    case ProgramTag::Repeat:
    case ProgramTag::While:
      return VarSet::none();  // zero iterations bind nothing
    case ProgramTag::IfThenElse:
      return mbv_program(p->p1).intersect(mbv_program(p->p2));
    case ProgramTag::ODE: {
      VarSet r;
      for (const auto& eq : p->odes) r.insert(eq.var);
      return r;
    }
    case ProgramTag::Const:
      return VarSet::none();
  }
  return VarSet::none();
}

VarSet bv_program(const Program& p) {
  switch (p->tag) {
    case ProgramTag::Assign:
      return VarSet::of({p->var});
    case ProgramTag::Test:
      return VarSet::none();
    case ProgramTag::Choice:
    case ProgramTag::Seq:
      return bv_program(p->p1).union_with(bv_program(p->p2));
    case ProgramTag::Repeat:
      return bv_program(p->p1);
    case ProgramTag::While:
      return bv_program(p->p1);
    case ProgramTag::IfThenElse:
      return bv_program(p->p1).union_with(bv_program(p->p2));
    case ProgramTag::ODE: {
      VarSet r;
      for (const auto& eq : p->odes) r.insert(eq.var);
      return r;
    }
    case ProgramTag::Const:
      return VarSet::all_vars();
  }
  return VarSet::none();
}

void sig_term(const Term& t, std::set<SymbolDescr>& out);
void sig_formula(const Formula& f, std::set<SymbolDescr>& out);
void sig_program(const Program& p, std::set<SymbolDescr>& out);

void sig_term(const Term& t, std::set<SymbolDescr>& out) {
  switch (t->tag) {
    case TermTag::Plus:
    case TermTag::Minus:
    case TermTag::Times:
      sig_term(t->lhs, out);
      sig_term(t->rhs, out);
      break;
    case TermTag::Neg:
    case TermTag::Power:
      sig_term(t->lhs, out);
      break;
    case TermTag::Func:
      out.insert({SymbolKind::Function, t->name, t->has_arg ? 1 : 0});
      if (t->has_arg) sig_term(t->lhs, out);
      break;
    default:
      break;
  }
}

void sig_formula(const Formula& f, std::set<SymbolDescr>& out) {
  switch (f->tag) {
    case FormulaTag::Less:
    case FormulaTag::LessEq:
    case FormulaTag::Equal:
    case FormulaTag::GreaterEq:
    case FormulaTag::Greater:
      sig_term(f->t1, out);
      sig_term(f->t2, out);
      break;
    case FormulaTag::Not:
    case FormulaTag::Forall:
    case FormulaTag::Exists:
      sig_formula(f->f1, out);
      break;
    case FormulaTag::And:
    case FormulaTag::Or:
    case FormulaTag::Implies:
    case FormulaTag::Equiv:
      sig_formula(f->f1, out);
      sig_formula(f->f2, out);
      break;
    case FormulaTag::Box:
    case FormulaTag::Diamond:
      sig_program(f->prog, out);
      sig_formula(f->f1, out);
      break;
    case FormulaTag::Pred:
      out.insert({SymbolKind::Predicate, f->name, f->has_arg ? 1 : 0});
      if (f->has_arg) sig_term(f->t1, out);
      break;
    default:
      break;
  }
}

void sig_program(const Program& p, std::set<SymbolDescr>& out) {
  switch (p->tag) {
    case ProgramTag::Assign:
      sig_term(p->term, out);
      break;
    case ProgramTag::Test:
      sig_formula(p->fml, out);
      break;
    case ProgramTag::Choice:
    case ProgramTag::Seq:
      sig_program(p->p1, out);
      sig_program(p->p2, out);
      break;
    case ProgramTag::Repeat:
      sig_program(p->p1, out);
      break;
    case ProgramTag::While:
      sig_formula(p->fml, out);
      sig_program(p->p1, out);
      break;
    case ProgramTag::IfThenElse:
      sig_formula(p->fml, out);
      sig_program(p->p1, out);
      sig_program(p->p2, out);
      break;
    case ProgramTag::ODE:
      for (const auto& eq : p->odes) sig_term(eq.rhs, out);
      sig_formula(p->fml, out);
      break;
    case ProgramTag::Const:
      out.insert({SymbolKind::ProgramConst, p->name, 0});
      break;
  }
}

}  // namespace

VarSet free_vars(const Term& t) { return fv_term(t, SymbolPolicy::Spec); }
VarSet free_vars(const Formula& f) { return fv_formula(f, SymbolPolicy::Spec); }
VarSet free_vars(const Program& p) { return fv_program(p, SymbolPolicy::Spec); }
VarSet free_vars(const Expr& e) {
  if (std::holds_alternative<Term>(e)) return free_vars(std::get<Term>(e));
  if (std::holds_alternative<Formula>(e)) return free_vars(std::get<Formula>(e));
  return free_vars(std::get<Program>(e));
}

VarSet bound_vars(const Program& p) { return bv_program(p); }
VarSet must_bound_vars(const Program& p) { return mbv_program(p); }

std::set<SymbolDescr> signature(const Term& t) {
  std::set<SymbolDescr> out;
  sig_term(t, out);
  return out;
}
std::set<SymbolDescr> signature(const Formula& f) {
  std::set<SymbolDescr> out;
  sig_formula(f, out);
  return out;
}
std::set<SymbolDescr> signature(const Program& p) {
  std::set<SymbolDescr> out;
  sig_program(p, out);
  return out;
}
std::set<SymbolDescr> signature(const Expr& e) {
  if (std::holds_alternative<Term>(e)) return signature(std::get<Term>(e));
  if (std::holds_alternative<Formula>(e)) return signature(std::get<Formula>(e));
  return signature(std::get<Program>(e));
}

VarSet substitution_free_vars(const Term& t) {
  return fv_term(t, SymbolPolicy::Substitution);
}
VarSet substitution_free_vars(const Formula& f) {
  return fv_formula(f, SymbolPolicy::Substitution);
}
VarSet substitution_free_vars(const Program& p) {
  return fv_program(p, SymbolPolicy::Substitution);
}
VarSet substitution_free_vars(const Expr& e) {
  if (std::holds_alternative<Term>(e))
    return substitution_free_vars(std::get<Term>(e));
  if (std::holds_alternative<Formula>(e))
    return substitution_free_vars(std::get<Formula>(e));
  return substitution_free_vars(std::get<Program>(e));
}

}  // namespace dlopt
