// Copyright (c) 2026 The dlopt developers. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#include "dlopt/syntax.hpp"

#include <set>
#include <stdexcept>

namespace dlopt {

namespace {

Term make_term(TermNode n) { return std::make_shared<const TermNode>(std::move(n)); }
Formula make_formula(FormulaNode n) {
  return std::make_shared<const FormulaNode>(std::move(n));
}
Program make_program(ProgramNode n) {
  return std::make_shared<const ProgramNode>(std::move(n));
}

}  // namespace

Term mk_var(Variable v) {
  TermNode n{};
  n.tag = TermTag::Var;
  n.var = std::move(v);
  return make_term(std::move(n));
}

Term mk_var(std::string name) { return mk_var(Variable{std::move(name)}); }

Term mk_lit(Rational value) {
  TermNode n{};
  n.tag = TermTag::Lit;
  n.lit = std::move(value);
  return make_term(std::move(n));
}

Term mk_lit(long long value) { return mk_lit(Rational(value)); }

static Term mk_binary(TermTag tag, Term l, Term r) {
  TermNode n{};
  n.tag = tag;
  n.lhs = std::move(l);
  n.rhs = std::move(r);
  return make_term(std::move(n));
}

Term mk_plus(Term l, Term r) { return mk_binary(TermTag::Plus, std::move(l), std::move(r)); }
Term mk_minus(Term l, Term r) { return mk_binary(TermTag::Minus, std::move(l), std::move(r)); }
Term mk_times(Term l, Term r) { return mk_binary(TermTag::Times, std::move(l), std::move(r)); }

Term mk_neg(Term t) {
  TermNode n{};
  n.tag = TermTag::Neg;
  n.lhs = std::move(t);
  return make_term(std::move(n));
}

Term mk_power(Term base, unsigned exponent) {
  if (exponent < 1) throw std::invalid_argument("power exponent must be >= 1");
  TermNode n{};
  n.tag = TermTag::Power;
  n.lhs = std::move(base);
  n.exponent = exponent;
  return make_term(std::move(n));
}

Term mk_func(std::string name) {
  TermNode n{};
  n.tag = TermTag::Func;
  n.name = std::move(name);
  n.has_arg = false;
  return make_term(std::move(n));
}

Term mk_func(std::string name, Term arg) {
  TermNode n{};
  n.tag = TermTag::Func;
  n.name = std::move(name);
  n.has_arg = true;
  n.lhs = std::move(arg);
  return make_term(std::move(n));
}

Term mk_dot() {
  TermNode n{};
  n.tag = TermTag::Dot;
  return make_term(std::move(n));
}

Formula mk_cmp(FormulaTag tag, Term l, Term r) {
  FormulaNode n{};
  n.tag = tag;
  n.t1 = std::move(l);
  n.t2 = std::move(r);
  return make_formula(std::move(n));
}

Formula mk_less(Term l, Term r) { return mk_cmp(FormulaTag::Less, std::move(l), std::move(r)); }
Formula mk_less_eq(Term l, Term r) {
  return mk_cmp(FormulaTag::LessEq, std::move(l), std::move(r));
}
Formula mk_equal(Term l, Term r) { return mk_cmp(FormulaTag::Equal, std::move(l), std::move(r)); }
Formula mk_greater_eq(Term l, Term r) {
  return mk_cmp(FormulaTag::GreaterEq, std::move(l), std::move(r));
}
Formula mk_greater(Term l, Term r) {
  return mk_cmp(FormulaTag::Greater, std::move(l), std::move(r));
}

Formula mk_true() {
  FormulaNode n{};
  n.tag = FormulaTag::True;
  return make_formula(std::move(n));
}

Formula mk_false() {
  FormulaNode n{};
  n.tag = FormulaTag::False;
  return make_formula(std::move(n));
}

Formula mk_not(Formula f) {
  FormulaNode n{};
  n.tag = FormulaTag::Not;
  n.f1 = std::move(f);
  return make_formula(std::move(n));
}

static Formula mk_connective(FormulaTag tag, Formula l, Formula r) {
  FormulaNode n{};
  n.tag = tag;
  n.f1 = std::move(l);
  n.f2 = std::move(r);
  return make_formula(std::move(n));
}

Formula mk_and(Formula l, Formula r) {
  return mk_connective(FormulaTag::And, std::move(l), std::move(r));
}
Formula mk_or(Formula l, Formula r) {
  return mk_connective(FormulaTag::Or, std::move(l), std::move(r));
}
Formula mk_implies(Formula l, Formula r) {
  return mk_connective(FormulaTag::Implies, std::move(l), std::move(r));
}
Formula mk_equiv(Formula l, Formula r) {
  return mk_connective(FormulaTag::Equiv, std::move(l), std::move(r));
}

static Formula mk_quantifier(FormulaTag tag, Variable v, Formula body) {
  FormulaNode n{};
  n.tag = tag;
  n.var = std::move(v);
  n.f1 = std::move(body);
  return make_formula(std::move(n));
}

Formula mk_forall(Variable v, Formula body) {
  return mk_quantifier(FormulaTag::Forall, std::move(v), std::move(body));
}
Formula mk_exists(Variable v, Formula body) {
  return mk_quantifier(FormulaTag::Exists, std::move(v), std::move(body));
}

static Formula mk_modality(FormulaTag tag, Program p, Formula f) {
  FormulaNode n{};
  n.tag = tag;
  n.prog = std::move(p);
  n.f1 = std::move(f);
  return make_formula(std::move(n));
}

Formula mk_box(Program p, Formula f) {
  return mk_modality(FormulaTag::Box, std::move(p), std::move(f));
}
Formula mk_diamond(Program p, Formula f) {
  return mk_modality(FormulaTag::Diamond, std::move(p), std::move(f));
}

Formula mk_pred(std::string name) {
  FormulaNode n{};
  n.tag = FormulaTag::Pred;
  n.name = std::move(name);
  n.has_arg = false;
  return make_formula(std::move(n));
}

Formula mk_pred(std::string name, Term arg) {
  FormulaNode n{};
  n.tag = FormulaTag::Pred;
  n.name = std::move(name);
  n.has_arg = true;
  n.t1 = std::move(arg);
  return make_formula(std::move(n));
}

Program mk_assign(Variable v, Term rhs) {
  ProgramNode n{};
  n.tag = ProgramTag::Assign;
  n.var = std::move(v);
  n.term = std::move(rhs);
  return make_program(std::move(n));
}

Program mk_test(Formula guard) {
  ProgramNode n{};
  n.tag = ProgramTag::Test;
  n.fml = std::move(guard);
  return make_program(std::move(n));
}

static Program mk_binary_prog(ProgramTag tag, Program l, Program r) {
  ProgramNode n{};
  n.tag = tag;
  n.p1 = std::move(l);
  n.p2 = std::move(r);
  return make_program(std::move(n));
}

Program mk_choice(Program l, Program r) {
  return mk_binary_prog(ProgramTag::Choice, std::move(l), std::move(r));
}
Program mk_seq(Program l, Program r) {
  return mk_binary_prog(ProgramTag::Seq, std::move(l), std::move(r));
}

Program mk_repeat(Program body) {
  ProgramNode n{};
  n.tag = ProgramTag::Repeat;
  n.p1 = std::move(body);
  return make_program(std::move(n));
}

Program mk_while(Formula guard, Program body) {
  ProgramNode n{};
  n.tag = ProgramTag::While;
  n.fml = std::move(guard);
  n.p1 = std::move(body);
  return make_program(std::move(n));
}

Program mk_if(Formula guard, Program then_branch, Program else_branch) {
  ProgramNode n{};
  n.tag = ProgramTag::IfThenElse;
  n.fml = std::move(guard);
  n.p1 = std::move(then_branch);
  n.p2 = std::move(else_branch);
  return make_program(std::move(n));
}

Program mk_ode(std::vector<OdeEquation> odes, Formula domain) {
  if (odes.empty()) throw std::invalid_argument("ODE system must be nonempty");
  std::set<Variable> seen;
  for (const auto& eq : odes)
    if (!seen.insert(eq.var).second)
      throw std::invalid_argument("ODE variables must be pairwise distinct");
  ProgramNode n{};
  n.tag = ProgramTag::ODE;
  n.odes = std::move(odes);
  n.fml = std::move(domain);
  return make_program(std::move(n));
}

Program mk_prog_const(std::string name) {
  ProgramNode n{};
  n.tag = ProgramTag::Const;
  n.name = std::move(name);
  return make_program(std::move(n));
}

Program mk_skip() { return mk_test(mk_true()); }

bool is_skip(const Program& p) {
  return p->tag == ProgramTag::Test && p->fml->tag == FormulaTag::True;
}

// ----------------------------------------------------------------------------
// Structural equality

bool structural_equal(const Term& a, const Term& b) {
  if (a.get() == b.get()) return true;
  if (a->tag != b->tag) return false;
  switch (a->tag) {
    case TermTag::Var:
      return a->var == b->var;
    case TermTag::Lit:
      return a->lit == b->lit;
    case TermTag::Plus:
    case TermTag::Minus:
    case TermTag::Times:
      return structural_equal(a->lhs, b->lhs) && structural_equal(a->rhs, b->rhs);
    case TermTag::Neg:
      return structural_equal(a->lhs, b->lhs);
    case TermTag::Power:
      return a->exponent == b->exponent && structural_equal(a->lhs, b->lhs);
    case TermTag::Func:
      if (a->name != b->name || a->has_arg != b->has_arg) return false;
      return !a->has_arg || structural_equal(a->lhs, b->lhs);
    case TermTag::Dot:
      return true;
  }
  return false;
}

bool structural_equal(const Formula& a, const Formula& b) {
  if (a.get() == b.get()) return true;
  if (a->tag != b->tag) return false;
  switch (a->tag) {
    case FormulaTag::Less:
    case FormulaTag::LessEq:
    case FormulaTag::Equal:
    case FormulaTag::GreaterEq:
    case FormulaTag::Greater:
      return structural_equal(a->t1, b->t1) && structural_equal(a->t2, b->t2);
    case FormulaTag::True:
    case FormulaTag::False:
      return true;
    case FormulaTag::Not:
      return structural_equal(a->f1, b->f1);
    case FormulaTag::And:
    case FormulaTag::Or:
    case FormulaTag::Implies:
    case FormulaTag::Equiv:
      return structural_equal(a->f1, b->f1) && structural_equal(a->f2, b->f2);
    case FormulaTag::Forall:
    case FormulaTag::Exists:
      return a->var == b->var && structural_equal(a->f1, b->f1);
    case FormulaTag::Box:
    case FormulaTag::Diamond:
      return structural_equal(a->prog, b->prog) && structural_equal(a->f1, b->f1);
    case FormulaTag::Pred:
      if (a->name != b->name || a->has_arg != b->has_arg) return false;
      return !a->has_arg || structural_equal(a->t1, b->t1);
  }
  return false;
}

bool structural_equal(const Program& a, const Program& b) {
  if (a.get() == b.get()) return true;
  if (a->tag != b->tag) return false;
  switch (a->tag) {
    case ProgramTag::Assign:
      return a->var == b->var && structural_equal(a->term, b->term);
    case ProgramTag::Test:
      return structural_equal(a->fml, b->fml);
    case ProgramTag::Choice:
    case ProgramTag::Seq:
      return structural_equal(a->p1, b->p1) && structural_equal(a->p2, b->p2);
    case ProgramTag::Repeat:
      return structural_equal(a->p1, b->p1);
    case ProgramTag::While:
      return structural_equal(a->fml, b->fml) && structural_equal(a->p1, b->p1);
    case ProgramTag::IfThenElse:
      return structural_equal(a->fml, b->fml) && structural_equal(a->p1, b->p1) &&
             structural_equal(a->p2, b->p2);
    case ProgramTag::ODE: {
      if (a->odes.size() != b->odes.size()) return false;
      for (std::size_t i = 0; i < a->odes.size(); ++i)
        if (a->odes[i].var != b->odes[i].var ||
            !structural_equal(a->odes[i].rhs, b->odes[i].rhs))
          return false;
      return structural_equal(a->fml, b->fml);
    }
    case ProgramTag::Const:
      return a->name == b->name;
  }
  return false;
}

bool structural_equal(const Expr& a, const Expr& b) {
  if (a.index() != b.index()) return false;
  if (std::holds_alternative<Term>(a))
    return structural_equal(std::get<Term>(a), std::get<Term>(b));
  if (std::holds_alternative<Formula>(a))
    return structural_equal(std::get<Formula>(a), std::get<Formula>(b));
  return structural_equal(std::get<Program>(a), std::get<Program>(b));
}

// ----------------------------------------------------------------------------
// Dot occurrence

bool contains_dot(const Term& t) {
  switch (t->tag) {
    case TermTag::Dot:
      return true;
    case TermTag::Var:
    case TermTag::Lit:
      return false;
    case TermTag::Plus:
    case TermTag::Minus:
    case TermTag::Times:
      return contains_dot(t->lhs) || contains_dot(t->rhs);
    case TermTag::Neg:
    case TermTag::Power:
      return contains_dot(t->lhs);
    case TermTag::Func:
      return t->has_arg && contains_dot(t->lhs);
  }
  return false;
}

bool contains_dot(const Formula& f) {
  switch (f->tag) {
    case FormulaTag::Less:
    case FormulaTag::LessEq:
    case FormulaTag::Equal:
    case FormulaTag::GreaterEq:
    case FormulaTag::Greater:
      return contains_dot(f->t1) || contains_dot(f->t2);
    case FormulaTag::True:
    case FormulaTag::False:
      return false;
    case FormulaTag::Not:
    case FormulaTag::Forall:
    case FormulaTag::Exists:
      return contains_dot(f->f1);
    case FormulaTag::And:
    case FormulaTag::Or:
    case FormulaTag::Implies:
    case FormulaTag::Equiv:
      return contains_dot(f->f1) || contains_dot(f->f2);
    case FormulaTag::Box:
    case FormulaTag::Diamond:
      return contains_dot(f->prog) || contains_dot(f->f1);
    case FormulaTag::Pred:
      return f->has_arg && contains_dot(f->t1);
  }
  return false;
}

bool contains_dot(const Program& p) {
  switch (p->tag) {
    case ProgramTag::Assign:
      return contains_dot(p->term);
    case ProgramTag::Test:
      return contains_dot(p->fml);
    case ProgramTag::Choice:
    case ProgramTag::Seq:
      return contains_dot(p->p1) || contains_dot(p->p2);
    case ProgramTag::Repeat:
      return contains_dot(p->p1);
    case ProgramTag::While:
      return contains_dot(p->fml) || contains_dot(p->p1);
    case ProgramTag::IfThenElse:
      return contains_dot(p->fml) || contains_dot(p->p1) || contains_dot(p->p2);
    case ProgramTag::ODE: {
      for (const auto& eq : p->odes)
        if (contains_dot(eq.rhs)) return true;
      return contains_dot(p->fml);
    }
    case ProgramTag::Const:
      return false;
  }
  return false;
}

bool contains_dot(const Expr& e) {
  if (std::holds_alternative<Term>(e)) return contains_dot(std::get<Term>(e));
  if (std::holds_alternative<Formula>(e)) return contains_dot(std::get<Formula>(e));
  return contains_dot(std::get<Program>(e));
}

}  // namespace dlopt
