// Copyright (c) 2026 The dlopt developers. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
//
// Abstract syntax for the dynamic logic: terms, formulas and programs,
// including the placeholder symbols (function, predicate and program
// constants) that uniform substitution replaces. Trees are immutable and
// shared; constructors never normalize.
#pragma once

#include <compare>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dlopt/rational.hpp"

namespace dlopt {

struct Variable {
  std::string name;

  friend auto operator<=>(const Variable&, const Variable&) = default;
};

// ----------------------------------------------------------------------------
// Terms

enum class TermTag {
  Var,    // program/logic variable
  Lit,    // exact rational literal (nonnegative integers in concrete syntax)
  Plus,
  Minus,
  Times,
  Neg,
  Power,  // natural exponent >= 1
  Func,   // function symbol, nullary or unary
  Dot     // the reserved argument placeholder '.'
};

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

struct TermNode {
  TermTag tag;
  Variable var;          // Var
  Rational lit;          // Lit
  Term lhs, rhs;         // Plus/Minus/Times: both; Neg/Power/Func(arg): lhs
  unsigned exponent = 0; // Power
  std::string name;      // Func
  bool has_arg = false;  // Func arity (0 or 1)
};

Term mk_var(Variable v);
Term mk_var(std::string name);
Term mk_lit(Rational value);
Term mk_lit(long long value);
Term mk_plus(Term l, Term r);
Term mk_minus(Term l, Term r);
Term mk_times(Term l, Term r);
Term mk_neg(Term t);
// exponent must be >= 1
Term mk_power(Term base, unsigned exponent);
Term mk_func(std::string name);            // nullary
Term mk_func(std::string name, Term arg);  // unary
Term mk_dot();

// ----------------------------------------------------------------------------
// Formulas

enum class FormulaTag {
  Less,
  LessEq,
  Equal,
  GreaterEq,
  Greater,
  True,
  False,
  Not,
  And,
  Or,
  Implies,
  Equiv,
  Forall,
  Exists,
  Box,
  Diamond,
  Pred  // predicate symbol, nullary or unary
};

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;
struct ProgramNode;
using Program = std::shared_ptr<const ProgramNode>;

struct FormulaNode {
  FormulaTag tag;
  Term t1, t2;           // comparisons; Pred arg in t1
  Formula f1, f2;        // connectives / quantifier body in f1
  Variable var;          // quantifiers
  Program prog;          // modalities
  std::string name;      // Pred
  bool has_arg = false;  // Pred arity (0 or 1)
};

Formula mk_cmp(FormulaTag tag, Term l, Term r);
Formula mk_less(Term l, Term r);
Formula mk_less_eq(Term l, Term r);
Formula mk_equal(Term l, Term r);
Formula mk_greater_eq(Term l, Term r);
Formula mk_greater(Term l, Term r);
Formula mk_true();
Formula mk_false();
Formula mk_not(Formula f);
Formula mk_and(Formula l, Formula r);
Formula mk_or(Formula l, Formula r);
Formula mk_implies(Formula l, Formula r);
Formula mk_equiv(Formula l, Formula r);
Formula mk_forall(Variable v, Formula body);
Formula mk_exists(Variable v, Formula body);
Formula mk_box(Program p, Formula f);
Formula mk_diamond(Program p, Formula f);
Formula mk_pred(std::string name);            // nullary
Formula mk_pred(std::string name, Term arg);  // unary

// ----------------------------------------------------------------------------
// Programs

enum class ProgramTag {
  Assign,
  Test,
  Choice,
  Seq,
  Repeat,
  While,
  IfThenElse,
  ODE,
  Const  // program constant symbol
};

struct OdeEquation {
  Variable var;  // left-hand side x of x'=rhs
  Term rhs;
};

struct ProgramNode {
  ProgramTag tag;
  Variable var;                   // Assign target
  Term term;                      // Assign rhs
  Formula fml;                    // Test/While/IfThenElse guard, ODE domain
  Program p1, p2;                 // children (then/else for IfThenElse)
  std::vector<OdeEquation> odes;  // ODE system, nonempty, distinct variables
  std::string name;               // Const
};

Program mk_assign(Variable v, Term rhs);
Program mk_test(Formula guard);
Program mk_choice(Program l, Program r);
Program mk_seq(Program l, Program r);
Program mk_repeat(Program body);
Program mk_while(Formula guard, Program body);
Program mk_if(Formula guard, Program then_branch, Program else_branch);
// ODE variable list must be nonempty with pairwise-distinct variables.
Program mk_ode(std::vector<OdeEquation> odes, Formula domain);
Program mk_prog_const(std::string name);

// A "skip" program; used as the implicit else-branch of if without else.
Program mk_skip();
bool is_skip(const Program& p);

// ----------------------------------------------------------------------------
// Generic view over the three syntactic categories

using Expr = std::variant<Term, Formula, Program>;

// Node-for-node tree identity; no modulo-associativity, no alpha-equivalence.
bool structural_equal(const Term& a, const Term& b);
bool structural_equal(const Formula& a, const Formula& b);
bool structural_equal(const Program& a, const Program& b);
bool structural_equal(const Expr& a, const Expr& b);

bool contains_dot(const Term& t);
bool contains_dot(const Formula& f);
bool contains_dot(const Program& p);
bool contains_dot(const Expr& e);

}  // namespace dlopt
