// Copyright (c) 2026 The dlopt developers. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#include "dlopt/semantics.hpp"

#include <random>
#include <sstream>
#include <vector>

#include "dlopt/errors.hpp"
#include "dlopt/statics.hpp"

namespace dlopt {

std::string State::to_string() const {
  std::ostringstream out;
  out << "{default=" << rational_to_string(def_);
  for (const auto& [v, r] : vals_) out << ", " << v.name << "=" << rational_to_string(r);
  out << "}";
  return out.str();
}

Rational eval_term(const State& w, const Term& t) {
  switch (t->tag) {
    case TermTag::Var:
      return w.get(t->var);
    case TermTag::Lit:
      return t->lit;
    case TermTag::Plus:
      return eval_term(w, t->lhs) + eval_term(w, t->rhs);
    case TermTag::Minus:
      return eval_term(w, t->lhs) - eval_term(w, t->rhs);
    case TermTag::Times:
      return eval_term(w, t->lhs) * eval_term(w, t->rhs);
    case TermTag::Neg:
      return -eval_term(w, t->lhs);
    case TermTag::Power: {
      Rational base = eval_term(w, t->lhs);
      Rational acc(1);
      for (unsigned i = 0; i < t->exponent; ++i) acc *= base;
      return acc;
    }
    case TermTag::Func:
      throw UnsupportedError("cannot evaluate function symbol '" + t->name + "'");
    case TermTag::Dot:
      throw UnsupportedError("cannot evaluate the argument placeholder '.'");
  }
  throw UnsupportedError("unreachable term tag");
}

namespace {

void merge(RunResult& into, RunResult&& from) {
  if (into.reached.empty())
    into.reached = std::move(from.reached);
  else
    into.reached.merge(std::move(from.reached));
  into.truncated |= from.truncated;
  into.hit_unsupported |= from.hit_unsupported;
}

}  // namespace

RunResult run_program(const State& w, const Program& p, unsigned fuel) {
  RunResult r;
  switch (p->tag) {
    case ProgramTag::Assign: {
      try {
        r.reached.insert(w.with(p->var, eval_term(w, p->term)));
      } catch (const UnsupportedError&) {
        r.truncated = r.hit_unsupported = true;
      }
      return r;
    }
    case ProgramTag::Test: {
      Outcome3 g = eval_formula(w, p->fml, fuel);
      if (g.is_true())
        r.reached.insert(w);
      else if (g.is_unknown()) {
        r.truncated = true;
        r.hit_unsupported |= g.reason == UnknownReason::UnsupportedConstruct;
      }
      return r;
    }
    case ProgramTag::Choice: {
      merge(r, run_program(w, p->p1, fuel));
      merge(r, run_program(w, p->p2, fuel));
      return r;
    }
    case ProgramTag::Seq: {
      RunResult first = run_program(w, p->p1, fuel);
      r.truncated = first.truncated;
      r.hit_unsupported = first.hit_unsupported;
      for (const State& s : first.reached) merge(r, run_program(s, p->p2, fuel));
      return r;
    }
    case ProgramTag::Repeat: {
      r.reached.insert(w);  // zero iterations
      std::set<State> frontier{w};
      for (unsigned i = 0; i < fuel && !frontier.empty(); ++i) {
        std::set<State> next;
        for (const State& s : frontier) {
          RunResult step = run_program(s, p->p1, fuel);
          r.truncated |= step.truncated;
          r.hit_unsupported |= step.hit_unsupported;
          for (const State& t : step.reached)
            if (r.reached.insert(t).second) next.insert(t);
        }
        frontier = std::move(next);
      }
      if (!frontier.empty()) r.truncated = true;
      return r;
    }
    case ProgramTag::While: {
      std::set<State> seen{w};
      std::set<State> frontier{w};
      // Guard-false states exit exactly; fuel bounds the iteration count.
      for (unsigned i = 0; i <= fuel && !frontier.empty(); ++i) {
        std::set<State> next;
        for (const State& s : frontier) {
          Outcome3 g = eval_formula(s, p->fml, fuel);
          if (g.is_false()) {
            r.reached.insert(s);
            continue;
          }
          if (g.is_unknown()) {
            r.truncated = true;
            r.hit_unsupported |= g.reason == UnknownReason::UnsupportedConstruct;
            continue;
          }
          if (i == fuel) {
            r.truncated = true;  // guard still true with no iterations left
            continue;
          }
          RunResult step = run_program(s, p->p1, fuel);
          r.truncated |= step.truncated;
          r.hit_unsupported |= step.hit_unsupported;
          for (const State& t : step.reached)
            if (seen.insert(t).second) next.insert(t);
        }
        frontier = std::move(next);
      }
      return r;
    }
    case ProgramTag::IfThenElse: {
      Outcome3 g = eval_formula(w, p->fml, fuel);
      if (g.is_true()) return run_program(w, p->p1, fuel);
      if (g.is_false()) return run_program(w, p->p2, fuel);
      r.truncated = true;
      r.hit_unsupported |= g.reason == UnknownReason::UnsupportedConstruct;
      return r;
    }
    case ProgramTag::ODE:
    case ProgramTag::Const:
      r.truncated = r.hit_unsupported = true;
      return r;
  }
  throw UnsupportedError("unreachable program tag");
}

namespace {

Outcome3 kleene_not(Outcome3 a) {
  if (a.is_true()) return Outcome3::no();
  if (a.is_false()) return Outcome3::yes();
  return a;
}

Outcome3 kleene_and(Outcome3 a, Outcome3 b) {
  if (a.is_false() || b.is_false()) return Outcome3::no();
  if (a.is_true() && b.is_true()) return Outcome3::yes();
  return a.is_unknown() ? a : b;
}

Outcome3 kleene_or(Outcome3 a, Outcome3 b) {
  if (a.is_true() || b.is_true()) return Outcome3::yes();
  if (a.is_false() && b.is_false()) return Outcome3::no();
  return a.is_unknown() ? a : b;
}

}  // namespace

Outcome3 eval_formula(const State& w, const Formula& f, unsigned fuel) {
  switch (f->tag) {
    case FormulaTag::Less:
    case FormulaTag::LessEq:
    case FormulaTag::Equal:
    case FormulaTag::GreaterEq:
    case FormulaTag::Greater: {
      int c = compare_values(eval_term(w, f->t1), eval_term(w, f->t2));
      bool v = false;
      switch (f->tag) {
        case FormulaTag::Less: v = c < 0; break;
        case FormulaTag::LessEq: v = c <= 0; break;
        case FormulaTag::Equal: v = c == 0; break;
        case FormulaTag::GreaterEq: v = c >= 0; break;
        default: v = c > 0; break;
      }
      return v ? Outcome3::yes() : Outcome3::no();
    }
    case FormulaTag::True:
      return Outcome3::yes();
    case FormulaTag::False:
      return Outcome3::no();
    case FormulaTag::Not:
      return kleene_not(eval_formula(w, f->f1, fuel));
    case FormulaTag::And:
      return kleene_and(eval_formula(w, f->f1, fuel), eval_formula(w, f->f2, fuel));
    case FormulaTag::Or:
      return kleene_or(eval_formula(w, f->f1, fuel), eval_formula(w, f->f2, fuel));
    case FormulaTag::Implies:
      return kleene_or(kleene_not(eval_formula(w, f->f1, fuel)),
                       eval_formula(w, f->f2, fuel));
    case FormulaTag::Equiv: {
      Outcome3 a = eval_formula(w, f->f1, fuel);
      Outcome3 b = eval_formula(w, f->f2, fuel);
      if (a.is_unknown()) return a;
      if (b.is_unknown()) return b;
      return a.value == b.value ? Outcome3::yes() : Outcome3::no();
    }
    case FormulaTag::Box:
    case FormulaTag::Diamond: {
      RunResult rr = run_program(w, f->prog, fuel);
      bool box = f->tag == FormulaTag::Box;
      bool any_unknown = false;
      UnknownReason reason = rr.hit_unsupported ? UnknownReason::UnsupportedConstruct
                                                : UnknownReason::FuelExhausted;
      for (const State& s : rr.reached) {
        Outcome3 o = eval_formula(s, f->f1, fuel);
        if (o.is_unknown()) {
          any_unknown = true;
          if (o.reason == UnknownReason::UnsupportedConstruct)
            reason = UnknownReason::UnsupportedConstruct;
          continue;
        }
        // A found violation (or witness) is definite even on truncated runs.
        if (box && o.is_false()) return Outcome3::no();
        if (!box && o.is_true()) return Outcome3::yes();
      }
      if (rr.truncated || any_unknown) return Outcome3::unknown(reason);
      return box ? Outcome3::yes() : Outcome3::no();
    }
    case FormulaTag::Forall:
    case FormulaTag::Exists:
      throw UnsupportedError("cannot evaluate quantifiers");
    case FormulaTag::Pred:
      throw UnsupportedError("cannot evaluate predicate symbol '" + f->name + "'");
  }
  throw UnsupportedError("unreachable formula tag");
}

FalsifyResult falsify(const Formula& f, std::uint64_t trials, std::uint64_t seed,
                      unsigned fuel) {
  VarSet fv = free_vars(f);
  if (!fv.is_finite())
    throw UnsupportedError("cannot sample states: formula has symbolic free variables");
  std::vector<Variable> vars(fv.vars.begin(), fv.vars.end());  // sorted by name

  // mt19937_64 output mapped by modulus; the sequence is pinned by the C++
  // standard, so results are reproducible across platforms.
  std::mt19937_64 rng(seed);
  FalsifyResult result;
  result.trials = trials;
  for (std::uint64_t i = 0; i < trials; ++i) {
    State w;
    for (const Variable& v : vars) {
      long long num = static_cast<long long>(rng() % 21) - 10;
      long long den = static_cast<long long>(rng() % 4) + 1;
      w = w.with(v, Rational(num, den));
    }
    Outcome3 o = eval_formula(w, f, fuel);
    if (o.is_false()) {
      result.refuted = true;
      result.counterexample = w;
      result.trial = i;
      return result;
    }
    if (o.is_unknown()) ++result.unknowns;
  }
  return result;
}

// ----------------------------------------------------------------------------
// Polynomials

Polynomial Polynomial::constant(Rational r) {
  Polynomial p;
  if (r != 0) p.coeffs_[Monomial{}] = std::move(r);
  return p;
}

Polynomial Polynomial::variable(const std::string& name) {
  Polynomial p;
  p.coeffs_[Monomial{{name, 1}}] = Rational(1);
  return p;
}

Polynomial Polynomial::add(const Polynomial& o) const {
  Polynomial r = *this;
  for (const auto& [m, c] : o.coeffs_) {
    auto it = r.coeffs_.find(m);
    if (it == r.coeffs_.end()) {
      r.coeffs_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second == 0) r.coeffs_.erase(it);
    }
  }
  return r;
}

Polynomial Polynomial::neg() const {
  Polynomial r;
  for (const auto& [m, c] : coeffs_) r.coeffs_.emplace(m, -c);
  return r;
}

Polynomial Polynomial::sub(const Polynomial& o) const { return add(o.neg()); }

Polynomial Polynomial::mul(const Polynomial& o) const {
  Polynomial r;
  for (const auto& [m1, c1] : coeffs_) {
    for (const auto& [m2, c2] : o.coeffs_) {
      Monomial m = m1;
      for (const auto& [v, e] : m2) m[v] += e;
      Rational c = c1 * c2;
      auto it = r.coeffs_.find(m);
      if (it == r.coeffs_.end()) {
        if (c != 0) r.coeffs_.emplace(std::move(m), std::move(c));
      } else {
        it->second += c;
        if (it->second == 0) r.coeffs_.erase(it);
      }
    }
  }
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial acc = Polynomial::constant(Rational(1));
  for (unsigned i = 0; i < e; ++i) acc = acc.mul(*this);
  return acc;
}

bool Polynomial::is_constant() const {
  if (coeffs_.empty()) return true;
  return coeffs_.size() == 1 && coeffs_.begin()->first.empty();
}

Rational Polynomial::constant_value() const {
  if (coeffs_.empty()) return Rational(0);
  return coeffs_.begin()->second;
}

std::string Polynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : coeffs_) {
    if (!first) out << " + ";
    first = false;
    out << rational_to_string(c);
    for (const auto& [v, e] : m) {
      out << "*" << v;
      if (e > 1) out << "^" << e;
    }
  }
  return out.str();
}

Polynomial ring_normalize(const Term& t) {
  switch (t->tag) {
    case TermTag::Var:
      return Polynomial::variable(t->var.name);
    case TermTag::Lit:
      return Polynomial::constant(t->lit);
    case TermTag::Plus:
      return ring_normalize(t->lhs).add(ring_normalize(t->rhs));
    case TermTag::Minus:
      return ring_normalize(t->lhs).sub(ring_normalize(t->rhs));
    case TermTag::Times:
      return ring_normalize(t->lhs).mul(ring_normalize(t->rhs));
    case TermTag::Neg:
      return ring_normalize(t->lhs).neg();
    case TermTag::Power:
      return ring_normalize(t->lhs).pow(t->exponent);
    case TermTag::Func:
      throw UnsupportedError("cannot normalize function symbol '" + t->name + "'");
    case TermTag::Dot:
      throw UnsupportedError("cannot normalize the argument placeholder '.'");
  }
  throw UnsupportedError("unreachable term tag");
}

}  // namespace dlopt
