// Copyright (c) 2026 The dlopt developers. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
//
// The independent oracle: total-state exact-rational term evaluation,
// fuel-bounded three-valued formula evaluation, nondeterminism-enumerating
// program execution, a seeded randomized falsifier, and commutative-ring
// polynomial normalization.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dlopt/rational.hpp"
#include "dlopt/syntax.hpp"

namespace dlopt {

// A total assignment of exact rationals to all variables: a default value
// plus finitely many overrides, kept sorted by name. Overrides equal to the
// default are dropped so that extensional equality coincides with
// representational equality. Flat storage keeps the breadth-first program
// execution cheap; states are small.
class State {
 public:
  State() : def_(0) {}
  explicit State(Rational def) : def_(std::move(def)) {}

  const Rational& get(const Variable& v) const {
    auto it = lower_bound(v);
    return (it != vals_.end() && it->first == v) ? it->second : def_;
  }

  State with(const Variable& v, Rational r) const {
    State s = *this;
    auto it = s.lower_bound(v);
    bool present = it != s.vals_.end() && it->first == v;
    if (rational_equal(r, s.def_)) {
      if (present) s.vals_.erase(it);
    } else if (present) {
      it->second = std::move(r);
    } else {
      s.vals_.insert(it, {v, std::move(r)});
    }
    return s;
  }

  const Rational& default_value() const { return def_; }
  const std::vector<std::pair<Variable, Rational>>& overrides() const { return vals_; }

  friend bool operator==(const State& a, const State& b) {
    if (!rational_equal(a.def_, b.def_) || a.vals_.size() != b.vals_.size()) return false;
    for (std::size_t i = 0; i < a.vals_.size(); ++i)
      if (a.vals_[i].first != b.vals_[i].first ||
          !rational_equal(a.vals_[i].second, b.vals_[i].second))
        return false;
    return true;
  }
  // Representation order (not value order): state sets only need a strict
  // weak order consistent with equality.
  friend bool operator<(const State& a, const State& b) {
    if (!rational_equal(a.def_, b.def_)) return representation_less(a.def_, b.def_);
    auto ia = a.vals_.begin(), ib = b.vals_.begin();
    for (; ia != a.vals_.end() && ib != b.vals_.end(); ++ia, ++ib) {
      if (ia->first != ib->first) return ia->first < ib->first;
      if (!rational_equal(ia->second, ib->second))
        return representation_less(ia->second, ib->second);
    }
    return ia == a.vals_.end() && ib != b.vals_.end();
  }

  std::string to_string() const;

 private:
  std::vector<std::pair<Variable, Rational>>::iterator lower_bound(const Variable& v) {
    return std::lower_bound(vals_.begin(), vals_.end(), v,
                            [](const auto& e, const Variable& k) { return e.first < k; });
  }
  std::vector<std::pair<Variable, Rational>>::const_iterator lower_bound(
      const Variable& v) const {
    return std::lower_bound(vals_.begin(), vals_.end(), v,
                            [](const auto& e, const Variable& k) { return e.first < k; });
  }

  Rational def_;
  std::vector<std::pair<Variable, Rational>> vals_;
};

enum class UnknownReason { FuelExhausted, UnsupportedConstruct };

struct Outcome3 {
  enum Value { TrueO, FalseO, UnknownO } value;
  UnknownReason reason = UnknownReason::FuelExhausted;

  static Outcome3 yes() { return {TrueO}; }
  static Outcome3 no() { return {FalseO}; }
  static Outcome3 unknown(UnknownReason r) { return {UnknownO, r}; }

  bool is_true() const { return value == TrueO; }
  bool is_false() const { return value == FalseO; }
  bool is_unknown() const { return value == UnknownO; }
};

struct RunResult {
  std::set<State> reached;
  bool truncated = false;        // fuel ran out or an unsupported construct
  bool hit_unsupported = false;  // an ODE or program constant was encountered
};

// Exact arithmetic; throws UnsupportedError on DotTerm or function symbols.
Rational eval_term(const State& w, const Term& t);

// Enumerates reachable final states. Loops run breadth-first for at most
// `fuel` iterations; truncated=false means `reached` is the exact set.
RunResult run_program(const State& w, const Program& p, unsigned fuel);

// Strong Kleene three-valued evaluation. Box is true only on untruncated
// runs but may be false on truncated ones (a found violation is a
// violation); Diamond dually. Throws UnsupportedError on quantifiers,
// predicate symbols, or DotTerm.
Outcome3 eval_formula(const State& w, const Formula& f, unsigned fuel);

struct FalsifyResult {
  bool refuted = false;
  State counterexample;
  std::uint64_t trial = 0;  // index of the refuting trial
  std::uint64_t trials = 0;
  std::uint64_t unknowns = 0;
};

// Samples `trials` states on the formula's free variables (numerators in
// [-10,10], denominators in {1,2,3,4}, default 0 elsewhere) and returns the
// first falsifying state. Deterministic for a given seed.
FalsifyResult falsify(const Formula& f, std::uint64_t trials, std::uint64_t seed,
                      unsigned fuel);

// ----------------------------------------------------------------------------
// Ring normalization

// A monomial maps variable names to positive exponents.
using Monomial = std::map<std::string, unsigned>;

// Expanded canonical form: monomials with exact rational coefficients, zero
// coefficients dropped. Equal normal forms iff the terms agree in every state.
class Polynomial {
 public:
  static Polynomial constant(Rational r);
  static Polynomial variable(const std::string& name);

  Polynomial add(const Polynomial& o) const;
  Polynomial sub(const Polynomial& o) const;
  Polynomial mul(const Polynomial& o) const;
  Polynomial neg() const;
  Polynomial pow(unsigned e) const;

  bool is_constant() const;
  Rational constant_value() const;  // requires is_constant()

  const std::map<Monomial, Rational>& coefficients() const { return coeffs_; }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  std::string to_string() const;

 private:
  std::map<Monomial, Rational> coeffs_;
};

// Throws UnsupportedError on DotTerm or function symbols.
Polynomial ring_normalize(const Term& t);

}  // namespace dlopt
