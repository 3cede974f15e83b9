// Copyright (c) 2026 The dlopt developers. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
//
// Static semantics: free, bound and must-bound variables plus signature
// extraction. free_vars is a sound over-approximation with the must-bound
// refinement applied to sequencing only; loops get the conservative textual
// reading.
#pragma once

#include <compare>
#include <set>
#include <string>

#include "dlopt/syntax.hpp"

namespace dlopt {

// A finite set of variables or the distinguished top element AllVars.
// AllVars absorbs unions and is a superset of every set. Subtracting a finite
// set from AllVars stays AllVars (sound upper bound).
struct VarSet {
  bool all = false;
  std::set<Variable> vars;

  static VarSet none() { return {}; }
  static VarSet all_vars() { return {true, {}}; }
  static VarSet of(std::initializer_list<Variable> vs) { return {false, vs}; }

  bool contains(const Variable& v) const { return all || vars.count(v) > 0; }
  bool empty() const { return !all && vars.empty(); }
  bool is_finite() const { return !all; }

  VarSet union_with(const VarSet& o) const;
  VarSet intersect(const VarSet& o) const;
  VarSet minus(const VarSet& o) const;
  bool subset_of(const VarSet& o) const;
  bool disjoint(const VarSet& o) const;
  void insert(const Variable& v) {
    if (!all) vars.insert(v);
  }

  friend bool operator==(const VarSet&, const VarSet&) = default;

  std::string to_string() const;
};

VarSet free_vars(const Term& t);
VarSet free_vars(const Formula& f);
VarSet free_vars(const Program& p);
VarSet free_vars(const Expr& e);

VarSet bound_vars(const Program& p);
VarSet must_bound_vars(const Program& p);

enum class SymbolKind { Function, Predicate, ProgramConst };

struct SymbolDescr {
  SymbolKind kind;
  std::string name;
  int arity;  // 0 or 1; program constants are always 0

  friend auto operator<=>(const SymbolDescr&, const SymbolDescr&) = default;
};

std::set<SymbolDescr> signature(const Term& t);
std::set<SymbolDescr> signature(const Formula& f);
std::set<SymbolDescr> signature(const Program& p);
std::set<SymbolDescr> signature(const Expr& e);

// Free variables as used by the substitution capture checks. Unlike free_vars,
// function and predicate symbols contribute only their argument's variables:
// their interpretations are fixed relations, so a symbol occurrence introduces
// no state dependence of its own. Nullary predicate symbols are carried as
// opaque postcondition parameters and contribute nothing; program constants
// still contribute AllVars. DotTerm contributes nothing.
VarSet substitution_free_vars(const Term& t);
VarSet substitution_free_vars(const Formula& f);
VarSet substitution_free_vars(const Program& p);
VarSet substitution_free_vars(const Expr& e);

}  // namespace dlopt
