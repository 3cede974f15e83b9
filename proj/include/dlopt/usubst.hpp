// Copyright (c) 2026 The dlopt developers. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
//
// Uniform substitution with clash (admissibility) detection, plus uniform
// variable renaming; the only syntactic transformation primitives the kernel
// trusts. Application is one-pass with the capture check computed from
// bound_vars at each binder entered.
//
// Capture discipline, by symbol kind:
//   - function symbols and unary predicate symbols denote fixed (rigid)
//     values/relations of their argument: replacing them is admissible only
//     if no free variable of the replacement (or of a plugged argument) is
//     bound at the occurrence;
//   - nullary predicate symbols are postcondition placeholders whose
//     replacement is evaluated at each occurrence's own state, so replacing
//     them needs no capture check;
//   - program constants denote transition relations, which are state-set
//     transformers independent of surrounding binders, so replacing them
//     needs no capture check either, but they taboo everything they may
//     write for the rest of the pass.
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dlopt/errors.hpp"
#include "dlopt/statics.hpp"
#include "dlopt/syntax.hpp"

namespace dlopt {

// Finite map from symbols to replacement syntax. Textual form:
//   f() ~> x+1; p(.) ~> .>5; a{} ~> ctrl;
class UniformSubstitution {
 public:
  struct Entry {
    SymbolKind kind;
    std::string name;
    int arity = 0;  // 0 or 1 for function/predicate, 0 for programs
    Term term;
    Formula formula;
    Program program;
  };

  void add_function(std::string name, int arity, Term replacement);
  void add_predicate(std::string name, int arity, Formula replacement);
  void add_program(std::string name, Program replacement);

  const std::vector<Entry>& entries() const { return entries_; }
  const Entry* find(SymbolKind kind, const std::string& name, int arity) const;
  bool maps_name(const std::string& name) const;
  bool empty() const { return entries_.empty(); }

  // Rejects replacements that mention symbols in the map's own domain.
  void validate_no_self_reference() const;

  static UniformSubstitution from_text(std::string_view text);
  std::string to_text() const;

 private:
  void check_new_name(const std::string& name) const;
  std::vector<Entry> entries_;
};

Term apply_usubst(const UniformSubstitution& sigma, const Term& t);
Formula apply_usubst(const UniformSubstitution& sigma, const Formula& f);
Program apply_usubst(const UniformSubstitution& sigma, const Program& p);
Expr apply_usubst(const UniformSubstitution& sigma, const Expr& e);

// Replacement without any admissibility checks. Unsound in general; exists so
// that tests can demonstrate that the clash check rejects real unsoundness.
Formula apply_usubst_unchecked(const UniformSubstitution& sigma, const Formula& f);

// Renames every occurrence of x (free and bound) to y. y must not occur.
Formula uniform_rename(const Variable& x, const Variable& y, const Formula& f);
Term uniform_rename(const Variable& x, const Variable& y, const Term& t);
Program uniform_rename(const Variable& x, const Variable& y, const Program& p);

bool occurs_variable(const Variable& v, const Term& t);
bool occurs_variable(const Variable& v, const Formula& f);
bool occurs_variable(const Variable& v, const Program& p);

}  // namespace dlopt
