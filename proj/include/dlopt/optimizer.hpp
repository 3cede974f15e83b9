// Copyright (c) 2026 The dlopt developers. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
//
// Compiler transformations realized as scripted sequences of kernel steps.
// Every applied transformation returns a certificate concluding exactly
// `input <-> output`; nothing here is trusted, the kernel rechecks it all.
#pragma once

#include <optional>
#include <vector>

#include "dlopt/kernel.hpp"
#include "dlopt/syntax.hpp"

namespace dlopt {

struct OptResult {
  Formula output;
  Certificate certificate;  // conclusion: input <-> output
  bool applied = false;
};

// Pulls the common subexpression `subexpr` out of the box-modality formula f
// into a fresh variable assigned up front. Throws NotApplicableError when the
// substitution would be inadmissible (a variable of subexpr is bound between
// the introduction point and a replaced occurrence) or when fresh occurs in f.
OptResult cse(const Formula& f, const Term& subexpr, const Variable& fresh);

// Replaces the selected later reads of the variable assigned at assign_path
// by the assigned expression. occurrence_paths address Var reads within f.
OptResult copy_propagate(const Formula& f, const Path& assign_path,
                         const std::vector<Path>& occurrence_paths);

// Folds every maximal variable-free subterm to its constant value, one
// congruence step per site.
OptResult const_fold(const Formula& f);

// Replaces the term at `site` by `to`; requires equal ring normal forms.
OptResult commute_term(const Formula& f, const Path& site, const Term& to);

// Unfolds one round of the while loop at `site`.
OptResult unwind_loop(const Formula& f, const Path& site);

// --------------------------------------------------------------------------
// Site discovery (untrusted conveniences for the CLI and tests)

// Pre-order (textual) paths of read occurrences of x in f.
std::vector<Path> variable_read_paths(const Formula& f, const Variable& x);
// Pre-order paths of assignment statements in f.
std::vector<Path> assign_paths(const Formula& f);
// Pre-order paths of while loops in f.
std::vector<Path> while_paths(const Formula& f);
// Maximal variable-free, non-literal subterm sites (what const_fold folds).
std::vector<Path> foldable_paths(const Formula& f);

// --------------------------------------------------------------------------
// Quiz-style axiom use

// Matches the axiom's left-hand key against the formula's top level and, for
// implications, the top level of the consequent. Returns the rewritten
// formula for one left-to-right use, or nullopt when not applicable ("n/a").
// A matched but inadmissible instance throws ClashError. If cert_out is
// nonnull it receives a certificate for Valid(input <-> result).
std::optional<Formula> axiom_use_once(AxiomId id, const Formula& f,
                                      Certificate* cert_out = nullptr);

}  // namespace dlopt
