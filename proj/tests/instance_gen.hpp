// Copyright (c) 2026 The dlopt developers. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
//
// Random admissible axiom instances over discrete replacements, shared by the
// kernel property tests and the acceptance suite.
#pragma once

#include <optional>

#include "dlopt/kernel.hpp"
#include "dlopt/semantics.hpp"
#include "gen.hpp"

namespace dlopt::testgen {

// Draws a substitution mapping every symbol of the axiom to discrete
// (ODE-free, symbol-free) syntax; returns nullopt when the draw clashes.
inline std::optional<Judgment> random_admissible_instance(Gen& gen, AxiomId id) {
  UniformSubstitution sigma;
  switch (id) {
    case AxiomId::ComposeB:
    case AxiomId::BAnd:
    case AxiomId::ChoiceB:
      sigma.add_program("a", gen.discrete_program(2));
      if (id != AxiomId::BAnd) sigma.add_program("b", gen.discrete_program(2));
      sigma.add_predicate("P", 0, gen.qf_formula(2));
      if (id == AxiomId::BAnd) sigma.add_predicate("Q", 0, gen.qf_formula(2));
      break;
    case AxiomId::TestB:
      sigma.add_predicate("Q", 0, gen.qf_formula(2));
      sigma.add_predicate("P", 0, gen.qf_formula(2));
      break;
    case AxiomId::AssignB:
      sigma.add_function("f", 0, gen.term(2));
      sigma.add_predicate("p", 1, gen.qf_formula(2, true, /*allow_dot=*/true));
      break;
    case AxiomId::LoopUnwindEq:
      // The unfolded loop body runs under a guard that may never settle, so
      // keep it linear: a branching body would multiply the frontier at
      // every iteration of the breadth-first run.
      sigma.add_predicate("Q", 0, gen.comparison(1));
      sigma.add_program("a", gen.loop_body());
      break;
  }
  try {
    return instantiate_axiom(id, sigma);
  } catch (const ClashError&) {
    return std::nullopt;
  }
}

// True when the instance never evaluates to false across `states` samples.
// Valid judgments are evaluated directly; program equivalences compare exact
// reachable-state sets (skipped when either side truncates).
inline bool instance_never_false(Gen& gen, const Judgment& j, int states, unsigned fuel) {
  for (int i = 0; i < states; ++i) {
    State w = gen.state();
    if (!j.is_prog_eq) {
      if (eval_formula(w, j.formula, fuel).is_false()) return false;
      continue;
    }
    RunResult l = run_program(w, j.left, fuel);
    RunResult r = run_program(w, j.right, fuel);
    if (l.truncated || r.truncated) continue;
    if (!(l.reached == r.reached)) return false;
  }
  return true;
}

}  // namespace dlopt::testgen
