// Copyright (c) 2026 The dlopt developers. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
//
// The trusted checker: a fixed registry of axiom schemas and locally sound
// rules, instantiated exclusively through uniform substitution and uniform
// renaming. Certificates are replayable proof trees; checking re-derives
// every node's conclusion and trusts nothing stored.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dlopt/paths.hpp"
#include "dlopt/syntax.hpp"
#include "dlopt/usubst.hpp"

namespace dlopt {

enum class AxiomId { ComposeB, BAnd, AssignB, ChoiceB, TestB, LoopUnwindEq };

enum class RuleId {
  US,
  USR,
  CQ,
  CT,
  CP,
  Loop,
  ImplyR,
  ModusPonens,
  EquivRewrite,
  PolyIdentity
};

std::string axiom_name(AxiomId id);
std::optional<AxiomId> axiom_from_name(const std::string& name);
std::string rule_name(RuleId id);
std::optional<RuleId> rule_from_name(const std::string& name);

// Valid(formula) or ProgEq(left, right).
struct Judgment {
  bool is_prog_eq = false;
  Formula formula;
  Program left, right;

  static Judgment valid(Formula f) {
    Judgment j;
    j.formula = std::move(f);
    return j;
  }
  static Judgment prog_eq(Program l, Program r) {
    Judgment j;
    j.is_prog_eq = true;
    j.left = std::move(l);
    j.right = std::move(r);
    return j;
  }
};

bool structural_equal(const Judgment& a, const Judgment& b);
std::string judgment_to_string(const Judgment& j);

// Parameters of rule applications. Which fields are read depends on the rule;
// see apply_rule.
struct RuleParams {
  UniformSubstitution sigma;            // US, USR
  std::string base_rule;                // USR: "CQ" or "CT"
  Formula context_formula;              // CQ, CP
  Term context_term;                    // CT
  Path path;                            // CQ, CT, CP, EquivRewrite
  bool reverse = false;                 // EquivRewrite direction
  Formula invariant;                    // Loop
  std::vector<Formula> gamma, delta;    // Loop, ImplyR (delta unused there)
  Program loop;                         // Loop: the {a}* or while(Q){a} program
  Formula post;                         // Loop
  Formula antecedent, consequent;       // ImplyR
  Formula equation;                     // PolyIdentity
};

struct CertNode;
using Certificate = std::shared_ptr<const CertNode>;

struct AxiomInstanceData {
  AxiomId id;
  UniformSubstitution sigma;
  std::vector<std::pair<Variable, Variable>> renamings;
};

struct RuleAppData {
  RuleId id;
  RuleParams params;
  std::vector<Certificate> premises;
};

struct OpenPremiseData {
  Judgment judgment;
  std::string label;
};

struct CertNode {
  Judgment conclusion;
  std::variant<AxiomInstanceData, RuleAppData, OpenPremiseData> node;
};

// Schema lookup (immutable registry).
Judgment axiom_schema(AxiomId id);

// Renamings are applied to the schema before the substitution. Throws
// DomainError if sigma maps symbols absent from the (renamed) schema,
// ClashError on inadmissible substitution, RenameError on bad renamings.
Judgment instantiate_axiom(AxiomId id, const UniformSubstitution& sigma,
                           const std::vector<std::pair<Variable, Variable>>& renamings = {});

Certificate axiom_certificate(AxiomId id, const UniformSubstitution& sigma,
                              const std::vector<std::pair<Variable, Variable>>& renamings = {});

Certificate open_premise(Judgment j, std::string label);

// Computes the conclusion from premises and parameters; throws ArityError,
// ShapeError, PathError, OracleError or ClashError when they do not fit.
Certificate apply_rule(RuleId id, RuleParams params, std::vector<Certificate> premises);

struct Verdict {
  enum Status { Certified, CertifiedWithOpenPremises, Rejected } status;
  std::vector<std::pair<Judgment, std::string>> open_premises;
  std::string reason;  // for Rejected
  std::string where;   // description of the rejected node

  bool certified() const { return status == Certified; }
};

// Re-derives every node bottom-up; pure, never throws.
Verdict check_certificate(const Certificate& c);

// Derived conveniences (plain compositions of kernel rules, nothing trusted).
// equiv_* expect certificates concluding Valid(A <-> B).
Certificate equiv_symm(const Certificate& c);
Certificate equiv_trans(const Certificate& ab, const Certificate& bc);
// Valid(f <-> f); uses a PolyIdentity-backed CQ step when f contains a
// polynomial term, otherwise an open premise.
Certificate equiv_reflexivity(const Formula& f);
// From equivalence A<->B and Valid(phi) with phi|path == A (or B when
// reverse), concludes Valid(phi) with that occurrence replaced.
Certificate rewrite_with(const Certificate& equivalence, const Certificate& target,
                         Path path, bool reverse = false);

// Sequent encodings shared by Loop and ImplyR ("G |- D" as /\G -> \/D).
Formula conj_list(const std::vector<Formula>& fs);          // empty -> true
Formula imp_conj(const std::vector<Formula>& gamma, Formula rhs);  // empty -> rhs
Formula disj_cons(Formula first, const std::vector<Formula>& rest);

}  // namespace dlopt
