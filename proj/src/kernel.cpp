// Copyright (c) 2026 The dlopt developers. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#include "dlopt/kernel.hpp"

#include <map>

#include "dlopt/errors.hpp"
#include "dlopt/printer.hpp"
#include "dlopt/semantics.hpp"
#include "dlopt/statics.hpp"

namespace dlopt {

std::string axiom_name(AxiomId id) {
  switch (id) {
    case AxiomId::ComposeB: return "composeb";
    case AxiomId::BAnd: return "band";
    case AxiomId::AssignB: return "assignb";
    case AxiomId::ChoiceB: return "choiceb";
    case AxiomId::TestB: return "testb";
    case AxiomId::LoopUnwindEq: return "loopunwindeq";
  }
  return "?";
}

std::optional<AxiomId> axiom_from_name(const std::string& name) {
  if (name == "composeb") return AxiomId::ComposeB;
  if (name == "band") return AxiomId::BAnd;
  if (name == "assignb") return AxiomId::AssignB;
  if (name == "choiceb") return AxiomId::ChoiceB;
  if (name == "testb") return AxiomId::TestB;
  if (name == "loopunwindeq") return AxiomId::LoopUnwindEq;
  return std::nullopt;
}

std::string rule_name(RuleId id) {
  switch (id) {
    case RuleId::US: return "US";
    case RuleId::USR: return "USR";
    case RuleId::CQ: return "CQ";
    case RuleId::CT: return "CT";
    case RuleId::CP: return "CP";
    case RuleId::Loop: return "loop";
    case RuleId::ImplyR: return "implyr";
    case RuleId::ModusPonens: return "mp";
    case RuleId::EquivRewrite: return "rewrite";
    case RuleId::PolyIdentity: return "polyid";
  }
  return "?";
}

std::optional<RuleId> rule_from_name(const std::string& name) {
  if (name == "US") return RuleId::US;
  if (name == "USR") return RuleId::USR;
  if (name == "CQ") return RuleId::CQ;
  if (name == "CT") return RuleId::CT;
  if (name == "CP") return RuleId::CP;
  if (name == "loop") return RuleId::Loop;
  if (name == "implyr") return RuleId::ImplyR;
  if (name == "mp") return RuleId::ModusPonens;
  if (name == "rewrite") return RuleId::EquivRewrite;
  if (name == "polyid") return RuleId::PolyIdentity;
  return std::nullopt;
}

bool structural_equal(const Judgment& a, const Judgment& b) {
  if (a.is_prog_eq != b.is_prog_eq) return false;
  if (a.is_prog_eq)
    return structural_equal(a.left, b.left) && structural_equal(a.right, b.right);
  return structural_equal(a.formula, b.formula);
}

std::string judgment_to_string(const Judgment& j) {
  if (j.is_prog_eq)
    return pretty_print(j.left) + " = " + pretty_print(j.right);
  return pretty_print(j.formula);
}

// ----------------------------------------------------------------------------
// Axiom registry. Schema symbols: program constants a, b; postcondition
// placeholders P, Q; nullary function f; unary predicate p; variable x.

Judgment axiom_schema(AxiomId id) {
  const Program a = mk_prog_const("a");
  const Program b = mk_prog_const("b");
  const Formula P = mk_pred("P");
  const Formula Q = mk_pred("Q");
  switch (id) {
    case AxiomId::ComposeB:
      // [a;b]P <-> [a][b]P
      return Judgment::valid(
          mk_equiv(mk_box(mk_seq(a, b), P), mk_box(a, mk_box(b, P))));
    case AxiomId::BAnd:
      // [a](P&Q) <-> [a]P & [a]Q
      return Judgment::valid(mk_equiv(mk_box(a, mk_and(P, Q)),
                                      mk_and(mk_box(a, P), mk_box(a, Q))));
    case AxiomId::AssignB: {
      // [x:=f]p(x) <-> p(f)
      Variable x{"x"};
      Term f = mk_func("f");
      return Judgment::valid(mk_equiv(mk_box(mk_assign(x, f), mk_pred("p", mk_var(x))),
                                      mk_pred("p", f)));
    }
    case AxiomId::ChoiceB:
      // [a ++ b]P <-> [a]P & [b]P
      return Judgment::valid(mk_equiv(mk_box(mk_choice(a, b), P),
                                      mk_and(mk_box(a, P), mk_box(b, P))));
    case AxiomId::TestB:
      // [?Q]P <-> (Q -> P)
      return Judgment::valid(mk_equiv(mk_box(mk_test(Q), P), mk_implies(Q, P)));
    case AxiomId::LoopUnwindEq:
      // while(Q){a} = if(Q){a; while(Q){a}}
      return Judgment::prog_eq(
          mk_while(Q, a),
          mk_if(Q, mk_seq(a, mk_while(Q, a)), mk_skip()));
  }
  throw DomainError("unknown axiom");
}

namespace {

std::set<SymbolDescr> judgment_signature(const Judgment& j) {
  if (!j.is_prog_eq) return signature(j.formula);
  std::set<SymbolDescr> s = signature(j.left);
  auto s2 = signature(j.right);
  s.insert(s2.begin(), s2.end());
  return s;
}

Judgment rename_judgment(const Judgment& j, const Variable& x, const Variable& y) {
  if (j.is_prog_eq)
    return Judgment::prog_eq(uniform_rename(x, y, j.left), uniform_rename(x, y, j.right));
  return Judgment::valid(uniform_rename(x, y, j.formula));
}

}  // namespace

Judgment instantiate_axiom(AxiomId id, const UniformSubstitution& sigma,
                           const std::vector<std::pair<Variable, Variable>>& renamings) {
  Judgment schema = axiom_schema(id);
  for (const auto& [x, y] : renamings) schema = rename_judgment(schema, x, y);

  std::set<SymbolDescr> sig = judgment_signature(schema);
  for (const auto& e : sigma.entries()) {
    SymbolDescr d{e.kind, e.name, e.kind == SymbolKind::ProgramConst ? 0 : e.arity};
    if (!sig.count(d))
      throw DomainError("substitution maps symbol '" + e.name +
                        "' absent from axiom " + axiom_name(id));
  }

  if (schema.is_prog_eq)
    return Judgment::prog_eq(apply_usubst(sigma, schema.left),
                             apply_usubst(sigma, schema.right));
  return Judgment::valid(apply_usubst(sigma, schema.formula));
}

Certificate axiom_certificate(AxiomId id, const UniformSubstitution& sigma,
                              const std::vector<std::pair<Variable, Variable>>& renamings) {
  CertNode n;
  n.conclusion = instantiate_axiom(id, sigma, renamings);
  n.node = AxiomInstanceData{id, sigma, renamings};
  return std::make_shared<const CertNode>(std::move(n));
}

Certificate open_premise(Judgment j, std::string label) {
  CertNode n;
  n.conclusion = j;
  n.node = OpenPremiseData{std::move(j), std::move(label)};
  return std::make_shared<const CertNode>(std::move(n));
}

// ----------------------------------------------------------------------------
// Sequent encodings

Formula conj_list(const std::vector<Formula>& fs) {
  if (fs.empty()) return mk_true();
  Formula acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = mk_and(acc, fs[i]);
  return acc;
}

Formula imp_conj(const std::vector<Formula>& gamma, Formula rhs) {
  if (gamma.empty()) return rhs;
  return mk_implies(conj_list(gamma), std::move(rhs));
}

Formula disj_cons(Formula first, const std::vector<Formula>& rest) {
  Formula acc = std::move(first);
  for (const Formula& d : rest) acc = mk_or(acc, d);
  return acc;
}

// ----------------------------------------------------------------------------
// Rules

namespace {

const Formula& premise_formula(const Certificate& c, const char* rule) {
  if (c->conclusion.is_prog_eq)
    throw ShapeError(std::string(rule) + ": premise must be a formula judgment");
  return c->conclusion.formula;
}

void expect_arity(RuleId id, const std::vector<Certificate>& premises, std::size_t n) {
  if (premises.size() != n)
    throw ArityError(rule_name(id) + " expects " + std::to_string(n) + " premise(s), got " +
                     std::to_string(premises.size()));
}

// Registered base-rule shapes usable with USR.
struct BaseRule {
  Formula premise;
  Formula conclusion;
};

BaseRule base_rule_shape(const std::string& name) {
  Term f = mk_func("f");
  Term g = mk_func("g");
  if (name == "CQ")
    return {mk_equal(f, g), mk_equiv(mk_pred("p", f), mk_pred("p", g))};
  if (name == "CT")
    return {mk_equal(f, g), mk_equal(mk_func("c", f), mk_func("c", g))};
  throw DomainError("USR: unknown base rule '" + name + "'");
}

Judgment derive_conclusion(RuleId id, const RuleParams& params,
                           const std::vector<Certificate>& premises) {
  switch (id) {
    case RuleId::US: {
      expect_arity(id, premises, 1);
      const Formula& phi = premise_formula(premises[0], "US");
      return Judgment::valid(apply_usubst(params.sigma, phi));
    }
    case RuleId::USR: {
      expect_arity(id, premises, 1);
      BaseRule base = base_rule_shape(params.base_rule);
      // Locally sound instances require the substitution to introduce no
      // free variables.
      for (const auto& e : params.sigma.entries()) {
        VarSet fv;
        switch (e.kind) {
          case SymbolKind::Function: fv = substitution_free_vars(e.term); break;
          case SymbolKind::Predicate: fv = substitution_free_vars(e.formula); break;
          case SymbolKind::ProgramConst: fv = substitution_free_vars(e.program); break;
        }
        if (!fv.empty())
          throw ShapeError("USR: replacement for '" + e.name +
                           "' introduces free variables " + fv.to_string());
      }
      Formula expected = apply_usubst(params.sigma, base.premise);
      if (!structural_equal(premise_formula(premises[0], "USR"), expected))
        throw ShapeError("USR: premise does not match " + params.base_rule +
                         " instance " + pretty_print(expected));
      return Judgment::valid(apply_usubst(params.sigma, base.conclusion));
    }
    case RuleId::CQ: {
      expect_arity(id, premises, 1);
      const Formula& eq = premise_formula(premises[0], "CQ");
      if (eq->tag != FormulaTag::Equal)
        throw ShapeError("CQ: premise must be a term equation");
      if (!params.context_formula) throw ShapeError("CQ: missing context formula");
      Expr sub = subtree_at(Expr(params.context_formula), params.path);
      if (!std::holds_alternative<Term>(sub))
        throw PathError("CQ: path does not address a term");
      if (!structural_equal(std::get<Term>(sub), eq->t1))
        throw ShapeError("CQ: term at path differs from the equation's left side");
      Expr rewritten = replace_at(Expr(params.context_formula), params.path, Expr(eq->t2));
      return Judgment::valid(
          mk_equiv(params.context_formula, std::get<Formula>(rewritten)));
    }
    case RuleId::CT: {
      expect_arity(id, premises, 1);
      const Formula& eq = premise_formula(premises[0], "CT");
      if (eq->tag != FormulaTag::Equal)
        throw ShapeError("CT: premise must be a term equation");
      if (!params.context_term) throw ShapeError("CT: missing context term");
      Expr sub = subtree_at(Expr(params.context_term), params.path);
      if (!std::holds_alternative<Term>(sub))
        throw PathError("CT: path does not address a term");
      if (!structural_equal(std::get<Term>(sub), eq->t1))
        throw ShapeError("CT: term at path differs from the equation's left side");
      Expr rewritten = replace_at(Expr(params.context_term), params.path, Expr(eq->t2));
      return Judgment::valid(mk_equal(params.context_term, std::get<Term>(rewritten)));
    }
    case RuleId::CP: {
      expect_arity(id, premises, 1);
      if (!premises[0]->conclusion.is_prog_eq)
        throw ShapeError("CP: premise must be a program equivalence");
      if (!params.context_formula) throw ShapeError("CP: missing context formula");
      Expr sub = subtree_at(Expr(params.context_formula), params.path);
      if (!std::holds_alternative<Program>(sub))
        throw PathError("CP: path does not address a program");
      if (!structural_equal(std::get<Program>(sub), premises[0]->conclusion.left))
        throw ShapeError("CP: program at path differs from the equivalence's left side");
      Expr rewritten = replace_at(Expr(params.context_formula), params.path,
                                  Expr(premises[0]->conclusion.right));
      return Judgment::valid(
          mk_equiv(params.context_formula, std::get<Formula>(rewritten)));
    }
    case RuleId::Loop: {
      expect_arity(id, premises, 3);
      if (!params.invariant || !params.loop || !params.post)
        throw ShapeError("loop: missing invariant, loop program or postcondition");
      const Formula& J = params.invariant;
      Formula p1_expected = imp_conj(params.gamma, disj_cons(J, params.delta));
      Formula p2_expected, p3_expected;
      if (params.loop->tag == ProgramTag::Repeat) {
        p2_expected = mk_implies(J, mk_box(params.loop->p1, J));
        p3_expected = mk_implies(J, params.post);
      } else if (params.loop->tag == ProgramTag::While) {
        p2_expected = mk_implies(mk_and(J, params.loop->fml), mk_box(params.loop->p1, J));
        p3_expected = mk_implies(mk_and(J, mk_not(params.loop->fml)), params.post);
      } else {
        throw ShapeError("loop: parameter must be a repetition or a while loop");
      }
      const Formula* expected[3] = {&p1_expected, &p2_expected, &p3_expected};
      for (int i = 0; i < 3; ++i)
        if (!structural_equal(premise_formula(premises[i], "loop"), *expected[i]))
          throw ShapeError("loop: premise " + std::to_string(i + 1) +
                           " must be " + pretty_print(*expected[i]));
      return Judgment::valid(
          imp_conj(params.gamma, disj_cons(mk_box(params.loop, params.post), params.delta)));
    }
    case RuleId::ImplyR: {
      expect_arity(id, premises, 1);
      if (!params.antecedent || !params.consequent)
        throw ShapeError("implyr: missing antecedent or consequent");
      std::vector<Formula> extended = params.gamma;
      extended.push_back(params.antecedent);
      Formula expected = imp_conj(extended, params.consequent);
      if (!structural_equal(premise_formula(premises[0], "implyr"), expected))
        throw ShapeError("implyr: premise must be " + pretty_print(expected));
      return Judgment::valid(
          imp_conj(params.gamma, mk_implies(params.antecedent, params.consequent)));
    }
    case RuleId::ModusPonens: {
      expect_arity(id, premises, 2);
      const Formula& imp = premise_formula(premises[0], "mp");
      const Formula& minor = premise_formula(premises[1], "mp");
      if (imp->tag != FormulaTag::Implies)
        throw ShapeError("mp: first premise must be an implication");
      if (!structural_equal(imp->f1, minor))
        throw ShapeError("mp: second premise does not match the antecedent");
      return Judgment::valid(imp->f2);
    }
    case RuleId::EquivRewrite: {
      expect_arity(id, premises, 2);
      const Formula& eq = premise_formula(premises[0], "rewrite");
      if (eq->tag != FormulaTag::Equiv)
        throw ShapeError("rewrite: first premise must be an equivalence");
      const Formula& target = premise_formula(premises[1], "rewrite");
      Expr sub = subtree_at(Expr(target), params.path);
      if (!std::holds_alternative<Formula>(sub))
        throw PathError("rewrite: path does not address a formula");
      const Formula& from = params.reverse ? eq->f2 : eq->f1;
      const Formula& to = params.reverse ? eq->f1 : eq->f2;
      if (!structural_equal(std::get<Formula>(sub), from))
        throw ShapeError("rewrite: formula at path is not the expected side of the equivalence");
      Expr rewritten = replace_at(Expr(target), params.path, Expr(to));
      return Judgment::valid(std::get<Formula>(rewritten));
    }
    case RuleId::PolyIdentity: {
      expect_arity(id, premises, 0);
      if (!params.equation || params.equation->tag != FormulaTag::Equal)
        throw ShapeError("polyid: parameter must be a term equation");
      Polynomial lhs = ring_normalize(params.equation->t1);
      Polynomial rhs = ring_normalize(params.equation->t2);
      if (!(lhs == rhs))
        throw OracleError("polyid: normal forms differ: " + lhs.to_string() + " vs " +
                          rhs.to_string());
      return Judgment::valid(params.equation);
    }
  }
  throw DomainError("unknown rule");
}

}  // namespace

Certificate apply_rule(RuleId id, RuleParams params, std::vector<Certificate> premises) {
  CertNode n;
  n.conclusion = derive_conclusion(id, params, premises);
  n.node = RuleAppData{id, std::move(params), std::move(premises)};
  return std::make_shared<const CertNode>(std::move(n));
}

// ----------------------------------------------------------------------------
// Checking

namespace {

bool check_rec(const Certificate& c, Verdict& v) {
  if (const auto* open = std::get_if<OpenPremiseData>(&c->node)) {
    if (!structural_equal(open->judgment, c->conclusion)) {
      v.status = Verdict::Rejected;
      v.reason = "open premise conclusion mismatch";
      v.where = "open premise '" + open->label + "'";
      return false;
    }
    v.open_premises.emplace_back(open->judgment, open->label);
    return true;
  }
  if (const auto* ax = std::get_if<AxiomInstanceData>(&c->node)) {
    try {
      Judgment derived = instantiate_axiom(ax->id, ax->sigma, ax->renamings);
      if (!structural_equal(derived, c->conclusion)) {
        v.status = Verdict::Rejected;
        v.reason = "stored conclusion disagrees with the re-derived instance";
        v.where = "axiom " + axiom_name(ax->id);
        return false;
      }
    } catch (const DlError& e) {
      v.status = Verdict::Rejected;
      v.reason = e.what();
      v.where = "axiom " + axiom_name(ax->id);
      return false;
    }
    return true;
  }
  const auto& rule = std::get<RuleAppData>(c->node);
  for (const Certificate& premise : rule.premises)
    if (!check_rec(premise, v)) return false;
  try {
    Certificate fresh = apply_rule(rule.id, rule.params, rule.premises);
    if (!structural_equal(fresh->conclusion, c->conclusion)) {
      v.status = Verdict::Rejected;
      v.reason = "stored conclusion disagrees with the re-derived one";
      v.where = "rule " + rule_name(rule.id);
      return false;
    }
  } catch (const DlError& e) {
    v.status = Verdict::Rejected;
    v.reason = e.what();
    v.where = "rule " + rule_name(rule.id);
    return false;
  }
  return true;
}

}  // namespace

Verdict check_certificate(const Certificate& c) {
  Verdict v;
  v.status = Verdict::Certified;
  if (!check_rec(c, v)) return v;
  if (!v.open_premises.empty()) v.status = Verdict::CertifiedWithOpenPremises;
  return v;
}

// ----------------------------------------------------------------------------
// Derived combinators

Certificate equiv_symm(const Certificate& c) {
  if (c->conclusion.is_prog_eq || c->conclusion.formula->tag != FormulaTag::Equiv)
    throw ShapeError("equiv_symm: certificate must conclude an equivalence");
  // A<->B rewrites itself: first B at the right to A, then A at the left to B.
  RuleParams p1;
  p1.path = {1};
  p1.reverse = true;
  Certificate refl = apply_rule(RuleId::EquivRewrite, p1, {c, c});  // A<->A
  RuleParams p2;
  p2.path = {0};
  Certificate flipped = apply_rule(RuleId::EquivRewrite, p2, {c, refl});  // B<->A
  return flipped;
}

Certificate equiv_trans(const Certificate& ab, const Certificate& bc) {
  RuleParams p;
  p.path = {1};
  return apply_rule(RuleId::EquivRewrite, p, {bc, ab});  // rewrite B in A<->B to C
}

namespace {

bool find_polynomial_term_path(const Expr& e, Path& prefix, Path& out) {
  if (std::holds_alternative<Term>(e)) {
    try {
      ring_normalize(std::get<Term>(e));
      out = prefix;
      return true;
    } catch (const UnsupportedError&) {
      // fall through to children (a subterm may still be polynomial)
    }
  }
  int n = child_count(e);
  for (int i = 0; i < n; ++i) {
    prefix.push_back(i);
    if (find_polynomial_term_path(child_at(e, i), prefix, out)) {
      prefix.pop_back();
      return true;
    }
    prefix.pop_back();
  }
  return false;
}

}  // namespace

Certificate equiv_reflexivity(const Formula& f) {
  Path path, prefix;
  if (find_polynomial_term_path(Expr(f), prefix, path)) {
    Term t = std::get<Term>(subtree_at(Expr(f), path));
    RuleParams poly;
    poly.equation = mk_equal(t, t);
    Certificate eq = apply_rule(RuleId::PolyIdentity, poly, {});
    RuleParams cq;
    cq.context_formula = f;
    cq.path = path;
    return apply_rule(RuleId::CQ, cq, {eq});
  }
  return open_premise(Judgment::valid(mk_equiv(f, f)), "reflexivity");
}

Certificate rewrite_with(const Certificate& equivalence, const Certificate& target,
                         Path path, bool reverse) {
  RuleParams p;
  p.path = std::move(path);
  p.reverse = reverse;
  return apply_rule(RuleId::EquivRewrite, p, {equivalence, target});
}

}  // namespace dlopt
