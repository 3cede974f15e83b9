// Copyright (c) 2026 The dlopt developers. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#include <doctest.h>

#include "dlopt/certio.hpp"
#include "dlopt/kernel.hpp"
#include "dlopt/parser.hpp"
#include "dlopt/printer.hpp"
#include "instance_gen.hpp"

using namespace dlopt;

TEST_CASE("instantiating composition with the quiz substitution") {
  UniformSubstitution sigma;
  sigma.add_program("a", mk_prog_const("ctrl"));
  sigma.add_program("b", mk_prog_const("plant"));
  sigma.add_predicate("P", 0, parse_formula("x>y"));
  Judgment j = instantiate_axiom(AxiomId::ComposeB, sigma);
  CHECK(judgment_to_string(j) == "[ctrl;plant;]x>y<->[ctrl;][plant;]x>y");
}

TEST_CASE("substitutions outside the schema signature are domain errors") {
  UniformSubstitution sigma;
  sigma.add_program("c", mk_prog_const("ctrl"));
  CHECK_THROWS_AS(instantiate_axiom(AxiomId::ComposeB, sigma), DomainError);
}

TEST_CASE("renaming lets the assignment axiom speak about other variables") {
  UniformSubstitution sigma;
  sigma.add_function("f", 0, parse_term("w+1"));
  sigma.add_predicate("p", 1, parse_formula(".>5"));
  Judgment j = instantiate_axiom(AxiomId::AssignB, sigma, {{Variable{"x"}, Variable{"w"}}});
  CHECK(judgment_to_string(j) == "[w:=w+1;]w>5<->w+1>5");
}

TEST_CASE("CQ rewrites a proven equation inside a formula") {
  RuleParams poly;
  poly.equation = parse_formula("2*3=6");
  Certificate eq = apply_rule(RuleId::PolyIdentity, poly, {});

  Formula f = parse_formula("[y:=y+2*3;]P");
  RuleParams cq;
  cq.context_formula = f;
  cq.path = {0, 0, 1};  // box -> assignment rhs -> right summand
  Certificate c = apply_rule(RuleId::CQ, cq, {eq});
  CHECK(judgment_to_string(c->conclusion) == "[y:=y+2*3;]P<->[y:=y+6;]P");
  CHECK(check_certificate(c).certified());
}

TEST_CASE("CQ commutes ring-equal terms") {
  RuleParams poly;
  poly.equation = parse_formula("a^2+b=b+a^2");
  Certificate eq = apply_rule(RuleId::PolyIdentity, poly, {});
  Formula f = parse_formula("[x:=a^2+b;]P");
  RuleParams cq;
  cq.context_formula = f;
  cq.path = {0, 0};
  Certificate c = apply_rule(RuleId::CQ, cq, {eq});
  CHECK(judgment_to_string(c->conclusion) == "[x:=a^2+b;]P<->[x:=b+a^2;]P");
}

TEST_CASE("the polynomial oracle rejects non-identities") {
  RuleParams poly;
  poly.equation = parse_formula("a^2+b=a^2+b+1");
  CHECK_THROWS_AS(apply_rule(RuleId::PolyIdentity, poly, {}), OracleError);
}

TEST_CASE("CT rewrites inside a term context") {
  RuleParams poly;
  poly.equation = parse_formula("2*3=6");
  Certificate eq = apply_rule(RuleId::PolyIdentity, poly, {});
  RuleParams ct;
  ct.context_term = parse_term("y+2*3");
  ct.path = {1};
  Certificate c = apply_rule(RuleId::CT, ct, {eq});
  CHECK(judgment_to_string(c->conclusion) == "y+2*3=y+6");
}

TEST_CASE("CP rewrites a program equivalence in a formula context") {
  UniformSubstitution sigma;
  sigma.add_predicate("Q", 0, parse_formula("x<3"));
  sigma.add_program("a", parse_program("x:=x+1;"));
  Certificate unfold = axiom_certificate(AxiomId::LoopUnwindEq, sigma);
  REQUIRE(unfold->conclusion.is_prog_eq);

  Formula f = parse_formula("[while(x<3){x:=x+1;}]x>=3");
  RuleParams cp;
  cp.context_formula = f;
  cp.path = {0};
  Certificate c = apply_rule(RuleId::CP, cp, {unfold});
  CHECK(judgment_to_string(c->conclusion) ==
        "[while(x<3){x:=x+1;}]x>=3<->[if(x<3){x:=x+1;while(x<3){x:=x+1;}}]x>=3");
  CHECK(check_certificate(c).certified());
}

TEST_CASE("modus ponens and implyr") {
  Certificate pq = open_premise(Judgment::valid(parse_formula("x>0 -> x>=0")), "maj");
  Certificate p = open_premise(Judgment::valid(parse_formula("x>0")), "min");
  Certificate q = apply_rule(RuleId::ModusPonens, {}, {pq, p});
  CHECK(judgment_to_string(q->conclusion) == "x>=0");
  Verdict v = check_certificate(q);
  CHECK(v.status == Verdict::CertifiedWithOpenPremises);
  CHECK(v.open_premises.size() == 2);

  RuleParams ir;
  ir.gamma = {parse_formula("a>0")};
  ir.antecedent = parse_formula("b>0");
  ir.consequent = parse_formula("a+b>0");
  Certificate prem = open_premise(Judgment::valid(parse_formula("a>0 & b>0 -> a+b>0")), "s");
  Certificate c = apply_rule(RuleId::ImplyR, ir, {prem});
  CHECK(judgment_to_string(c->conclusion) == "a>0->b>0->a+b>0");  // -> right-assoc
}

TEST_CASE("rule US reinstantiates a certified formula") {
  UniformSubstitution first;
  first.add_program("a", mk_prog_const("ctrl"));
  first.add_program("b", mk_prog_const("plant"));
  Certificate base = axiom_certificate(AxiomId::ComposeB, first);
  RuleParams us;
  us.sigma.add_predicate("P", 0, parse_formula("x>y"));
  Certificate c = apply_rule(RuleId::US, us, {base});
  CHECK(judgment_to_string(c->conclusion) == "[ctrl;plant;]x>y<->[ctrl;][plant;]x>y");
  CHECK(check_certificate(c).certified());
}

TEST_CASE("rule USR instantiates a registered rule shape") {
  RuleParams poly;
  poly.equation = parse_formula("2*3=6");
  Certificate eq = apply_rule(RuleId::PolyIdentity, poly, {});
  RuleParams usr;
  usr.base_rule = "CQ";
  usr.sigma.add_function("f", 0, parse_term("2*3"));
  usr.sigma.add_function("g", 0, parse_term("6"));
  usr.sigma.add_predicate("p", 1, parse_formula(".>5"));
  Certificate c = apply_rule(RuleId::USR, usr, {eq});
  CHECK(judgment_to_string(c->conclusion) == "2*3>5<->6>5");

  // introducing free variables is not locally sound
  RuleParams bad;
  bad.base_rule = "CQ";
  bad.sigma.add_function("f", 0, parse_term("x"));
  bad.sigma.add_function("g", 0, parse_term("x"));
  bad.sigma.add_predicate("p", 1, parse_formula(".>5"));
  Certificate xeq = open_premise(Judgment::valid(parse_formula("x=x")), "refl");
  CHECK_THROWS_AS(apply_rule(RuleId::USR, bad, {xeq}), ShapeError);
}

TEST_CASE("loop rule certificate with open arithmetic premises") {
  Formula quiz = parse_formula(
      "x>=1 & v>0 & A>0 -> [{{a:=0; ++ a:=A;}{x'=v,v'=a}}*]x>=0");
  REQUIRE(quiz->tag == FormulaTag::Implies);
  Formula gamma = quiz->f1;
  Formula box = quiz->f2;
  REQUIRE(box->tag == FormulaTag::Box);

  RuleParams loop;
  loop.invariant = parse_formula("x>=1 & v>0");
  loop.gamma = {gamma};
  loop.loop = box->prog;
  loop.post = box->f1;
  Program body = box->prog->p1;

  std::vector<Certificate> premises = {
      open_premise(Judgment::valid(imp_conj(loop.gamma, loop.invariant)), "init"),
      open_premise(Judgment::valid(mk_implies(loop.invariant, mk_box(body, loop.invariant))),
                   "step"),
      open_premise(Judgment::valid(mk_implies(loop.invariant, loop.post)), "use"),
  };
  Certificate c = apply_rule(RuleId::Loop, loop, premises);
  CHECK(structural_equal(c->conclusion.formula, quiz));

  Verdict v = check_certificate(c);
  CHECK(v.status == Verdict::CertifiedWithOpenPremises);
  CHECK(v.open_premises.size() == 3);
}

TEST_CASE("the while variant of the loop rule") {
  Formula target = parse_formula("[while(x<3){x:=x+1;}]x>=0");
  RuleParams loop;
  loop.invariant = parse_formula("x>=0");
  loop.loop = target->prog;
  loop.post = target->f1;
  std::vector<Certificate> premises = {
      open_premise(Judgment::valid(parse_formula("x>=0")), "init"),
      open_premise(Judgment::valid(parse_formula("x>=0 & x<3 -> [x:=x+1;]x>=0")), "step"),
      open_premise(Judgment::valid(parse_formula("x>=0 & !x<3 -> x>=0")), "use"),
  };
  Certificate c = apply_rule(RuleId::Loop, loop, premises);
  CHECK(structural_equal(c->conclusion.formula, target));
}

TEST_CASE("checking is deterministic and does not mutate the certificate") {
  UniformSubstitution sigma;
  sigma.add_program("a", mk_prog_const("ctrl"));
  sigma.add_program("b", mk_prog_const("plant"));
  Certificate c = axiom_certificate(AxiomId::ComposeB, sigma);
  Judgment before = c->conclusion;
  Verdict v1 = check_certificate(c);
  Verdict v2 = check_certificate(c);
  CHECK(v1.status == v2.status);
  CHECK(structural_equal(c->conclusion, before));
}

TEST_CASE("tampered conclusions are rejected") {
  UniformSubstitution sigma;
  sigma.add_program("a", mk_prog_const("ctrl"));
  sigma.add_program("b", mk_prog_const("plant"));
  Certificate good = axiom_certificate(AxiomId::ComposeB, sigma);
  CHECK(check_certificate(good).certified());

  CertNode tampered = *good;
  tampered.conclusion = Judgment::valid(parse_formula("x>0"));
  Certificate bad = std::make_shared<const CertNode>(tampered);
  Verdict v = check_certificate(bad);
  CHECK(v.status == Verdict::Rejected);
}

TEST_CASE("derived equivalence combinators") {
  UniformSubstitution sigma;
  sigma.add_predicate("Q", 0, parse_formula("x>0"));
  sigma.add_predicate("P", 0, parse_formula("x>1"));
  Certificate tb = axiom_certificate(AxiomId::TestB, sigma);  // [?x>0]x>1 <-> (x>0->x>1)

  Certificate sym = equiv_symm(tb);
  CHECK(judgment_to_string(sym->conclusion) == "x>0->x>1<->[?x>0;]x>1");
  CHECK(check_certificate(sym).certified());

  Certificate back = equiv_trans(tb, sym);
  CHECK(judgment_to_string(back->conclusion) == "[?x>0;]x>1<->[?x>0;]x>1");
  CHECK(check_certificate(back).certified());

  Certificate refl = equiv_reflexivity(parse_formula("[x:=1;]x>0"));
  CHECK(judgment_to_string(refl->conclusion) == "[x:=1;]x>0<->[x:=1;]x>0");
  CHECK(check_certificate(refl).certified());
}

TEST_CASE("certificates serialize and replay") {
  RuleParams poly;
  poly.equation = parse_formula("2*3=6");
  Certificate eq = apply_rule(RuleId::PolyIdentity, poly, {});
  Formula f = parse_formula("[y:=y+2*3;]P");
  RuleParams cq;
  cq.context_formula = f;
  cq.path = {0, 0, 1};
  Certificate c = equiv_symm(apply_rule(RuleId::CQ, cq, {eq}));

  std::string text = write_certificate(c);
  Certificate back = read_certificate(text);
  CHECK(structural_equal(back->conclusion, c->conclusion));
  CHECK(check_certificate(back).certified());

  CHECK_THROWS_AS(read_certificate("garbage"), CertFormatError);
  CHECK_THROWS_AS(read_certificate("DLC 1\nNODE 0 RULE polyid EQ \"2*3=7\"\nROOT 0\n"),
                  OracleError);
  CHECK_THROWS_AS(read_certificate("DLC 1\nNODE 0 OPEN VALID \"x>0\" LABEL \"l\"\n"),
                  CertFormatError);  // missing ROOT
}

TEST_CASE("registry axioms hold for tiny discrete instantiations") {
  testgen::Gen gen(211);
  const AxiomId axioms[] = {AxiomId::ComposeB, AxiomId::BAnd,    AxiomId::AssignB,
                            AxiomId::ChoiceB,  AxiomId::TestB,   AxiomId::LoopUnwindEq};
  const Program tiny[] = {parse_program("x:=1;"), parse_program("x:=x+1;"),
                          parse_program("?x>0;")};
  for (AxiomId id : axioms) {
    for (const Program& pa : tiny) {
      for (const Program& pb : tiny) {
        UniformSubstitution sigma;
        switch (id) {
          case AxiomId::ComposeB:
          case AxiomId::ChoiceB:
            sigma.add_program("a", pa);
            sigma.add_program("b", pb);
            sigma.add_predicate("P", 0, parse_formula("x>0"));
            break;
          case AxiomId::BAnd:
            sigma.add_program("a", pa);
            sigma.add_predicate("P", 0, parse_formula("x>0"));
            sigma.add_predicate("Q", 0, parse_formula("x<2"));
            break;
          case AxiomId::TestB:
            sigma.add_predicate("Q", 0, parse_formula("x>0"));
            sigma.add_predicate("P", 0, parse_formula("x<2"));
            break;
          case AxiomId::AssignB:
            sigma.add_function("f", 0, parse_term("x+1"));
            sigma.add_predicate("p", 1, parse_formula(".>0"));
            break;
          case AxiomId::LoopUnwindEq:
            sigma.add_predicate("Q", 0, parse_formula("x<2"));
            sigma.add_program("a", pa);
            break;
        }
        Judgment j = instantiate_axiom(id, sigma);
        CHECK(testgen::instance_never_false(gen, j, 100, 50));
      }
    }
  }
}

TEST_CASE("random admissible instances of registry axioms never evaluate false") {
  // A scaled-down run of the acceptance soundness suite.
  testgen::Gen gen(223);
  const AxiomId axioms[] = {AxiomId::ComposeB, AxiomId::BAnd,    AxiomId::AssignB,
                            AxiomId::ChoiceB,  AxiomId::TestB,   AxiomId::LoopUnwindEq};
  int produced = 0;
  int attempts = 0;
  while (produced < 120 && attempts < 4000) {
    ++attempts;
    AxiomId id = axioms[produced % 6];
    auto j = testgen::random_admissible_instance(gen, id);
    if (!j) continue;
    ++produced;
    CHECK(testgen::instance_never_false(gen, *j, 20, 50));
  }
  CHECK(produced == 120);
}
