// Copyright (c) 2026 The dlopt developers. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#include <doctest.h>

#include "dlopt/parser.hpp"
#include "dlopt/printer.hpp"
#include "dlopt/syntax.hpp"
#include "gen.hpp"

using namespace dlopt;

TEST_CASE("term precedence") {
  Term t = parse_term("a^2+b");
  REQUIRE(t->tag == TermTag::Plus);
  CHECK(t->lhs->tag == TermTag::Power);
  CHECK(t->rhs->tag == TermTag::Var);

  CHECK(structural_equal(parse_term("z+y^2*x"),
                         mk_plus(mk_var("z"), mk_times(mk_power(mk_var("y"), 2), mk_var("x")))));
  CHECK(structural_equal(parse_term("x"), mk_var("x")));

  // unary minus binds tighter than *, looser than ^
  CHECK(structural_equal(parse_term("-x*y"), mk_times(mk_neg(mk_var("x")), mk_var("y"))));
  CHECK(structural_equal(parse_term("-x^2"), mk_neg(mk_power(mk_var("x"), 2))));

  // left associativity
  CHECK(structural_equal(parse_term("a-b-c"),
                         mk_minus(mk_minus(mk_var("a"), mk_var("b")), mk_var("c"))));
}

TEST_CASE("formula precedence and shapes") {
  Formula f = parse_formula("[x:=x+1;]x>5");
  REQUIRE(f->tag == FormulaTag::Box);
  REQUIRE(f->prog->tag == ProgramTag::Assign);
  CHECK(structural_equal(f->f1, parse_formula("x>5")));

  Formula g = parse_formula("x<=m & 0<=v");
  REQUIRE(g->tag == FormulaTag::And);
  CHECK(g->f1->tag == FormulaTag::LessEq);

  CHECK(parse_formula("true")->tag == FormulaTag::True);

  // -> is right-associative and weaker than &
  Formula h = parse_formula("a>0 & b>0 -> c>0 -> d>0");
  REQUIRE(h->tag == FormulaTag::Implies);
  CHECK(h->f1->tag == FormulaTag::And);
  CHECK(h->f2->tag == FormulaTag::Implies);

  // modality binds tighter than &
  Formula m = parse_formula("[x:=1;]x>0 & y>0");
  CHECK(m->tag == FormulaTag::And);

  // bare identifier in formula position is a predicate symbol
  Formula p = parse_formula("P");
  REQUIRE(p->tag == FormulaTag::Pred);
  CHECK_FALSE(p->has_arg);
}

TEST_CASE("program syntax") {
  Program car = parse_program("{a:=A; ++ a:=-b;}{x'=v,v'=a & v>=0}");
  REQUIRE(car->tag == ProgramTag::Seq);
  REQUIRE(car->p1->tag == ProgramTag::Choice);
  CHECK(structural_equal(car->p1->p1, mk_assign(Variable{"a"}, mk_var("A"))));
  CHECK(structural_equal(car->p1->p2, mk_assign(Variable{"a"}, mk_neg(mk_var("b")))));
  REQUIRE(car->p2->tag == ProgramTag::ODE);
  CHECK(car->p2->odes.size() == 2);
  CHECK(car->p2->fml->tag == FormulaTag::GreaterEq);

  Program two = parse_program("ctrl;plant;");
  REQUIRE(two->tag == ProgramTag::Seq);
  CHECK(two->p1->tag == ProgramTag::Const);
  CHECK(two->p1->name == "ctrl");
  CHECK(two->p2->name == "plant");

  Program loop = parse_program("while(y^2<x){z:=z+y^2*x; y:=y+6;}");
  REQUIRE(loop->tag == ProgramTag::While);
  CHECK(loop->fml->tag == FormulaTag::Less);
  CHECK(loop->p1->tag == ProgramTag::Seq);

  // sequencing associates to the left
  Program three = parse_program("sense;ctrl;plant;");
  REQUIRE(three->tag == ProgramTag::Seq);
  CHECK(three->p1->tag == ProgramTag::Seq);
  CHECK(three->p1->p1->name == "sense");
  CHECK(three->p2->name == "plant");
}

TEST_CASE("parse errors carry spans") {
  try {
    parse_formula("[x:=]x>0");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.span().start >= 4);
  }
  CHECK_THROWS_AS(parse_formula(""), ParseError);
  CHECK_THROWS_AS(parse_term("x+"), ParseError);
  CHECK_THROWS_AS(parse_program("x:=1"), ParseError);  // missing ';'
}

TEST_CASE("comments and whitespace are skipped") {
  Formula f = parse_formula("# a comment\n x>4 # trailing\n");
  CHECK(f->tag == FormulaTag::Greater);
}

TEST_CASE("quiz formulas print exactly as the course writes them") {
  CHECK(pretty_print(parse_formula("[ctrl;plant;]x>y")) == "[ctrl;plant;]x>y");
  Formula split = mk_box(mk_prog_const("ctrl"),
                         mk_box(mk_prog_const("plant"),
                                mk_greater(mk_var("x"), mk_var("y"))));
  CHECK(pretty_print(split) == "[ctrl;][plant;]x>y");
  CHECK(pretty_print(parse_term("x+1")) == "x+1");
}

TEST_CASE("round trip: parse after print is the identity on random trees") {
  testgen::Gen gen(42);
  for (int i = 0; i < 1000; ++i) {
    switch (i % 3) {
      case 0: {
        Term t = gen.full_term(4);
        std::string s = pretty_print(t);
        CAPTURE(s);
        CHECK(structural_equal(parse_term(s), t));
        break;
      }
      case 1: {
        Formula f = gen.full_formula(4);
        std::string s = pretty_print(f);
        CAPTURE(s);
        CHECK(structural_equal(parse_formula(s), f));
        break;
      }
      default: {
        Program p = gen.full_program(4);
        std::string s = pretty_print(p);
        CAPTURE(s);
        CHECK(structural_equal(parse_program(s), p));
        break;
      }
    }
  }
}

TEST_CASE("parse determinism") {
  const char* text = "x<=m & b>0 -> [{a:=A; ++ a:=-b;}{x'=v,v'=a & v>=0}](x<=m & 0<=v)";
  Formula f1 = parse_formula(text);
  Formula f2 = parse_formula(text);
  CHECK(structural_equal(f1, f2));
}
