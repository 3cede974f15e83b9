// Copyright (c) 2026 The dlopt developers. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#include <doctest.h>

#include "dlopt/parser.hpp"
#include "dlopt/syntax.hpp"
#include "gen.hpp"

using namespace dlopt;

TEST_CASE("structural equality is node-for-node identity") {
  CHECK(structural_equal(parse_term("x+1"), parse_term("x+1")));
  CHECK_FALSE(structural_equal(parse_term("x+1"), parse_term("1+x")));
  // a^2+b and b+a^2 are distinct syntax; relating them takes a proof step.
  CHECK_FALSE(structural_equal(parse_term("a^2+b"), parse_term("b+a^2")));
}

TEST_CASE("structural equality is an equivalence relation on random trees") {
  testgen::Gen gen(7);
  std::vector<Formula> trees;
  for (int i = 0; i < 60; ++i) trees.push_back(gen.full_formula(3));
  for (const Formula& f : trees) CHECK(structural_equal(f, f));
  for (std::size_t i = 0; i < trees.size(); ++i) {
    for (std::size_t j = 0; j < trees.size(); ++j) {
      bool ij = structural_equal(trees[i], trees[j]);
      bool ji = structural_equal(trees[j], trees[i]);
      CHECK(ij == ji);
      if (!ij) continue;
      for (std::size_t k = 0; k < trees.size(); ++k)
        if (structural_equal(trees[j], trees[k]))
          CHECK(structural_equal(trees[i], trees[k]));
    }
  }
}

TEST_CASE("contains_dot finds the placeholder anywhere") {
  CHECK(contains_dot(parse_formula(".>5")));
  CHECK_FALSE(contains_dot(parse_formula("x>4")));
  CHECK(contains_dot(parse_formula("[x:=.;]x>0")));
}

TEST_CASE("constructors are inert and validate their domain") {
  // No normalization: -b stays a negation, 2*3 stays a product.
  Term t = mk_times(mk_lit(2), mk_lit(3));
  CHECK(t->tag == TermTag::Times);
  CHECK_THROWS_AS(mk_power(mk_var("x"), 0), std::invalid_argument);
  CHECK_THROWS_AS(mk_ode({}, mk_true()), std::invalid_argument);
  CHECK_THROWS_AS(
      mk_ode({OdeEquation{Variable{"x"}, mk_lit(1)}, OdeEquation{Variable{"x"}, mk_lit(2)}},
             mk_true()),
      std::invalid_argument);
}

TEST_CASE("if without else carries a skip branch") {
  Program p = parse_program("if(x>0){y:=1;}");
  REQUIRE(p->tag == ProgramTag::IfThenElse);
  CHECK(is_skip(p->p2));
}
