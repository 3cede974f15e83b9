// Copyright (c) 2026 The dlopt developers. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
//
// Tree paths address subtrees by child index, crossing the term/formula/
// program boundary. Child numbering (stable, part of the certificate format):
//   Term:    Plus/Minus/Times {lhs,rhs}; Neg/Power {lhs}; Func(arg) {arg}
//   Formula: comparisons {t1,t2}; Not {f1}; And/Or/Implies/Equiv {f1,f2};
//            Forall/Exists {body}; Box/Diamond {program, formula};
//            Pred(arg) {arg}
//   Program: Assign {rhs}; Test {guard}; Choice/Seq {p1,p2}; Repeat {body};
//            While {guard, body}; IfThenElse {guard, then, else};
//            ODE {rhs_0..rhs_{n-1}, domain}; Const {}
// Binding positions (assignment targets, quantifier and ODE variables) are
// not addressable.
#pragma once

#include <string>
#include <vector>

#include "dlopt/syntax.hpp"

namespace dlopt {

using Path = std::vector<int>;

int child_count(const Expr& e);
Expr child_at(const Expr& e, int i);

// Subtree lookup; throws PathError on an out-of-range or ill-kinded path.
Expr subtree_at(const Expr& root, const Path& path);

// Functional replacement: rebuilds the spine, checks that the replacement has
// the same syntactic kind as the subtree it replaces.
Expr replace_at(const Expr& root, const Path& path, const Expr& replacement);

std::string path_to_string(const Path& path);
Path path_from_string(const std::string& text);

// All paths (pre-order) at which `needle` occurs as a subterm of `root`.
std::vector<Path> find_term_occurrences(const Expr& root, const Term& needle);

}  // namespace dlopt
