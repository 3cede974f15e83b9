// Copyright (c) 2026 The dlopt developers. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#pragma once

#include <string>

#include "dlopt/syntax.hpp"

namespace dlopt {

// Canonical concrete syntax with minimal parenthesization; parsing the output
// yields a structurally identical tree. Dots print as '.' for diagnostics.
std::string pretty_print(const Term& t);
std::string pretty_print(const Formula& f);
std::string pretty_print(const Program& p);
std::string pretty_print(const Expr& e);

}  // namespace dlopt
