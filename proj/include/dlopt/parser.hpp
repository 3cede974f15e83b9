// Copyright (c) 2026 The dlopt developers. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
//
// Concrete syntax. ASCII only: `++` for choice, `&`/`|`/`->`/`<->` for the
// connectives, `\forall`/`\exists` quantifiers, `[prog]phi` and `<prog>phi`
// modalities, `#` line comments. Statements are `;`-terminated; sequencing is
// juxtaposition and associates to the right. Identifiers in program position
// parse as program constants, in term position as variables.
#pragma once

#include <string_view>

#include "dlopt/errors.hpp"
#include "dlopt/syntax.hpp"

namespace dlopt {

Term parse_term(std::string_view input);
Formula parse_formula(std::string_view input);
Program parse_program(std::string_view input);

}  // namespace dlopt
