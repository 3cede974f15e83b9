// Copyright (c) 2026 The dlopt developers. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
//
// Line-oriented certificate files (.dlc), one node per line:
//   DLC 1
//   NODE <id> AXIOM <name> SUBST "<subst>" [RENAME "x:w y:v"]
//   NODE <id> RULE <name> <rule fields> [PREMISES <ids>]
//   NODE <id> OPEN VALID "<formula>" LABEL "<text>"
//   NODE <id> OPEN PROGEQ "<prog>" "<prog>" LABEL "<text>"
//   ROOT <id>
// Conclusions are never stored: reading a file re-derives every node through
// the kernel, so a tampered file can only produce a rejected certificate or a
// different conclusion, never a wrongly accepted one.
#pragma once

#include <iosfwd>
#include <string>

#include "dlopt/kernel.hpp"

namespace dlopt {

std::string write_certificate(const Certificate& cert);
void write_certificate(std::ostream& out, const Certificate& cert);

// Throws CertFormatError on malformed input and kernel errors (ClashError,
// ShapeError, ...) when a line does not re-derive.
Certificate read_certificate(const std::string& text);

}  // namespace dlopt
