// Copyright (c) 2026 The dlopt developers. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dlopt/errors.hpp"

namespace dlopt {

enum class Tok {
  Ident,
  Number,
  KwTrue,
  KwFalse,
  KwWhile,
  KwIf,
  KwElse,
  KwForall,
  KwExists,
  LParen,
  RParen,
  LBrace,
  RBrace,
  LBrack,
  RBrack,
  Plus,
  Minus,
  Star,
  Caret,
  Assign,     // :=
  Semi,
  Question,
  PlusPlus,   // ++
  Comma,
  Prime,      // '
  Amp,
  Pipe,
  Bang,
  Arrow,      // ->
  EquivOp,    // <->
  Lt,
  Le,
  Eq,
  Ge,
  Gt,
  Dot,
  SubstArrow,  // ~>
  End
};

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

// Tokenizes the whole input; the result always ends with an End token.
std::vector<Token> lex(std::string_view input);

const char* token_name(Tok kind);

}  // namespace dlopt
