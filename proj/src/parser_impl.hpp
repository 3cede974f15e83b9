// Copyright (c) 2026 The dlopt developers. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#pragma once

#include <cstddef>
#include <vector>

#include "dlopt/syntax.hpp"
#include "lexer.hpp"

namespace dlopt {

// Recursive-descent parser over a token window [pos, limit). Backtracking is
// a saved/restored token index.
class Parser {
 public:
  Parser(const std::vector<Token>& toks, std::size_t pos, std::size_t limit)
      : toks_(toks), pos_(pos), limit_(limit) {}

  Term term();
  Formula formula();
  Program program();

  std::size_t pos() const { return pos_; }
  void seek(std::size_t p) { pos_ = p; }
  bool at_end() const { return pos_ >= limit_ || peek().kind == Tok::End; }
  const Token& peek(std::size_t off = 0) const;
  bool check(Tok k, std::size_t off = 0) const { return peek(off).kind == k; }
  bool accept(Tok k);
  Token expect(Tok k, const char* what);
  [[noreturn]] void fail(const std::string& expected) const;

  bool at_statement_start() const;

 private:
  Term sum();
  Term product();
  Term unary_term();
  Term power();
  Term term_atom();

  Formula equiv();
  Formula implies();
  Formula disjunct();
  Formula conjunct();
  Formula unary_formula();
  Formula formula_atom();

  Program statement();
  Program brace_statement();

  const std::vector<Token>& toks_;
  std::size_t pos_;
  std::size_t limit_;
};

}  // namespace dlopt
