// Copyright (c) 2026 The dlopt developers. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#include "lexer.hpp"

#include <cctype>

namespace dlopt {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

}  // namespace

std::vector<Token> lex(std::string_view in) {
  std::vector<Token> toks;
  std::size_t i = 0;
  auto push = [&](Tok k, std::size_t start, std::size_t end) {
    toks.push_back(Token{k, std::string(in.substr(start, end - start)), {start, end}});
  };
  while (i < in.size()) {
    char c = in[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < in.size() && in[i] != '\n') ++i;
      continue;
    }
    std::size_t start = i;
    if (ident_start(c)) {
      while (i < in.size() && ident_char(in[i])) ++i;
      std::string_view word = in.substr(start, i - start);
      Tok k = Tok::Ident;
      if (word == "true")
        k = Tok::KwTrue;
      else if (word == "false")
        k = Tok::KwFalse;
      else if (word == "while")
        k = Tok::KwWhile;
      else if (word == "if")
        k = Tok::KwIf;
      else if (word == "else")
        k = Tok::KwElse;
      push(k, start, i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < in.size() && std::isdigit(static_cast<unsigned char>(in[i]))) ++i;
      push(Tok::Number, start, i);
      continue;
    }
    if (c == '\\') {
      std::size_t j = i + 1;
      while (j < in.size() && ident_char(in[j])) ++j;
      std::string_view word = in.substr(i + 1, j - i - 1);
      if (word == "forall") {
        i = j;
        push(Tok::KwForall, start, i);
        continue;
      }
      if (word == "exists") {
        i = j;
        push(Tok::KwExists, start, i);
        continue;
      }
      throw ParseError("unknown escape '\\" + std::string(word) + "'", {start, j});
    }
    auto two = [&](char a, char b) {
      return c == a && i + 1 < in.size() && in[i + 1] == b;
    };
    if (c == '<' && i + 2 < in.size() && in[i + 1] == '-' && in[i + 2] == '>') {
      i += 3;
      push(Tok::EquivOp, start, i);
      continue;
    }
    if (two(':', '=')) {
      i += 2;
      push(Tok::Assign, start, i);
      continue;
    }
    if (two('+', '+')) {
      i += 2;
      push(Tok::PlusPlus, start, i);
      continue;
    }
    if (two('-', '>')) {
      i += 2;
      push(Tok::Arrow, start, i);
      continue;
    }
    if (two('<', '=')) {
      i += 2;
      push(Tok::Le, start, i);
      continue;
    }
    if (two('>', '=')) {
      i += 2;
      push(Tok::Ge, start, i);
      continue;
    }
    if (two('~', '>')) {
      i += 2;
      push(Tok::SubstArrow, start, i);
      continue;
    }
    Tok k;
    switch (c) {
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '{': k = Tok::LBrace; break;
      case '}': k = Tok::RBrace; break;
      case '[': k = Tok::LBrack; break;
      case ']': k = Tok::RBrack; break;
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '*': k = Tok::Star; break;
      case '^': k = Tok::Caret; break;
      case ';': k = Tok::Semi; break;
      case '?': k = Tok::Question; break;
      case ',': k = Tok::Comma; break;
      case '\'': k = Tok::Prime; break;
      case '&': k = Tok::Amp; break;
      case '|': k = Tok::Pipe; break;
      case '!': k = Tok::Bang; break;
      case '<': k = Tok::Lt; break;
      case '>': k = Tok::Gt; break;
      case '=': k = Tok::Eq; break;
      case '.': k = Tok::Dot; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", {start, start + 1});
    }
    ++i;
    push(k, start, i);
  }
  toks.push_back(Token{Tok::End, "", {in.size(), in.size()}});
  return toks;
}

const char* token_name(Tok kind) {
  switch (kind) {
    case Tok::Ident: return "identifier";
    case Tok::Number: return "number";
    case Tok::KwTrue: return "'true'";
    case Tok::KwFalse: return "'false'";
    case Tok::KwWhile: return "'while'";
    case Tok::KwIf: return "'if'";
    case Tok::KwElse: return "'else'";
    case Tok::KwForall: return "'\\forall'";
    case Tok::KwExists: return "'\\exists'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LBrack: return "'['";
    case Tok::RBrack: return "']'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Caret: return "'^'";
    case Tok::Assign: return "':='";
    case Tok::Semi: return "';'";
    case Tok::Question: return "'?'";
    case Tok::PlusPlus: return "'++'";
    case Tok::Comma: return "','";
    case Tok::Prime: return "'''";
    case Tok::Amp: return "'&'";
    case Tok::Pipe: return "'|'";
    case Tok::Bang: return "'!'";
    case Tok::Arrow: return "'->'";
    case Tok::EquivOp: return "'<->'";
    case Tok::Lt: return "'<'";
    case Tok::Le: return "'<='";
    case Tok::Eq: return "'='";
    case Tok::Ge: return "'>='";
    case Tok::Gt: return "'>'";
    case Tok::Dot: return "'.'";
    case Tok::SubstArrow: return "'~>'";
    case Tok::End: return "end of input";
  }
  return "?";
}

}  // namespace dlopt
