// Copyright (c) 2026 The dlopt developers. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#include "dlopt/parser.hpp"

#include "parser_impl.hpp"

namespace dlopt {

const Token& Parser::peek(std::size_t off) const {
  std::size_t i = pos_ + off;
  if (i >= limit_) i = toks_.size() - 1;  // the End token
  return toks_[i];
}

bool Parser::accept(Tok k) {
  if (check(k)) {
    ++pos_;
    return true;
  }
  return false;
}

Token Parser::expect(Tok k, const char* what) {
  if (!check(k)) fail(what);
  return toks_[pos_++];
}

void Parser::fail(const std::string& expected) const {
  const Token& t = peek();
  throw ParseError("expected " + expected + ", found " + token_name(t.kind), t.span);
}

// ---------------------------------------------------------------------------
// Terms
// precedence: ^  >  unary -  >  *  >  binary + and -
// + - * are left-associative; ^ takes a literal exponent and does not chain.

Term Parser::term() { return sum(); }

Term Parser::sum() {
  Term t = product();
  for (;;) {
    if (accept(Tok::Plus))
      t = mk_plus(t, product());
    else if (accept(Tok::Minus))
      t = mk_minus(t, product());
    else
      return t;
  }
}

Term Parser::product() {
  Term t = unary_term();
  while (accept(Tok::Star)) t = mk_times(t, unary_term());
  return t;
}

Term Parser::unary_term() {
  if (accept(Tok::Minus)) return mk_neg(unary_term());
  return power();
}

Term Parser::power() {
  Term base = term_atom();
  if (accept(Tok::Caret)) {
    Token e = expect(Tok::Number, "a natural exponent");
    unsigned long ev = std::stoul(e.text);
    if (ev < 1) throw ParseError("power exponent must be >= 1", e.span);
    return mk_power(base, static_cast<unsigned>(ev));
  }
  return base;
}

Term Parser::term_atom() {
  if (check(Tok::Number)) {
    Token n = toks_[pos_++];
    return mk_lit(Rational(Integer(n.text)));
  }
  if (accept(Tok::Dot)) return mk_dot();
  if (check(Tok::Ident)) {
    Token id = toks_[pos_++];
    if (accept(Tok::LParen)) {
      if (accept(Tok::RParen)) return mk_func(id.text);
      Term arg = term();
      expect(Tok::RParen, "')'");
      return mk_func(id.text, arg);
    }
    return mk_var(id.text);
  }
  if (accept(Tok::LParen)) {
    Term t = term();
    expect(Tok::RParen, "')'");
    return t;
  }
  fail("a term");
}

// ---------------------------------------------------------------------------
// Formulas
// precedence: ! > & > | > -> > <->; -> and <-> associate to the right;
// modalities and quantifiers bind like !.

Formula Parser::formula() { return equiv(); }

Formula Parser::equiv() {
  Formula f = implies();
  if (accept(Tok::EquivOp)) return mk_equiv(f, equiv());
  return f;
}

Formula Parser::implies() {
  Formula f = disjunct();
  if (accept(Tok::Arrow)) return mk_implies(f, implies());
  return f;
}

Formula Parser::disjunct() {
  Formula f = conjunct();
  while (accept(Tok::Pipe)) f = mk_or(f, conjunct());
  return f;
}

Formula Parser::conjunct() {
  Formula f = unary_formula();
  while (accept(Tok::Amp)) f = mk_and(f, unary_formula());
  return f;
}

Formula Parser::unary_formula() {
  if (accept(Tok::Bang)) return mk_not(unary_formula());
  if (check(Tok::KwForall) || check(Tok::KwExists)) {
    bool forall = toks_[pos_++].kind == Tok::KwForall;
    Token v = expect(Tok::Ident, "a bound variable");
    Formula body = unary_formula();
    return forall ? mk_forall(Variable{v.text}, body) : mk_exists(Variable{v.text}, body);
  }
  if (accept(Tok::LBrack)) {
    Program p = program();
    expect(Tok::RBrack, "']'");
    return mk_box(p, unary_formula());
  }
  if (check(Tok::Lt)) {
    // '<' cannot begin a term, so this is a diamond modality.
    ++pos_;
    Program p = program();
    expect(Tok::Gt, "'>'");
    return mk_diamond(p, unary_formula());
  }
  return formula_atom();
}

Formula Parser::formula_atom() {
  if (accept(Tok::KwTrue)) return mk_true();
  if (accept(Tok::KwFalse)) return mk_false();

  // A comparison between two terms, tried first so that parenthesized terms
  // like (x+1)>2 work without lookahead.
  std::size_t save = pos_;
  try {
    Term lhs = term();
    FormulaTag tag;
    if (accept(Tok::Lt))
      tag = FormulaTag::Less;
    else if (accept(Tok::Le))
      tag = FormulaTag::LessEq;
    else if (accept(Tok::Eq))
      tag = FormulaTag::Equal;
    else if (accept(Tok::Ge))
      tag = FormulaTag::GreaterEq;
    else if (accept(Tok::Gt))
      tag = FormulaTag::Greater;
    else
      fail("a comparison operator");
    Term rhs = term();
    return mk_cmp(tag, lhs, rhs);
  } catch (const ParseError&) {
    seek(save);
  }

  if (accept(Tok::LParen)) {
    Formula f = formula();
    expect(Tok::RParen, "')'");
    return f;
  }
  if (check(Tok::Ident)) {
    Token id = toks_[pos_++];
    if (accept(Tok::LParen)) {
      if (accept(Tok::RParen)) return mk_pred(id.text);
      Term arg = term();
      expect(Tok::RParen, "')'");
      return mk_pred(id.text, arg);
    }
    return mk_pred(id.text);
  }
  fail("a formula");
}

// ---------------------------------------------------------------------------
// Programs

bool Parser::at_statement_start() const {
  switch (peek().kind) {
    case Tok::Ident:
    case Tok::Question:
    case Tok::LBrace:
    case Tok::KwWhile:
    case Tok::KwIf:
      return true;
    default:
      return false;
  }
}

Program Parser::program() {
  // Sequencing by juxtaposition, folded to the left: the unwinding of
  // while(Q){s1;s2;} then reads back flat as if(Q){s1;s2;while(Q){s1;s2;}}.
  if (!at_statement_start()) fail("a statement");
  Program p = statement();
  while (at_statement_start()) p = mk_seq(p, statement());
  return p;
}

Program Parser::statement() {
  if (check(Tok::Ident)) {
    Token id = toks_[pos_++];
    if (accept(Tok::Assign)) {
      Term rhs = term();
      expect(Tok::Semi, "';'");
      return mk_assign(Variable{id.text}, rhs);
    }
    expect(Tok::Semi, "':=' or ';'");
    return mk_prog_const(id.text);
  }
  if (accept(Tok::Question)) {
    Formula guard = formula();
    expect(Tok::Semi, "';'");
    return mk_test(guard);
  }
  if (accept(Tok::KwWhile)) {
    expect(Tok::LParen, "'('");
    Formula guard = formula();
    expect(Tok::RParen, "')'");
    expect(Tok::LBrace, "'{'");
    Program body = program();
    expect(Tok::RBrace, "'}'");
    return mk_while(guard, body);
  }
  if (accept(Tok::KwIf)) {
    expect(Tok::LParen, "'('");
    Formula guard = formula();
    expect(Tok::RParen, "')'");
    expect(Tok::LBrace, "'{'");
    Program then_branch = program();
    expect(Tok::RBrace, "'}'");
    Program else_branch = mk_skip();
    if (accept(Tok::KwElse)) {
      expect(Tok::LBrace, "'{'");
      else_branch = program();
      expect(Tok::RBrace, "'}'");
    }
    return mk_if(guard, then_branch, else_branch);
  }
  if (check(Tok::LBrace)) return brace_statement();
  fail("a statement");
}

Program Parser::brace_statement() {
  expect(Tok::LBrace, "'{'");
  // `{x'=...}` is a differential equation system; anything else is a group,
  // a choice, or (with a trailing '*') a repetition.
  if (check(Tok::Ident) && check(Tok::Prime, 1)) {
    std::vector<OdeEquation> odes;
    for (;;) {
      Token v = expect(Tok::Ident, "an ODE variable");
      expect(Tok::Prime, "'''");
      expect(Tok::Eq, "'='");
      Term rhs = term();
      odes.push_back(OdeEquation{Variable{v.text}, rhs});
      if (!accept(Tok::Comma)) break;
    }
    Formula domain = mk_true();
    if (accept(Tok::Amp)) domain = formula();
    expect(Tok::RBrace, "'}'");
    return mk_ode(std::move(odes), domain);
  }
  Program p = program();
  while (accept(Tok::PlusPlus)) p = mk_choice(p, program());
  expect(Tok::RBrace, "'}'");
  if (accept(Tok::Star)) return mk_repeat(p);
  return p;
}

// ---------------------------------------------------------------------------

namespace {

template <typename F>
auto parse_all(std::string_view input, F&& f) {
  std::vector<Token> toks = lex(input);
  Parser p(toks, 0, toks.size());
  auto result = f(p);
  if (!p.at_end()) p.fail("end of input");
  return result;
}

}  // namespace

Term parse_term(std::string_view input) {
  return parse_all(input, [](Parser& p) { return p.term(); });
}

Formula parse_formula(std::string_view input) {
  return parse_all(input, [](Parser& p) { return p.formula(); });
}

Program parse_program(std::string_view input) {
  return parse_all(input, [](Parser& p) { return p.program(); });
}

}  // namespace dlopt
