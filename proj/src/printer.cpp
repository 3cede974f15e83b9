// Copyright (c) 2026 The dlopt developers. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#include "dlopt/printer.hpp"

#include <sstream>

namespace dlopt {

namespace {

// Term precedence: + and - (1) < * (2) < unary - (3) < ^ (4) < atoms (5).
int term_prec(const Term& t) {
  switch (t->tag) {
    case TermTag::Plus:
    case TermTag::Minus:
      return 1;
    case TermTag::Times:
      return 2;
    case TermTag::Neg:
      return 3;
    case TermTag::Power:
      return 4;
    default:
      return 5;
  }
}

void print_term(std::ostream& out, const Term& t, int min_prec) {
  int prec = term_prec(t);
  bool parens = prec < min_prec;
  if (parens) out << '(';
  switch (t->tag) {
    case TermTag::Var:
      out << t->var.name;
      break;
    case TermTag::Lit:
      out << rational_to_string(t->lit);
      break;
    case TermTag::Plus:
      print_term(out, t->lhs, 1);
      out << '+';
      print_term(out, t->rhs, 2);
      break;
    case TermTag::Minus:
      print_term(out, t->lhs, 1);
      out << '-';
      print_term(out, t->rhs, 2);
      break;
    case TermTag::Times:
      print_term(out, t->lhs, 2);
      out << '*';
      print_term(out, t->rhs, 3);
      break;
    case TermTag::Neg:
      out << '-';
      print_term(out, t->lhs, 4);
      break;
    case TermTag::Power:
      print_term(out, t->lhs, 5);
      out << '^' << t->exponent;
      break;
    case TermTag::Func:
      out << t->name << '(';
      if (t->has_arg) print_term(out, t->lhs, 1);
      out << ')';
      break;
    case TermTag::Dot:
      out << '.';
      break;
  }
  if (parens) out << ')';
}

// Formula precedence: <-> (1) < -> (2) < | (3) < & (4) < prefix (5) < atoms (6).
int formula_prec(const Formula& f) {
  switch (f->tag) {
    case FormulaTag::Equiv:
      return 1;
    case FormulaTag::Implies:
      return 2;
    case FormulaTag::Or:
      return 3;
    case FormulaTag::And:
      return 4;
    case FormulaTag::Not:
    case FormulaTag::Forall:
    case FormulaTag::Exists:
    case FormulaTag::Box:
    case FormulaTag::Diamond:
      return 5;
    default:
      return 6;
  }
}

void print_program(std::ostream& out, const Program& p);
void print_formula(std::ostream& out, const Formula& f, int min_prec);

const char* cmp_op(FormulaTag tag) {
  switch (tag) {
    case FormulaTag::Less:
      return "<";
    case FormulaTag::LessEq:
      return "<=";
    case FormulaTag::Equal:
      return "=";
    case FormulaTag::GreaterEq:
      return ">=";
    default:
      return ">";
  }
}

void print_formula(std::ostream& out, const Formula& f, int min_prec) {
  int prec = formula_prec(f);
  bool parens = prec < min_prec;
  if (parens) out << '(';
  switch (f->tag) {
    case FormulaTag::Less:
    case FormulaTag::LessEq:
    case FormulaTag::Equal:
    case FormulaTag::GreaterEq:
    case FormulaTag::Greater:
      print_term(out, f->t1, 1);
      out << cmp_op(f->tag);
      print_term(out, f->t2, 1);
      break;
    case FormulaTag::True:
      out << "true";
      break;
    case FormulaTag::False:
      out << "false";
      break;
    case FormulaTag::Not:
      out << '!';
      print_formula(out, f->f1, 5);
      break;
    case FormulaTag::And:
      print_formula(out, f->f1, 4);
      out << '&';
      print_formula(out, f->f2, 5);
      break;
    case FormulaTag::Or:
      print_formula(out, f->f1, 3);
      out << '|';
      print_formula(out, f->f2, 4);
      break;
    case FormulaTag::Implies:
      // right-associative
      print_formula(out, f->f1, 3);
      out << "->";
      print_formula(out, f->f2, 2);
      break;
    case FormulaTag::Equiv:
      // right-associative
      print_formula(out, f->f1, 2);
      out << "<->";
      print_formula(out, f->f2, 1);
      break;
    case FormulaTag::Forall:
    case FormulaTag::Exists:
      out << (f->tag == FormulaTag::Forall ? "\\forall " : "\\exists ");
      out << f->var.name << ' ';
      print_formula(out, f->f1, 5);
      break;
    case FormulaTag::Box:
      out << '[';
      print_program(out, f->prog);
      out << ']';
      print_formula(out, f->f1, 5);
      break;
    case FormulaTag::Diamond:
      out << '<';
      print_program(out, f->prog);
      out << '>';
      print_formula(out, f->f1, 5);
      break;
    case FormulaTag::Pred:
      out << f->name;
      if (f->has_arg) {
        out << '(';
        print_term(out, f->t1, 1);
        out << ')';
      }
      break;
  }
  if (parens) out << ')';
}

// Prints one statement. Sequences are not statements; callers flatten them.
void print_statement(std::ostream& out, const Program& p) {
  switch (p->tag) {
    case ProgramTag::Assign:
      out << p->var.name << ":=";
      print_term(out, p->term, 1);
      out << ';';
      break;
    case ProgramTag::Test:
      out << '?';
      print_formula(out, p->fml, 1);
      out << ';';
      break;
    case ProgramTag::Const:
      out << p->name << ';';
      break;
    case ProgramTag::Choice: {
      // Flatten the left spine; alternatives print as whole programs.
      std::vector<Program> alts;
      Program cur = p;
      while (cur->tag == ProgramTag::Choice) {
        alts.push_back(cur->p2);
        cur = cur->p1;
      }
      alts.push_back(cur);
      out << '{';
      for (auto it = alts.rbegin(); it != alts.rend(); ++it) {
        if (it != alts.rbegin()) out << " ++ ";
        print_program(out, *it);
      }
      out << '}';
      break;
    }
    case ProgramTag::Seq:
      // A sequence in statement position (right operand of an outer,
      // left-folded sequence) needs grouping braces to survive the round trip.
      out << '{';
      print_program(out, p);
      out << '}';
      break;
    case ProgramTag::Repeat:
      if (p->p1->tag == ProgramTag::Choice) {
        print_statement(out, p->p1);
      } else {
        out << '{';
        print_program(out, p->p1);
        out << '}';
      }
      out << '*';
      break;
    case ProgramTag::While:
      out << "while(";
      print_formula(out, p->fml, 1);
      out << "){";
      print_program(out, p->p1);
      out << '}';
      break;
    case ProgramTag::IfThenElse:
      out << "if(";
      print_formula(out, p->fml, 1);
      out << "){";
      print_program(out, p->p1);
      out << '}';
      if (!is_skip(p->p2)) {
        out << "else{";
        print_program(out, p->p2);
        out << '}';
      }
      break;
    case ProgramTag::ODE: {
      out << '{';
      for (std::size_t i = 0; i < p->odes.size(); ++i) {
        if (i) out << ',';
        out << p->odes[i].var.name << "'=";
        print_term(out, p->odes[i].rhs, 1);
      }
      if (p->fml->tag != FormulaTag::True) {
        out << " & ";
        print_formula(out, p->fml, 1);
      }
      out << '}';
      break;
    }
  }
}

void print_program(std::ostream& out, const Program& p) {
  if (p->tag == ProgramTag::Seq) {
    print_program(out, p->p1);  // the left spine flattens into statements
    print_statement(out, p->p2);
  } else {
    print_statement(out, p);
  }
}

}  // namespace

std::string pretty_print(const Term& t) {
  std::ostringstream out;
  print_term(out, t, 1);
  return out.str();
}

std::string pretty_print(const Formula& f) {
  std::ostringstream out;
  print_formula(out, f, 1);
  return out.str();
}

std::string pretty_print(const Program& p) {
  std::ostringstream out;
  print_program(out, p);
  return out.str();
}

std::string pretty_print(const Expr& e) {
  if (std::holds_alternative<Term>(e)) return pretty_print(std::get<Term>(e));
  if (std::holds_alternative<Formula>(e)) return pretty_print(std::get<Formula>(e));
  return pretty_print(std::get<Program>(e));
}

}  // namespace dlopt
