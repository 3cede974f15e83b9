// Copyright (c) 2026 The dlopt developers. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#include "dlopt/certio.hpp"

#include <map>
#include <sstream>
#include <vector>

#include "dlopt/errors.hpp"
#include "dlopt/parser.hpp"
#include "dlopt/printer.hpp"

namespace dlopt {

namespace {

constexpr const char* kListSep = ";;";

std::string quote(const std::string& s) { return "\"" + s + "\""; }

std::string join_formulas(const std::vector<Formula>& fs) {
  std::string out;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (i) out += kListSep;
    out += pretty_print(fs[i]);
  }
  return out;
}

std::vector<Formula> split_formulas(const std::string& text) {
  std::vector<Formula> fs;
  if (text.empty()) return fs;
  std::size_t pos = 0;
  for (;;) {
    std::size_t sep = text.find(kListSep, pos);
    std::string piece = text.substr(pos, sep == std::string::npos ? sep : sep - pos);
    fs.push_back(parse_formula(piece));
    if (sep == std::string::npos) break;
    pos = sep + 2;
  }
  return fs;
}

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  int emit(const Certificate& c) {
    auto it = ids_.find(c.get());
    if (it != ids_.end()) return it->second;
    if (const auto* rule = std::get_if<RuleAppData>(&c->node)) {
      std::vector<int> premise_ids;
      for (const Certificate& p : rule->premises) premise_ids.push_back(emit(p));
      int id = next_++;
      ids_[c.get()] = id;
      out_ << "NODE " << id << " RULE " << rule_name(rule->id);
      write_params(rule->id, rule->params);
      if (!premise_ids.empty()) {
        out_ << " PREMISES";
        for (int pid : premise_ids) out_ << ' ' << pid;
      }
      out_ << '\n';
      return id;
    }
    int id = next_++;
    ids_[c.get()] = id;
    if (const auto* ax = std::get_if<AxiomInstanceData>(&c->node)) {
      out_ << "NODE " << id << " AXIOM " << axiom_name(ax->id) << " SUBST "
           << quote(ax->sigma.to_text());
      if (!ax->renamings.empty()) {
        std::string pairs;
        for (std::size_t i = 0; i < ax->renamings.size(); ++i) {
          if (i) pairs += ' ';
          pairs += ax->renamings[i].first.name + ":" + ax->renamings[i].second.name;
        }
        out_ << " RENAME " << quote(pairs);
      }
      out_ << '\n';
    } else {
      const auto& open = std::get<OpenPremiseData>(c->node);
      out_ << "NODE " << id << " OPEN ";
      if (open.judgment.is_prog_eq)
        out_ << "PROGEQ " << quote(pretty_print(open.judgment.left)) << ' '
             << quote(pretty_print(open.judgment.right));
      else
        out_ << "VALID " << quote(pretty_print(open.judgment.formula));
      out_ << " LABEL " << quote(open.label) << '\n';
    }
    return id;
  }

 private:
  void write_params(RuleId id, const RuleParams& p) {
    switch (id) {
      case RuleId::US:
        out_ << " SUBST " << quote(p.sigma.to_text());
        break;
      case RuleId::USR:
        out_ << " BASE " << p.base_rule << " SUBST " << quote(p.sigma.to_text());
        break;
      case RuleId::CQ:
      case RuleId::CP:
        out_ << " FORMULA " << quote(pretty_print(p.context_formula)) << " PATH "
             << path_to_string(p.path);
        break;
      case RuleId::CT:
        out_ << " TERM " << quote(pretty_print(p.context_term)) << " PATH "
             << path_to_string(p.path);
        break;
      case RuleId::Loop:
        out_ << " INV " << quote(pretty_print(p.invariant)) << " GAMMA "
             << quote(join_formulas(p.gamma)) << " DELTA " << quote(join_formulas(p.delta))
             << " LOOP " << quote(pretty_print(p.loop)) << " POST "
             << quote(pretty_print(p.post));
        break;
      case RuleId::ImplyR:
        out_ << " GAMMA " << quote(join_formulas(p.gamma)) << " ANT "
             << quote(pretty_print(p.antecedent)) << " CONS "
             << quote(pretty_print(p.consequent));
        break;
      case RuleId::ModusPonens:
        break;
      case RuleId::EquivRewrite:
        out_ << " PATH " << path_to_string(p.path) << " REVERSE " << (p.reverse ? 1 : 0);
        break;
      case RuleId::PolyIdentity:
        out_ << " EQ " << quote(pretty_print(p.equation));
        break;
    }
  }

  std::ostream& out_;
  std::map<const CertNode*, int> ids_;
  int next_ = 0;
};

std::vector<std::string> split_line_tokens(const std::string& line, int lineno) {
  std::vector<std::string> toks;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == ' ' || line[i] == '\t') {
      ++i;
      continue;
    }
    if (line[i] == '"') {
      std::size_t end = line.find('"', i + 1);
      if (end == std::string::npos)
        throw CertFormatError("line " + std::to_string(lineno) + ": unterminated quote");
      toks.push_back(line.substr(i + 1, end - i - 1));
      i = end + 1;
      continue;
    }
    std::size_t end = i;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
    toks.push_back(line.substr(i, end - i));
    i = end;
  }
  return toks;
}

class LineFields {
 public:
  LineFields(std::vector<std::string> toks, int lineno)
      : toks_(std::move(toks)), lineno_(lineno) {}

  const std::string& at(std::size_t i) const {
    if (i >= toks_.size()) fail("missing field");
    return toks_[i];
  }
  std::size_t size() const { return toks_.size(); }

  // Looks up `key value` pairs after a fixed prefix.
  bool has(const std::string& key) const { return find(key) != toks_.size(); }
  const std::string& value(const std::string& key) const {
    std::size_t i = find(key);
    if (i == toks_.size()) fail("missing field " + key);
    if (i + 1 >= toks_.size()) fail("field " + key + " has no value");
    return toks_[i + 1];
  }
  std::vector<int> ints_after(const std::string& key) const {
    std::vector<int> out;
    std::size_t i = find(key);
    if (i == toks_.size()) return out;
    for (std::size_t j = i + 1; j < toks_.size(); ++j) {
      try {
        out.push_back(std::stoi(toks_[j]));
      } catch (const std::exception&) {
        fail("bad id '" + toks_[j] + "'");
      }
    }
    return out;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw CertFormatError("line " + std::to_string(lineno_) + ": " + why);
  }

 private:
  std::size_t find(const std::string& key) const {
    for (std::size_t i = 0; i < toks_.size(); ++i)
      if (toks_[i] == key) return i;
    return toks_.size();
  }
  std::vector<std::string> toks_;
  int lineno_;
};

}  // namespace

void write_certificate(std::ostream& out, const Certificate& cert) {
  out << "DLC 1\n";
  Writer w(out);
  int root = w.emit(cert);
  out << "ROOT " << root << '\n';
}

std::string write_certificate(const Certificate& cert) {
  std::ostringstream out;
  write_certificate(out, cert);
  return out.str();
}

Certificate read_certificate(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::map<int, Certificate> nodes;
  Certificate root;
  bool saw_header = false, saw_root = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    LineFields f(split_line_tokens(line, lineno), lineno);
    if (f.size() == 0) continue;
    if (!saw_header) {
      if (f.at(0) != "DLC" || f.at(1) != "1") f.fail("expected header 'DLC 1'");
      saw_header = true;
      continue;
    }
    if (f.at(0) == "ROOT") {
      int id = std::stoi(f.at(1));
      auto it = nodes.find(id);
      if (it == nodes.end()) f.fail("root references unknown node");
      root = it->second;
      saw_root = true;
      continue;
    }
    if (f.at(0) != "NODE") f.fail("expected NODE or ROOT");
    int id = 0;
    try {
      id = std::stoi(f.at(1));
    } catch (const std::exception&) {
      f.fail("bad node id");
    }
    if (nodes.count(id)) f.fail("duplicate node id");
    const std::string& kind = f.at(2);
    try {
      if (kind == "AXIOM") {
        auto ax = axiom_from_name(f.at(3));
        if (!ax) f.fail("unknown axiom '" + f.at(3) + "'");
        UniformSubstitution sigma = UniformSubstitution::from_text(f.value("SUBST"));
        std::vector<std::pair<Variable, Variable>> renamings;
        if (f.has("RENAME")) {
          std::istringstream rs(f.value("RENAME"));
          std::string pair;
          while (rs >> pair) {
            std::size_t colon = pair.find(':');
            if (colon == std::string::npos) f.fail("bad rename pair '" + pair + "'");
            renamings.emplace_back(Variable{pair.substr(0, colon)},
                                   Variable{pair.substr(colon + 1)});
          }
        }
        nodes[id] = axiom_certificate(*ax, sigma, renamings);
      } else if (kind == "OPEN") {
        Judgment j = f.at(3) == "PROGEQ"
                         ? Judgment::prog_eq(parse_program(f.at(4)), parse_program(f.at(5)))
                         : Judgment::valid(parse_formula(f.at(4)));
        nodes[id] = open_premise(j, f.value("LABEL"));
      } else if (kind == "RULE") {
        auto rule = rule_from_name(f.at(3));
        if (!rule) f.fail("unknown rule '" + f.at(3) + "'");
        RuleParams params;
        switch (*rule) {
          case RuleId::US:
            params.sigma = UniformSubstitution::from_text(f.value("SUBST"));
            break;
          case RuleId::USR:
            params.base_rule = f.value("BASE");
            params.sigma = UniformSubstitution::from_text(f.value("SUBST"));
            break;
          case RuleId::CQ:
          case RuleId::CP:
            params.context_formula = parse_formula(f.value("FORMULA"));
            params.path = path_from_string(f.value("PATH"));
            break;
          case RuleId::CT:
            params.context_term = parse_term(f.value("TERM"));
            params.path = path_from_string(f.value("PATH"));
            break;
          case RuleId::Loop:
            params.invariant = parse_formula(f.value("INV"));
            params.gamma = split_formulas(f.value("GAMMA"));
            params.delta = split_formulas(f.value("DELTA"));
            params.loop = parse_program(f.value("LOOP"));
            params.post = parse_formula(f.value("POST"));
            break;
          case RuleId::ImplyR:
            params.gamma = split_formulas(f.value("GAMMA"));
            params.antecedent = parse_formula(f.value("ANT"));
            params.consequent = parse_formula(f.value("CONS"));
            break;
          case RuleId::ModusPonens:
            break;
          case RuleId::EquivRewrite:
            params.path = path_from_string(f.value("PATH"));
            params.reverse = f.value("REVERSE") == "1";
            break;
          case RuleId::PolyIdentity:
            params.equation = parse_formula(f.value("EQ"));
            break;
        }
        std::vector<Certificate> premises;
        for (int pid : f.ints_after("PREMISES")) {
          auto it = nodes.find(pid);
          if (it == nodes.end()) f.fail("premise references unknown node");
          premises.push_back(it->second);
        }
        nodes[id] = apply_rule(*rule, std::move(params), std::move(premises));
      } else {
        f.fail("unknown node kind '" + kind + "'");
      }
    } catch (const CertFormatError&) {
      throw;
    } catch (const ParseError& e) {
      f.fail(std::string("parse error in field: ") + e.what());
    }
    // Kernel errors (clash, shape, arity, oracle, ...) propagate: the file is
    // well-formed but describes a derivation that does not go through.
  }
  if (!saw_root || !root) throw CertFormatError("certificate has no ROOT line");
  return root;
}

}  // namespace dlopt
