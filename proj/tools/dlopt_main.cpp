// Copyright (c) 2026 The dlopt developers. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
//
// Command-line surface: parse, instantiate, equiv, optimize, check-cert.
// Exit codes: 0 success/certified/equivalent, 1 refuted/rejected/not
// applicable, 2 unknown/open premises, 3 usage or parse error.
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dlopt/certio.hpp"
#include "dlopt/errors.hpp"
#include "dlopt/kernel.hpp"
#include "dlopt/optimizer.hpp"
#include "dlopt/parser.hpp"
#include "dlopt/printer.hpp"
#include "dlopt/semantics.hpp"

namespace {

using namespace dlopt;

constexpr int kOk = 0;
constexpr int kRefuted = 1;
constexpr int kUnknown = 2;
constexpr int kUsage = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DlError("cannot read file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DlError("cannot write file '" + path + "'");
  out << content;
}

Formula load_formula(const std::string& path) {
  Formula f = parse_formula(read_file(path));
  if (contains_dot(f))
    throw ParseError("input formula must be dot-free", {0, 0});
  return f;
}

int cmd_parse(const std::string& file, const std::string& kind) {
  std::string text = read_file(file);
  if (kind == "formula" || kind == "auto") {
    try {
      Formula f = parse_formula(text);
      std::cout << pretty_print(f) << "\n";
      return kOk;
    } catch (const ParseError&) {
      if (kind == "formula") throw;
    }
  }
  if (kind == "program" || kind == "auto") {
    try {
      Program p = parse_program(text);
      std::cout << pretty_print(p) << "\n";
      return kOk;
    } catch (const ParseError&) {
      if (kind == "program") throw;
    }
  }
  Term t = parse_term(text);
  std::cout << pretty_print(t) << "\n";
  return kOk;
}

int cmd_instantiate(const std::string& axiom, const std::string& file,
                    const std::string& subst_file, const std::string& out_file,
                    const std::string& cert_file) {
  auto id = axiom_from_name(axiom);
  if (!id) {
    std::cerr << "unknown axiom '" << axiom << "'\n";
    return kUsage;
  }
  if (!subst_file.empty()) {
    UniformSubstitution sigma = UniformSubstitution::from_text(read_file(subst_file));
    try {
      Judgment j = instantiate_axiom(*id, sigma);
      std::cout << judgment_to_string(j) << "\n";
      if (!out_file.empty()) write_file(out_file, judgment_to_string(j) + "\n");
      if (!cert_file.empty())
        write_file(cert_file, write_certificate(axiom_certificate(*id, sigma)));
      return kOk;
    } catch (const ClashError& e) {
      std::cout << "clash: " << e.what() << "\n";
      return kRefuted;
    }
  }
  Formula f = load_formula(file);
  try {
    Certificate cert;
    std::optional<Formula> result = axiom_use_once(*id, f, &cert);
    if (!result) {
      std::cout << "n/a\n";
      return kRefuted;
    }
    std::cout << pretty_print(*result) << "\n";
    if (!out_file.empty()) write_file(out_file, pretty_print(*result) + "\n");
    if (!cert_file.empty()) write_file(cert_file, write_certificate(cert));
    return kOk;
  } catch (const ClashError& e) {
    std::cout << "clash: " << e.what() << "\n";
    return kRefuted;
  }
}

int cmd_equiv(const std::string& file_a, const std::string& file_b, std::uint64_t trials,
              unsigned fuel, std::uint64_t seed) {
  Formula a = load_formula(file_a);
  Formula b = load_formula(file_b);
  try {
    FalsifyResult r = falsify(mk_equiv(a, b), trials, seed, fuel);
    if (r.refuted) {
      std::cout << "refuted trial=" << r.trial << " state=" << r.counterexample.to_string()
                << "\n";
      return kRefuted;
    }
    std::cout << "not-refuted trials=" << r.trials << " unknowns=" << r.unknowns << "\n";
    return r.unknowns == 0 ? kOk : kUnknown;
  } catch (const UnsupportedError& e) {
    std::cout << "unknown: " << e.what() << "\n";
    return kUnknown;
  }
}

std::vector<int> parse_index_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ',')) out.push_back(std::stoi(piece));
  return out;
}

int cmd_optimize(const std::string& pass, const std::string& file,
                 const std::string& subexpr_text, const std::string& fresh_name,
                 int assign_index, const std::string& reads_text,
                 const std::string& site_text, const std::string& to_text, int loop_index,
                 const std::string& cert_file) {
  Formula f = load_formula(file);
  OptResult res;
  try {
    if (pass == "cse") {
      if (subexpr_text.empty() || fresh_name.empty()) {
        std::cerr << "cse requires --subexpr and --fresh\n";
        return kUsage;
      }
      res = cse(f, parse_term(subexpr_text), Variable{fresh_name});
    } else if (pass == "copyprop") {
      std::vector<Path> assigns = assign_paths(f);
      if (assign_index < 0 || assign_index >= static_cast<int>(assigns.size())) {
        std::cerr << "no assignment with index " << assign_index << "\n";
        return kUsage;
      }
      const Path& apath = assigns[assign_index];
      Program assign = std::get<Program>(subtree_at(Expr(f), apath));
      std::vector<Path> reads = variable_read_paths(f, assign->var);
      // Reads inside the assignment's own right-hand side keep their indices;
      // the left-hand side is a binder, not a read.
      std::vector<Path> chosen;
      for (int i : parse_index_list(reads_text)) {
        if (i < 0 || i >= static_cast<int>(reads.size())) {
          std::cerr << "no read occurrence with index " << i << "\n";
          return kUsage;
        }
        chosen.push_back(reads[i]);
      }
      res = copy_propagate(f, apath, chosen);
    } else if (pass == "constfold") {
      res = const_fold(f);
    } else if (pass == "commute") {
      if (site_text.empty() || to_text.empty()) {
        std::cerr << "commute requires --site and --to\n";
        return kUsage;
      }
      res = commute_term(f, path_from_string(site_text), parse_term(to_text));
    } else if (pass == "unwind") {
      Path site;
      if (!site_text.empty()) {
        site = path_from_string(site_text);
      } else {
        std::vector<Path> loops = while_paths(f);
        if (loop_index < 0 || loop_index >= static_cast<int>(loops.size())) {
          std::cerr << "no while loop with index " << loop_index << "\n";
          return kUsage;
        }
        site = loops[loop_index];
      }
      res = unwind_loop(f, site);
    } else {
      std::cerr << "unknown pass '" << pass << "'\n";
      return kUsage;
    }
  } catch (const NotApplicableError& e) {
    std::cout << "not applicable: " << e.what() << "\n";
    return kRefuted;
  } catch (const OracleError& e) {
    std::cout << "oracle rejected: " << e.what() << "\n";
    return kRefuted;
  }
  std::cout << pretty_print(res.output) << "\n";
  if (!cert_file.empty()) write_file(cert_file, write_certificate(res.certificate));
  Verdict v = check_certificate(res.certificate);
  if (v.status == Verdict::Rejected) {
    std::cerr << "internal error: certificate rejected: " << v.reason << "\n";
    return kRefuted;
  }
  return kOk;
}

int cmd_check_cert(const std::string& cert_file, const std::string& formula_file) {
  Certificate cert;
  try {
    cert = read_certificate(read_file(cert_file));
  } catch (const CertFormatError& e) {
    std::cerr << "malformed certificate: " << e.what() << "\n";
    return kUsage;
  } catch (const DlError& e) {
    std::cout << "rejected: " << e.what() << "\n";
    return kRefuted;
  }
  if (!formula_file.empty()) {
    Formula f = load_formula(formula_file);
    const Judgment& concl = cert->conclusion;
    bool matches = false;
    if (!concl.is_prog_eq) {
      matches = structural_equal(concl.formula, f) ||
                (concl.formula->tag == FormulaTag::Equiv &&
                 structural_equal(concl.formula->f1, f));
    }
    if (!matches) {
      std::cout << "rejected: conclusion " << judgment_to_string(concl)
                << " does not match the formula file\n";
      return kRefuted;
    }
  }
  Verdict v = check_certificate(cert);
  switch (v.status) {
    case Verdict::Certified:
      std::cout << "certified: " << judgment_to_string(cert->conclusion) << "\n";
      return kOk;
    case Verdict::CertifiedWithOpenPremises:
      std::cout << "open premises (" << v.open_premises.size() << "):\n";
      for (const auto& [j, label] : v.open_premises)
        std::cout << "  " << judgment_to_string(j) << "  # " << label << "\n";
      return kUnknown;
    case Verdict::Rejected:
      std::cout << "rejected at " << v.where << ": " << v.reason << "\n";
      return kRefuted;
  }
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dlopt: a dynamic-logic proof kernel with certified program optimizations"};
  app.require_subcommand(1);

  std::string file, kind = "auto";
  auto* parse_cmd = app.add_subcommand("parse", "parse a .dl file and print it canonically");
  parse_cmd->add_option("file", file)->required();
  parse_cmd->add_option("--kind", kind)->check(CLI::IsMember({"auto", "formula", "program", "term"}));

  std::string axiom, subst_file, out_file, cert_file;
  auto* inst_cmd = app.add_subcommand("instantiate", "use an axiom once at the top level");
  inst_cmd->add_option("axiom", axiom)->required();
  inst_cmd->add_option("file", file);
  inst_cmd->add_option("--subst", subst_file, "instantiate with an explicit substitution");
  inst_cmd->add_option("--out", out_file);
  inst_cmd->add_option("--emit-cert", cert_file);

  std::string file_b;
  std::uint64_t trials = 1000, seed = 0;
  unsigned fuel = 50;
  auto* equiv_cmd = app.add_subcommand("equiv", "randomized equivalence check of two formulas");
  equiv_cmd->add_option("a", file)->required();
  equiv_cmd->add_option("b", file_b)->required();
  equiv_cmd->add_option("--trials", trials);
  equiv_cmd->add_option("--fuel", fuel);
  equiv_cmd->add_option("--seed", seed);

  std::string pass, subexpr_text, fresh_name, reads_text, site_text, to_text;
  int assign_index = 0, loop_index = 0;
  auto* opt_cmd = app.add_subcommand("optimize", "run a certified transformation pass");
  opt_cmd->add_option("pass", pass)
      ->required()
      ->check(CLI::IsMember({"cse", "copyprop", "constfold", "commute", "unwind"}));
  opt_cmd->add_option("file", file)->required();
  opt_cmd->add_option("--subexpr", subexpr_text);
  opt_cmd->add_option("--fresh", fresh_name);
  opt_cmd->add_option("--assign", assign_index, "index of the assignment (textual order)");
  opt_cmd->add_option("--reads", reads_text, "comma-separated read indices to replace");
  opt_cmd->add_option("--site", site_text, "tree path of the target site");
  opt_cmd->add_option("--to", to_text);
  opt_cmd->add_option("--loop", loop_index, "index of the while loop (textual order)");
  opt_cmd->add_option("--emit-cert", cert_file);

  std::string formula_file;
  auto* check_cmd = app.add_subcommand("check-cert", "replay and check a certificate file");
  check_cmd->add_option("cert", cert_file)->required();
  check_cmd->add_option("formula", formula_file);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*parse_cmd) return cmd_parse(file, kind);
    if (*inst_cmd) return cmd_instantiate(axiom, file, subst_file, out_file, cert_file);
    if (*equiv_cmd) return cmd_equiv(file, file_b, trials, fuel, seed);
    if (*opt_cmd)
      return cmd_optimize(pass, file, subexpr_text, fresh_name, assign_index, reads_text,
                          site_text, to_text, loop_index, cert_file);
    if (*check_cmd) return cmd_check_cert(cert_file, formula_file);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const PathError& e) {
    std::cerr << "path error: " << e.what() << "\n";
    return kUsage;
  } catch (const DlError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
