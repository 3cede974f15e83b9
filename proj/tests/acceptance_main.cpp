// Copyright (c) 2026 The dlopt developers. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
//
// Acceptance suite. Runs each criterion against its stated time budget and
// prints one PASS/FAIL line per criterion.
//
//   dlopt_acceptance <path-to-dlopt-cli> <golden-dir>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dlopt/certio.hpp"
#include "dlopt/kernel.hpp"
#include "dlopt/optimizer.hpp"
#include "dlopt/parser.hpp"
#include "dlopt/printer.hpp"
#include "dlopt/semantics.hpp"
#include "dlopt/statics.hpp"
#include "instance_gen.hpp"

using namespace dlopt;

namespace {

std::string g_cli;
std::string g_golden;

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& msg) {
  if (!ok) throw Failure(msg);
}

std::string golden_path(const std::string& name) { return g_golden + "/" + name; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Formula golden_formula(const std::string& name) {
  return parse_formula(read_file(golden_path(name)));
}

struct CliResult {
  int exit_code;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  std::string cmd = g_cli + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  require(pipe != nullptr, "cannot run " + cmd);
  std::string output;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, n);
  int status = pclose(pipe);
  int code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  return {code, output};
}

std::string first_line(const std::string& s) {
  std::size_t nl = s.find('\n');
  return nl == std::string::npos ? s : s.substr(0, nl);
}

// ----------------------------------------------------------------------------

void criterion1_example_chain() {
  Formula ex1 = golden_formula("example1.dl");
  Formula ex2 = golden_formula("example2.dl");
  Formula ex3 = golden_formula("example3.dl");

  Certificate chain;
  auto split = axiom_use_once(AxiomId::ComposeB, ex1, &chain);
  require(split.has_value(), "composeb did not apply to example 1");
  require(structural_equal(*split, ex2), "composeb result differs from example 2");

  // Split the conjunction under both boxes with two band uses, rewriting
  // inside the right-hand copy of Valid(ex1 <-> ex2).
  Formula inner_box = ex2->f2->f1;  // [ode](x<=m & 0<=v)
  Certificate band_inner;
  auto inner_split = axiom_use_once(AxiomId::BAnd, inner_box, &band_inner);
  require(inner_split.has_value(), "band did not apply under the control box");
  // band_inner concludes Valid(inner_box <-> split); use the instance as the
  // rewriting equivalence inside the chain.
  chain = rewrite_with(band_inner, chain, Path{1, 1, 1});

  Formula outer_box = chain->conclusion.formula->f2->f2;  // [ctrl](...&...)
  Certificate band_outer;
  auto outer_split = axiom_use_once(AxiomId::BAnd, outer_box, &band_outer);
  require(outer_split.has_value(), "band did not apply to the control box");
  chain = rewrite_with(band_outer, chain, Path{1, 1});

  require(structural_equal(chain->conclusion.formula->f1, ex1),
          "chain conclusion does not start from example 1");
  require(structural_equal(chain->conclusion.formula->f2, ex3),
          "chain result differs from example 3");
  Verdict v = check_certificate(chain);
  require(v.certified(), "example chain certificate not certified: " + v.reason);
}

void criterion2_quiz_axiom_usage() {
  CliResult compose = run_cli("instantiate composeb " + golden_path("quiz_compose.dl"));
  require(compose.exit_code == 0, "composeb exit code " + std::to_string(compose.exit_code));
  require(first_line(compose.output) == "[ctrl;][plant;]x>y",
          "composeb printed '" + first_line(compose.output) + "'");

  CliResult assign = run_cli("instantiate assignb " + golden_path("quiz_compose.dl"));
  require(assign.exit_code == 1, "assignb exit code " + std::to_string(assign.exit_code));
  require(first_line(assign.output) == "n/a",
          "assignb printed '" + first_line(assign.output) + "'");
}

void criterion3_quiz_equivalence() {
  CliResult good = run_cli("equiv " + golden_path("quiz_assign.dl") + " " +
                           golden_path("quiz_x_gt_4.dl") +
                           " --trials 10000 --fuel 10 --seed 1");
  require(good.exit_code == 0, "equiv x>4 exit code " + std::to_string(good.exit_code));
  require(first_line(good.output) == "not-refuted trials=10000 unknowns=0",
          "equiv x>4 printed '" + first_line(good.output) + "'");

  CliResult bad = run_cli("equiv " + golden_path("quiz_assign.dl") + " " +
                          golden_path("quiz_x_gt_5.dl") +
                          " --trials 10000 --fuel 10 --seed 1");
  require(bad.exit_code == 1, "equiv x>5 exit code " + std::to_string(bad.exit_code));
  require(first_line(bad.output).rfind("refuted", 0) == 0,
          "equiv x>5 printed '" + first_line(bad.output) + "'");
}

void check_certified_against_golden(const OptResult& res, const Formula& input,
                                    const std::string& golden_name) {
  require(res.applied, golden_name + ": transformation did not apply");
  require(structural_equal(res.output, golden_formula(golden_name)),
          golden_name + ": output differs from the printed program");
  Verdict v = check_certificate(res.certificate);
  require(v.certified(), golden_name + ": certificate not certified: " + v.reason);
  const Formula& concl = res.certificate->conclusion.formula;
  require(concl->tag == FormulaTag::Equiv && structural_equal(concl->f1, input) &&
              structural_equal(concl->f2, res.output),
          golden_name + ": conclusion is not input <-> output");
}

void criterion4_optimization_golden_suite() {
  Formula cse_in = golden_formula("cse_in.dl");
  OptResult cse_res = cse(cse_in, parse_term("a^2+b"), Variable{"x"});
  check_certified_against_golden(cse_res, cse_in, "cse_out.dl");

  Formula cse_out = golden_formula("cse_out.dl");
  std::vector<Path> reads = variable_read_paths(cse_out, Variable{"x"});
  require(reads.size() == 2, "expected two reads of x in the cse output");
  OptResult prop1 = copy_propagate(cse_out, assign_paths(cse_out)[0], {reads[1]});
  check_certified_against_golden(prop1, cse_out, "copyprop_out1.dl");
  OptResult prop2 = copy_propagate(cse_out, assign_paths(cse_out)[0], {reads[0], reads[1]});
  check_certified_against_golden(prop2, cse_out, "copyprop_out2.dl");

  OptResult fold = const_fold(cse_out);
  check_certified_against_golden(fold, cse_out, "constfold_out.dl");

  Formula fold_out = golden_formula("constfold_out.dl");
  OptResult commute = commute_term(fold_out, Path{0, 0, 0}, parse_term("b+a^2"));
  check_certified_against_golden(commute, fold_out, "commute_out.dl");

  Formula commute_out = golden_formula("commute_out.dl");
  OptResult unwind = unwind_loop(commute_out, while_paths(commute_out)[0]);
  check_certified_against_golden(unwind, commute_out, "unwind_out.dl");

  // Rejected transformations.
  bool yy_rejected = false;
  try {
    cse(cse_in, parse_term("y^2"), Variable{"x"});
  } catch (const NotApplicableError&) {
    yy_rejected = true;
  }
  require(yy_rejected, "pulling out y^2 was not rejected");

  bool z_rejected = false;
  try {
    copy_propagate(cse_out, assign_paths(cse_out)[1],
                   {variable_read_paths(cse_out, Variable{"z"})[0]});
  } catch (const NotApplicableError&) {
    z_rejected = true;
  }
  require(z_rejected, "propagating z's looped value was not rejected");

  // The naive textual rewrites are genuinely unsound.
  Formula orig = parse_formula("[while(y^2<a^2+b){z:=z+y^2*(a^2+b); y:=y+2*3;}]x>0");
  Formula naive = parse_formula("[x:=y^2; while(x<a^2+b){z:=z+x*(a^2+b); y:=y+2*3;}]x>0");
  require(falsify(mk_equiv(orig, naive), 10000, 5, 50).refuted,
          "naive y^2 pull-out was not refuted");

  Formula orig2 = parse_formula("[x:=a^2+b; while(y^2<x){z:=z+y^2*x; y:=y+2*3;}]z<1");
  Formula naive2 =
      parse_formula("[x:=a^2+b; while(y^2<x){z:=(z+y^2*x)+y^2*x; y:=y+2*3;}]z<1");
  require(falsify(mk_equiv(orig2, naive2), 10000, 5, 50).refuted,
          "naive z propagation was not refuted");
}

void criterion5_kernel_soundness() {
  // Generation is sequential (one RNG stream); evaluation fans out over a
  // worker pool with per-instance state seeds, so the suite stays
  // deterministic regardless of scheduling.
  testgen::Gen gen(1009);
  const AxiomId axioms[] = {AxiomId::ComposeB, AxiomId::BAnd,    AxiomId::AssignB,
                            AxiomId::ChoiceB,  AxiomId::TestB,   AxiomId::LoopUnwindEq};
  std::vector<std::pair<AxiomId, Judgment>> instances;
  int attempts = 0;
  while (instances.size() < 1000) {
    require(++attempts < 50000, "instance generator starved");
    AxiomId id = axioms[instances.size() % 6];
    auto j = testgen::random_admissible_instance(gen, id);
    if (j) instances.emplace_back(id, *j);
  }

  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> ok{true};
  std::mutex mu;
  std::string failure;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= instances.size() || !ok.load()) return;
        testgen::Gen states(90000 + i);
        if (!testgen::instance_never_false(states, instances[i].second, 100, 50)) {
          std::lock_guard<std::mutex> lock(mu);
          ok = false;
          failure = "instance of " + axiom_name(instances[i].first) +
                    " evaluated to false: " + judgment_to_string(instances[i].second);
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  require(ok.load(), failure);
}

void criterion6_coincidence_and_bound_effect() {
  testgen::Gen gen(2003);
  const char* names[] = {"x", "y", "z", "v", "w", "u", "a", "b"};
  for (int i = 0; i < 1000; ++i) {
    Term t = gen.term(3);
    State w = gen.state();
    State v = w;
    VarSet fv = free_vars(t);
    for (const char* name : names) {
      Variable var{name};
      if (!fv.contains(var)) v = v.with(var, gen.small_rational());
    }
    require(eval_term(w, t) == eval_term(v, t),
            "coincidence violated for " + pretty_print(t));
  }
  for (int i = 0; i < 1000; ++i) {
    Program p = gen.discrete_program(3);
    State w = gen.state();
    VarSet bv = bound_vars(p);
    RunResult r = run_program(w, p, 8);
    for (const State& s : r.reached)
      for (const char* name : {"x", "y", "z", "v", "w", "u", "a", "b", "m", "A"}) {
        Variable var{name};
        if (!bv.contains(var))
          require(s.get(var) == w.get(var),
                  "bound effect violated for " + pretty_print(p));
      }
  }
}

void criterion7_round_trip() {
  testgen::Gen gen(3001);
  for (int i = 0; i < 1000; ++i) {
    switch (i % 3) {
      case 0: {
        Term t = gen.full_term(4);
        require(structural_equal(parse_term(pretty_print(t)), t),
                "term round trip failed: " + pretty_print(t));
        break;
      }
      case 1: {
        Formula f = gen.full_formula(4);
        require(structural_equal(parse_formula(pretty_print(f)), f),
                "formula round trip failed: " + pretty_print(f));
        break;
      }
      default: {
        Program p = gen.full_program(4);
        require(structural_equal(parse_program(pretty_print(p)), p),
                "program round trip failed: " + pretty_print(p));
        break;
      }
    }
  }
}

void criterion8_loop_certificate() {
  Formula quiz = golden_formula("quiz_loop.dl");
  require(quiz->tag == FormulaTag::Implies, "quiz formula is not an implication");
  Formula box = quiz->f2;

  RuleParams loop;
  loop.invariant = parse_formula("x>=1 & v>0");
  loop.gamma = {quiz->f1};
  loop.loop = box->prog;
  loop.post = box->f1;
  Program body = box->prog->p1;

  std::vector<Certificate> premises = {
      open_premise(Judgment::valid(imp_conj(loop.gamma, loop.invariant)), "init"),
      open_premise(Judgment::valid(mk_implies(loop.invariant, mk_box(body, loop.invariant))),
                   "step"),
      open_premise(Judgment::valid(mk_implies(loop.invariant, loop.post)), "use"),
  };
  Certificate cert = apply_rule(RuleId::Loop, loop, premises);
  require(structural_equal(cert->conclusion.formula, quiz),
          "loop conclusion differs from the quiz formula");

  // The certificate must survive serialization, and no arithmetic premise may
  // be silently discharged.
  Certificate replayed = read_certificate(write_certificate(cert));
  Verdict v = check_certificate(replayed);
  require(v.status == Verdict::CertifiedWithOpenPremises,
          "loop certificate did not check with open premises");
  require(v.open_premises.size() == 3,
          "expected exactly 3 open premises, got " + std::to_string(v.open_premises.size()));
}

struct Criterion {
  std::string name;
  double budget_seconds;
  std::function<void()> run;
};

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: dlopt_acceptance <dlopt-cli> <golden-dir>\n";
    return 2;
  }
  g_cli = argv[1];
  g_golden = argv[2];

  std::vector<Criterion> criteria = {
      {"criterion-1-example-chain", 1.0, criterion1_example_chain},
      {"criterion-2-quiz-axiom-usage", 1.0, criterion2_quiz_axiom_usage},
      {"criterion-3-quiz-equivalence", 5.0, criterion3_quiz_equivalence},
      {"criterion-4-optimization-golden-suite", 30.0, criterion4_optimization_golden_suite},
      {"criterion-5-kernel-soundness", 120.0, criterion5_kernel_soundness},
      {"criterion-6-coincidence-bound-effect", 60.0, criterion6_coincidence_and_bound_effect},
      {"criterion-7-round-trip", 10.0, criterion7_round_trip},
      {"criterion-8-loop-certificate", 1.0, criterion8_loop_certificate},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    std::string error;
    try {
      c.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs/%.0fs", elapsed, c.budget_seconds);
    if (error.empty() && elapsed <= c.budget_seconds) {
      std::cout << "PASS " << c.name << " (" << timing << ")\n";
    } else {
      ++failures;
      std::cout << "FAIL " << c.name << " (" << timing << ")";
      if (!error.empty()) std::cout << ": " << error;
      if (error.empty()) std::cout << ": time budget exceeded";
      std::cout << "\n";
    }
  }
  return failures == 0 ? 0 : 1;
}
