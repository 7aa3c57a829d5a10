// Copyright 2026 The minnorm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Everything goes through the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "minnorm/minnorm.h"

namespace {

// Thrown after the diagnostic has been printed.
struct Failure {
  int code;
};

void check(mn_status s) {
  if (s == MN_OK) return;
  std::cerr << "error: " << mn_status_string(s);
  if (*mn_last_error() != '\0') std::cerr << ": " << mn_last_error();
  std::cerr << "\n";
  throw Failure{1};
}

class Text {
 public:
  ~Text() { mn_free_string(s_); }
  char** out() { return &s_; }
  const char* get() const { return s_ == nullptr ? "" : s_; }

 private:
  char* s_ = nullptr;
};

class InstanceHandle {
 public:
  explicit InstanceHandle(const std::string& path) { check(mn_instance_load(path.c_str(), &h_)); }
  InstanceHandle(std::size_t m, std::size_t n, std::uint64_t pmax, std::uint64_t seed) {
    check(mn_instance_generate(m, n, pmax, seed, &h_));
  }
  ~InstanceHandle() { mn_instance_free(h_); }
  InstanceHandle(const InstanceHandle&) = delete;
  InstanceHandle& operator=(const InstanceHandle&) = delete;
  const mn_instance* get() const { return h_; }

 private:
  mn_instance* h_ = nullptr;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open " << path << "\n";
    throw Failure{1};
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& out, const char* text) {
  if (out.empty() || out == "-") {
    std::fputs(text, stdout);
    return;
  }
  std::ofstream f(out, std::ios::binary | std::ios::trunc);
  f << text;
  if (!f) {
    std::cerr << "error: cannot write " << out << "\n";
    throw Failure{1};
  }
}

struct Common {
  std::string instance;
  std::string out;
  std::string solver = "subgradient";
  double eps = 0.05;
  std::uint64_t seed = 0;
  std::int64_t max_iters = 0;
  std::uint64_t cap = 20000000;
  bool timing = false;
  bool strict = false;
};

void add_solver_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--eps", c.eps, "Relative accuracy")->check(CLI::PositiveNumber);
  cmd->add_option("--solver", c.solver, "Relaxation backend")
      ->check(CLI::IsMember({"subgradient", "cutting_plane"}));
  cmd->add_option("--seed", c.seed, "Random seed");
  cmd->add_option("--max-iters", c.max_iters, "Iteration limit, 0 for the backend default")
      ->check(CLI::NonNegativeNumber);
  cmd->add_flag("--timing", c.timing, "Record wall time in the output");
}

mn_options options(const Common& c, const std::string& command) {
  mn_options o;
  mn_options_init(&o);
  o.eps = c.eps;
  o.solver = c.solver == "cutting_plane" ? MN_SOLVER_CUTTING_PLANE : MN_SOLVER_SUBGRADIENT;
  o.seed = c.seed;
  o.max_iters = c.max_iters;
  o.enumeration_cap = c.cap;
  o.timing = c.timing ? 1 : 0;
  o.strict = c.strict ? 1 : 0;
  o.command = command.c_str();
  return o;
}

int finish_report(const Common& c, const Text& report) {
  emit(c.out, report.get());
  return mn_report_exit_code(report.get());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum-norm load balancing on unrelated machines"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(mn_version()));

  std::string command = "minnorm";
  for (int k = 1; k < argc; ++k) command += std::string(" ") + argv[k];

  Common c;
  std::string norm = "l2";
  std::string budgets;
  std::string report_path;
  std::string corpus;
  std::vector<std::string> bench_norms;
  std::size_t gen_m = 0, gen_n = 0;
  std::uint64_t pmax = 9;

  auto* solve = app.add_subcommand("solve", "Solve the relaxation and round it");
  solve->add_option("--instance", c.instance, "Instance JSON file")->required();
  solve->add_option("--norm", norm, "Norm: l<p>, linf, top<l>, ordered:w1,w2,... or JSON");
  solve->add_option("--out", c.out, "Report file (default stdout)");
  solve->add_flag("--strict", c.strict, "Exit 3 when the solver did not converge");
  add_solver_flags(solve, c);

  auto* multi = app.add_subcommand("multinorm", "Meet several norm budgets at once");
  multi->add_option("--instance", c.instance, "Instance JSON file")->required();
  multi->add_option("--budgets", budgets, "Budgets JSON file or inline JSON array")->required();
  multi->add_option("--out", c.out, "Report file (default stdout)");
  add_solver_flags(multi, c);

  auto* simul = app.add_subcommand("simul", "Simultaneous approximation over all symmetric norms");
  simul->add_option("--instance", c.instance, "Instance JSON file")->required();
  simul->add_option("--out", c.out, "Report file (default stdout)");
  add_solver_flags(simul, c);

  auto* exact = app.add_subcommand("exact", "Brute-force optimum");
  exact->add_option("--instance", c.instance, "Instance JSON file")->required();
  exact->add_option("--norm", norm, "Norm specification");
  exact->add_option("--cap", c.cap, "Largest m^n to enumerate");
  exact->add_option("--out", c.out, "Report file (default stdout)");
  exact->add_flag("--timing", c.timing, "Record wall time in the output");

  auto* gen = app.add_subcommand("gen", "Generate a uniform random integer instance");
  gen->add_option("--m", gen_m, "Machines")->required()->check(CLI::PositiveNumber);
  gen->add_option("--n", gen_n, "Jobs")->required()->check(CLI::PositiveNumber);
  gen->add_option("--pmax", pmax, "Largest processing time")->check(CLI::PositiveNumber);
  gen->add_option("--seed", c.seed, "Random seed");
  gen->add_option("--out", c.out, "Instance file (default stdout)");

  auto* bench = app.add_subcommand("bench", "Solve every instance of a corpus under several norms");
  bench->add_option("--corpus", corpus, "Directory of instance JSON files")
      ->required()
      ->check(CLI::ExistingDirectory);
  bench->add_option("--norm", bench_norms, "Norm to run (repeatable; default l1 l2 linf top2 "
                                           "ordered:3,2,1)");
  bench->add_option("--cap", c.cap, "Largest m^n to brute force");
  bench->add_option("--out", c.out, "CSV file (default stdout)");
  add_solver_flags(bench, c);

  auto* verify = app.add_subcommand("verify", "Recompute a report's claims from its instance");
  verify->add_option("--instance", c.instance, "Instance JSON file")->required();
  verify->add_option("--report", report_path, "Report JSON file")->required();

  // Usage errors map to exit 1 as well.
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    const mn_options opts = options(c, command);
    if (*solve) {
      InstanceHandle inst(c.instance);
      Text report;
      check(mn_solve(inst.get(), norm.c_str(), &opts, report.out()));
      return finish_report(c, report);
    }
    if (*multi) {
      InstanceHandle inst(c.instance);
      const std::string text =
          budgets.starts_with("[") ? budgets : read_text(budgets);
      Text report;
      check(mn_multinorm(inst.get(), text.c_str(), &opts, report.out()));
      return finish_report(c, report);
    }
    if (*simul) {
      InstanceHandle inst(c.instance);
      Text report;
      check(mn_simul(inst.get(), &opts, report.out()));
      return finish_report(c, report);
    }
    if (*exact) {
      InstanceHandle inst(c.instance);
      Text report;
      check(mn_exact(inst.get(), norm.c_str(), &opts, report.out()));
      return finish_report(c, report);
    }
    if (*gen) {
      InstanceHandle inst(gen_m, gen_n, pmax, c.seed);
      Text json;
      check(mn_instance_to_json(inst.get(), json.out()));
      emit(c.out, json.get());
      return 0;
    }
    if (*bench) {
      std::string norms_json;
      if (!bench_norms.empty()) {
        norms_json = "[";
        for (std::size_t k = 0; k < bench_norms.size(); ++k) {
          if (k > 0) norms_json += ",";
          // Shorthand specs travel as JSON strings.
          norms_json += bench_norms[k].starts_with("{") ? bench_norms[k]
                                                        : "\"" + bench_norms[k] + "\"";
        }
        norms_json += "]";
      }
      Text csv;
      check(mn_bench(corpus.c_str(), norms_json.empty() ? nullptr : norms_json.c_str(), &opts,
                     csv.out()));
      emit(c.out, csv.get());
      return 0;
    }
    if (*verify) {
      InstanceHandle inst(c.instance);
      const std::string text = read_text(report_path);
      int ok = 0;
      Text diagnostics;
      check(mn_verify_report(inst.get(), text.c_str(), &ok, diagnostics.out()));
      if (!ok) {
        std::cerr << "verify: mismatch\n" << diagnostics.get();
        return 1;
      }
      std::cout << "verify: ok\n";
      return 0;
    }
  } catch (const Failure& f) {
    return f.code;
  }
  return 1;
}
