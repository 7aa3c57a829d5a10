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

#include "pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "error.hpp"
#include "multinorm.hpp"
#include "rng.hpp"
#include "rounding.hpp"
#include "simul.hpp"

namespace minnorm {

namespace {

using Clock = std::chrono::steady_clock;

const char* solver_name(SolverKind k) {
  return k == SolverKind::kCuttingPlane ? "cutting_plane" : "subgradient";
}

Json config_json(const RunOptions& opt) {
  Json c;
  c["eps"] = opt.solve.eps;
  c["solver"] = solver_name(opt.solve.solver);
  c["seed"] = opt.solve.seed;
  c["max_iters"] = opt.solve.max_iters;
  c["stall_patience"] = opt.solve.stall_patience;
  c["level_growth"] = opt.solve.level_growth;
  c["strict"] = opt.strict;
  c["timing"] = opt.timing;
  return c;
}

Json header(const char* kind, const ParsedInstance& in, const RunOptions& opt) {
  Json r;
  r["report"] = kind;
  r["command"] = opt.command;
  r["config"] = config_json(opt);
  r["instance_digest"] = instance_digest(in.instance);
  r["machines"] = in.instance.machines();
  r["jobs"] = in.instance.original_jobs();
  r["integer_scaled"] = in.scaled;
  if (in.scaled) r["scale"] = in.scale;
  r["seed"] = opt.solve.seed;
  return r;
}

Json norm_values(const std::vector<NormSpec>& specs, const LoadVector& loads) {
  Json out = Json::array();
  for (const auto& s : specs) {
    const auto oracle = make_oracle(s, loads.size());
    Json e;
    e["norm"] = norm_spec_to_json(s);
    e["label"] = s.label();
    e["value"] = oracle->value(loads);
    out.push_back(std::move(e));
  }
  return out;
}

void finish(Json& r, Clock::time_point start, const RunOptions& opt) {
  if (opt.timing) {
    r["wall_time_ms"] =
        std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  }
}

double safe_ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

bool close(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); }

}  // namespace

Json solve_report(const ParsedInstance& in, const NormSpec& spec, const RunOptions& opt) {
  const auto start = Clock::now();
  const Instance& inst = in.instance;
  std::shared_ptr<const NormOracle> norm = make_oracle(spec, inst.machines());
  Json r = header("solve", in, opt);
  r["norms"] = Json::array({norm_spec_to_json(spec)});

  Assignment sigma;
  LoadVector loads;
  if (auto zero = zero_opt_check(inst)) {
    sigma = *zero;
    loads = load_vector(inst, sigma);
    r["status"] = "zero_optimum";
    r["T"] = 0.0;
    r["lb"] = 0.0;
    r["iterations"] = 0;
    r["converged"] = true;
  } else {
    const auto sol = solve_cp(inst, norm, opt.solve);
    const auto rounded = round_solution(inst, sol, *norm);
    sigma = rounded.rounding.sigma.truncated(inst.original_jobs());
    loads = rounded.rounding.loads;
    r["status"] = (opt.strict && !sol.converged) ? "unresolved" : "solved";
    r["T"] = sol.T;
    r["lb"] = sol.lb;
    r["iterations"] = sol.iterations;
    r["converged"] = sol.converged;
  }
  r["assignment"] = sigma.machines();
  r["loads"] = loads;
  r["norm_values"] = norm_values({spec}, loads);
  r["ratio"] = safe_ratio(norm->value(loads), r["T"].get<double>());
  finish(r, start, opt);
  return r;
}

Json multinorm_report(const ParsedInstance& in, const std::vector<BudgetSpec>& specs,
                      const RunOptions& opt) {
  const auto start = Clock::now();
  const Instance& inst = in.instance;
  const auto budgets = make_budgets(specs, inst.machines());
  Json r = header("multinorm", in, opt);
  Json norms = Json::array(), budget_list = Json::array();
  std::vector<NormSpec> norm_specs;
  double w = 0.0;
  for (std::size_t k = 0; k < specs.size(); ++k) {
    norms.push_back(norm_spec_to_json(specs[k].norm));
    budget_list.push_back(specs[k].budget);
    norm_specs.push_back(specs[k].norm);
    w = std::max(w, budgets[k].norm->omega());
  }
  r["norms"] = std::move(norms);
  r["budgets"] = std::move(budget_list);
  r["bound_factor"] = 4.0 * (1.0 + 7.0 * w) * (1.0 + opt.solve.eps);

  const auto sched = multinorm_schedule(inst, budgets, opt.solve);
  r["status"] = sched.status == MultiStatus::kFeasible     ? "feasible"
                : sched.status == MultiStatus::kInfeasible ? "infeasible"
                                                           : "unresolved";
  r["reason"] = sched.reason;
  if (sched.solution) {
    r["T"] = sched.solution->T;
    r["iterations"] = sched.solution->iterations;
  }
  if (sched.status == MultiStatus::kFeasible) {
    r["assignment"] = sched.sigma.machines();
    r["loads"] = sched.loads;
    r["norm_values"] = norm_values(norm_specs, sched.loads);
    Json ratios = Json::array();
    for (std::size_t k = 0; k < specs.size(); ++k) {
      ratios.push_back(sched.values[k] / specs[k].budget);
    }
    r["budget_ratios"] = std::move(ratios);
  }
  finish(r, start, opt);
  return r;
}

Json simul_report(const ParsedInstance& in, const RunOptions& opt) {
  const auto start = Clock::now();
  const Instance& inst = in.instance;
  Json r = header("simul", in, opt);
  const auto res = simul_schedule(inst, opt.solve);
  std::vector<NormSpec> specs;
  Json norms = Json::array();
  for (std::size_t ell = 1; ell <= inst.machines(); ++ell) {
    specs.push_back(NormSpec::topl(ell));
    norms.push_back(norm_spec_to_json(specs.back()));
  }
  r["norms"] = std::move(norms);
  r["status"] = res.status == MultiStatus::kFeasible ? "feasible" : "unresolved";
  r["pos"] = res.pos;
  r["lower"] = res.lower;
  r["upper"] = res.upper;
  r["pos_factor"] = res.pos_factor;
  r["certified_factor"] = res.certified;
  r["guesses"] = res.guesses;
  r["solves"] = res.solves;
  r["assignment"] = res.sigma.machines();
  r["loads"] = res.loads;
  r["norm_values"] = norm_values(specs, res.loads);
  finish(r, start, opt);
  return r;
}

Json exact_report(const ParsedInstance& in, const NormSpec& spec, const RunOptions& opt) {
  const auto start = Clock::now();
  const Instance& inst = in.instance;
  const auto norm = make_oracle(spec, inst.machines());
  Json r = header("exact", in, opt);
  r["norms"] = Json::array({norm_spec_to_json(spec)});
  const auto res = brute_min_norm(inst, *norm, opt.cap);
  r["status"] = "exact";
  r["value"] = res.value;
  r["enumerated"] = res.enumerated;
  r["assignment"] = res.assignment.machines();
  const auto loads = load_vector(inst, res.assignment);
  r["loads"] = loads;
  r["norm_values"] = norm_values({spec}, loads);
  finish(r, start, opt);
  return r;
}

std::string dump_report(const Json& report) { return report.dump(2) + "\n"; }

VerifyOutcome verify_report(const Instance& inst, const Json& report) {
  VerifyOutcome out;
  auto fail = [&](std::string msg) {
    out.ok = false;
    out.mismatches.push_back(std::move(msg));
  };
  try {
    if (report.contains("instance_digest") &&
        report["instance_digest"].get<std::string>() != instance_digest(inst)) {
      fail("instance digest differs");
    }
    if (!report.contains("assignment")) {
      // Declared infeasible or unresolved runs carry no assignment.
      return out;
    }
    const Assignment sigma(report["assignment"].get<std::vector<std::size_t>>());
    if (sigma.jobs() != inst.original_jobs()) {
      fail("assignment length differs from the job count");
      return out;
    }
    sigma.validate(inst);
    const auto loads = load_vector(inst, sigma);
    const auto claimed = report["loads"].get<std::vector<double>>();
    if (claimed.size() != loads.size()) {
      fail("load vector length differs");
    } else {
      for (std::size_t i = 0; i < loads.size(); ++i) {
        if (!close(claimed[i], loads[i])) {
          fail("load " + std::to_string(i) + " differs");
        }
      }
    }
    std::vector<double> values;
    for (const auto& e : report["norm_values"]) {
      const auto spec = parse_norm_spec(e["norm"]);
      const double v = make_oracle(spec, inst.machines())->value(loads);
      values.push_back(v);
      if (!close(e["value"].get<double>(), v)) fail("value of " + spec.label() + " differs");
    }
    if (report.contains("ratio") && report.contains("T") && !values.empty()) {
      const double expect = safe_ratio(values[0], report["T"].get<double>());
      if (!close(report["ratio"].get<double>(), expect)) fail("ratio differs");
    }
    if (report.contains("value") && !values.empty() &&
        !close(report["value"].get<double>(), values[0])) {
      fail("optimum differs from the assignment's value");
    }
    if (report.contains("budget_ratios")) {
      const auto budgets = report["budgets"].get<std::vector<double>>();
      const auto ratios = report["budget_ratios"].get<std::vector<double>>();
      for (std::size_t k = 0; k < ratios.size() && k < values.size(); ++k) {
        if (!close(ratios[k], values[k] / budgets[k])) {
          fail("budget ratio " + std::to_string(k) + " differs");
        }
      }
    }
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("malformed report: ") + e.what());
  } catch (const Error& e) {
    fail(e.what());
  }
  return out;
}

Instance generate_instance(std::size_t m, std::size_t n, std::uint64_t pmax, std::uint64_t seed) {
  if (m == 0 || n == 0) throw Error(ErrorCode::kInvalidArgument, "m and n must be positive");
  if (pmax < 1) throw Error(ErrorCode::kInvalidArgument, "pmax must be at least 1");
  SplitMix64 rng(seed);
  Matrix p(m, n);
  for (std::size_t j = 0; j < n; ++j) {
    bool nonzero = false;
    while (!nonzero) {
      for (std::size_t i = 0; i < m; ++i) {
        p(i, j) = static_cast<double>(rng.below_inclusive(pmax));
        nonzero = nonzero || p(i, j) != 0.0;
      }
    }
  }
  return Instance(std::move(p));
}

std::vector<NormSpec> default_bench_norms() {
  return {NormSpec::lp(1.0), NormSpec::lp(2.0), NormSpec::linf(), NormSpec::topl(2),
          NormSpec::ordered({3.0, 2.0, 1.0})};
}

std::string bench_csv(const std::filesystem::path& corpus, const std::vector<NormSpec>& norms,
                      const RunOptions& opt) {
  if (!std::filesystem::is_directory(corpus)) {
    throw Error(ErrorCode::kIo, corpus.string() + " is not a directory");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(corpus)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::ostringstream out;
  out << std::setprecision(17);
  out << "instance,m,n,norm,T,lb,achieved,ratio,brute,brute_ratio";
  if (opt.timing) out << ",runtime_ms";
  out << "\n";
  for (const auto& file : files) {
    const auto parsed = load_instance(file);
    const Instance& inst = parsed.instance;
    for (NormSpec spec : norms) {
      if (spec.kind == NormSpec::Kind::kTopL) spec.ell = std::min(spec.ell, inst.machines());
      const auto start = Clock::now();
      std::shared_ptr<const NormOracle> norm = make_oracle(spec, inst.machines());
      double T = 0.0, lb = 0.0, achieved = 0.0;
      if (!zero_opt_check(inst)) {
        const auto sol = solve_cp(inst, norm, opt.solve);
        const auto rounded = round_solution(inst, sol, *norm);
        T = sol.T;
        lb = sol.lb;
        achieved = rounded.value;
      }
      const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
      std::string brute = "", brute_ratio = "";
      if (assignment_count(inst.machines(), inst.original_jobs()) <= opt.cap) {
        const double b = brute_min_norm(inst, *norm, opt.cap).value;
        std::ostringstream a, c;
        a << std::setprecision(17) << b;
        c << std::setprecision(17) << (b > 0.0 ? achieved / b : 1.0);
        brute = a.str();
        brute_ratio = c.str();
      }
      out << csv_field(file.filename().string()) << ',' << inst.machines() << ',' << inst.original_jobs()
          << ',' << csv_field(spec.label()) << ',' << T << ',' << lb << ',' << achieved << ','
          << safe_ratio(achieved, T) << ',' << brute << ',' << brute_ratio;
      if (opt.timing) out << ',' << ms;
      out << "\n";
    }
  }
  return out.str();
}

int report_exit_code(const Json& report) {
  const auto status = report.value("status", std::string());
  if (status == "infeasible") return 2;
  if (status == "unresolved") return 3;
  return 0;
}

}  // namespace minnorm
