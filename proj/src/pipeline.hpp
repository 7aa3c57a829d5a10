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

#ifndef MINNORM_PIPELINE_HPP_
#define MINNORM_PIPELINE_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "cp.hpp"
#include "exact.hpp"
#include "io.hpp"

namespace minnorm {

struct RunOptions {
  SolveConfig solve;
  bool timing = false;  // adds wall_time_ms, which makes reports run-dependent
  bool strict = false;  // solve: an unconverged run is reported as unresolved
  std::uint64_t cap = kDefaultEnumerationCap;
  std::string command;  // echoed verbatim
};

// Status strings used in reports: "solved", "zero_optimum", "unresolved",
// "feasible", "infeasible", "exact".
Json solve_report(const ParsedInstance& in, const NormSpec& norm, const RunOptions& opt);
Json multinorm_report(const ParsedInstance& in, const std::vector<BudgetSpec>& budgets,
                      const RunOptions& opt);
Json simul_report(const ParsedInstance& in, const RunOptions& opt);
Json exact_report(const ParsedInstance& in, const NormSpec& norm, const RunOptions& opt);

// Canonical text form: two-space indentation and a trailing newline.
std::string dump_report(const Json& report);

struct VerifyOutcome {
  bool ok = true;
  std::vector<std::string> mismatches;
};

// Recomputes loads, norm values and ratios from the instance and the reported
// assignment. Any difference above 1e-9 (relative to max(1, |value|)) fails.
VerifyOutcome verify_report(const Instance& inst, const Json& report);

// p(i, j) uniform on {0..pmax}; a column is redrawn while it is all zero.
Instance generate_instance(std::size_t m, std::size_t n, std::uint64_t pmax, std::uint64_t seed);

// The default bench norms: l1, l2, linf, top2, ordered(3,2,1).
std::vector<NormSpec> default_bench_norms();

// One CSV row per (instance file, norm), sorted by file name then norm order.
// Columns: instance,m,n,norm,T,lb,achieved,ratio,brute,brute_ratio[,runtime_ms]
std::string bench_csv(const std::filesystem::path& corpus, const std::vector<NormSpec>& norms,
                      const RunOptions& opt);

// Exit code for a report: 0 success, 2 infeasible, 3 unresolved.
int report_exit_code(const Json& report);

}  // namespace minnorm

#endif  // MINNORM_PIPELINE_HPP_
