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

#include "minnorm/minnorm.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "error.hpp"
#include "io.hpp"
#include "pipeline.hpp"

struct mn_instance {
  minnorm::ParsedInstance parsed;
};

struct mn_norm {
  std::unique_ptr<minnorm::NormOracle> oracle;
};

namespace {

thread_local std::string g_last_error;

mn_status to_status(minnorm::ErrorCode c) {
  using minnorm::ErrorCode;
  switch (c) {
    case ErrorCode::kInvalidArgument: return MN_ERR_INVALID_ARGUMENT;
    case ErrorCode::kInvalidAssignment: return MN_ERR_INVALID_ASSIGNMENT;
    case ErrorCode::kDimensionMismatch: return MN_ERR_DIMENSION_MISMATCH;
    case ErrorCode::kInvalidSpec: return MN_ERR_INVALID_SPEC;
    case ErrorCode::kParse: return MN_ERR_PARSE;
    case ErrorCode::kIo: return MN_ERR_IO;
    case ErrorCode::kCapExceeded: return MN_ERR_CAP_EXCEEDED;
    case ErrorCode::kNumerical: return MN_ERR_NUMERICAL;
    case ErrorCode::kContract: return MN_ERR_CONTRACT;
  }
  return MN_ERR_INTERNAL;
}

template <class F>
mn_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return MN_OK;
  } catch (const minnorm::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return MN_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return MN_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MN_ERR_INTERNAL;
  }
}

void require(bool cond, const char* what) {
  if (!cond) throw minnorm::Error(minnorm::ErrorCode::kInvalidArgument, what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

minnorm::RunOptions run_options(const mn_options* opts) {
  mn_options local;
  mn_options_init(&local);
  if (opts != nullptr) local = *opts;
  minnorm::RunOptions out;
  out.solve.eps = local.eps;
  out.solve.max_iters = local.max_iters;
  if (local.solver != MN_SOLVER_SUBGRADIENT && local.solver != MN_SOLVER_CUTTING_PLANE) {
    throw minnorm::Error(minnorm::ErrorCode::kInvalidArgument, "unknown solver");
  }
  out.solve.solver = local.solver == MN_SOLVER_CUTTING_PLANE ? minnorm::SolverKind::kCuttingPlane
                                                             : minnorm::SolverKind::kSubgradient;
  out.solve.seed = local.seed;
  out.timing = local.timing != 0;
  out.strict = local.strict != 0;
  out.cap = local.enumeration_cap;
  if (local.command != nullptr) out.command = local.command;
  out.solve.validate();
  return out;
}

}  // namespace

extern "C" {

void mn_options_init(mn_options* opts) {
  if (opts == nullptr) return;
  opts->eps = 0.05;
  opts->max_iters = 0;
  opts->solver = MN_SOLVER_SUBGRADIENT;
  opts->seed = 0;
  opts->timing = 0;
  opts->strict = 0;
  opts->enumeration_cap = minnorm::kDefaultEnumerationCap;
  opts->command = nullptr;
}

const char* mn_version(void) { return "0.1.0"; }

const char* mn_status_string(mn_status status) {
  switch (status) {
    case MN_OK: return "ok";
    case MN_ERR_INVALID_ARGUMENT: return "invalid argument";
    case MN_ERR_INVALID_ASSIGNMENT: return "invalid assignment";
    case MN_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
    case MN_ERR_INVALID_SPEC: return "invalid specification";
    case MN_ERR_PARSE: return "parse error";
    case MN_ERR_IO: return "i/o error";
    case MN_ERR_CAP_EXCEEDED: return "enumeration cap exceeded";
    case MN_ERR_NUMERICAL: return "numerical failure";
    case MN_ERR_CONTRACT: return "precondition violated";
    case MN_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* mn_last_error(void) { return g_last_error.c_str(); }

void mn_free_string(char* s) { std::free(s); }

mn_status mn_instance_create(size_t m, size_t n, const double* p, mn_instance** out) {
  return guarded([&] {
    require(out != nullptr && p != nullptr, "null pointer");
    require(m > 0 && n > 0, "m and n must be positive");
    minnorm::Matrix mat(m, n);
    for (size_t i = 0; i < m; ++i) {
      for (size_t j = 0; j < n; ++j) mat(i, j) = p[i * n + j];
    }
    *out = new mn_instance{minnorm::ParsedInstance{minnorm::Instance(std::move(mat)), 0, false, 1.0}};
  });
}

mn_status mn_instance_parse(const char* json, mn_instance** out) {
  return guarded([&] {
    require(out != nullptr && json != nullptr, "null pointer");
    *out = new mn_instance{minnorm::parse_instance(json)};
  });
}

mn_status mn_instance_load(const char* path, mn_instance** out) {
  return guarded([&] {
    require(out != nullptr && path != nullptr, "null pointer");
    *out = new mn_instance{minnorm::load_instance(path)};
  });
}

mn_status mn_instance_generate(size_t m, size_t n, uint64_t pmax, uint64_t seed,
                               mn_instance** out) {
  return guarded([&] {
    require(out != nullptr, "null pointer");
    *out = new mn_instance{
        minnorm::ParsedInstance{minnorm::generate_instance(m, n, pmax, seed), 0, false, 1.0}};
  });
}

mn_status mn_instance_to_json(const mn_instance* inst, char** out) {
  return guarded([&] {
    require(inst != nullptr && out != nullptr, "null pointer");
    *out = dup_string(minnorm::serialize_instance(inst->parsed.instance));
  });
}

size_t mn_instance_machines(const mn_instance* inst) {
  return inst == nullptr ? 0 : inst->parsed.instance.machines();
}

size_t mn_instance_jobs(const mn_instance* inst) {
  return inst == nullptr ? 0 : inst->parsed.instance.original_jobs();
}

void mn_instance_free(mn_instance* inst) { delete inst; }

mn_status mn_load_vector(const mn_instance* inst, const size_t* sigma, size_t n,
                         double* loads_out) {
  return guarded([&] {
    require(inst != nullptr && sigma != nullptr && loads_out != nullptr, "null pointer");
    const auto& instance = inst->parsed.instance;
    if (n != instance.jobs()) {
      throw minnorm::Error(minnorm::ErrorCode::kDimensionMismatch, "assignment length differs");
    }
    const auto loads =
        minnorm::load_vector(instance, minnorm::Assignment(std::vector<std::size_t>(sigma, sigma + n)));
    std::copy(loads.begin(), loads.end(), loads_out);
  });
}

mn_status mn_norm_parse(const char* spec, size_t dim, mn_norm** out) {
  return guarded([&] {
    require(spec != nullptr && out != nullptr, "null pointer");
    *out = new mn_norm{minnorm::make_oracle(minnorm::parse_norm_spec(std::string_view(spec)), dim)};
  });
}

mn_status mn_norm_value(const mn_norm* norm, const double* v, size_t dim, double* out) {
  return guarded([&] {
    require(norm != nullptr && v != nullptr && out != nullptr, "null pointer");
    *out = norm->oracle->value(std::span<const double>(v, dim));
  });
}

mn_status mn_norm_subgradient(const mn_norm* norm, const double* v, size_t dim, double* out) {
  return guarded([&] {
    require(norm != nullptr && v != nullptr && out != nullptr, "null pointer");
    const auto g = norm->oracle->subgradient(std::span<const double>(v, dim));
    std::copy(g.begin(), g.end(), out);
  });
}

void mn_norm_free(mn_norm* norm) { delete norm; }

mn_status mn_solve(const mn_instance* inst, const char* norm_spec, const mn_options* opts,
                   char** report) {
  return guarded([&] {
    require(inst != nullptr && norm_spec != nullptr && report != nullptr, "null pointer");
    const auto spec = minnorm::parse_norm_spec(std::string_view(norm_spec));
    *report = dup_string(minnorm::dump_report(
        minnorm::solve_report(inst->parsed, spec, run_options(opts))));
  });
}

mn_status mn_multinorm(const mn_instance* inst, const char* budgets_json, const mn_options* opts,
                       char** report) {
  return guarded([&] {
    require(inst != nullptr && budgets_json != nullptr && report != nullptr, "null pointer");
    const auto budgets = minnorm::parse_budgets(budgets_json);
    *report = dup_string(minnorm::dump_report(
        minnorm::multinorm_report(inst->parsed, budgets, run_options(opts))));
  });
}

mn_status mn_simul(const mn_instance* inst, const mn_options* opts, char** report) {
  return guarded([&] {
    require(inst != nullptr && report != nullptr, "null pointer");
    *report = dup_string(minnorm::dump_report(minnorm::simul_report(inst->parsed, run_options(opts))));
  });
}

mn_status mn_exact(const mn_instance* inst, const char* norm_spec, const mn_options* opts,
                   char** report) {
  return guarded([&] {
    require(inst != nullptr && norm_spec != nullptr && report != nullptr, "null pointer");
    const auto spec = minnorm::parse_norm_spec(std::string_view(norm_spec));
    *report = dup_string(minnorm::dump_report(
        minnorm::exact_report(inst->parsed, spec, run_options(opts))));
  });
}

mn_status mn_bench(const char* corpus_dir, const char* norms_json, const mn_options* opts,
                   char** csv) {
  return guarded([&] {
    require(corpus_dir != nullptr && csv != nullptr, "null pointer");
    std::vector<minnorm::NormSpec> norms;
    if (norms_json == nullptr) {
      norms = minnorm::default_bench_norms();
    } else {
      const auto arr = minnorm::Json::parse(norms_json);
      require(arr.is_array() && !arr.empty(), "norms must be a nonempty JSON array");
      for (const auto& n : arr) norms.push_back(minnorm::parse_norm_spec(n));
    }
    *csv = dup_string(minnorm::bench_csv(corpus_dir, norms, run_options(opts)));
  });
}

mn_status mn_verify_report(const mn_instance* inst, const char* report_json, int* ok,
                           char** diagnostics) {
  return guarded([&] {
    require(inst != nullptr && report_json != nullptr && ok != nullptr, "null pointer");
    const auto outcome =
        minnorm::verify_report(inst->parsed.instance, minnorm::Json::parse(report_json));
    *ok = outcome.ok ? 1 : 0;
    if (diagnostics != nullptr) {
      std::string text;
      for (const auto& m : outcome.mismatches) text += m + "\n";
      *diagnostics = dup_string(text);
    }
  });
}

int mn_report_exit_code(const char* report_json) {
  if (report_json == nullptr) return 1;
  try {
    return minnorm::report_exit_code(minnorm::Json::parse(report_json));
  } catch (const std::exception&) {
    return 1;
  }
}

}  // extern "C"
