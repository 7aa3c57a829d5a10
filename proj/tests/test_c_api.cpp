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

// Exercises the shared library through its C interface only.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <minnorm/minnorm.h>

#include <filesystem>
#include <string>
#include <vector>

namespace {

struct Owned {
  char* s = nullptr;
  ~Owned() { mn_free_string(s); }
  std::string str() const { return s ? s : ""; }
};

struct Inst {
  mn_instance* p = nullptr;
  ~Inst() { mn_instance_free(p); }
};

bool contains(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("version and status strings") {
  CHECK(std::string(mn_version()) == "0.1.0");
  CHECK(std::string(mn_status_string(MN_OK)) == "ok");
  CHECK(std::string(mn_status_string(MN_ERR_PARSE)) == "parse error");
  CHECK(std::string(mn_status_string(static_cast<mn_status>(99))) == "unknown status");
}

TEST_CASE("instances") {
  Inst inst;
  const double p[6] = {1, 2, 3, 3, 2, 1};
  REQUIRE(mn_instance_create(2, 3, p, &inst.p) == MN_OK);
  CHECK(mn_instance_machines(inst.p) == 2);
  CHECK(mn_instance_jobs(inst.p) == 3);

  Owned json;
  REQUIRE(mn_instance_to_json(inst.p, &json.s) == MN_OK);
  Inst back;
  REQUIRE(mn_instance_parse(json.s, &back.p) == MN_OK);
  Owned again;
  REQUIRE(mn_instance_to_json(back.p, &again.s) == MN_OK);
  CHECK(json.str() == again.str());

  const size_t sigma[3] = {0, 0, 1};
  double loads[2] = {0, 0};
  REQUIRE(mn_load_vector(inst.p, sigma, 3, loads) == MN_OK);
  CHECK(loads[0] == 3.0);
  CHECK(loads[1] == 1.0);
  const size_t bad_sigma[3] = {0, 2, 1};
  CHECK(mn_load_vector(inst.p, bad_sigma, 3, loads) == MN_ERR_INVALID_ASSIGNMENT);
  CHECK(mn_load_vector(inst.p, sigma, 2, loads) == MN_ERR_DIMENSION_MISMATCH);

  Inst gen1, gen2;
  REQUIRE(mn_instance_generate(2, 3, 9, 7, &gen1.p) == MN_OK);
  REQUIRE(mn_instance_generate(2, 3, 9, 7, &gen2.p) == MN_OK);
  Owned g1, g2;
  mn_instance_to_json(gen1.p, &g1.s);
  mn_instance_to_json(gen2.p, &g2.s);
  CHECK(g1.str() == g2.str());
}

TEST_CASE("errors leave outputs untouched and set the last error") {
  mn_instance* inst = nullptr;
  CHECK(mn_instance_parse("{oops", &inst) == MN_ERR_PARSE);
  CHECK(inst == nullptr);
  CHECK(std::string(mn_last_error()).size() > 0);
  CHECK(mn_instance_parse(nullptr, &inst) == MN_ERR_INVALID_ARGUMENT);
  CHECK(mn_instance_create(2, 2, nullptr, &inst) == MN_ERR_INVALID_ARGUMENT);
  const double neg[1] = {-1};
  CHECK(mn_instance_create(1, 1, neg, &inst) != MN_OK);
  CHECK(mn_instance_load("/nonexistent/file.json", &inst) == MN_ERR_IO);
  CHECK(mn_instance_generate(2, 2, 0, 1, &inst) != MN_OK);
  mn_instance_free(nullptr);
  mn_norm_free(nullptr);
  mn_free_string(nullptr);
}

TEST_CASE("norms") {
  mn_norm* norm = nullptr;
  REQUIRE(mn_norm_parse("{\"kind\":\"ordered\",\"weights\":[3,2,1]}", 3, &norm) == MN_OK);
  const double v[3] = {1, -4, 2};
  double value = 0;
  REQUIRE(mn_norm_value(norm, v, 3, &value) == MN_OK);
  CHECK(value == 17.0);
  double mu[3];
  REQUIRE(mn_norm_subgradient(norm, v, 3, mu) == MN_OK);
  CHECK(mu[0] == 1.0);
  CHECK(mu[1] == -3.0);
  CHECK(mu[2] == 2.0);
  CHECK(mn_norm_value(norm, v, 2, &value) == MN_ERR_DIMENSION_MISMATCH);
  mn_norm_free(norm);

  mn_norm* bad = nullptr;
  CHECK(mn_norm_parse("l0.5", 2, &bad) == MN_ERR_INVALID_SPEC);
  CHECK(mn_norm_parse("nonsense", 2, &bad) == MN_ERR_PARSE);
  CHECK(bad == nullptr);
}

TEST_CASE("reports") {
  Inst inst;
  const double p[4] = {2, 2, 2, 2};
  REQUIRE(mn_instance_create(2, 2, p, &inst.p) == MN_OK);
  mn_options opts;
  mn_options_init(&opts);
  CHECK(opts.eps == 0.05);
  opts.command = "capi";

  Owned solve;
  REQUIRE(mn_solve(inst.p, "linf", &opts, &solve.s) == MN_OK);
  CHECK(contains(solve.str(), "\"command\": \"capi\""));
  CHECK(contains(solve.str(), "\"status\": \"solved\""));
  CHECK(mn_report_exit_code(solve.s) == 0);
  int ok = 0;
  Owned diag;
  REQUIRE(mn_verify_report(inst.p, solve.s, &ok, &diag.s) == MN_OK);
  CHECK(ok == 1);

  Owned exact;
  REQUIRE(mn_exact(inst.p, "{\"kind\":\"linf\"}", &opts, &exact.s) == MN_OK);
  CHECK(contains(exact.str(), "\"value\": 2.0"));

  Owned multi;
  REQUIRE(mn_multinorm(inst.p, "[{\"norm\":\"linf\",\"budget\":0.5}]", &opts, &multi.s) == MN_OK);
  CHECK(mn_report_exit_code(multi.s) == 2);
  Owned none;
  CHECK(mn_multinorm(inst.p, "[]", &opts, &none.s) == MN_ERR_INVALID_SPEC);
  CHECK(none.s == nullptr);

  opts.eps = 0.5;
  Owned simul;
  REQUIRE(mn_simul(inst.p, &opts, &simul.s) == MN_OK);
  CHECK(contains(simul.str(), "\"certified_factor\""));

  opts.enumeration_cap = 2;
  Owned capped;
  CHECK(mn_exact(inst.p, "linf", &opts, &capped.s) == MN_ERR_CAP_EXCEEDED);

  opts.eps = -1;
  Owned invalid;
  CHECK(mn_solve(inst.p, "linf", &opts, &invalid.s) == MN_ERR_INVALID_ARGUMENT);
  CHECK(mn_solve(inst.p, "linf", nullptr, &invalid.s) == MN_OK);
  CHECK(mn_report_exit_code("not json") == 1);
}

TEST_CASE("tampered reports fail verification") {
  Inst inst;
  const double p[4] = {1, 2, 3, 4};
  REQUIRE(mn_instance_create(2, 2, p, &inst.p) == MN_OK);
  Owned report;
  REQUIRE(mn_solve(inst.p, "l2", nullptr, &report.s) == MN_OK);
  std::string text = report.str();
  const auto at = text.find("\"loads\": [");
  REQUIRE(at != std::string::npos);
  const auto digit = text.find_first_of("0123456789", at);
  text[digit] = text[digit] == '9' ? '8' : static_cast<char>(text[digit] + 1);
  int ok = 1;
  Owned diag;
  REQUIRE(mn_verify_report(inst.p, text.c_str(), &ok, &diag.s) == MN_OK);
  CHECK(ok == 0);
  CHECK(contains(diag.str(), "load"));
}

TEST_CASE("bench") {
  const auto dir = std::filesystem::temp_directory_path() / "minnorm_capi_bench";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  Inst inst;
  REQUIRE(mn_instance_generate(2, 3, 9, 1, &inst.p) == MN_OK);
  Owned json;
  mn_instance_to_json(inst.p, &json.s);
  {
    FILE* f = std::fopen((dir / "x.json").c_str(), "w");
    REQUIRE(f != nullptr);
    std::fputs(json.s, f);
    std::fclose(f);
  }
  Owned csv;
  REQUIRE(mn_bench(dir.c_str(), "[\"linf\", {\"kind\":\"lp\",\"p\":2}]", nullptr, &csv.s) == MN_OK);
  CHECK(contains(csv.str(), "x.json,2,3,linf,"));
  CHECK(contains(csv.str(), "x.json,2,3,l2,"));
  Owned defaults;
  REQUIRE(mn_bench(dir.c_str(), nullptr, nullptr, &defaults.s) == MN_OK);
  CHECK(contains(defaults.str(), "top2"));
  Owned missing;
  CHECK(mn_bench((dir / "nope").c_str(), nullptr, nullptr, &missing.s) == MN_ERR_IO);
  std::filesystem::remove_all(dir);
}
