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

#ifndef MINNORM_IO_HPP_
#define MINNORM_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "core.hpp"
#include "multinorm.hpp"
#include "norms.hpp"

namespace minnorm {

using Json = nlohmann::ordered_json;

struct ParsedInstance {
  Instance instance;
  int decimals = 0;            // most decimal places seen in any entry
  bool scaled = false;         // "integer_scaled": true was requested
  double scale = 1.0;          // factor applied to reach the integer grid
};

// {"machines": m, "p": [[...], ...]} with entries as numbers or decimal
// strings; "integer_scaled": true multiplies every entry by 10^decimals.
// Throws Error(kParse) on malformed input.
ParsedInstance parse_instance(std::string_view text);
ParsedInstance load_instance(const std::filesystem::path& path);

Json instance_to_json(const Instance& inst);
std::string serialize_instance(const Instance& inst);

// {"kind": "lp", "p": 2} | {"kind": "linf"} | {"kind": "topl", "ell": 2} |
// {"kind": "ordered", "weights": [...]}. "type" is read as a synonym of
// "kind". A bare string such as "l2", "linf", "top2" or "ordered:3,2,1" is
// accepted as shorthand.
NormSpec parse_norm_spec(const Json& j);
NormSpec parse_norm_spec(std::string_view text);
Json norm_spec_to_json(const NormSpec& spec);

struct BudgetSpec {
  NormSpec norm;
  double budget = 0.0;
};

// [{"norm": <NormSpec>, "budget": 3.5}, ...]
std::vector<BudgetSpec> parse_budgets(std::string_view text);
BudgetedNorms make_budgets(const std::vector<BudgetSpec>& specs, std::size_t machines);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

// FNV-1a over the canonical serialization, as 16 hex digits.
std::string instance_digest(const Instance& inst);

}  // namespace minnorm

#endif  // MINNORM_IO_HPP_
