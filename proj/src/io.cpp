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

#include "io.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "error.hpp"

namespace minnorm {

namespace {

int decimal_places(std::string_view s) {
  int exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    const auto tail = s.substr(e + 1);
    const char* first = tail.data() + (tail.starts_with('+') ? 1 : 0);
    std::from_chars(first, tail.data() + tail.size(), exponent);
    s = s.substr(0, e);
  }
  int frac = 0;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    frac = static_cast<int>(s.size() - dot - 1);
    while (frac > 0 && s[dot + static_cast<std::size_t>(frac)] == '0') --frac;
  }
  return std::max(0, frac - exponent);
}

double parse_decimal(const std::string& s) {
  if (s.empty()) throw Error(ErrorCode::kParse, "empty processing time");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE) {
    throw Error(ErrorCode::kParse, "malformed processing time \"" + s + "\"");
  }
  return v;
}

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

ParsedInstance parse_instance(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("instance: ") + e.what());
  }
  if (!j.is_object() || !j.contains("p") || !j["p"].is_array()) {
    throw Error(ErrorCode::kParse, "instance: expected an object with a \"p\" array");
  }
  const auto& rows = j["p"];
  if (rows.empty()) throw Error(ErrorCode::kParse, "instance: \"p\" has no rows");
  if (!j.contains("machines") || !j["machines"].is_number_unsigned() ||
      j["machines"].get<std::size_t>() != rows.size()) {
    throw Error(ErrorCode::kParse, "instance: \"machines\" must equal the row count");
  }
  const std::size_t m = rows.size();
  std::size_t n = 0;
  int decimals = 0;
  std::vector<double> values;
  for (std::size_t i = 0; i < m; ++i) {
    if (!rows[i].is_array()) throw Error(ErrorCode::kParse, "instance: rows must be arrays");
    if (i == 0) n = rows[i].size();
    if (rows[i].size() != n || n == 0) {
      throw Error(ErrorCode::kParse, "instance: rows must be nonempty and of equal length");
    }
    for (const auto& cell : rows[i]) {
      double v;
      if (cell.is_string()) {
        const auto s = cell.get<std::string>();
        v = parse_decimal(s);
        decimals = std::max(decimals, decimal_places(s));
      } else if (cell.is_number()) {
        v = cell.get<double>();
        decimals = std::max(decimals, decimal_places(shortest(v)));
      } else {
        throw Error(ErrorCode::kParse, "instance: entries must be numbers or decimal strings");
      }
      values.push_back(v);
    }
  }
  Matrix p(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < n; ++k) p(i, k) = values[i * n + k];
  }
  ParsedInstance out{Instance(std::move(p)), decimals, false, 1.0};
  if (j.contains("integer_scaled")) {
    if (!j["integer_scaled"].is_boolean()) {
      throw Error(ErrorCode::kParse, "instance: \"integer_scaled\" must be a boolean");
    }
    if (j["integer_scaled"].get<bool>()) {
      out.instance = scale_to_integer_grid(out.instance, decimals);
      out.scaled = true;
      out.scale = std::pow(10.0, decimals);
    }
  }
  return out;
}

ParsedInstance load_instance(const std::filesystem::path& path) {
  return parse_instance(read_file(path));
}

Json instance_to_json(const Instance& inst) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < inst.machines(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < inst.original_jobs(); ++k) row.push_back(inst.p(i, k));
    rows.push_back(std::move(row));
  }
  Json j;
  j["machines"] = inst.machines();
  j["p"] = std::move(rows);
  return j;
}

std::string serialize_instance(const Instance& inst) { return instance_to_json(inst).dump() + "\n"; }

namespace {

NormSpec read_norm(std::string_view text);

NormSpec read_norm(const Json& j) {
  if (j.is_string()) return read_norm(std::string_view(j.get_ref<const std::string&>()));
  const char* key = j.is_object() && j.contains("kind") ? "kind" : "type";
  if (!j.is_object() || !j.contains(key) || !j[key].is_string()) {
    throw Error(ErrorCode::kParse, "norm: expected an object with a \"kind\" string");
  }
  const auto type = j[key].get<std::string>();
  try {
    if (type == "lp") {
      if (!j.contains("p")) throw Error(ErrorCode::kParse, "norm: lp needs \"p\"");
      const auto& p = j["p"];
      if (p.is_string()) {
        if (p.get<std::string>() == "inf") return NormSpec::linf();
        throw Error(ErrorCode::kParse, "norm: \"p\" must be a number or \"inf\"");
      }
      return NormSpec::lp(p.get<double>());
    }
    if (type == "linf") return NormSpec::linf();
    if (type == "topl") {
      if (!j.contains("ell")) throw Error(ErrorCode::kParse, "norm: topl needs \"ell\"");
      return NormSpec::topl(j["ell"].get<std::size_t>());
    }
    if (type == "ordered") {
      if (!j.contains("weights")) throw Error(ErrorCode::kParse, "norm: ordered needs \"weights\"");
      return NormSpec::ordered(j["weights"].get<std::vector<double>>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("norm: ") + e.what());
  }
  throw Error(ErrorCode::kParse, "norm: unknown kind \"" + type + "\"");
}

NormSpec read_norm(std::string_view text) {
  const std::string s(text);
  if (s.starts_with("{")) {
    try {
      return read_norm(Json::parse(s));
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::kParse, std::string("norm: ") + e.what());
    }
  }
  auto number = [&](std::string_view digits) {
    const std::string d(digits);
    try {
      std::size_t used = 0;
      const double v = std::stod(d, &used);
      if (used == d.size()) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::kParse, "norm: cannot read \"" + s + "\"");
  };
  if (s == "linf" || s == "inf" || s == "max") return NormSpec::linf();
  if (s.starts_with("top")) {
    const double ell = number(std::string_view(s).substr(3));
    if (ell < 1 || ell != std::floor(ell)) throw Error(ErrorCode::kParse, "norm: bad top-l index");
    return NormSpec::topl(static_cast<std::size_t>(ell));
  }
  if (s.starts_with("ordered:")) {
    std::vector<double> w;
    std::stringstream ss(s.substr(8));
    std::string item;
    while (std::getline(ss, item, ',')) w.push_back(number(item));
    return NormSpec::ordered(std::move(w));
  }
  if (s.starts_with("l")) return NormSpec::lp(number(std::string_view(s).substr(1)));
  throw Error(ErrorCode::kParse, "norm: cannot read \"" + s + "\"");
}

// Rejects specs that cannot build an oracle, e.g. p < 1 or increasing weights.
NormSpec checked(NormSpec spec) {
  const std::size_t dim = std::max<std::size_t>({1, spec.ell, spec.weights.size()});
  make_oracle(spec, dim);
  return spec;
}

}  // namespace

NormSpec parse_norm_spec(const Json& j) { return checked(read_norm(j)); }

NormSpec parse_norm_spec(std::string_view text) { return checked(read_norm(text)); }

Json norm_spec_to_json(const NormSpec& spec) {
  Json j;
  switch (spec.kind) {
    case NormSpec::Kind::kLp:
      j["kind"] = "lp";
      j["p"] = spec.p;
      break;
    case NormSpec::Kind::kLinf:
      j["kind"] = "linf";
      break;
    case NormSpec::Kind::kTopL:
      j["kind"] = "topl";
      j["ell"] = spec.ell;
      break;
    case NormSpec::Kind::kOrdered:
      j["kind"] = "ordered";
      j["weights"] = spec.weights;
      break;
  }
  return j;
}

std::vector<BudgetSpec> parse_budgets(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("budgets: ") + e.what());
  }
  if (!j.is_array()) throw Error(ErrorCode::kParse, "budgets: expected an array");
  std::vector<BudgetSpec> out;
  for (const auto& item : j) {
    if (!item.is_object() || !item.contains("norm") || !item.contains("budget") ||
        !item["budget"].is_number()) {
      throw Error(ErrorCode::kParse, "budgets: entries need \"norm\" and a numeric \"budget\"");
    }
    out.push_back({parse_norm_spec(item["norm"]), item["budget"].get<double>()});
  }
  if (out.empty()) throw Error(ErrorCode::kInvalidSpec, "budgets: at least one norm is required");
  return out;
}

BudgetedNorms make_budgets(const std::vector<BudgetSpec>& specs, std::size_t machines) {
  BudgetedNorms out;
  for (const auto& s : specs) {
    out.push_back({std::shared_ptr<const NormOracle>(make_oracle(s.norm, machines)), s.budget});
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

std::string instance_digest(const Instance& inst) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize_instance(inst)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace minnorm
