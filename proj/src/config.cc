// Copyright 2026 The Coarse SBM Authors.
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

#include "coarse_sbm/config.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "coarse_sbm/errors.h"

namespace coarse_sbm {
namespace {

std::string Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> Split(std::string_view s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    const size_t pos = s.find(sep, start);
    out.push_back(Trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

[[noreturn]] void BadValue(const std::string& key, const std::string& value,
                           const std::string& expected) {
  Fail(ErrorCode::kConfigError,
       "key '" + key + "': cannot read '" + value + "' as " + expected);
}

double ToDouble(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (value.empty() || *end != '\0' || !std::isfinite(v)) BadValue(key, value, "a number");
  return v;
}

int64_t ToInt(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const long long v = std::strtoll(value.c_str(), &end, 10);
  if (value.empty() || *end != '\0') BadValue(key, value, "an integer");
  return v;
}

uint64_t ToUint(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
  if (value.empty() || *end != '\0' || value[0] == '-') {
    BadValue(key, value, "a nonnegative integer");
  }
  return v;
}

void ConfigCheck(bool ok, const std::string& message) {
  Require(ok, ErrorCode::kConfigError, message);
}

const std::set<std::string>& KnownKeys() {
  static const std::set<std::string> keys = {
      "model.n",         "model.k_communities", "model.alpha",   "model.beta",
      "model.rho",       "coarse.l",            "coarse.coverage", "coarse.nu",
      "coarse.tau",      "prior.kind",          "prior.weights", "mc.trials",
      "mc.seed",         "mc.sampler",          "caps.exact_dp", "caps.enumeration",
      "caps.dense_nodes", "output.dir",         "regimes.table", "regimes.rho_coarse",
      "regimes.rho",     "regimes.k",           "regimes.alpha", "regimes.beta",
      "regimes.k_communities", "regimes.delta"};
  return keys;
}

std::string JoinInts(const std::vector<int>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

std::string JoinStrings(const std::vector<std::string>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) out += (i ? ";" : "") + v[i];
  return out;
}

}  // namespace

KeyValueConfig KeyValueConfig::Parse(std::string_view text, std::string_view origin) {
  KeyValueConfig cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string trimmed = Trim(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    const size_t eq = trimmed.find('=');
    ConfigCheck(eq != std::string::npos, std::string(origin) + ":" +
                                             std::to_string(line_no) +
                                             ": expected 'key = value'");
    // Trailing comments are allowed after the value.
    std::string value = trimmed.substr(eq + 1);
    const size_t hash = value.find('#');
    if (hash != std::string::npos) value = value.substr(0, hash);
    cfg.values_[Trim(trimmed.substr(0, eq))] = Trim(value);
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::Load(const std::string& path) {
  std::ifstream in(path);
  Require(in.good(), ErrorCode::kConfigError, "cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return Parse(buf.str(), path);
}

void KeyValueConfig::SetAssignment(std::string_view assignment) {
  const size_t eq = assignment.find('=');
  ConfigCheck(eq != std::string_view::npos,
              "override '" + std::string(assignment) + "' is not key=value");
  values_[Trim(assignment.substr(0, eq))] = Trim(assignment.substr(eq + 1));
}

std::optional<std::string> KeyValueConfig::Get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::vector<int> ParseIntList(std::string_view text) {
  const std::string s = Trim(text);
  std::vector<int> out;
  if (s.find(':') != std::string::npos) {
    const auto parts = Split(s, ':');
    ConfigCheck(parts.size() == 3, "range '" + s + "' must be start:stop:step");
    const int64_t start = ToInt("range", parts[0]);
    const int64_t stop = ToInt("range", parts[1]);
    const int64_t step = ToInt("range", parts[2]);
    ConfigCheck(step > 0, "range '" + s + "' needs a positive step");
    for (int64_t v = start; v <= stop; v += step) out.push_back(static_cast<int>(v));
  } else {
    for (const std::string& part : Split(s, ',')) {
      out.push_back(static_cast<int>(ToInt("list", part)));
    }
  }
  ConfigCheck(!out.empty(), "list '" + s + "' is empty");
  return out;
}

std::string FormatDouble(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

ExperimentConfig ExperimentConfig::FromKeyValues(const KeyValueConfig& kv) {
  for (const auto& [key, value] : kv.values()) {
    ConfigCheck(KnownKeys().count(key) != 0, "unknown config key '" + key + "'");
  }
  ExperimentConfig c;
  auto get = [&](const char* key) { return kv.Get(key); };
  if (auto v = get("model.n")) c.n = ToInt("model.n", *v);
  if (auto v = get("model.k_communities")) {
    c.k_communities = static_cast<int>(ToInt("model.k_communities", *v));
  }
  if (auto v = get("model.alpha")) c.alpha = ToDouble("model.alpha", *v);
  if (auto v = get("model.beta")) c.beta = ToDouble("model.beta", *v);
  if (auto v = get("model.rho")) c.rho = ToDouble("model.rho", *v);
  if (auto v = get("coarse.l")) c.l_values = ParseIntList(*v);
  if (auto v = get("coarse.coverage")) c.coverage_values = ParseIntList(*v);
  if (auto v = get("coarse.nu")) c.nu = static_cast<int>(ToInt("coarse.nu", *v));
  if (auto v = get("coarse.tau")) c.tau = ToDouble("coarse.tau", *v);
  if (auto v = get("prior.kind")) {
    if (*v == "uniform") {
      c.prior = PriorSpec::Uniform();
    } else if (*v == "explicit") {
      c.prior.kind = PriorSpec::Kind::kExplicit;
    } else {
      BadValue("prior.kind", *v, "'uniform' or 'explicit'");
    }
  }
  if (auto v = get("prior.weights")) {
    for (const std::string& w : Split(*v, ',')) {
      c.prior.weights.push_back(ToDouble("prior.weights", w));
    }
  }
  ConfigCheck(c.prior.kind == PriorSpec::Kind::kUniform || !c.prior.weights.empty(),
              "prior.kind = explicit needs prior.weights");
  if (auto v = get("mc.trials")) c.trials = static_cast<int>(ToInt("mc.trials", *v));
  if (auto v = get("mc.seed")) c.seed = ToUint("mc.seed", *v);
  if (auto v = get("mc.sampler")) {
    if (*v == "direct") {
      c.sampler = Sampler::kDirect;
    } else if (*v == "two-stage") {
      c.sampler = Sampler::kTwoStage;
    } else {
      BadValue("mc.sampler", *v, "'direct' or 'two-stage'");
    }
  }
  if (auto v = get("caps.exact_dp")) c.exact_dp_cap = ToInt("caps.exact_dp", *v);
  if (auto v = get("caps.enumeration")) c.enumeration_cap = ToInt("caps.enumeration", *v);
  if (auto v = get("caps.dense_nodes")) c.dense_node_cap = ToInt("caps.dense_nodes", *v);
  if (auto v = get("output.dir")) c.output_dir = *v;
  if (auto v = get("regimes.table")) c.regimes_table = *v;
  if (auto v = get("regimes.rho_coarse")) c.regimes_rho_coarse = Split(*v, ';');
  if (auto v = get("regimes.rho")) c.regimes_rho = Split(*v, ';');
  if (auto v = get("regimes.k")) c.regimes_k = Split(*v, ';');
  if (auto v = get("regimes.alpha")) c.regimes_alpha = ToDouble("regimes.alpha", *v);
  if (auto v = get("regimes.beta")) c.regimes_beta = ToDouble("regimes.beta", *v);
  if (auto v = get("regimes.k_communities")) {
    c.regimes_k_communities = static_cast<int>(ToInt("regimes.k_communities", *v));
  }
  if (auto v = get("regimes.delta")) c.regimes_delta = ToDouble("regimes.delta", *v);
  c.Validate();
  return c;
}

void ExperimentConfig::Validate() const {
  ConfigCheck(n >= 1, "model.n must be positive");
  ConfigCheck(k_communities >= 1, "model.k_communities must be positive");
  ConfigCheck(alpha >= 0.0 && beta >= 0.0, "model.alpha and model.beta must be >= 0");
  ConfigCheck(rho > 0.0, "model.rho must be positive");
  ConfigCheck(p() > 0.0 && p() < 1.0 && q() > 0.0 && q() < 1.0,
              "alpha*rho and beta*rho must lie strictly inside (0, 1), got p = " +
                  FormatDouble(p()) + ", q = " + FormatDouble(q()));
  ConfigCheck(nu >= 1 && nu <= k_communities, "coarse.nu must lie in [1, K]");
  ConfigCheck(tau >= 0.0 && tau <= 1.0, "coarse.tau must lie in [0, 1]");
  for (int l : l_values) ConfigCheck(l >= 1, "coarse.l entries must be positive");
  for (int k : coverage_values) {
    ConfigCheck(k >= 1, "coarse.coverage entries must be positive");
    for (int s = 1; s <= nu; ++s) {
      ConfigCheck(k % s == 0, "coarse.coverage " + std::to_string(k) +
                                  " is not divisible by support size " +
                                  std::to_string(s) + " (needed for balanced CO-nu)");
    }
  }
  if (prior.kind == PriorSpec::Kind::kExplicit) {
    const int64_t size = ExtendedCommunityCount(k_communities, nu);
    ConfigCheck(static_cast<int64_t>(prior.weights.size()) == size,
                "prior.weights needs " + std::to_string(size) + " entries");
    double total = 0.0;
    for (double w : prior.weights) {
      ConfigCheck(w >= 0.0, "prior.weights entries must be nonnegative");
      total += w;
    }
    ConfigCheck(std::fabs(total - 1.0) <= 1e-12, "prior.weights must sum to 1");
  }
  ConfigCheck(trials >= 0, "mc.trials must be >= 0");
  ConfigCheck(exact_dp_cap >= 0 && enumeration_cap >= 1 && dense_node_cap >= 1,
              "caps must be nonnegative");
  ConfigCheck(regimes_table == "co_nu" || regimes_table == "co1" ||
                  regimes_table == "both",
              "regimes.table must be co_nu, co1 or both");
}

std::map<std::string, std::string> ExperimentConfig::Echo() const {
  std::string weights;
  for (size_t i = 0; i < prior.weights.size(); ++i) {
    weights += (i ? "," : "") + FormatDouble(prior.weights[i]);
  }
  return {{"model.n", std::to_string(n)},
          {"model.k_communities", std::to_string(k_communities)},
          {"model.alpha", FormatDouble(alpha)},
          {"model.beta", FormatDouble(beta)},
          {"model.rho", FormatDouble(rho)},
          {"coarse.l", JoinInts(l_values)},
          {"coarse.coverage", JoinInts(coverage_values)},
          {"coarse.nu", std::to_string(nu)},
          {"coarse.tau", FormatDouble(tau)},
          {"prior.kind", prior.kind == PriorSpec::Kind::kUniform ? "uniform" : "explicit"},
          {"prior.weights", weights},
          {"mc.trials", std::to_string(trials)},
          {"mc.seed", std::to_string(seed)},
          {"mc.sampler", sampler == Sampler::kDirect ? "direct" : "two-stage"},
          {"caps.exact_dp", std::to_string(exact_dp_cap)},
          {"caps.enumeration", std::to_string(enumeration_cap)},
          {"caps.dense_nodes", std::to_string(dense_node_cap)},
          {"output.dir", output_dir},
          {"regimes.table", regimes_table},
          {"regimes.rho_coarse", JoinStrings(regimes_rho_coarse)},
          {"regimes.rho", JoinStrings(regimes_rho)},
          {"regimes.k", JoinStrings(regimes_k)}};
}

}  // namespace coarse_sbm
