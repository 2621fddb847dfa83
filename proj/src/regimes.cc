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

#include "coarse_sbm/regimes.h"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "coarse_sbm/errors.h"

namespace coarse_sbm {
namespace {

constexpr double kExpTol = 1e-12;

int Sign(double x) {
  if (x > kExpTol) return 1;
  if (x < -kExpTol) return -1;
  return 0;
}

Monomial Mono(double coeff, double l, double log_l, double n) {
  return {coeff, l, log_l, n};
}

const Monomial kOne{};
const Monomial kLogLOverL = Mono(1.0, -1.0, 1.0, 0.0);

std::string Fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", x);
  return buf;
}

// Evaluates coeff_a * a versus b: ">" or ">=" in the asymptotic sense.
bool Dominates(const Monomial& a, const Monomial& b, bool strict) {
  switch (CompareOrder(a, b)) {
    case Order::kOmega:
      return true;
    case Order::kLittleO:
      return false;
    case Order::kTheta:
      break;
  }
  const double ratio = (a / b).coeff;
  return strict ? ratio > 1.0 : ratio >= 1.0 - 1e-12;
}

std::optional<bool> AlphaNeBeta(const RegimeInput& in) {
  if (!in.alpha || !in.beta) return std::nullopt;
  return *in.alpha != *in.beta;
}

std::optional<bool> GapAtLeast(const RegimeInput& in, double denom_factor) {
  if (!in.alpha || !in.beta || !in.k_communities) return std::nullopt;
  const double gap = (*in.alpha + *in.beta) / 2.0 - std::sqrt(*in.alpha * *in.beta);
  return gap >= *in.k_communities / (2.0 * denom_factor);
}

void RequireScaling(const Monomial& m, const char* what, bool probability) {
  Require(std::isfinite(m.coeff) && m.coeff > 0.0 && std::isfinite(m.l) &&
              std::isfinite(m.log_l) && std::isfinite(m.n),
          ErrorCode::kUnclassifiableScaling,
          std::string(what) + " needs a finite positive coefficient");
  if (probability) {
    Require(CompareOrder(m, kOne) != Order::kOmega, ErrorCode::kUnclassifiableScaling,
            std::string(what) + " grows without bound");
  }
}

double ParseNumber(std::string_view text, size_t& pos) {
  const std::string rest(text.substr(pos));
  char* end = nullptr;
  const double v = std::strtod(rest.c_str(), &end);
  Require(end != rest.c_str(), ErrorCode::kInvalidArgument,
          "expected a number in scaling '" + std::string(text) + "'");
  pos += static_cast<size_t>(end - rest.c_str());
  return v;
}

void SkipSpace(std::string_view text, size_t& pos) {
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
}

}  // namespace

Monomial Monomial::operator*(const Monomial& o) const {
  return {coeff * o.coeff, l + o.l, log_l + o.log_l, n + o.n};
}

Monomial Monomial::operator/(const Monomial& o) const {
  return {coeff / o.coeff, l - o.l, log_l - o.log_l, n - o.n};
}

Monomial Monomial::Pow(double e) const {
  return {std::pow(coeff, e), l * e, log_l * e, n * e};
}

std::string Monomial::ToString() const {
  std::string out = Fmt(coeff);
  if (Sign(l) != 0) out += "*L^" + Fmt(l);
  if (Sign(log_l) != 0) out += "*logL^" + Fmt(log_l);
  if (Sign(n) != 0) out += "*N^" + Fmt(n);
  return out;
}

Monomial ParseMonomial(std::string_view text, const std::optional<Monomial>& rho) {
  Monomial out;
  size_t pos = 0;
  bool divide = false;
  SkipSpace(text, pos);
  Require(pos < text.size(), ErrorCode::kInvalidArgument, "empty scaling");
  while (true) {
    SkipSpace(text, pos);
    Monomial factor;
    bool numeric = false;
    double base = 1.0;
    if (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) {
      size_t end = pos;
      while (end < text.size() && std::isalpha(static_cast<unsigned char>(text[end]))) ++end;
      const std::string_view name = text.substr(pos, end - pos);
      pos = end;
      if (name == "L") {
        factor = Mono(1.0, 1.0, 0.0, 0.0);
      } else if (name == "logL") {
        factor = Mono(1.0, 0.0, 1.0, 0.0);
      } else if (name == "N") {
        factor = Mono(1.0, 0.0, 0.0, 1.0);
      } else if (name == "rho") {
        Require(rho.has_value(), ErrorCode::kInvalidArgument,
                "'rho' used before the fine scaling is known");
        factor = *rho;
      } else {
        Fail(ErrorCode::kInvalidArgument, "unknown symbol '" + std::string(name) + "'");
      }
    } else {
      numeric = true;
      base = ParseNumber(text, pos);
    }
    SkipSpace(text, pos);
    double exponent = 1.0;
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      SkipSpace(text, pos);
      exponent = ParseNumber(text, pos);
    }
    if (numeric) {
      factor = Mono(std::pow(base, exponent), 0.0, 0.0, 0.0);
    } else {
      factor = factor.Pow(exponent);
    }
    out = divide ? out / factor : out * factor;
    SkipSpace(text, pos);
    if (pos == text.size()) break;
    Require(text[pos] == '*' || text[pos] == '/', ErrorCode::kInvalidArgument,
            "unexpected character in scaling '" + std::string(text) + "'");
    divide = text[pos] == '/';
    ++pos;
  }
  return out;
}

Order CompareOrder(const Monomial& a, const Monomial& b) {
  const Monomial r = a / b;
  for (double e : {r.n, r.l, r.log_l}) {
    const int s = Sign(e);
    if (s > 0) return Order::kOmega;
    if (s < 0) return Order::kLittleO;
  }
  return Order::kTheta;
}

std::string_view RegimeTableName(RegimeTable table) {
  return table == RegimeTable::kCoNu ? "co_nu" : "co1";
}

std::string RegimeVerdict::VerdictText() const {
  if (kind == Kind::kImpossible) return "Impossible";
  std::string out = "Possible if ";
  for (size_t i = 0; i < conditions.size(); ++i) {
    if (i > 0) out += ", ";
    out += conditions[i].text;
  }
  return out;
}

nlohmann::json RegimeVerdict::ToJson() const {
  nlohmann::json conds = nlohmann::json::array();
  for (const RegimeCondition& c : conditions) {
    nlohmann::json entry = {{"text", c.text}};
    entry["evaluated"] = c.evaluated ? nlohmann::json(*c.evaluated) : nlohmann::json();
    conds.push_back(entry);
  }
  nlohmann::json out = {{"verdict", VerdictText()},
                        {"kind", kind == Kind::kImpossible ? "impossible" : "possible_if"},
                        {"rho_block", rho_block},
                        {"k_row", k_row},
                        {"classic", classic},
                        {"conditions", conds}};
  out["all_hold"] = all_hold ? nlohmann::json(*all_hold) : nlohmann::json();
  return out;
}

RegimeVerdict ClassifyRegime(const RegimeInput& in) {
  RequireScaling(in.rho_coarse, "coarse probability scaling", true);
  RequireScaling(in.rho, "fine probability scaling", true);
  RequireScaling(in.coverage, "coverage scaling", false);

  RegimeVerdict v;
  const bool co_nu_table = in.table == RegimeTable::kCoNu;
  const Order block = CompareOrder(in.rho_coarse, kLogLOverL);
  const double lambda = (in.rho_coarse / kLogLOverL).coeff;
  const Monomial l_over_n_sq = Mono(1.0, 2.0, 0.0, -2.0);
  const Monomial l_log_l_over_n_sq = Mono(1.0, 1.0, 1.0, -2.0);

  Monomial ref;
  switch (block) {
    case Order::kLittleO:
      v.rho_block = "o(log L/L)";
      v.classic = "Impossible";
      break;
    case Order::kTheta:
      v.rho_block = "lambda log L/L";
      v.classic = co_nu_table ? "Possible if D > 1"
                         : "Possible if (alpha+beta)/2 - sqrt(alpha beta) >= K/(2 lambda)";
      break;
    case Order::kOmega:
      v.rho_block = "omega(log L/L)";
      v.classic = co_nu_table ? "Possible if D > 0" : "Possible if alpha != beta";
      break;
  }
  std::string ref_text;
  if (co_nu_table) {
    if (block == Order::kTheta) {
      ref = Mono(1.0, 0.5, -0.5, 0.0);
      ref_text = "sqrt(L/log L)";
    } else {
      ref = in.rho.Pow(-0.5);
      ref_text = "1/sqrt(rho)";
    }
  } else {
    if (block == Order::kTheta) {
      ref = kOne;
      ref_text = "1";
    } else {
      ref = (kLogLOverL / in.rho).Pow(0.5);
      ref_text = "sqrt(log L/(rho L))";
    }
  }

  const Order row = CompareOrder(in.coverage, ref);
  const double c = (in.coverage / ref).coeff;
  if (row == Order::kLittleO) {
    v.k_row = "o(" + ref_text + ")";
    v.kind = RegimeVerdict::Kind::kImpossible;
    v.all_hold = false;
    return v;
  }
  v.kind = RegimeVerdict::Kind::kPossibleIf;
  if (row == Order::kOmega) {
    v.k_row = "omega(" + ref_text + ")";
    v.conditions.push_back({"alpha != beta", AlphaNeBeta(in)});
    if (co_nu_table) {
      v.conditions.push_back(
          {"rho = omega((L/N)^2)", CompareOrder(in.rho, l_over_n_sq) == Order::kOmega});
    } else {
      v.conditions.push_back({"rho = omega(L log L/N^2)",
                              CompareOrder(in.rho, l_log_l_over_n_sq) == Order::kOmega});
    }
  } else if (co_nu_table) {
    // c1 is the constant in front of the reference scaling as the table
    // writes it; the lambda block folds 1/sqrt(lambda) into the reference.
    const double c1 = block == Order::kTheta ? c * std::sqrt(lambda) : c;
    v.k_row = block == Order::kTheta ? "c1 sqrt(L/(lambda log L))" : "c1/sqrt(rho)";
    v.conditions.push_back({"alpha != beta", AlphaNeBeta(in)});
    std::optional<bool> c1_gt, rho_gt;
    if (in.delta) {
      c1_gt = c1 > *in.delta;
      rho_gt = Dominates(in.rho, l_over_n_sq * Mono(*in.delta * *in.delta, 0, 0, 0), true);
    }
    v.conditions.push_back({"c1 > Delta", c1_gt});
    v.conditions.push_back({"rho > Delta^2 (L/N)^2", rho_gt});
  } else if (block == Order::kTheta) {
    v.k_row = "Theta(1)";
    v.conditions.push_back({"(alpha+beta)/2 - sqrt(alpha beta) >= K/(2 lambda k^2)",
                            GapAtLeast(in, lambda * c * c)});
    v.conditions.push_back({"rho >= k^2 L log L/N^2",
                            Dominates(in.rho, l_log_l_over_n_sq * Mono(c * c, 0, 0, 0),
                                      false)});
  } else {
    v.k_row = "c sqrt(log L/(rho L))";
    v.conditions.push_back(
        {"(alpha+beta)/2 - sqrt(alpha beta) >= K/(2 c^2)", GapAtLeast(in, c * c)});
    v.conditions.push_back(
        {"rho >= c^2 L log L/N^2",
         Dominates(in.rho, l_log_l_over_n_sq * Mono(c * c, 0, 0, 0), false)});
  }

  bool all = true;
  bool known = true;
  for (const RegimeCondition& cond : v.conditions) {
    if (!cond.evaluated) {
      known = false;
    } else if (!*cond.evaluated) {
      all = false;
    }
  }
  if (!all) {
    v.all_hold = false;
  } else if (known) {
    v.all_hold = true;
  }
  return v;
}

std::vector<RegimePreset> CanonicalRegimePresets(RegimeTable table) {
  const Monomial rho = ParseMonomial("1/N");
  const char* blocks[3][2] = {
      {"o(log L/L)", "1/L"}, {"lambda log L/L", "2*logL/L"}, {"omega(log L/L)", "logL^2/L"}};
  // k rows per block: o, Theta, omega.
  const char* t1_outer[3] = {"rho^-0.5/logL", "3*rho^-0.5", "rho^-0.5*logL"};
  const char* t1_mid[3] = {"L^0.5/logL", "3*L^0.5*logL^-0.5", "L^0.5"};
  const char* t2_outer[3] = {"rho^-0.5*L^-0.5", "2*rho^-0.5*logL^0.5*L^-0.5",
                             "rho^-0.5*logL*L^-0.5"};
  const char* t2_mid[3] = {"1/logL", "3", "logL"};
  const char* row_names[3] = {"o", "Theta", "omega"};

  std::vector<RegimePreset> out;
  for (int b = 0; b < 3; ++b) {
    for (int r = 0; r < 3; ++r) {
      RegimeInput in;
      in.table = table;
      in.rho_coarse = ParseMonomial(blocks[b][1]);
      in.rho = rho;
      const char* k_text = table == RegimeTable::kCoNu
                               ? (b == 1 ? t1_mid[r] : t1_outer[r])
                               : (b == 1 ? t2_mid[r] : t2_outer[r]);
      in.coverage = ParseMonomial(k_text, rho);
      out.push_back({std::string(blocks[b][0]) + " / k " + row_names[r], in});
    }
  }
  return out;
}

}  // namespace coarse_sbm
