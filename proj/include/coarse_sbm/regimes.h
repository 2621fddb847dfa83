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

#ifndef COARSE_SBM_REGIMES_H_
#define COARSE_SBM_REGIMES_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace coarse_sbm {

// coeff * L^l * (log L)^log_l * N^n. Orders are compared lexicographically on
// (n, l, log_l), then on the coefficient.
struct Monomial {
  double coeff = 1.0;
  double l = 0.0;
  double log_l = 0.0;
  double n = 0.0;

  Monomial operator*(const Monomial& o) const;
  Monomial operator/(const Monomial& o) const;
  Monomial Pow(double e) const;
  std::string ToString() const;
};

// Grammar: factors joined by '*' or '/', each a number or one of L, logL, N,
// rho (the fine scaling, substituted when given), optionally followed by
// ^exponent. Example: "2*logL/L", "3*rho^-0.5".
Monomial ParseMonomial(std::string_view text,
                       const std::optional<Monomial>& rho = std::nullopt);

enum class Order { kLittleO, kTheta, kOmega };

// Order of a relative to b.
Order CompareOrder(const Monomial& a, const Monomial& b);

enum class RegimeTable { kCoNu, kCo1 };

std::string_view RegimeTableName(RegimeTable table);

struct RegimeInput {
  RegimeTable table = RegimeTable::kCoNu;
  Monomial rho_coarse;  // connection probability scaling of the coarse graph
  Monomial rho;         // fine connection probability scaling
  Monomial coverage;    // k
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<int> k_communities;
  std::optional<double> delta;
};

struct RegimeCondition {
  std::string text;
  std::optional<bool> evaluated;
};

struct RegimeVerdict {
  enum class Kind { kImpossible, kPossibleIf };
  Kind kind = Kind::kImpossible;
  std::string rho_block;  // "o(log L/L)", "lambda log L/L", "omega(log L/L)"
  std::string k_row;      // e.g. "c1/sqrt(rho)"
  std::string classic;    // static reference text for the uncoarsened case
  std::vector<RegimeCondition> conditions;
  std::optional<bool> all_hold;  // unset while any condition is unevaluated

  // "Impossible" or "Possible if <cond>, <cond>, ..."
  std::string VerdictText() const;
  nlohmann::json ToJson() const;
};

// Throws kUnclassifiableScaling for non-positive or non-finite coefficients
// and for probability scalings that grow.
RegimeVerdict ClassifyRegime(const RegimeInput& input);

// One representative input per table row, in table order.
struct RegimePreset {
  std::string label;
  RegimeInput input;
};

std::vector<RegimePreset> CanonicalRegimePresets(RegimeTable table);

}  // namespace coarse_sbm

#endif  // COARSE_SBM_REGIMES_H_
