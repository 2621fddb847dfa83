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

#include "coarse_sbm/selftest.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "coarse_sbm/bounds.h"
#include "coarse_sbm/distributions.h"
#include "coarse_sbm/regimes.h"
#include "coarse_sbm/rng.h"

namespace coarse_sbm {
namespace {

std::string Fmt(const char* fmt, double a, double b = 0.0) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), fmt, a, b);
  return buf;
}

// Distribution of the number of successes by summing over all 2^n outcomes.
std::vector<double> BruteForcePmf(const PoissonBinomialSpec& s) {
  const int n = static_cast<int>(s.n_total);
  std::vector<double> pmf(static_cast<size_t>(n) + 1, 0.0);
  for (uint32_t mask = 0; mask < (1U << n); ++mask) {
    double prob = 1.0;
    int ones = 0;
    for (int b = 0; b < n; ++b) {
      const double r = b < s.m ? s.p : s.q;
      const bool on = (mask >> b) & 1U;
      prob *= on ? r : 1.0 - r;
      ones += on;
    }
    pmf[static_cast<size_t>(ones)] += prob;
  }
  return pmf;
}

SelfTestResult PmfCheck(CounterRng& rng) {
  double worst = 0.0;
  for (int trial = 0; trial < 40; ++trial) {
    PoissonBinomialSpec s;
    s.n_total = static_cast<int64_t>(rng.Index(11));
    s.m = static_cast<int64_t>(rng.Index(static_cast<uint64_t>(s.n_total) + 1));
    s.p = rng.Uniform();
    s.q = rng.Uniform();
    const auto got = PoissonBinomialPmf(s);
    const auto want = BruteForcePmf(s);
    for (size_t i = 0; i < want.size(); ++i) worst = std::max(worst, std::fabs(got[i] - want[i]));
  }
  return {"pb_pmf_vs_enumeration", worst <= 1e-12, Fmt("max abs diff %.3g", worst)};
}

SelfTestResult BandCheck(CounterRng& rng) {
  int misses = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const int k = 8 + static_cast<int>(rng.Index(25));
    PoissonBinomialSpec s;
    s.n_total = static_cast<int64_t>(k) * k;
    s.m = static_cast<int64_t>(rng.Index(static_cast<uint64_t>(s.n_total) + 1));
    s.p = 0.05 + 0.9 * rng.Uniform();
    s.q = 0.05 + 0.9 * rng.Uniform();
    const double t = s.n_total * (0.25 * s.p + 0.75 * s.q);
    const double exact = PoissonBinomialTail(s, t, s.n_total).mean_estimate;
    const TailResult approx = PoissonBinomialTail(s, t, 0);
    if (exact < approx.lower || exact > approx.upper) ++misses;
  }
  return {"tail_within_normal_band", misses == 0, Fmt("%g misses", misses)};
}

SelfTestResult RenyiCheck() {
  double worst = 0.0;
  for (int k = 1; k <= 6; ++k) {
    for (double p : {0.1, 0.5, 0.9}) {
      for (double q : {0.05, 0.3, 0.7}) {
        const int64_t n = static_cast<int64_t>(k) * k;
        const auto a = PoissonBinomialPmf({n, n, p, q});
        const auto b = PoissonBinomialPmf({0, n, p, q});
        double bc = 0.0;
        for (size_t x = 0; x < a.size(); ++x) bc += std::sqrt(a[x] * b[x]);
        const double direct = -2.0 * std::log(bc);
        const double closed = RenyiHalfBinomial(k, p, q);
        const double rel = std::fabs(direct - closed) / std::max(std::fabs(direct), 1e-300);
        if (direct > 0.0) worst = std::max(worst, rel);
      }
    }
  }
  return {"renyi_closed_form", worst <= 1e-9, Fmt("max rel diff %.3g", worst)};
}

SelfTestResult ChCheck(CounterRng& rng) {
  double worst = 0.0;
  bool ok = true;
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng.Index(5));
    std::vector<double> u(n), v(n), s(n);
    double total = 0.0;
    for (int j = 0; j < n; ++j) {
      u[j] = rng.Uniform();
      v[j] = rng.Uniform();
      s[j] = rng.Uniform() + 1e-3;
      total += s[j];
    }
    for (double& w : s) w /= total;
    const ChResult r = ChDivergence(u, v, s);
    const ChResult swapped = ChDivergence(v, u, s);
    double grid = 0.0;
    for (int i = 0; i <= 20000; ++i) grid = std::max(grid, ChObjective(u, v, s, i / 20000.0));
    worst = std::max(worst, std::fabs(r.value - grid));
    ok = ok && r.value >= 0.0 && r.value == swapped.value &&
         ChDivergence(u, u, s).value == 0.0;
  }
  return {"ch_divergence_properties", ok && worst <= 1e-6, Fmt("max grid diff %.3g", worst)};
}

SelfTestResult DeltaCheck(CounterRng& rng) {
  int bad = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int nu = 1 + static_cast<int>(rng.Index(3));
    const double alpha = 1.0 + 99.0 * rng.Uniform();
    const double beta = 1.0 + 99.0 * rng.Uniform();
    const double tau = (0.05 + 0.9 * rng.Uniform()) / nu;
    const double rho_bar = 0.9 / std::max(alpha, beta) * rng.Uniform() + 1e-6;
    const ThresholdConstants c = ComputeThresholdConstants(alpha, beta, nu, tau, rho_bar);
    auto g = [&](double d) { return d * d * d - c.rho3 * d * d - c.rho4; };
    if (!(g(c.delta * (1 + 1e-6)) > 0.0 && g(c.delta * (1 - 1e-6)) < 0.0)) ++bad;
  }
  return {"threshold_constant_root", bad == 0, Fmt("%g failures", bad)};
}

SelfTestResult RegimeCheck() {
  int unclassified = 0;
  int rows = 0;
  for (RegimeTable t : {RegimeTable::kCoNu, RegimeTable::kCo1}) {
    for (const RegimePreset& preset : CanonicalRegimePresets(t)) {
      ++rows;
      try {
        ClassifyRegime(preset.input);
      } catch (...) {
        ++unclassified;
      }
    }
  }
  return {"regime_presets_classify", rows == 18 && unclassified == 0,
          Fmt("%g rows, %g unclassifiable", rows, unclassified)};
}

}  // namespace

std::vector<SelfTestResult> RunSelfTests(uint64_t seed) {
  CounterRng rng(DeriveSeed(seed, 99));
  return {PmfCheck(rng), BandCheck(rng), RenyiCheck(), ChCheck(rng), DeltaCheck(rng),
          RegimeCheck()};
}

}  // namespace coarse_sbm
