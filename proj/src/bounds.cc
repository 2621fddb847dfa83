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

#include "coarse_sbm/bounds.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "coarse_sbm/distributions.h"
#include "coarse_sbm/errors.h"

namespace coarse_sbm {
namespace {

constexpr int kGridPoints = 1001;
constexpr double kGoldenTol = 1e-8;
constexpr double kLogFloor = 1e-300;
constexpr double kLogCeil = 1.0 - 1e-16;

double LogSumExp(const std::vector<double>& terms) {
  if (terms.empty()) return -std::numeric_limits<double>::infinity();
  const double top = *std::max_element(terms.begin(), terms.end());
  if (!std::isfinite(top)) return top;
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - top);
  return top + std::log(sum);
}

// Golden-section maximization of a concave function on [lo, hi].
template <typename F>
std::pair<double, double> GoldenMax(F&& f, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > kGoldenTol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double t = 0.5 * (a + b);
  return {t, f(t)};
}

ChResult ChCanonical(std::span<const double> u, std::span<const double> v,
                     std::span<const double> s) {
  auto f = [&](double t) { return ChObjective(u, v, s, t); };
  int best_i = 0;
  double best = f(0.0);
  for (int i = 1; i < kGridPoints; ++i) {
    const double val = f(static_cast<double>(i) / (kGridPoints - 1));
    if (val > best) {
      best = val;
      best_i = i;
    }
  }
  ChResult out;
  out.value = best;
  out.argmax_t = static_cast<double>(best_i) / (kGridPoints - 1);
  const double step = 1.0 / (kGridPoints - 1);
  const double lo = std::max(0.0, out.argmax_t - step);
  const double hi = std::min(1.0, out.argmax_t + step);
  const auto [t, val] = GoldenMax(f, lo, hi);
  if (val > out.value) {
    out.value = val;
    out.argmax_t = t;
  }
  out.value = std::max(out.value, 0.0);
  return out;
}

nlohmann::json InequalityJson(const Inequality& ineq) {
  return {{"name", ineq.name},   {"lhs", ineq.lhs},     {"rhs", ineq.rhs},
          {"strict", ineq.strict}, {"holds", ineq.holds}, {"slack", ineq.slack}};
}

Inequality Greater(std::string name, double lhs, double rhs, bool strict) {
  Inequality out{std::move(name), lhs, rhs, strict, false, lhs - rhs};
  out.holds = strict ? lhs > rhs : lhs >= rhs;
  return out;
}

void Finish(ConditionVerdict& verdict) {
  verdict.satisfied = true;
  verdict.margin = std::numeric_limits<double>::infinity();
  for (const Inequality& ineq : verdict.inequalities) {
    verdict.satisfied = verdict.satisfied && ineq.holds;
    verdict.margin = std::min(verdict.margin, ineq.slack);
  }
}

}  // namespace

double GeometricMix(double u, double v, double t) {
  if (t <= 0.0) return v;
  if (t >= 1.0) return u;
  if (u == v) return u;
  if (u <= 0.0 || v <= 0.0) return 0.0;
  const double lu = std::log(std::clamp(u, kLogFloor, kLogCeil));
  const double lv = std::log(std::clamp(v, kLogFloor, kLogCeil));
  return std::exp(t * lu + (1.0 - t) * lv);
}

double ChObjective(std::span<const double> u_k, std::span<const double> u_kp,
                   std::span<const double> prior, double t) {
  double sum = 0.0;
  for (size_t j = 0; j < u_k.size(); ++j) {
    const double u = u_k[j];
    const double v = u_kp[j];
    if (u == v) continue;
    sum += prior[j] * (t * u + (1.0 - t) * v - GeometricMix(u, v, t));
  }
  return sum;
}

ChResult ChDivergence(std::span<const double> u_k, std::span<const double> u_kp,
                      std::span<const double> prior) {
  Require(u_k.size() == u_kp.size() && u_k.size() == prior.size(),
          ErrorCode::kLengthMismatch, "CH divergence inputs differ in length");
  // Evaluate on a canonical ordering so that swapping the columns gives the
  // same value and the reflected maximizer exactly.
  const bool swap = std::lexicographical_compare(u_kp.begin(), u_kp.end(),
                                                 u_k.begin(), u_k.end());
  if (!swap) return ChCanonical(u_k, u_kp, prior);
  ChResult out = ChCanonical(u_kp, u_k, prior);
  out.argmax_t = 1.0 - out.argmax_t;
  return out;
}

std::string_view BoundKindName(BoundKind kind) {
  return kind == BoundKind::kCoNuUnion ? "co_nu_union" : "co1_renyi";
}

const VariantBound& BoundReport::Variant(UVariant variant) const {
  for (const VariantBound& v : variants) {
    if (v.variant == variant) return v;
  }
  Fail(ErrorCode::kInvalidArgument, "bound report lacks the requested variant");
}

nlohmann::json BoundReport::ToJson() const {
  nlohmann::json vars = nlohmann::json::array();
  for (const VariantBound& v : variants) {
    nlohmann::json pairs = nlohmann::json::array();
    for (const PairExponent& p : v.pairs) {
      pairs.push_back({{"k", p.k},
                       {"k_prime", p.k_prime},
                       {"ch", p.ch},
                       {"argmax_t", p.argmax_t},
                       {"exponent", p.exponent}});
    }
    vars.push_back({{"variant", std::string(UVariantName(v.variant))},
                    {"raw", v.raw},
                    {"log_raw", v.log_raw},
                    {"clamped", v.clamped},
                    {"pairs", pairs}});
  }
  return {{"kind", std::string(BoundKindName(kind))},
          {"bound_mean", bound_mean},
          {"bound_lower", bound_lower},
          {"bound_upper", bound_upper},
          {"variants", vars},
          {"params", params_echo}};
}

VariantBound CoNuErrorBound(const ExtendedSbm& model, int l, UVariant variant) {
  Require(l >= 1, ErrorCode::kInvalidArgument, "L must be positive");
  const Eigen::MatrixXd& u = model.U(variant);
  const int size = model.size();
  VariantBound out;
  out.variant = variant;
  std::vector<double> log_terms;
  std::vector<double> col_a(static_cast<size_t>(size));
  std::vector<double> col_b(static_cast<size_t>(size));
  for (int k = 0; k < size; ++k) {
    for (int j = 0; j < size; ++j) col_a[j] = u(j, k);
    for (int kp = k + 1; kp < size; ++kp) {
      for (int j = 0; j < size; ++j) col_b[j] = u(j, kp);
      const ChResult ch = ChDivergence(col_a, col_b, model.prior);
      const double exponent = static_cast<double>(l) * ch.value;
      out.pairs.push_back({k, kp, ch.value, ch.argmax_t, exponent});
      log_terms.push_back(-exponent);
    }
  }
  out.log_raw = LogSumExp(log_terms);
  out.raw = std::exp(out.log_raw);
  out.clamped = std::min(1.0, out.raw);
  return out;
}

BoundReport CoNuBoundReport(const ExtendedSbm& model, int l) {
  BoundReport report;
  report.kind = BoundKind::kCoNuUnion;
  for (UVariant v : {UVariant::kMean, UVariant::kLower, UVariant::kUpper}) {
    report.variants.push_back(CoNuErrorBound(model, l, v));
  }
  report.bound_mean = report.variants[0].clamped;
  report.bound_lower = report.bound_upper = report.bound_mean;
  for (const VariantBound& v : report.variants) {
    report.bound_lower = std::min(report.bound_lower, v.clamped);
    report.bound_upper = std::max(report.bound_upper, v.clamped);
  }
  report.params_echo = {{"l", l},
                        {"k_communities", model.k_communities},
                        {"coverage", model.coverage},
                        {"nu", model.nu},
                        {"p", model.p},
                        {"q", model.q},
                        {"tau", model.tau},
                        {"method", std::string(TailMethodName(model.method))}};
  return report;
}

DominantTerm DominantTermLowerBound(const ExtendedSbm& model, int k, int k_prime,
                                    double alpha, double beta, double rho) {
  Require(k >= 0 && k < model.size() && k_prime >= 0 && k_prime < model.size(),
          ErrorCode::kInvalidArgument, "extended community index out of range");
  Require(model.tau > 0.0 && model.tau < 1.0 / model.nu, ErrorCode::kDomainError,
          "dominant-term bound needs 0 < tau < 1/nu");
  Require(alpha > 0.0 && beta > 0.0 && rho > 0.0, ErrorCode::kDomainError,
          "dominant-term bound needs alpha, beta, rho > 0");
  DominantTerm out;
  if (alpha == beta) {
    out.degenerate = true;
    return out;
  }
  if (k == k_prime) return out;

  const Profile& a = model.profiles[static_cast<size_t>(k)];
  const Profile& b = model.profiles[static_cast<size_t>(k_prime)];
  // Community where exactly one profile vanishes, largest gap first.
  int at = -1;
  int gap = -1;
  for (size_t c = 0; c < a.size(); ++c) {
    if ((a[c] == 0) == (b[c] == 0)) continue;
    const int g = std::abs(a[c] - b[c]);
    if (g > gap) {
      gap = g;
      at = static_cast<int>(c);
    }
  }
  // Distinct balanced profiles always differ in support, so `at` exists.
  Require(at >= 0, ErrorCode::kInvalidArgument, "profiles share their support");

  const int cov = model.coverage;
  const int nonzero = std::max(a[at], b[at]);
  out.omega = static_cast<double>(nonzero) / cov;
  Profile single(a.size(), 0);
  single[static_cast<size_t>(at)] = cov;
  out.dominant_index = model.IndexOf(single);

  const double tau = model.tau;
  const double p = alpha * rho;
  const double q = beta * rho;
  const double scale = cov * std::sqrt(rho);
  const double w = out.omega;
  const double arg_w = (alpha - beta) * (w - tau) / std::sqrt((alpha - beta) * w + beta) * scale;
  const double be_w = kBerryEsseenConstant /
                      (scale * std::sqrt(alpha * (1.0 - p) * w + beta * (1.0 - q) * (1.0 - w)));
  const double arg_0 = -(alpha - beta) * tau / std::sqrt(beta) * scale;
  const double be_0 = kBerryEsseenConstant / (scale * std::sqrt(beta * (1.0 - q)));

  double low_of_high = 0.0;
  double high_of_low = 0.0;
  if (alpha > beta) {
    low_of_high = std::max(NormalCdf(arg_w) - be_w, 0.0);
    high_of_low = std::max(NormalCdf(arg_0) + be_0, 0.0);
  } else {
    low_of_high = std::max(NormalCdf(arg_0) - be_0, 0.0);
    high_of_low = std::max(NormalCdf(arg_w) + be_w, 0.0);
  }
  const double diff = std::sqrt(low_of_high) - std::sqrt(high_of_low);
  if (diff <= 0.0) return out;
  out.value = 0.5 * model.prior[static_cast<size_t>(out.dominant_index)] * diff * diff;
  return out;
}

nlohmann::json ConditionVerdict::ToJson() const {
  nlohmann::json ineqs = nlohmann::json::array();
  for (const Inequality& i : inequalities) ineqs.push_back(InequalityJson(i));
  nlohmann::json consts = nlohmann::json::object();
  for (const auto& [name, value] : constants) consts[name] = value;
  return {{"satisfied", satisfied},
          {"margin", margin},
          {"constants", consts},
          {"inequalities", ineqs},
          {"notes", notes}};
}

std::map<std::string, double> ThresholdConstants::AsMap() const {
  return {{"alpha", alpha}, {"beta", beta},   {"nu", nu},       {"tau", tau},
          {"rho_bar", rho_bar}, {"rho1", rho1}, {"rho2", rho2}, {"rho3", rho3},
          {"rho4", rho4},   {"varpi", varpi}, {"delta", delta}};
}

ThresholdConstants ComputeThresholdConstants(double alpha, double beta, int nu,
                                               double tau, double rho_bar) {
  Require(nu >= 1, ErrorCode::kDomainError, "nu must be at least 1");
  Require(tau > 0.0 && tau < 1.0 / nu, ErrorCode::kDomainError,
          "tau must lie strictly between 0 and 1/nu");
  Require(alpha != beta, ErrorCode::kDomainError, "constants need alpha != beta");
  Require(alpha > 0.0 && beta > 0.0, ErrorCode::kDomainError,
          "constants need alpha, beta > 0");
  Require(rho_bar > 0.0 && alpha * rho_bar < 1.0 && beta * rho_bar < 1.0,
          ErrorCode::kDomainError, "alpha * rho_bar and beta * rho_bar must be < 1");
  ThresholdConstants c;
  c.alpha = alpha;
  c.beta = beta;
  c.nu = nu;
  c.tau = tau;
  c.rho_bar = rho_bar;
  const double inv_nu = 1.0 / nu;
  c.rho1 = (alpha - beta) * (inv_nu - tau) / std::sqrt((alpha - beta) * inv_nu + beta);
  c.rho2 = (alpha - beta) * tau / std::sqrt(beta);
  const double va = alpha * (1.0 - alpha * rho_bar);
  const double vb = beta * (1.0 - beta * rho_bar);
  const double mixed = va * inv_nu + vb * (1.0 - inv_nu);
  c.rho3 = kBerryEsseenConstant / std::sqrt(std::min(mixed, va)) +
           kBerryEsseenConstant / std::sqrt(vb);
  const double r12 = std::max(std::fabs(c.rho1), std::fabs(c.rho2));
  c.rho4 = 2.0 * c.rho3 / (r12 * r12);
  const double r3 = c.rho3;
  const double r4 = c.rho4;
  c.varpi = std::cbrt(3.0 * std::sqrt(3.0) * std::sqrt(4.0 * r3 * r3 * r3 * r4 + 27.0 * r4 * r4) +
                      2.0 * r3 * r3 * r3 + 27.0 * r4);
  const double cbrt2 = std::cbrt(2.0);
  c.delta = (c.varpi / cbrt2 + cbrt2 * r3 * r3 / c.varpi + r3) / 3.0;
  return c;
}

ConditionVerdict CheckCoNuRecovery(int coverage, double rho, int64_t l, int64_t n,
                                 const ThresholdConstants& c) {
  Require(rho > 0.0 && l >= 1 && n >= 1, ErrorCode::kInvalidArgument,
          "rho, L and N must be positive");
  ConditionVerdict v;
  v.constants = c.AsMap();
  const double ratio = static_cast<double>(l) / static_cast<double>(n);
  v.inequalities.push_back(
      Greater("k > Delta/sqrt(rho)", coverage, c.delta / std::sqrt(rho), true));
  v.inequalities.push_back(Greater("alpha != beta", std::fabs(c.alpha - c.beta), 0.0, true));
  v.inequalities.push_back(
      Greater("rho > Delta^2 (L/N)^2", rho, c.delta * c.delta * ratio * ratio, true));
  Inequality upper{"rho <= rho_bar", rho, c.rho_bar, false, rho <= c.rho_bar,
                   c.rho_bar - rho};
  v.inequalities.push_back(upper);
  Finish(v);
  return v;
}

BoundReport Co1ErrorBound(int64_t l, int k_communities, double renyi) {
  Require(l >= 1 && k_communities >= 1, ErrorCode::kInvalidArgument,
          "L and K must be positive");
  Require(renyi >= 0.0 && std::isfinite(renyi), ErrorCode::kDomainError,
          "Renyi divergence must be finite and nonnegative");
  const double big_l = static_cast<double>(l);
  const double big_k = k_communities;
  const double cap = big_l * std::log(big_k);
  const int64_t split = l / (2 * static_cast<int64_t>(k_communities));
  std::vector<double> terms;
  terms.reserve(static_cast<size_t>(l));
  for (int64_t m = 1; m <= l; ++m) {
    const double dm = static_cast<double>(m);
    const double count = std::min(dm * std::log(std::exp(1.0) * big_l * big_k / dm), cap);
    const double rate = m <= split ? (-(big_l / big_k) * dm + dm * dm) * renyi
                                   : -(2.0 * dm * big_l / (9.0 * big_k)) * renyi;
    terms.push_back(count + rate);
  }
  VariantBound vb;
  vb.log_raw = LogSumExp(terms);
  vb.raw = std::exp(vb.log_raw);
  vb.clamped = std::min(1.0, vb.raw);
  BoundReport report;
  report.kind = BoundKind::kCo1Renyi;
  report.bound_mean = report.bound_lower = report.bound_upper = vb.clamped;
  report.variants.push_back(vb);
  report.params_echo = {{"l", l}, {"k_communities", k_communities}, {"renyi", renyi}};
  return report;
}

ConditionVerdict CheckCo1Recovery(double alpha, double beta, int k_communities,
                               int coverage, double rho, int64_t l, LRegime regime) {
  Require(alpha >= 0.0 && beta >= 0.0 && rho > 0.0 && coverage >= 1 && l >= 1 &&
              k_communities >= 1,
          ErrorCode::kInvalidArgument, "invalid CO-1 recovery inputs");
  ConditionVerdict v;
  const double gap = (alpha + beta) / 2.0 - std::sqrt(alpha * beta);
  const double k2 = static_cast<double>(coverage) * coverage;
  v.constants["gap"] = gap;
  v.constants["k_sqrt_rho"] = coverage * std::sqrt(rho);
  const double p = alpha * rho;
  const double q = beta * rho;
  if (p > 0.0 && p < 1.0 && q > 0.0 && q < 1.0) {
    v.constants["renyi"] = RenyiHalfBinomial(coverage, p, q);
  }
  if (regime == LRegime::kFiniteL) {
    v.inequalities.push_back(Greater("alpha != beta", std::fabs(alpha - beta), 0.0, true));
    v.notes = "finite L: exact recovery as k sqrt(rho) grows iff alpha != beta";
  } else {
    const double big_l = static_cast<double>(l);
    const double rhs = (k_communities / 2.0) * std::log(big_l) / (k2 * rho * big_l);
    v.inequalities.push_back(Greater(
        "(alpha+beta)/2 - sqrt(alpha beta) > (K/2) log L / (k^2 rho L)", gap, rhs, true));
    v.notes = "growing L: asymptotic proxy evaluated at the given finite values";
  }
  Finish(v);
  return v;
}

}  // namespace coarse_sbm
