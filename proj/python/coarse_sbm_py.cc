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


// Python bindings. Structured results cross the boundary as JSON text and
// are decoded by the package wrapper.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>
#include <vector>

#include "coarse_sbm/bounds.h"
#include "coarse_sbm/config.h"
#include "coarse_sbm/distributions.h"
#include "coarse_sbm/errors.h"
#include "coarse_sbm/extended_model.h"
#include "coarse_sbm/harness.h"
#include "coarse_sbm/selftest.h"

namespace py = pybind11;
namespace cs = coarse_sbm;

namespace {

cs::ExperimentConfig ConfigFromMap(const std::map<std::string, std::string>& values) {
  cs::KeyValueConfig kv;
  for (const auto& [key, value] : values) kv.Set(key, value);
  return cs::ExperimentConfig::FromKeyValues(kv);
}

cs::PriorSpec Prior(const std::vector<double>& weights) {
  return weights.empty() ? cs::PriorSpec::Uniform() : cs::PriorSpec::Explicit(weights);
}

}  // namespace

PYBIND11_MODULE(_coarse_sbm, m) {
  m.doc() = "Coarsened stochastic block model kernels";

  py::register_exception<cs::Error>(m, "CoarseSbmError", PyExc_ValueError);

  m.def(
      "pb_pmf",
      [](int64_t m_shared, int64_t n_total, double p, double q, int64_t exact_cap) {
        return cs::PoissonBinomialPmf({m_shared, n_total, p, q}, exact_cap);
      },
      py::arg("m"), py::arg("n_total"), py::arg("p"), py::arg("q"),
      py::arg("exact_cap") = cs::kDefaultExactCap);

  m.def(
      "pb_tail",
      [](int64_t m_shared, int64_t n_total, double p, double q, double threshold,
         int64_t exact_cap) {
        const cs::TailResult r =
            cs::PoissonBinomialTail({m_shared, n_total, p, q}, threshold, exact_cap);
        return py::dict(py::arg("mean") = r.mean_estimate, py::arg("lower") = r.lower,
                        py::arg("upper") = r.upper,
                        py::arg("method") = std::string(cs::TailMethodName(r.method)));
      },
      py::arg("m"), py::arg("n_total"), py::arg("p"), py::arg("q"), py::arg("threshold"),
      py::arg("exact_cap") = cs::kDefaultExactCap);

  m.def("renyi_half_binomial", &cs::RenyiHalfBinomial, py::arg("coverage"), py::arg("p"),
        py::arg("q"));

  m.def(
      "ch_divergence",
      [](const std::vector<double>& u, const std::vector<double>& v,
         const std::vector<double>& prior) {
        const cs::ChResult r = cs::ChDivergence(u, v, prior);
        return py::make_tuple(r.value, r.argmax_t);
      },
      py::arg("u"), py::arg("v"), py::arg("prior"));

  m.def(
      "extended_model_json",
      [](int k, int coverage, int nu, double p, double q, double tau,
         const std::vector<double>& prior, int64_t exact_cap) {
        return cs::ExtendedSbmJson(
            cs::BuildExtendedSbm(k, coverage, nu, p, q, tau, Prior(prior), exact_cap));
      },
      py::arg("k_communities"), py::arg("coverage"), py::arg("nu"), py::arg("p"), py::arg("q"),
      py::arg("tau"), py::arg("prior") = std::vector<double>{},
      py::arg("exact_cap") = cs::kDefaultExactCap);

  m.def(
      "u_matrix",
      [](int k, int coverage, int nu, double p, double q, double tau,
         const std::vector<double>& prior, int64_t exact_cap) {
        return cs::BuildExtendedSbm(k, coverage, nu, p, q, tau, Prior(prior), exact_cap).u_mean;
      },
      py::arg("k_communities"), py::arg("coverage"), py::arg("nu"), py::arg("p"), py::arg("q"),
      py::arg("tau"), py::arg("prior") = std::vector<double>{},
      py::arg("exact_cap") = cs::kDefaultExactCap);

  m.def(
      "conu_bound_json",
      [](int k, int coverage, int nu, double p, double q, double tau, int l,
         const std::vector<double>& prior, int64_t exact_cap) {
        const auto model = cs::BuildExtendedSbm(k, coverage, nu, p, q, tau, Prior(prior), exact_cap);
        return cs::CoNuBoundReport(model, l).ToJson().dump();
      },
      py::arg("k_communities"), py::arg("coverage"), py::arg("nu"), py::arg("p"), py::arg("q"),
      py::arg("tau"), py::arg("l"), py::arg("prior") = std::vector<double>{},
      py::arg("exact_cap") = cs::kDefaultExactCap);

  m.def(
      "co1_bound_json",
      [](int64_t l, int k, double renyi) { return cs::Co1ErrorBound(l, k, renyi).ToJson().dump(); },
      py::arg("l"), py::arg("k_communities"), py::arg("renyi"));

  m.def(
      "threshold_constants",
      [](double alpha, double beta, int nu, double tau, double rho_bar) {
        return cs::ComputeThresholdConstants(alpha, beta, nu, tau, rho_bar).AsMap();
      },
      py::arg("alpha"), py::arg("beta"), py::arg("nu"), py::arg("tau"), py::arg("rho_bar"));

  m.def(
      "check_conu_recovery_json",
      [](int coverage, double rho, int64_t l, int64_t n, double alpha, double beta, int nu,
         double tau, double rho_bar) {
        const auto c = cs::ComputeThresholdConstants(alpha, beta, nu, tau, rho_bar);
        return cs::CheckCoNuRecovery(coverage, rho, l, n, c).ToJson().dump();
      },
      py::arg("coverage"), py::arg("rho"), py::arg("l"), py::arg("n"), py::arg("alpha"),
      py::arg("beta"), py::arg("nu"), py::arg("tau"), py::arg("rho_bar"));

  m.def(
      "run_bound_sweep",
      [](const std::map<std::string, std::string>& config) {
        return cs::RunBoundSweep(ConfigFromMap(config)).ToString();
      },
      py::arg("config"));

  m.def(
      "run_mc",
      [](const std::map<std::string, std::string>& config, int threads) {
        const cs::ExperimentConfig c = ConfigFromMap(config);
        py::gil_scoped_release release;
        return cs::RunMcExperiment(c, threads).ToString();
      },
      py::arg("config"), py::arg("threads") = 0);

  m.def(
      "run_regimes",
      [](const std::map<std::string, std::string>& config) {
        const cs::RegimeReport r = cs::RunRegimeReport(ConfigFromMap(config));
        return py::make_tuple(r.table.ToString(), r.json.dump());
      },
      py::arg("config"));

  m.def(
      "selftest",
      [](uint64_t seed) {
        py::list out;
        for (const auto& r : cs::RunSelfTests(seed)) out.append(py::make_tuple(r.name, r.passed, r.detail));
        return out;
      },
      py::arg("seed") = 7);
}
