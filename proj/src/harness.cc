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

#include "coarse_sbm/harness.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "coarse_sbm/bounds.h"
#include "coarse_sbm/errors.h"
#include "coarse_sbm/extended_model.h"
#include "coarse_sbm/recovery.h"
#include "coarse_sbm/regimes.h"
#include "coarse_sbm/rng.h"

namespace coarse_sbm {
namespace {

constexpr double kZ95 = 1.96;

std::vector<double> PriorWeights(const ExperimentConfig& c) {
  if (c.prior.kind == PriorSpec::Kind::kExplicit) return c.prior.weights;
  const auto size = ExtendedCommunityCount(c.k_communities, c.nu);
  return std::vector<double>(static_cast<size_t>(size), 1.0 / static_cast<double>(size));
}

SsbmParams Params(const ExperimentConfig& c) {
  return {c.n, c.k_communities, c.alpha, c.beta, c.rho};
}

void RequireFeasible(const ExperimentConfig& c, int l, int coverage) {
  Require(static_cast<int64_t>(l) * coverage <= c.n, ErrorCode::kInfeasible,
          "L * k = " + std::to_string(static_cast<int64_t>(l) * coverage) +
              " exceeds N = " + std::to_string(c.n));
}

// Parameter columns shared by every sweep table.
std::vector<std::string> EchoHeader() {
  return {"n", "k_communities", "alpha", "beta", "rho", "p", "q", "nu", "tau",
          "prior_kind", "exact_dp_cap", "l", "coverage"};
}

std::vector<std::string> EchoRow(const ExperimentConfig& c, int l, int coverage) {
  return {std::to_string(c.n),
          std::to_string(c.k_communities),
          FormatDouble(c.alpha),
          FormatDouble(c.beta),
          FormatDouble(c.rho),
          FormatDouble(c.p()),
          FormatDouble(c.q()),
          std::to_string(c.nu),
          FormatDouble(c.tau),
          c.prior.kind == PriorSpec::Kind::kUniform ? "uniform" : "explicit",
          std::to_string(c.exact_dp_cap),
          std::to_string(l),
          std::to_string(coverage)};
}

ExtendedSbm ModelFor(const ExperimentConfig& c, int coverage) {
  return BuildExtendedSbm(c.k_communities, coverage, c.nu, c.p(), c.q(), c.tau, c.prior,
                          c.exact_dp_cap);
}

template <typename Fn>
void ParallelFor(int count, int threads, Fn&& fn) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      while (true) {
        const int i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
          next.store(count);
        }
      }
    });
  }
  for (std::thread& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

struct TrialOutcome {
  bool map_failed = false;
  double map_error = 0.0;
  bool spectral_failed = false;
  double spectral_error = 0.0;
};

struct RateSummary {
  double failure = std::numeric_limits<double>::quiet_NaN();
  double failure_ci = std::numeric_limits<double>::quiet_NaN();
  double node_error = std::numeric_limits<double>::quiet_NaN();
  double node_error_ci = std::numeric_limits<double>::quiet_NaN();
};

RateSummary Summarize(const std::vector<bool>& failed, const std::vector<double>& errors) {
  RateSummary s;
  const double n = static_cast<double>(failed.size());
  if (failed.empty()) return s;
  const double fails = static_cast<double>(std::count(failed.begin(), failed.end(), true));
  s.failure = fails / n;
  s.failure_ci = kZ95 * std::sqrt(s.failure * (1.0 - s.failure) / n);
  double sum = 0.0;
  for (double e : errors) sum += e;
  s.node_error = sum / n;
  double ss = 0.0;
  for (double e : errors) ss += (e - s.node_error) * (e - s.node_error);
  const double var = failed.size() > 1 ? ss / (n - 1.0) : 0.0;
  s.node_error_ci = kZ95 * std::sqrt(var / n);
  return s;
}

std::string WriteFile(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  Require(out.good(), ErrorCode::kIoError, "cannot write '" + path.string() + "'");
  out << content;
  return path.string();
}

}  // namespace

std::string CsvTable::ToString() const {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out += ',';
      // Free text may contain commas or quotes.
      if (cells[i].find_first_of(",\"") == std::string::npos) {
        out += cells[i];
        continue;
      }
      out += '"';
      for (char c : cells[i]) out += c == '"' ? std::string("\"\"") : std::string(1, c);
      out += '"';
    }
    out += '\n';
  };
  line(header);
  for (const auto& row : rows) line(row);
  return out;
}

size_t CsvTable::Column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  Require(it != header.end(), ErrorCode::kInvalidArgument, "no column '" + name + "'");
  return static_cast<size_t>(it - header.begin());
}

uint64_t TrialSeed(uint64_t master_seed, int trial) {
  return DeriveSeed(master_seed, streams::kTrial, static_cast<uint64_t>(trial));
}

Instance SampleInstance(const ExperimentConfig& c, int l, int coverage,
                        uint64_t trial_seed) {
  RequireFeasible(c, l, coverage);
  const SsbmParams params = Params(c);
  const std::vector<double> prior = PriorWeights(c);
  Instance out;
  if (c.sampler == Sampler::kDirect) {
    out.truth = SampleProfileMatrix(c.k_communities, coverage, c.nu, l, prior, trial_seed);
    out.coarse = SampleCoarseDirect(params, out.truth, coverage, trial_seed);
    return out;
  }
  const CommunityAssignment assignment = SampleAssignment(params, trial_seed);
  const PlanResult plan =
      BuildPlan(c.n, l, coverage, c.nu, PlanTarget(prior), assignment, trial_seed);
  const std::vector<int64_t> support = plan.plan.AllSupportNodes();
  out.fine = SampleFineGraphRestricted(params, assignment, support, trial_seed);
  out.coarse = Coarsen(*out.fine, plan.plan);
  out.truth = plan.profile;
  out.coarse.truth = plan.profile;
  return out;
}

CsvTable RunBoundSweep(const ExperimentConfig& c) {
  c.Validate();
  CsvTable table;
  table.header = EchoHeader();
  for (const char* col : {"u_method", "bound_mean", "bound_lower", "bound_upper",
                          "bound_u_lower", "bound_u_upper", "raw_u_mean",
                          "raw_u_lower", "raw_u_upper"}) {
    table.header.push_back(col);
  }
  for (int coverage : c.coverage_values) {
    for (int l : c.l_values) RequireFeasible(c, l, coverage);
  }
  for (int coverage : c.coverage_values) {
    const ExtendedSbm model = ModelFor(c, coverage);
    for (int l : c.l_values) {
      const BoundReport report = CoNuBoundReport(model, l);
      std::vector<std::string> row = EchoRow(c, l, coverage);
      row.push_back(std::string(TailMethodName(model.method)));
      row.push_back(FormatDouble(report.bound_mean));
      row.push_back(FormatDouble(report.bound_lower));
      row.push_back(FormatDouble(report.bound_upper));
      row.push_back(FormatDouble(report.Variant(UVariant::kLower).clamped));
      row.push_back(FormatDouble(report.Variant(UVariant::kUpper).clamped));
      for (UVariant v : {UVariant::kMean, UVariant::kLower, UVariant::kUpper}) {
        row.push_back(FormatDouble(report.Variant(v).raw));
      }
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

CsvTable RunMcExperiment(const ExperimentConfig& c, int threads) {
  c.Validate();
  if (threads <= 0) threads = ThreadCountFromEnv();
  CsvTable table;
  table.header = EchoHeader();
  for (const char* col :
       {"trials", "seed", "sampler", "u_method", "bound_u_mean", "bound_u_lower",
        "bound_u_upper", "map_run", "map_failure", "map_failure_ci", "map_node_error",
        "map_node_error_ci", "spectral_failure", "spectral_failure_ci",
        "spectral_node_error", "spectral_node_error_ci"}) {
    table.header.push_back(col);
  }
  if (c.trials == 0) return table;
  for (int coverage : c.coverage_values) {
    for (int l : c.l_values) RequireFeasible(c, l, coverage);
  }

  for (int coverage : c.coverage_values) {
    const ExtendedSbm model = ModelFor(c, coverage);
    for (int l : c.l_values) {
      // K_nu^L against the cap, without overflow.
      bool map_ok = true;
      int64_t labelings = 1;
      for (int i = 0; i < l && map_ok; ++i) {
        labelings *= model.size();
        map_ok = labelings <= c.enumeration_cap;
      }
      const bool spectral_ok = l >= model.size();
      std::vector<TrialOutcome> outcomes(static_cast<size_t>(c.trials));
      ParallelFor(c.trials, threads, [&](int t) {
        const uint64_t seed = TrialSeed(c.seed, t);
        const Instance inst = SampleInstance(c, l, coverage, seed);
        const BinarizedGraph bin = Binarize(inst.coarse, c.p(), c.q(), c.tau);
        TrialOutcome& out = outcomes[static_cast<size_t>(t)];
        if (map_ok) {
          const ProfileEstimate est = MapExhaustive(bin, model, c.enumeration_cap);
          const EvalResult ev = Evaluate(est, inst.truth, model.profiles);
          out.map_failed = !ev.exact_recovery;
          out.map_error = ev.node_error_rate;
        }
        if (spectral_ok) {
          SpectralOptions opts;
          opts.seed = seed;
          const ProfileEstimate est = SpectralBaseline(bin, model, opts);
          const EvalResult ev = Evaluate(est, inst.truth, model.profiles);
          out.spectral_failed = !ev.exact_recovery;
          out.spectral_error = ev.node_error_rate;
        }
      });

      std::vector<bool> map_failed, spectral_failed;
      std::vector<double> map_err, spectral_err;
      for (const TrialOutcome& o : outcomes) {
        if (map_ok) {
          map_failed.push_back(o.map_failed);
          map_err.push_back(o.map_error);
        }
        if (spectral_ok) {
          spectral_failed.push_back(o.spectral_failed);
          spectral_err.push_back(o.spectral_error);
        }
      }
      const RateSummary map = Summarize(map_failed, map_err);
      const RateSummary spectral = Summarize(spectral_failed, spectral_err);
      const BoundReport bound = CoNuBoundReport(model, l);

      std::vector<std::string> row = EchoRow(c, l, coverage);
      row.push_back(std::to_string(c.trials));
      row.push_back(std::to_string(c.seed));
      row.push_back(c.sampler == Sampler::kDirect ? "direct" : "two-stage");
      row.push_back(std::string(TailMethodName(model.method)));
      for (UVariant v : {UVariant::kMean, UVariant::kLower, UVariant::kUpper}) {
        row.push_back(FormatDouble(bound.Variant(v).clamped));
      }
      row.push_back(map_ok ? "1" : "0");
      for (const RateSummary* s : {&map, &spectral}) {
        row.push_back(FormatDouble(s->failure));
        row.push_back(FormatDouble(s->failure_ci));
        row.push_back(FormatDouble(s->node_error));
        row.push_back(FormatDouble(s->node_error_ci));
      }
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

RegimeReport RunRegimeReport(const ExperimentConfig& c) {
  c.Validate();
  std::vector<RegimeTable> tables;
  if (c.regimes_table != "co1") tables.push_back(RegimeTable::kCoNu);
  if (c.regimes_table != "co_nu") tables.push_back(RegimeTable::kCo1);

  struct Row {
    std::string label;
    std::string rho_coarse;
    std::string rho;
    std::string k;
    std::optional<RegimeInput> input;
    std::string error;
  };

  RegimeReport report;
  report.table.header = {"table",   "label",      "rho_coarse", "rho",     "k",
                         "verdict", "rho_block",  "k_row",      "classic", "conditions",
                         "all_hold", "error"};
  report.json = nlohmann::json::array();

  for (RegimeTable table : tables) {
    std::vector<Row> rows;
    if (c.regimes_rho_coarse.empty()) {
      for (const RegimePreset& preset : CanonicalRegimePresets(table)) {
        rows.push_back({preset.label, preset.input.rho_coarse.ToString(),
                        preset.input.rho.ToString(), preset.input.coverage.ToString(),
                        preset.input, ""});
      }
    } else {
      const size_t count = c.regimes_rho_coarse.size();
      Require(c.regimes_k.size() == count, ErrorCode::kConfigError,
              "regimes.k needs one entry per regimes.rho_coarse entry");
      Require(c.regimes_rho.size() == 1 || c.regimes_rho.size() == count,
              ErrorCode::kConfigError,
              "regimes.rho needs one entry or one per regimes.rho_coarse entry");
      for (size_t i = 0; i < count; ++i) {
        Row row;
        row.label = "row " + std::to_string(i + 1);
        row.rho_coarse = c.regimes_rho_coarse[i];
        row.rho = c.regimes_rho.size() == 1 ? c.regimes_rho[0] : c.regimes_rho[i];
        row.k = c.regimes_k[i];
        try {
          RegimeInput in;
          in.table = table;
          in.rho = ParseMonomial(row.rho);
          in.rho_coarse = ParseMonomial(row.rho_coarse, in.rho);
          in.coverage = ParseMonomial(row.k, in.rho);
          row.input = in;
        } catch (const Error& e) {
          row.error = e.what();
        }
        rows.push_back(std::move(row));
      }
    }

    for (Row& row : rows) {
      nlohmann::json entry = {{"table", std::string(RegimeTableName(table))},
                              {"label", row.label},
                              {"rho_coarse", row.rho_coarse},
                              {"rho", row.rho},
                              {"k", row.k}};
      std::vector<std::string> cells = {std::string(RegimeTableName(table)), row.label,
                                        row.rho_coarse, row.rho, row.k};
      std::optional<RegimeVerdict> verdict;
      if (row.input) {
        RegimeInput in = *row.input;
        in.alpha = c.regimes_alpha;
        in.beta = c.regimes_beta;
        in.k_communities = c.regimes_k_communities;
        in.delta = c.regimes_delta;
        try {
          verdict = ClassifyRegime(in);
        } catch (const Error& e) {
          row.error = e.what();
        }
      }
      if (verdict) {
        std::string conds;
        for (size_t i = 0; i < verdict->conditions.size(); ++i) {
          const auto& ev = verdict->conditions[i].evaluated;
          conds += (i ? ";" : "") + std::string(!ev ? "unknown" : (*ev ? "true" : "false"));
        }
        const auto& all = verdict->all_hold;
        cells.insert(cells.end(), {verdict->VerdictText(), verdict->rho_block,
                                   verdict->k_row, verdict->classic, conds,
                                   !all ? "unknown" : (*all ? "true" : "false"), ""});
        entry.update(verdict->ToJson());
      } else {
        cells.insert(cells.end(), {"Unclassifiable", "", "", "", "", "unknown", row.error});
        entry["verdict"] = "Unclassifiable";
        entry["error"] = row.error;
      }
      report.table.rows.push_back(std::move(cells));
      report.json.push_back(std::move(entry));
    }
  }
  return report;
}

std::vector<std::string> GenerateInstance(const ExperimentConfig& c,
                                          const std::string& dir) {
  c.Validate();
  const int l = c.l_values.front();
  const int coverage = c.coverage_values.front();
  const Instance inst = SampleInstance(c, l, coverage, TrialSeed(c.seed, 0));
  const ExtendedSbm model = ModelFor(c, coverage);
  const BinarizedGraph bin = Binarize(inst.coarse, c.p(), c.q(), c.tau);

  std::filesystem::create_directories(dir);
  const std::filesystem::path root(dir);
  std::vector<std::string> paths;
  std::ostringstream coarse_csv;
  WriteCoarseCsv(inst.coarse, coarse_csv);
  paths.push_back(WriteFile(root / "coarse.csv", coarse_csv.str()));
  paths.push_back(WriteFile(root / "coarse.json", CoarseSidecarJson(inst.coarse)));
  std::string bin_csv = "i,j,edge\n";
  for (int i = 0; i < bin.l; ++i) {
    for (int j = 0; j < i; ++j) {
      bin_csv += std::to_string(i) + "," + std::to_string(j) + "," +
                 (bin.edge(i, j) ? "1" : "0") + "\n";
    }
  }
  paths.push_back(WriteFile(root / "binarized.csv", bin_csv));
  paths.push_back(WriteFile(root / "extended_model.json", ExtendedSbmJson(model)));
  if (inst.fine) {
    std::ostringstream edges;
    WriteEdgeList(*inst.fine, edges);
    paths.push_back(WriteFile(root / "fine_edges.txt", edges.str()));
  }
  return paths;
}

int ThreadCountFromEnv() {
  if (const char* env = std::getenv("COARSE_SBM_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace coarse_sbm
