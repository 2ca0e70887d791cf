#include "grid.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "rmtlab/errors.hpp"
#include "rmtlab/rng.hpp"

namespace rmt::cli {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

DistributionSpec spec_for(double alpha, const std::optional<double>& t_max) {
  if (t_max) return calibrate_truncated_pareto(alpha, *t_max);
  return calibrate_pareto(alpha);
}

}  // namespace

std::uint64_t cell_seed(std::uint64_t master_seed, std::int64_t cell_index) {
  return mix64(mix64(master_seed + 0x9E3779B97F4A7C15ULL) ^
               mix64(static_cast<std::uint64_t>(cell_index) + 0xCE11CE11CE11CE11ULL));
}

GridConfig GridConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("grid: invalid JSON: ") + e.what());
  }
  GridConfig config;
  try {
    config.alphas = j.at("alphas").get<std::vector<double>>();
    for (const auto& d : j.at("dims")) {
      config.dims.emplace_back(d.at(0).get<int>(), d.at(1).get<int>());
    }
    config.Ks = j.at("Ks").get<std::vector<double>>();
    config.trials = j.at("trials").get<std::int64_t>();
    config.confidence = j.at("confidence").get<double>();
    config.master_seed = j.at("master_seed").get<std::uint64_t>();
    if (j.contains("t_max")) config.t_max = j.at("t_max").get<double>();
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("grid: missing or mistyped field: ") + e.what());
  }
  return config;
}

std::string GridConfig::to_json_text() const {
  json j;
  j["alphas"] = alphas;
  json dims_json = json::array();
  for (const auto& [p, n] : dims) dims_json.push_back({p, n});
  j["dims"] = dims_json;
  j["Ks"] = Ks;
  j["trials"] = trials;
  j["confidence"] = confidence;
  j["master_seed"] = master_seed;
  if (t_max) j["t_max"] = *t_max;
  return j.dump(2);
}

void GridConfig::validate() const {
  if (alphas.empty() || dims.empty() || Ks.empty()) {
    throw PreconditionError("grid: alphas, dims and Ks must be non-empty");
  }
  if (trials < 1) throw PreconditionError("grid: trials must be >= 1");
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw PreconditionError("grid: confidence must lie in (0, 1)");
  }
  for (const auto& [p, n] : dims) {
    if (p < 1 || n < 1 || p > n) {
      std::ostringstream msg;
      msg << "grid: dims entry (" << p << ", " << n << ") violates 0 < p <= n";
      throw PreconditionError(msg.str());
    }
  }
  for (double K : Ks) {
    if (!(K >= 1.0)) {
      std::ostringstream msg;
      msg << "grid: K = " << K << " violates K >= 1";
      throw PreconditionError(msg.str());
    }
  }
  if (t_max) {
    for (double alpha : alphas) {
      for (const auto& [p, n] : dims) {
        for (double K : Ks) {
          if (std::sqrt(static_cast<double>(n) * K) > *t_max) {
            std::ostringstream msg;
            msg << "grid: cell (alpha=" << alpha << ", p=" << p << ", n=" << n
                << ", K=" << K << ") needs sqrt(nK) = "
                << std::sqrt(static_cast<double>(n) * K)
                << " beyond the truncation limit t_max = " << *t_max;
            throw PreconditionError(msg.str());
          }
        }
      }
    }
  }
}

GridOutcome run_grid(const GridConfig& config, int threads) {
  config.validate();
  GridOutcome outcome;
  std::int64_t cell_index = 0;
  for (double alpha : config.alphas) {
    const DistributionSpec spec = spec_for(alpha, config.t_max);
    for (const auto& [p, n] : config.dims) {
      for (double K : config.Ks) {
        EnsembleConfig ensemble;
        ensemble.p = p;
        ensemble.n = n;
        ensemble.spec = spec;
        ensemble.master_seed = cell_seed(config.master_seed, cell_index);
        ++cell_index;

        RunResult run = run_trials(ensemble, K, config.trials, config.confidence, threads);

        VerificationVerdict verdict;
        verdict.bound_report = make_bound_report(p, n, K, spec);
        verdict.row_norm = run.row_norm;
        verdict.lambda = run.lambda;
        verdict.margin = std::min(run.row_norm.ci_high, run.lambda.ci_high) -
                         verdict.bound_report.proposition_bound;
        verdict.pass = verdict.margin >= 0.0;

        // Independent re-check of the closing inequality over retained stats.
        for (const TrialStatistics& t : run.trials) {
          const double floor = t.max_row_sq_norm / static_cast<double>(n);
          if (t.lambda_max < floor * (1.0 - 1e-10)) ++outcome.closing_violations;
        }
        outcome.total_trials += static_cast<std::int64_t>(run.trials.size());
        outcome.all_pass = outcome.all_pass && verdict.pass;
        outcome.cells.push_back(GridCell{alpha, std::move(verdict)});
      }
    }
  }
  return outcome;
}

std::string grid_csv(const GridOutcome& outcome) {
  std::string csv = "p,n,K,alpha,bound,p_hat_row,p_hat_lambda,ci_high,pass\n";
  for (const GridCell& cell : outcome.cells) {
    const BoundReport& r = cell.verdict.bound_report;
    const double ci_high = std::min(cell.verdict.row_norm.ci_high,
                                    cell.verdict.lambda.ci_high);
    csv += std::to_string(r.p) + "," + std::to_string(r.n) + "," + fmt17(r.K) + "," +
           fmt17(cell.alpha) + "," + fmt17(r.proposition_bound) + "," +
           fmt17(cell.verdict.row_norm.p_hat) + "," + fmt17(cell.verdict.lambda.p_hat) +
           "," + fmt17(ci_high) + "," + (cell.verdict.pass ? "true" : "false") + "\n";
  }
  return csv;
}

std::string grid_json(const GridOutcome& outcome) {
  json cells = json::array();
  for (const GridCell& cell : outcome.cells) {
    const BoundReport& r = cell.verdict.bound_report;
    cells.push_back({{"p", r.p},
                     {"n", r.n},
                     {"K", r.K},
                     {"alpha", cell.alpha},
                     {"bound", r.proposition_bound},
                     {"p_hat_row", cell.verdict.row_norm.p_hat},
                     {"p_hat_lambda", cell.verdict.lambda.p_hat},
                     {"ci_high", std::min(cell.verdict.row_norm.ci_high,
                                          cell.verdict.lambda.ci_high)},
                     {"pass", cell.verdict.pass},
                     {"margin", cell.verdict.margin}});
  }
  json j{{"cells", cells},
         {"total_trials", outcome.total_trials},
         {"closing_violations", outcome.closing_violations},
         {"all_pass", outcome.all_pass}};
  return j.dump(2);
}

}  // namespace rmt::cli
