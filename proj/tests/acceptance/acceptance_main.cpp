// Acceptance suite: every release-gating property, one pass/fail line each.
// Exit code is the number of failed criteria (0 = all green).
//
// Criterion 5 is expected to stay red: the linear step lemma
// (1-x)^p <= 1 - px/2 is false on part of [1/p, 2/p] for every p >= 3
// (counterexample: p = 3, x = 0.65 gives 0.042875 > 0.025), so a faithful
// sweep of that window cannot pass. The downstream bound chain does not
// depend on it; see the bounds suite for the end-to-end case-2 certificate.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "grid.hpp"
#include "rmtlab/bounds.hpp"
#include "rmtlab/eigensolver.hpp"
#include "rmtlab/ensemble.hpp"
#include "rmtlab/monte_carlo.hpp"
#include "rmtlab/numerics.hpp"
#include "rmtlab/proof_inequalities.hpp"

using namespace rmt;

namespace {

constexpr std::uint64_t kMasterSeed = 20250607;

cli::GridConfig desk_grid() {
  cli::GridConfig config;
  config.alphas = {2.5, 3.0, 4.0};
  config.dims = {{10, 100}, {50, 100}, {100, 100}, {50, 200}};
  config.Ks = {1.0, 2.0, 4.0};
  config.trials = 4000;
  config.confidence = 0.999;
  config.master_seed = kMasterSeed;
  return config;
}

struct Criterion {
  int id;
  std::string label;
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main() {
  std::vector<Criterion> results;
  const auto t_start = std::chrono::steady_clock::now();

  // Criteria 1-3 and 8 share the desk grid.
  const cli::GridConfig grid = desk_grid();
  const auto t_grid = std::chrono::steady_clock::now();
  const cli::GridOutcome first_run = cli::run_grid(grid);
  const double grid_seconds = seconds_since(t_grid);
  const std::string first_csv = cli::grid_csv(first_run);

  {  // 1: bound validity on every cell, both events.
    int failing = 0;
    for (const cli::GridCell& cell : first_run.cells) {
      if (!cell.verdict.pass) ++failing;
    }
    std::ostringstream detail;
    detail << first_run.cells.size() << " cells, " << first_run.total_trials
           << " trials, failing cells = " << failing << ", "
           << std::lround(grid_seconds) << "s";
    results.push_back({1, "bound validity grid (alpha x dims x K, 4000 trials, 99.9% CI)",
                       failing == 0, detail.str()});
  }

  {  // 2: proof-chain ordering in every cell.
    int violations = 0;
    for (const cli::GridCell& cell : first_run.cells) {
      const BoundReport& r = cell.verdict.bound_report;
      if (r.proposition_bound > r.chain_bound + 1e-12) ++violations;
      const double union_exact = -std::expm1(r.n * std::log1p(-r.q));
      if (r.bonferroni_bound > union_exact + 1e-12) ++violations;
    }
    std::ostringstream detail;
    detail << "ordering violations = " << violations << " across "
           << first_run.cells.size() << " cells";
    results.push_back({2, "proof-chain ordering (proposition <= chain, bonferroni <= union)",
                       violations == 0, detail.str()});
  }

  {  // 3: closing inequality across all simulated trials.
    std::ostringstream detail;
    detail << first_run.total_trials << " trials, violations = "
           << first_run.closing_violations;
    results.push_back({3, "closing inequality lambda_max >= max_row_sq_norm/n",
                       first_run.total_trials >= 144000 &&
                           first_run.closing_violations == 0,
                       detail.str()});
  }

  {  // 4: spectral-limit convergence for gaussian entries at beta = 1/4.
    const double beta = 0.25;
    const double limit = silverstein_limit(beta, 1.0);
    double err400 = 0.0, err1600 = 0.0;
    for (int n : {400, 1600}) {
      EnsembleConfig config;
      config.p = static_cast<int>(std::lround(beta * n));
      config.n = n;
      config.spec = gaussian_spec();
      config.master_seed = mix64(kMasterSeed ^ mix64(static_cast<std::uint64_t>(n)));
      const RunResult run = run_trials(config, 1.0, 50, 0.999);
      std::vector<double> lambdas;
      for (const TrialStatistics& t : run.trials) lambdas.push_back(t.lambda_max);
      const double med = num::median(std::move(lambdas));
      (n == 400 ? err400 : err1600) = std::fabs(med - limit) / limit;
    }
    const bool pass = err400 <= 0.10 && err1600 <= 0.05 && err1600 < err400;
    std::ostringstream detail;
    detail << "rel err n=400: " << err400 << " (<= 0.10), n=1600: " << err1600
           << " (<= 0.05), decreasing = " << (err1600 < err400 ? "yes" : "no");
    results.push_back({4, "silverstein convergence (gaussian, beta = 0.25)", pass,
                       detail.str()});
  }

  {  // 5: inequality sweeps at 1e5 samples, tolerance 1e-15.
    const SweepCertificate geo = sweep_geometric(100000, kMasterSeed);
    const SweepCertificate lin = sweep_linear(100000, kMasterSeed);
    std::ostringstream detail;
    detail << "geometric max violation = " << geo.max_violation
           << ", linear max violation = " << lin.max_violation
           << " (the linear lemma is false on (x_r(p), 2/p])";
    results.push_back({5, "inequality sweeps (1e5 samples, violation <= 1e-15)",
                       geo.pass && lin.pass, detail.str()});
  }

  {  // 6: iterative vs dense eigensolver on 200 seeded instances.
    double worst = 0.0;
    StreamRng rng(kMasterSeed, 0xACCE97ULL);
    for (int i = 0; i < 200; ++i) {
      const int p = 2 + static_cast<int>(rng.next_u64() % 63);  // p in [2, 64]
      EnsembleConfig config;
      config.p = p;
      config.n = p + 3 + static_cast<int>(rng.next_u64() % 40);
      config.spec = calibrate_pareto(3.0);
      config.master_seed = rng.next_u64();
      const Eigen::MatrixXd G = covariance(sample_matrix(config, 0), config.n);
      const double dense = lambda_max_jacobi(G);
      const double iterative = lambda_max_lanczos(G, 1e-10);
      worst = std::max(worst, std::fabs(dense - iterative) / std::max(dense, 1e-300));
    }
    std::ostringstream detail;
    detail << "200 instances p <= 64, worst relative gap = " << worst;
    results.push_back({6, "eigensolver oracle equivalence (1e-8 relative)",
                       worst <= 1e-8, detail.str()});
  }

  {  // 7: sampler calibration at N = 1e6 per alpha.
    bool pass = true;
    std::ostringstream detail;
    for (double alpha : {3.0, 4.0, 5.0}) {
      const DistributionSpec spec = calibrate_pareto(alpha);
      constexpr std::int64_t kN = 1000000;
      StreamRng rng(kMasterSeed, static_cast<std::uint64_t>(100 * alpha));
      std::vector<double> squares(kN);
      std::vector<double> magnitudes(kN);
      double mean = 0.0;
      for (std::int64_t i = 0; i < kN; ++i) {
        const double w = sample(spec, rng);
        mean += w;
        squares[static_cast<std::size_t>(i)] = w * w;
        magnitudes[static_cast<std::size_t>(i)] = std::fabs(w);
      }
      mean /= kN;
      const double mom = num::median_of_means(squares, 32);
      bool tails_ok = true;
      for (double t : {1.0, 2.0, 4.0, 8.0}) {
        const double q = spec.tail->c0 * std::pow(t, -alpha);
        std::int64_t hits = 0;
        for (double m : magnitudes) hits += m >= t ? 1 : 0;
        const double q_hat = static_cast<double>(hits) / kN;
        const double sigma_rel = std::sqrt(q * (1.0 - q) / kN) / q;
        if (q_hat < (1.0 - 4.0 * sigma_rel) * q) tails_ok = false;
      }
      const bool ok = std::fabs(mean) <= 0.005 && std::fabs(mom - 1.0) <= 0.05 && tails_ok;
      pass = pass && ok;
      detail << "alpha=" << alpha << " mean=" << mean << " mom_var=" << mom
             << (tails_ok ? "" : " tail-floor-violated") << (ok ? " ok; " : " FAIL; ");
    }
    results.push_back({7, "sampler calibration (1e6 draws per alpha)", pass, detail.str()});
  }

  {  // 8: byte-identical rerun of the verification grid.
    const cli::GridOutcome second_run = cli::run_grid(grid);
    const std::string second_csv = cli::grid_csv(second_run);
    const bool pass = second_csv == first_csv;
    std::ostringstream detail;
    detail << "CSV bytes " << first_csv.size() << " vs " << second_csv.size() << ", "
           << (pass ? "identical" : "DIFFER");
    results.push_back({8, "determinism: rerun yields byte-identical CSV", pass,
                       detail.str()});
  }

  int failures = 0;
  for (const Criterion& c : results) {
    failures += c.pass ? 0 : 1;
    std::printf("[%s] criterion %d: %s :: %s\n", c.pass ? "PASS" : "FAIL", c.id,
                c.label.c_str(), c.detail.c_str());
  }
  std::printf("%d/%zu criteria passed in %.0fs\n", static_cast<int>(results.size()) - failures,
              results.size(), seconds_since(t_start));
  return failures;
}
