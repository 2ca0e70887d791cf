#include "rmtlab/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>
#include <utility>

#include "rmtlab/eigensolver.hpp"
#include "rmtlab/errors.hpp"
#include "rmtlab/numerics.hpp"

namespace rmt {

std::string to_string(TailEvent event) {
  return event == TailEvent::lambda_max_ge_K ? "lambda_max_ge_K" : "row_norm_ge_Kn";
}

ConfidenceInterval clopper_pearson(std::int64_t successes, std::int64_t trials,
                                   double confidence) {
  if (trials < 1 || successes < 0 || successes > trials) {
    throw PreconditionError("clopper_pearson: need 0 <= successes <= trials");
  }
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw PreconditionError("clopper_pearson: confidence must lie in (0, 1)");
  }
  const double half_alpha = 0.5 * (1.0 - confidence);

  // Bisection on p of the (monotone in p) binomial CDF.
  auto solve = [&](std::int64_t k, double target) {
    double lo = 0.0, hi = 1.0;
    for (int iter = 0; iter < 200 && hi - lo > 1e-16; ++iter) {
      const double mid = 0.5 * (lo + hi);
      // CDF decreases in p.
      (num::binomial_cdf(k, trials, mid) > target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };

  ConfidenceInterval ci;
  ci.low = successes == 0 ? 0.0 : solve(successes - 1, 1.0 - half_alpha);
  ci.high = successes == trials ? 1.0 : solve(successes, half_alpha);
  return ci;
}

int default_thread_count() {
  if (const char* env = std::getenv("RMT_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

TailEstimate estimate_event(std::span<const TrialStatistics> stats, TailEvent event,
                            double K, int n, double confidence) {
  std::int64_t successes = 0;
  for (const TrialStatistics& t : stats) {
    const bool hit = event == TailEvent::lambda_max_ge_K
                         ? t.lambda_max >= K
                         : t.max_row_sq_norm >= K * static_cast<double>(n);
    successes += hit ? 1 : 0;
  }
  TailEstimate est;
  est.event = event;
  est.successes = successes;
  est.trials = static_cast<std::int64_t>(stats.size());
  est.p_hat = static_cast<double>(successes) / static_cast<double>(est.trials);
  const ConfidenceInterval ci = clopper_pearson(successes, est.trials, confidence);
  est.ci_low = ci.low;
  est.ci_high = ci.high;
  est.confidence = confidence;
  return est;
}

RunResult run_trials(const EnsembleConfig& config, double K, std::int64_t trials,
                     double confidence, int threads) {
  config.validate();
  if (!(K >= 1.0)) {
    throw PreconditionError("run_trials: K must be >= 1");
  }
  if (trials < 1) {
    throw PreconditionError("run_trials: need trials >= 1");
  }

  std::vector<TrialStatistics> stats(static_cast<std::size_t>(trials));
  std::atomic<std::int64_t> next{0};
  std::mutex error_mutex;
  std::optional<std::pair<std::int64_t, std::string>> first_error;

  auto worker = [&]() {
    for (;;) {
      const std::int64_t idx = next.fetch_add(1);
      if (idx >= trials) return;
      try {
        const Eigen::MatrixXd W = sample_matrix(config, idx);
        const double row_sq = max_row_sq_norm(W);
        const double lmax = lambda_max(covariance(W, config.n));
        const double floor = row_sq / static_cast<double>(config.n);
        if (lmax < floor * (1.0 - 1e-10)) {
          std::ostringstream msg;
          msg << "lambda_max " << lmax << " fell below max row norm floor " << floor;
          throw Error(msg.str());
        }
        stats[static_cast<std::size_t>(idx)] = TrialStatistics{idx, lmax, row_sq};
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error || idx < first_error->first) {
          first_error = {idx, e.what()};
        }
      }
    }
  };

  int worker_count = threads > 0 ? threads : default_thread_count();
  worker_count = static_cast<int>(
      std::min<std::int64_t>(worker_count, trials));
  if (worker_count <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(worker_count);
    for (int i = 0; i < worker_count; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  if (first_error) {
    std::ostringstream msg;
    msg << "run_trials: trial " << first_error->first << " failed: "
        << first_error->second;
    throw Error(msg.str());
  }

  RunResult result;
  result.row_norm =
      estimate_event(stats, TailEvent::row_norm_ge_Kn, K, config.n, confidence);
  result.lambda =
      estimate_event(stats, TailEvent::lambda_max_ge_K, K, config.n, confidence);
  result.trials = std::move(stats);
  return result;
}

VerificationVerdict verify_bound(const EnsembleConfig& config, double K,
                                 std::int64_t trials, double confidence,
                                 int threads) {
  config.validate();
  if (config.spec.kind == DistributionKind::truncated_pareto_symmetric) {
    const double needed = std::sqrt(static_cast<double>(config.n) * K);
    if (needed > config.spec.t_max) {
      std::ostringstream msg;
      msg << "verify_bound: the heavy-tail floor is only guaranteed up to t_max = "
          << config.spec.t_max << " but this cell needs sqrt(nK) = " << needed;
      throw PreconditionError(msg.str());
    }
  }

  VerificationVerdict verdict;
  verdict.bound_report = make_bound_report(config.p, config.n, K, config.spec);
  RunResult run = run_trials(config, K, trials, confidence, threads);
  verdict.row_norm = run.row_norm;
  verdict.lambda = run.lambda;
  verdict.margin = std::min(verdict.row_norm.ci_high, verdict.lambda.ci_high) -
                   verdict.bound_report.proposition_bound;
  verdict.pass = verdict.margin >= 0.0;
  return verdict;
}

}  // namespace rmt
