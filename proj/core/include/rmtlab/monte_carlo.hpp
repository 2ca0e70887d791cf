#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rmtlab/bounds.hpp"
#include "rmtlab/ensemble.hpp"

namespace rmt {

enum class TailEvent { lambda_max_ge_K, row_norm_ge_Kn };

std::string to_string(TailEvent event);

/// Monte Carlo tail probability with an exact binomial confidence interval.
struct TailEstimate {
  TailEvent event = TailEvent::lambda_max_ge_K;
  std::int64_t successes = 0;
  std::int64_t trials = 0;
  double p_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 1.0;
  double confidence = 0.0;
};

struct ConfidenceInterval {
  double low = 0.0;
  double high = 1.0;
};

/// Exact two-sided Clopper-Pearson interval, computed by bisection on the
/// binomial CDF. low = 0 when successes = 0 and high = 1 when successes =
/// trials, by convention.
ConfidenceInterval clopper_pearson(std::int64_t successes, std::int64_t trials,
                                   double confidence);

/// Worker count: RMT_THREADS when set (clamped to >= 1), else the hardware
/// concurrency.
int default_thread_count();

struct RunResult {
  std::vector<TrialStatistics> trials;  // ordered by trial index
  TailEstimate row_norm;                // {max_row_sq_norm >= K n}
  TailEstimate lambda;                  // {lambda_max >= K}
};

/// Execute independent trials (sample -> covariance -> lambda_max / row norm),
/// count both tail events at threshold K, and attach Clopper-Pearson
/// intervals. Per-trial results are bit-identical for fixed inputs under any
/// thread count; eigensolver failures abort with the smallest failing trial
/// index. Every trial is checked against lambda_max >= max_row_sq_norm / n
/// (1e-10 relative).
RunResult run_trials(const EnsembleConfig& config, double K, std::int64_t trials,
                     double confidence = 0.999, int threads = 0);

/// Re-evaluate one event over retained statistics at a (possibly different)
/// threshold K; this is what makes K-sweeps reuse a single simulation.
TailEstimate estimate_event(std::span<const TrialStatistics> stats, TailEvent event,
                            double K, int n, double confidence);

/// Theory vs experiment at one grid cell.
struct VerificationVerdict {
  BoundReport bound_report;
  TailEstimate row_norm;
  TailEstimate lambda;
  double margin = 0.0;  // min over events of ci_high - proposition_bound
  bool pass = false;    // margin >= 0
};

/// Compute the BoundReport, run the trials, and pass iff the proposition
/// bound does not exceed the Clopper-Pearson upper endpoint for BOTH events.
/// Truncated specs must cover the needed range: sqrt(nK) <= t_max.
VerificationVerdict verify_bound(const EnsembleConfig& config, double K,
                                 std::int64_t trials, double confidence = 0.999,
                                 int threads = 0);

}  // namespace rmt
