#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "rmtlab/distributions.hpp"

namespace rmt {

/// One matrix ensemble: dimensions, entry law and master seed.
///
/// p <= n is required (for p > n work with the transpose: W^T W / p has the
/// same nonzero spectrum). Trial t draws its entries from the substream
/// (master_seed, t), so trials are independent and schedule-free.
struct EnsembleConfig {
  int p = 0;
  int n = 0;
  DistributionSpec spec;
  std::uint64_t master_seed = 0;
  std::size_t max_bytes = std::size_t{1} << 30;  // memory budget for one matrix

  void validate() const;
};

/// Per-trial outputs retained for event re-evaluation at any threshold K.
struct TrialStatistics {
  std::int64_t trial_index = 0;
  double lambda_max = 0.0;
  double max_row_sq_norm = 0.0;
};

/// Draw the p x n entry matrix of one trial; bit-reproducible for fixed
/// (config, trial_index) and any call order.
Eigen::MatrixXd sample_matrix(const EnsembleConfig& config, std::int64_t trial_index);

/// Sample covariance (1/n) W W^T, explicitly symmetrized so downstream
/// eigen-analysis never sees accumulation-order asymmetry.
Eigen::MatrixXd covariance(const Eigen::MatrixXd& W, int n);

/// max over rows i of sum_j W(i,j)^2.
double max_row_sq_norm(const Eigen::MatrixXd& W);

}  // namespace rmt
