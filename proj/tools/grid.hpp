#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rmtlab/monte_carlo.hpp"

namespace rmt::cli {

/// A verification grid: the cross product alphas x dims x Ks, one Monte Carlo
/// run per cell. When t_max is present every alpha uses the upper-truncated
/// law (required for alpha = 2); otherwise the canonical Pareto.
struct GridConfig {
  std::vector<double> alphas;
  std::vector<std::pair<int, int>> dims;  // (p, n)
  std::vector<double> Ks;
  std::int64_t trials = 0;
  double confidence = 0.999;
  std::uint64_t master_seed = 0;
  std::optional<double> t_max;

  static GridConfig from_json_text(const std::string& text);
  std::string to_json_text() const;

  /// Throws PreconditionError on structural problems (empty lists, p > n,
  /// K < 1, bad confidence) and on cells outside a truncated law's guaranteed
  /// range (sqrt(nK) > t_max), naming the offending cell.
  void validate() const;
};

struct GridCell {
  double alpha = 0.0;
  VerificationVerdict verdict;
};

struct GridOutcome {
  std::vector<GridCell> cells;
  std::int64_t total_trials = 0;
  std::int64_t closing_violations = 0;  // lambda_max < max_row_sq_norm/n re-checks
  bool all_pass = true;
};

/// Run every cell. Cells derive independent trial streams from
/// (master_seed, cell index), so no two cells share matrices and reruns are
/// bit-identical.
GridOutcome run_grid(const GridConfig& config, int threads = 0);

/// One row per cell: p,n,K,alpha,bound,p_hat_row,p_hat_lambda,ci_high,pass.
/// ci_high is the binding (smaller) endpoint over the two events. Doubles are
/// printed with 17 significant digits so reruns are byte-comparable.
std::string grid_csv(const GridOutcome& outcome);

/// JSON mirror of the CSV rows (same values, plus the verdict margin).
std::string grid_json(const GridOutcome& outcome);

/// Deterministic per-cell seed derivation, shared with tests.
std::uint64_t cell_seed(std::uint64_t master_seed, std::int64_t cell_index);

}  // namespace rmt::cli
