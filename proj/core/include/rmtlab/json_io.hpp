#pragma once

#include <string>

#include "rmtlab/bounds.hpp"
#include "rmtlab/distributions.hpp"
#include "rmtlab/ensemble.hpp"
#include "rmtlab/monte_carlo.hpp"

namespace rmt {

/// One flat object with exactly the keys
/// p, n, K, q, proposition_bound, bonferroni_bound, chain_bound, case_label,
/// silverstein_limit.
std::string to_json(const BoundReport& report);

/// Flat spec record (kind, alpha, c0, t_min, t_max); non-finite or absent
/// parameters are omitted.
std::string to_json(const DistributionSpec& spec);

std::string to_json(const TailEstimate& estimate);

std::string to_json(const VerificationVerdict& verdict);

/// One JSON-lines record for a single trial.
std::string trial_to_json_line(const TrialStatistics& trial);

}  // namespace rmt
