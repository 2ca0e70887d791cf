#pragma once

#include <string>

#include "rmtlab/distributions.hpp"

namespace rmt {

/// Which branch of the proof applies: case1 when (n/2) q < 1/p, case2 when
/// (n/2) q >= 1/p (ties go to case2, matching the >= in the case-2 display).
enum class CaseLabel { case1, case2 };

std::string to_string(CaseLabel label);

/// Every closed-form quantity of the lower-bound theorem at one (p, n, K).
struct BoundReport {
  int p = 0;
  int n = 0;
  double K = 1.0;
  double q = 0.0;                  // P(w^2 >= nK)
  double proposition_bound = 0.0;  // min{ c0 p / (4 n^{a/2-1} K^{a/2}), 1/2 }
  double bonferroni_bound = 0.0;   // second-order inclusion-exclusion floor
  double chain_bound = 0.0;        // 1 - (1 - (n/2) q)^p, clamped
  CaseLabel case_label = CaseLabel::case1;
  double silverstein_limit = 0.0;  // (1 + sqrt(p/n))^2 * variance
};

/// min{ c0 p / (4 n^{alpha/2 - 1} K^{alpha/2}), 1/2 }. Requires K >= 1 (the
/// theorem's hypothesis) and p <= n.
double proposition_lower_bound(int p, int n, double K, const TailCondition& tail);

/// Second-order Bonferroni floor for the union of n independent events of
/// probability q: max{0, (n/2) q (2 - (n-1) q)}. The raw expression goes
/// negative for large q; 0 remains a valid lower bound.
double bonferroni_lower_bound(int n, double q);

/// 1 - (1 - x)^p with x = min{(n/2) q, 1}; clamping x at 1 saturates the
/// bound at 1.
double chain_lower_bound(int p, int n, double q);

CaseLabel case_split(int p, int n, double q);

/// Smallest p0 such that p >= p0 forces case2 for a tail-equality law:
/// ceil((2/c0) K^{alpha/2} n^{alpha/2 - 1}). Meaningful per the source remark
/// for alpha < 4; the formula itself is evaluated for any valid tail.
long remark2_threshold(int n, double K, const TailCondition& tail);

/// (1 + sqrt(beta))^2 * variance, beta = lim p/n in [0, 1].
double silverstein_limit(double beta, double variance);

/// n^4 * P(|w| >= n): the light-tail hypothesis diagnostic. Vanishes for
/// light tails, stays bounded away from 0 (or grows) for Pareto alpha <= 4.
double silverstein_tail_check(const DistributionSpec& spec, int n);

/// Assemble the full report for a calibrated spec; q always comes from the
/// spec's exact tail. Specs without a TailCondition get proposition_bound = 0
/// (a trivially valid floor), making downstream verification vacuous.
BoundReport make_bound_report(int p, int n, double K, const DistributionSpec& spec);

}  // namespace rmt
