#include "rmtlab/bounds.hpp"

#include <cmath>
#include <sstream>

#include "rmtlab/errors.hpp"

namespace rmt {

std::string to_string(CaseLabel label) {
  return label == CaseLabel::case1 ? "case1" : "case2";
}

double proposition_lower_bound(int p, int n, double K, const TailCondition& tail) {
  tail.validate();
  if (!(K >= 1.0)) {
    std::ostringstream msg;
    msg << "proposition_lower_bound: the theorem assumes K >= 1, got K = " << K;
    throw PreconditionError(msg.str());
  }
  if (p <= 0 || n <= 0 || p > n) {
    throw PreconditionError("proposition_lower_bound: need 0 < p <= n");
  }
  const double half_alpha = 0.5 * tail.alpha;
  const double value = tail.c0 * static_cast<double>(p) /
                       (4.0 * std::pow(static_cast<double>(n), half_alpha - 1.0) *
                        std::pow(K, half_alpha));
  return std::min(value, 0.5);
}

double bonferroni_lower_bound(int n, double q) {
  if (n < 1 || !(q >= 0.0 && q <= 1.0)) {
    throw PreconditionError("bonferroni_lower_bound: need n >= 1 and q in [0, 1]");
  }
  const double raw = 0.5 * n * q * (2.0 - (n - 1) * q);
  return std::max(0.0, raw);
}

double chain_lower_bound(int p, int n, double q) {
  if (p < 1 || n < 1 || !(q >= 0.0 && q <= 1.0)) {
    throw PreconditionError("chain_lower_bound: need p, n >= 1 and q in [0, 1]");
  }
  const double x = 0.5 * n * q;
  if (x >= 1.0) return 1.0;
  // 1 - (1-x)^p, evaluated without cancellation for small x.
  return -std::expm1(static_cast<double>(p) * std::log1p(-x));
}

CaseLabel case_split(int p, int n, double q) {
  if (p < 1 || n < 1 || !(q >= 0.0 && q <= 1.0)) {
    throw PreconditionError("case_split: need p, n >= 1 and q in [0, 1]");
  }
  return 0.5 * n * q >= 1.0 / static_cast<double>(p) ? CaseLabel::case2
                                                     : CaseLabel::case1;
}

long remark2_threshold(int n, double K, const TailCondition& tail) {
  tail.validate();
  if (n < 1 || !(K >= 1.0)) {
    throw PreconditionError("remark2_threshold: need n >= 1 and K >= 1");
  }
  const double half_alpha = 0.5 * tail.alpha;
  const double x = (2.0 / tail.c0) * std::pow(K, half_alpha) *
                   std::pow(static_cast<double>(n), half_alpha - 1.0);
  // ceil with a snap so exact integers (e.g. 8.0) are not pushed up by rounding.
  const double rounded = std::round(x);
  if (std::fabs(x - rounded) <= 1e-9 * std::max(1.0, std::fabs(x))) {
    return static_cast<long>(rounded);
  }
  return static_cast<long>(std::ceil(x));
}

double silverstein_limit(double beta, double variance) {
  if (!(beta >= 0.0)) {
    throw PreconditionError("silverstein_limit: beta must be >= 0");
  }
  const double root = 1.0 + std::sqrt(beta);
  return root * root * variance;
}

double silverstein_tail_check(const DistributionSpec& spec, int n) {
  if (n < 1) {
    throw PreconditionError("silverstein_tail_check: n must be >= 1");
  }
  const double nd = static_cast<double>(n);
  return nd * nd * nd * nd * exact_tail(spec, nd);
}

BoundReport make_bound_report(int p, int n, double K, const DistributionSpec& spec) {
  if (p <= 0 || n <= 0 || p > n) {
    throw PreconditionError("make_bound_report: need 0 < p <= n");
  }
  if (!(K >= 1.0)) {
    throw PreconditionError("make_bound_report: K must be >= 1");
  }
  BoundReport report;
  report.p = p;
  report.n = n;
  report.K = K;
  report.q = exact_tail(spec, std::sqrt(static_cast<double>(n) * K));
  report.proposition_bound =
      spec.tail ? proposition_lower_bound(p, n, K, *spec.tail) : 0.0;
  report.bonferroni_bound = bonferroni_lower_bound(n, report.q);
  report.chain_bound = chain_lower_bound(p, n, report.q);
  report.case_label = case_split(p, n, report.q);
  report.silverstein_limit = silverstein_limit(
      static_cast<double>(p) / static_cast<double>(n), spec.analytic_variance);
  return report;
}

}  // namespace rmt
