#include "rmtlab/distributions.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "rmtlab/errors.hpp"
#include "rmtlab/numerics.hpp"

namespace rmt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kCalibrationTol = 1e-12;

// E w^2 of the truncated law as a function of the lower cutoff, with
// c0 = t_min^alpha forced by total mass. Includes the atom at t_max.
double truncated_variance(double t_min, double alpha, double t_max) {
  const double c0 = std::pow(t_min, alpha);
  if (alpha == 2.0) {
    return c0 * (1.0 + 2.0 * std::log(t_max / t_min));
  }
  const double tail_pow = std::pow(t_max, 2.0 - alpha);
  const double continuous =
      alpha * (std::pow(t_min, 2.0 - alpha) - tail_pow) / (alpha - 2.0);
  return c0 * (continuous + tail_pow);
}

}  // namespace

void TailCondition::validate() const {
  if (!(alpha >= 2.0)) {
    throw PreconditionError("TailCondition: alpha must be >= 2");
  }
  if (!(c0 > 0.0 && c0 <= 1.0)) {
    throw PreconditionError("TailCondition: c0 must lie in (0, 1]");
  }
}

std::string to_string(DistributionKind kind) {
  switch (kind) {
    case DistributionKind::pareto_symmetric: return "pareto_symmetric";
    case DistributionKind::truncated_pareto_symmetric: return "truncated_pareto_symmetric";
    case DistributionKind::rademacher: return "rademacher";
    case DistributionKind::gaussian: return "gaussian";
  }
  return "unknown";
}

DistributionSpec calibrate_pareto(double alpha) {
  if (!(alpha > 2.0)) {
    std::ostringstream msg;
    msg << "calibrate_pareto: E w^2 = alpha*t_min^2/(alpha-2) diverges as alpha -> 2; "
           "need alpha > 2, got "
        << alpha << " (use calibrate_truncated_pareto for alpha = 2)";
    throw InfeasibleParametersError(msg.str());
  }
  DistributionSpec spec;
  spec.kind = DistributionKind::pareto_symmetric;
  spec.t_min = std::sqrt((alpha - 2.0) / alpha);
  spec.t_max = kInf;
  spec.tail = TailCondition{alpha, std::pow(spec.t_min, alpha)};
  spec.tail->validate();
  return spec;
}

DistributionSpec calibrate_truncated_pareto(double alpha, double t_max) {
  if (!(alpha >= 2.0)) {
    throw PreconditionError("calibrate_truncated_pareto: alpha must be >= 2");
  }
  if (!std::isfinite(t_max)) {
    throw PreconditionError(
        "calibrate_truncated_pareto: t_max must be finite; use calibrate_pareto "
        "for the untruncated law");
  }
  if (!(t_max > 1.0)) {
    std::ostringstream msg;
    msg << "calibrate_truncated_pareto: no unit-variance solution with t_min <= 1 "
           "exists unless t_max > 1 (sup of E w^2 at t_max = "
        << t_max << " is "
        << (t_max > 0.0 ? truncated_variance(t_max, alpha, t_max) : 0.0)
        << "); feasibility threshold: t_max > 1";
    throw InfeasibleParametersError(msg.str());
  }

  // Variance is strictly increasing in t_min; bracket (0, 1] always contains
  // the root when t_max > 1.
  double lo = 0.0;
  double hi = 1.0;
  double mid = 0.5;
  for (int iter = 0; iter < 200; ++iter) {
    mid = 0.5 * (lo + hi);
    const double v = truncated_variance(mid, alpha, t_max);
    if (std::fabs(v - 1.0) <= kCalibrationTol) break;
    (v < 1.0 ? lo : hi) = mid;
    if (hi - lo <= 1e-17) break;
  }
  const double t_min = mid;
  const double v = truncated_variance(t_min, alpha, t_max);
  if (std::fabs(v - 1.0) > 1e-9) {
    std::ostringstream msg;
    msg << "calibrate_truncated_pareto: bisection failed to reach unit variance "
           "(alpha = " << alpha << ", t_max = " << t_max << ", residual = " << v - 1.0
        << ")";
    throw InfeasibleParametersError(msg.str());
  }

  DistributionSpec spec;
  spec.kind = DistributionKind::truncated_pareto_symmetric;
  spec.t_min = t_min;
  spec.t_max = t_max;
  spec.tail = TailCondition{alpha, std::pow(t_min, alpha)};
  spec.tail->validate();
  return spec;
}

DistributionSpec rademacher_spec() {
  DistributionSpec spec;
  spec.kind = DistributionKind::rademacher;
  spec.t_min = 1.0;
  spec.t_max = 1.0;
  return spec;
}

DistributionSpec gaussian_spec() {
  DistributionSpec spec;
  spec.kind = DistributionKind::gaussian;
  spec.t_min = 0.0;
  spec.t_max = kInf;
  return spec;
}

double exact_tail(const DistributionSpec& spec, double t) {
  if (t <= 0.0) return 1.0;
  switch (spec.kind) {
    case DistributionKind::pareto_symmetric:
      if (t <= spec.t_min) return 1.0;
      return std::pow(spec.t_min / t, spec.tail->alpha);
    case DistributionKind::truncated_pareto_symmetric:
      if (t <= spec.t_min) return 1.0;
      if (t > spec.t_max) return 0.0;
      return std::pow(spec.t_min / t, spec.tail->alpha);
    case DistributionKind::rademacher:
      return t <= 1.0 ? 1.0 : 0.0;
    case DistributionKind::gaussian:
      return std::erfc(t / std::sqrt(2.0));
  }
  return 0.0;
}

double quantile(const DistributionSpec& spec, double u) {
  if (!(u > 0.0 && u <= 1.0)) {
    throw PreconditionError("quantile: u must lie in (0, 1]");
  }
  switch (spec.kind) {
    case DistributionKind::pareto_symmetric:
      return spec.t_min * std::pow(u, -1.0 / spec.tail->alpha);
    case DistributionKind::truncated_pareto_symmetric: {
      const double atom = std::pow(spec.t_min / spec.t_max, spec.tail->alpha);
      if (u <= atom) return spec.t_max;
      return spec.t_min * std::pow(u, -1.0 / spec.tail->alpha);
    }
    case DistributionKind::rademacher:
      return 1.0;
    case DistributionKind::gaussian:
      // P(|w| >= t) = u  <=>  t = -Phi^{-1}(u/2)
      return u == 1.0 ? 0.0 : -num::normal_quantile(0.5 * u);
  }
  return 0.0;
}

double sample(const DistributionSpec& spec, StreamRng& rng) {
  // Fixed draw discipline: one magnitude uniform + one sign per sample,
  // for every kind, so streams replay identically across spec kinds.
  const double u = rng.next_unit();
  const double sign = rng.next_sign();
  return sign * quantile(spec, u);
}

Moments moments(const DistributionSpec& spec) {
  Moments m;
  m.mean = spec.analytic_mean;
  m.variance = spec.analytic_variance;
  switch (spec.kind) {
    case DistributionKind::gaussian:
      m.fourth_moment = 3.0;
      break;
    case DistributionKind::rademacher:
      m.fourth_moment = 1.0;
      break;
    case DistributionKind::pareto_symmetric: {
      const double alpha = spec.tail->alpha;
      m.fourth_moment =
          alpha <= 4.0 ? kInf : alpha * std::pow(spec.t_min, 4.0) / (alpha - 4.0);
      break;
    }
    case DistributionKind::truncated_pareto_symmetric: {
      // Bounded support: always finite, atom at t_max included.
      const double alpha = spec.tail->alpha;
      const double c0 = spec.tail->c0;
      const double atom_part = c0 * std::pow(spec.t_max, 4.0 - alpha);
      double continuous;
      if (alpha == 4.0) {
        continuous = c0 * alpha * std::log(spec.t_max / spec.t_min);
      } else {
        continuous = c0 * alpha *
                     (std::pow(spec.t_min, 4.0 - alpha) - std::pow(spec.t_max, 4.0 - alpha)) /
                     (alpha - 4.0);
      }
      m.fourth_moment = continuous + atom_part;
      break;
    }
  }
  return m;
}

}  // namespace rmt
