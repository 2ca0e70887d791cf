#pragma once

#include <optional>
#include <string>

#include "rmtlab/rng.hpp"

namespace rmt {

/// Heavy-tail floor P(|w| >= t) >= c0 * t^(-alpha) for all t >= 1.
struct TailCondition {
  double alpha = 0.0;  // tail exponent, >= 2
  double c0 = 0.0;     // tail constant, in (0, 1]

  void validate() const;
};

enum class DistributionKind {
  pareto_symmetric,
  truncated_pareto_symmetric,
  rademacher,
  gaussian,
};

std::string to_string(DistributionKind kind);

/// A fully calibrated entry law with E w = 0 and E w^2 = 1.
///
/// Specs are immutable after calibration and safe to share across threads.
/// For the Pareto kinds, |w| follows the power-law tail c0 * t^(-alpha) on
/// [t_min, t_max]; the truncated kind carries an atom of mass c0*t_max^(-alpha)
/// at the cutoff so the stated tail holds up to t_max inclusive. The heavy-tail
/// floor is then an equality on [1, t_max], which is what makes bound
/// comparisons sharp.
struct DistributionSpec {
  DistributionKind kind = DistributionKind::gaussian;
  std::optional<TailCondition> tail;  // absent for rademacher/gaussian
  double t_min = 0.0;                 // lower support cutoff of |w|
  double t_max = 0.0;                 // +infinity unless truncated
  double analytic_mean = 0.0;
  double analytic_variance = 1.0;

  /// Largest t for which the heavy-tail floor is guaranteed (t_max for the
  /// truncated kind, +infinity otherwise; irrelevant for light-tailed kinds).
  double condition_valid_to() const noexcept { return t_max; }
};

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
  double fourth_moment = 0.0;  // +infinity when divergent
};

/// Symmetric Pareto law with unit variance and tail equality in the heavy-tail
/// floor: P(|w| >= t) = (t_min/t)^alpha on t >= t_min, t_min = sqrt((alpha-2)/alpha),
/// c0 = t_min^alpha. Requires alpha > 2 (the variance diverges at alpha = 2).
DistributionSpec calibrate_pareto(double alpha);

/// Upper-truncated symmetric Pareto: P(|w| >= t) = c0 * t^(-alpha) on
/// [t_min, t_max] and 0 beyond, with an atom at t_max carrying the cut tail
/// mass. (c0, t_min) are solved by bisection so total mass and variance are
/// exactly 1 (solver tolerance 1e-12). Feasible for any t_max > 1; alpha = 2
/// is allowed. Bound-verification grids must keep sqrt(nK) <= t_max.
DistributionSpec calibrate_truncated_pareto(double alpha, double t_max);

DistributionSpec rademacher_spec();
DistributionSpec gaussian_spec();

/// Exact closed-form P(|w| >= t).
double exact_tail(const DistributionSpec& spec, double t);

/// Inverse of the tail function: smallest t with P(|w| >= t) <= u, u in (0, 1].
/// exact_tail(quantile(spec, u)) == u wherever the tail is continuous.
double quantile(const DistributionSpec& spec, double u);

/// One draw: inverse-CDF on |w| plus an independent sign bit. Consumes exactly
/// two generator outputs for every kind.
double sample(const DistributionSpec& spec, StreamRng& rng);

/// Analytic mean, variance and fourth moment (+infinity for the unbounded
/// Pareto kind with alpha <= 4).
Moments moments(const DistributionSpec& spec);

}  // namespace rmt
