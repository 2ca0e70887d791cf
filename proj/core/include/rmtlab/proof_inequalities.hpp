#pragma once

#include <cstdint>
#include <string>

namespace rmt {

/// Slack absorbed on exact-equality boundaries of the inequality sweeps.
inline constexpr double kInequalityTol = 1e-15;

struct InequalitySides {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// Sides of (1-x)^p <= 1/(1+px) on [0, 1]; callers assert lhs <= rhs.
InequalitySides geometric_ineq_sides(double x, int p);

/// Sides of (1-x)^p <= 1 - px/2, stated on [1/p, 1]; x below 1/p is a domain
/// error. The right side is only a meaningful probability for x <= 2/p, and
/// the inequality itself fails on part of that window (see linear_validity_root).
InequalitySides linear_ineq_sides(double x, int p);

/// The exact validity boundary of the linear inequality: the positive root of
/// (1-x)^p = 1 - px/2. The inequality holds on [0, root] and fails on
/// (root, 1] whenever p >= 3; p * root decreases from ~1.90 toward ~1.5936.
double linear_validity_root(int p);

/// One pass/fail certificate of a randomized inequality sweep.
struct SweepCertificate {
  std::string name;
  std::int64_t samples = 0;
  double max_violation = 0.0;  // max over samples of lhs - rhs
  bool pass = false;           // max_violation <= kInequalityTol
};

/// Sweep the geometric inequality on x ~ U[0,1], p ~ U{1..128}.
SweepCertificate sweep_geometric(std::int64_t samples, std::uint64_t seed);

/// Sweep the linear inequality on x ~ U[1/p, min(2/p, 1)], p ~ U{1..128}.
/// This window is where the right side is a probability; the sweep reports
/// honestly and FAILS there, because the inequality is false on
/// (linear_validity_root(p), 2/p] for every p >= 3.
SweepCertificate sweep_linear(std::int64_t samples, std::uint64_t seed);

}  // namespace rmt
