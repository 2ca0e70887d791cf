#include "rmtlab/proof_inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "rmtlab/errors.hpp"
#include "rmtlab/rng.hpp"

namespace rmt {

InequalitySides geometric_ineq_sides(double x, int p) {
  if (!(x >= 0.0 && x <= 1.0) || p < 1) {
    throw PreconditionError("geometric_ineq_sides: need x in [0, 1] and p >= 1");
  }
  return {std::pow(1.0 - x, p), 1.0 / (1.0 + static_cast<double>(p) * x)};
}

InequalitySides linear_ineq_sides(double x, int p) {
  if (p < 1) {
    throw PreconditionError("linear_ineq_sides: need p >= 1");
  }
  if (!(x >= 1.0 / static_cast<double>(p) && x <= 1.0)) {
    std::ostringstream msg;
    msg << "linear_ineq_sides: x = " << x << " outside the stated domain [1/p, 1] = ["
        << 1.0 / static_cast<double>(p) << ", 1]";
    throw PreconditionError(msg.str());
  }
  return {std::pow(1.0 - x, p), 1.0 - 0.5 * static_cast<double>(p) * x};
}

double linear_validity_root(int p) {
  if (p < 1) {
    throw PreconditionError("linear_validity_root: need p >= 1");
  }
  // (1-x)^p - (1 - px/2) is 0 at x = 0, dips negative, and crosses back up at
  // the root; it is positive on (root, 1] for p >= 3. For p <= 2 the
  // inequality holds on all of [0, 1]; report the right endpoint.
  if (p <= 2) return 1.0;
  auto f = [p](double x) {
    return std::pow(1.0 - x, p) - (1.0 - 0.5 * static_cast<double>(p) * x);
  };
  double lo = 1.0 / static_cast<double>(p);  // f < 0 here ((1-1/p)^p <= 1/e < 1/2)
  double hi = std::min(2.0 / static_cast<double>(p), 1.0);  // f > 0 here for p >= 3
  for (int iter = 0; iter < 200 && hi - lo > 1e-16; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

template <typename SideFn, typename DrawFn>
SweepCertificate run_sweep(const std::string& name, std::int64_t samples,
                           std::uint64_t seed, DrawFn draw, SideFn sides) {
  if (samples < 1) {
    throw PreconditionError("inequality sweep: need samples >= 1");
  }
  StreamRng rng(seed, 0x1EC5ULL);
  double max_violation = -std::numeric_limits<double>::infinity();
  for (std::int64_t i = 0; i < samples; ++i) {
    const auto [x, p] = draw(rng);
    const InequalitySides s = sides(x, p);
    max_violation = std::max(max_violation, s.lhs - s.rhs);
  }
  SweepCertificate cert;
  cert.name = name;
  cert.samples = samples;
  cert.max_violation = max_violation;
  cert.pass = max_violation <= kInequalityTol;
  return cert;
}

int draw_p(StreamRng& rng) {
  return 1 + static_cast<int>(rng.next_u64() % 128);
}

}  // namespace

SweepCertificate sweep_geometric(std::int64_t samples, std::uint64_t seed) {
  return run_sweep(
      "geometric: (1-x)^p <= 1/(1+px) on [0,1]", samples, seed,
      [](StreamRng& rng) {
        const int p = draw_p(rng);
        const double x = rng.next_unit();  // (0, 1]
        return std::pair<double, int>(x, p);
      },
      geometric_ineq_sides);
}

SweepCertificate sweep_linear(std::int64_t samples, std::uint64_t seed) {
  return run_sweep(
      "linear: (1-x)^p <= 1-px/2 on [1/p, min(2/p,1)]", samples, seed,
      [](StreamRng& rng) {
        const int p = draw_p(rng);
        const double lo = 1.0 / static_cast<double>(p);
        const double hi = std::min(2.0 / static_cast<double>(p), 1.0);
        const double x = lo + (hi - lo) * rng.next_unit();
        return std::pair<double, int>(x, p);
      },
      linear_ineq_sides);
}

}  // namespace rmt
