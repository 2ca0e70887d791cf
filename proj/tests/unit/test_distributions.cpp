#include <cmath>
#include <vector>

#include <doctest.h>

#include "rmtlab/distributions.hpp"
#include "rmtlab/errors.hpp"
#include "rmtlab/numerics.hpp"
#include "../support/oracles.hpp"

using namespace rmt;

namespace {

const std::vector<double> kTailGrid = {1.0, 1.5, 2.0, 4.0,  8.0,   16.0, 32.0,
                                       64.0, 128.0, 256.0, 512.0, 1024.0};

std::vector<DistributionSpec> heavy_specs() {
  return {calibrate_pareto(2.5), calibrate_pareto(3.0), calibrate_pareto(4.0),
          calibrate_pareto(5.0), calibrate_truncated_pareto(2.0, 1e6)};
}

}  // namespace

TEST_SUITE("distributions") {

TEST_CASE("pareto calibration closed form") {
  SUBCASE("alpha = 4") {
    const auto spec = calibrate_pareto(4.0);
    CHECK(spec.t_min == doctest::Approx(0.7071067811865476).epsilon(1e-15));
    CHECK(spec.tail->c0 == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(spec.analytic_mean == 0.0);
    CHECK(spec.analytic_variance == 1.0);
  }
  SUBCASE("alpha = 3") {
    const auto spec = calibrate_pareto(3.0);
    CHECK(spec.t_min == doctest::Approx(0.5773502691896258).epsilon(1e-15));
    CHECK(spec.tail->c0 == doctest::Approx(0.19245008972987525).epsilon(1e-14));
  }
  SUBCASE("alpha = 2 diverges") {
    CHECK_THROWS_AS(calibrate_pareto(2.0), InfeasibleParametersError);
    CHECK_THROWS_WITH_AS(calibrate_pareto(1.5), doctest::Contains("diverges"),
                         InfeasibleParametersError);
  }
}

TEST_CASE("pareto variance and fourth moment agree with quadrature") {
  for (double alpha : {2.5, 3.0, 4.0, 5.0}) {
    const auto spec = calibrate_pareto(alpha);
    CHECK(test::pareto_abs_moment_quadrature(spec, 2) ==
          doctest::Approx(1.0).epsilon(1e-9));
  }
  const auto spec5 = calibrate_pareto(5.0);
  const auto m5 = moments(spec5);
  CHECK(m5.fourth_moment == doctest::Approx(1.8).epsilon(1e-12));
  CHECK(test::pareto_abs_moment_quadrature(spec5, 4) ==
        doctest::Approx(m5.fourth_moment).epsilon(1e-8));
}

TEST_CASE("fourth moment diverges for alpha <= 4: quadrature blow-up") {
  const auto spec = calibrate_pareto(3.0);
  CHECK(moments(spec).fourth_moment == std::numeric_limits<double>::infinity());
  const double cut6 = test::pareto_fourth_moment_cut(spec, 1e-6);
  const double cut12 = test::pareto_fourth_moment_cut(spec, 1e-12);
  CHECK(cut12 > 50.0 * cut6);  // grows like eps^{-1/3}

  CHECK(moments(calibrate_pareto(4.0)).fourth_moment ==
        std::numeric_limits<double>::infinity());
}

TEST_CASE("standard moments") {
  const auto g = moments(gaussian_spec());
  CHECK(g.mean == 0.0);
  CHECK(g.variance == 1.0);
  CHECK(g.fourth_moment == 3.0);
  const auto r = moments(rademacher_spec());
  CHECK(r.fourth_moment == 1.0);
}

TEST_CASE("truncated calibration: alpha = 2, t_max = 1e6") {
  const auto spec = calibrate_truncated_pareto(2.0, 1e6);
  CHECK(spec.t_min == doctest::Approx(0.17650147602068924).epsilon(1e-9));
  CHECK(spec.tail->c0 == doctest::Approx(0.031152771037481939).epsilon(1e-8));
  CHECK(test::pareto_abs_moment_quadrature(spec, 2) ==
        doctest::Approx(1.0).epsilon(1e-9));
  // Bounded support: finite fourth moment, checked against quadrature.
  const auto m = moments(spec);
  CHECK(std::isfinite(m.fourth_moment));
  CHECK(m.fourth_moment == doctest::Approx(6.2305542074963e10).epsilon(1e-6));
  CHECK(test::pareto_abs_moment_quadrature(spec, 4) ==
        doctest::Approx(m.fourth_moment).epsilon(1e-8));
}

TEST_CASE("truncated calibration approaches the pure law as t_max grows") {
  const auto truncated = calibrate_truncated_pareto(4.0, 1e8);
  const auto pure = calibrate_pareto(4.0);
  CHECK(truncated.t_min == doctest::Approx(pure.t_min).epsilon(1e-9));
  CHECK(truncated.tail->c0 == doctest::Approx(pure.tail->c0).epsilon(1e-9));
}

TEST_CASE("truncated calibration near the feasibility threshold") {
  // Any t_max > 1 carries unit variance (the cutoff atom holds the rest);
  // verified against quadrature. t_max <= 1 cannot.
  const auto spec = calibrate_truncated_pareto(2.0, 1.0001);
  CHECK(spec.t_min == doctest::Approx(0.9900829721096167).epsilon(1e-9));
  CHECK(spec.tail->c0 == doctest::Approx(0.9802642916614121).epsilon(1e-9));
  CHECK(test::pareto_abs_moment_quadrature(spec, 2) == doctest::Approx(1.0).epsilon(1e-9));

  CHECK_THROWS_WITH_AS(calibrate_truncated_pareto(2.0, 1.0),
                       doctest::Contains("t_max > 1"), InfeasibleParametersError);
  CHECK_THROWS_AS(calibrate_truncated_pareto(2.0, 0.5), InfeasibleParametersError);
  CHECK_THROWS_AS(calibrate_truncated_pareto(1.9, 100.0), PreconditionError);
}

TEST_CASE("exact tail closed forms") {
  const auto p4 = calibrate_pareto(4.0);
  CHECK(exact_tail(p4, p4.t_min) == 1.0);
  CHECK(exact_tail(p4, 1.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(exact_tail(p4, 2.0) == doctest::Approx(0.25 / 16.0).epsilon(1e-15));

  const auto rad = rademacher_spec();
  CHECK(exact_tail(rad, 1.0) == 1.0);
  CHECK(exact_tail(rad, 1.01) == 0.0);

  const auto gauss = gaussian_spec();
  CHECK(exact_tail(gauss, 0.0) == 1.0);
  CHECK(exact_tail(gauss, 1.0) == doctest::Approx(0.3173105078629141).epsilon(1e-14));

  const auto trunc = calibrate_truncated_pareto(2.0, 100.0);
  const double atom = trunc.tail->c0 * 1e-4;
  CHECK(exact_tail(trunc, 100.0) == doctest::Approx(atom).epsilon(1e-12));
  CHECK(exact_tail(trunc, 100.0000001) == 0.0);
}

TEST_CASE("heavy-tail floor and Chebyshev ceiling on the tail grid") {
  for (const auto& spec : heavy_specs()) {
    const double alpha = spec.tail->alpha;
    const double c0 = spec.tail->c0;
    for (double t : kTailGrid) {
      if (t > spec.condition_valid_to()) continue;
      const double tail = exact_tail(spec, t);
      CHECK(tail >= c0 * std::pow(t, -alpha) * (1.0 - 1e-12));
      CHECK(tail <= 1.0 / (t * t) + 1e-15);
    }
  }
  for (const auto& spec : {rademacher_spec(), gaussian_spec()}) {
    for (double t : kTailGrid) {
      CHECK(exact_tail(spec, t) <= 1.0 / (t * t) + 1e-15);
    }
  }
}

TEST_CASE("tail/quantile round trip") {
  const std::vector<double> u_grid = {1e-12, 1e-6, 0.001, 0.1, 0.25, 0.5, 0.9, 1.0};
  for (double alpha : {2.5, 3.0, 4.0}) {
    const auto spec = calibrate_pareto(alpha);
    for (double u : u_grid) {
      CHECK(exact_tail(spec, quantile(spec, u)) == doctest::Approx(u).epsilon(1e-12));
    }
  }
  const auto trunc = calibrate_truncated_pareto(3.0, 50.0);
  const double atom = std::pow(trunc.t_min / trunc.t_max, 3.0);
  for (double u : u_grid) {
    if (u >= atom) {
      CHECK(exact_tail(trunc, quantile(trunc, u)) == doctest::Approx(u).epsilon(1e-12));
    } else {
      CHECK(quantile(trunc, u) == trunc.t_max);
    }
  }
  CHECK_THROWS_AS(quantile(calibrate_pareto(3.0), 0.0), PreconditionError);
  CHECK_THROWS_AS(quantile(calibrate_pareto(3.0), 1.5), PreconditionError);
}

TEST_CASE("sampling support and determinism") {
  StreamRng rng(123, 0);
  const auto rad = rademacher_spec();
  for (int i = 0; i < 100; ++i) {
    const double w = sample(rad, rng);
    CHECK((w == 1.0 || w == -1.0));
  }
  const auto p4 = calibrate_pareto(4.0);
  for (int i = 0; i < 1000; ++i) {
    CHECK(std::fabs(sample(p4, rng)) >= p4.t_min);
  }
  StreamRng r1(7, 3), r2(7, 3);
  for (int i = 0; i < 64; ++i) CHECK(sample(p4, r1) == sample(p4, r2));
}

TEST_CASE("empirical calibration at N = 1e6" * doctest::timeout(120)) {
  constexpr int kN = 1000000;
  for (double alpha : {3.0, 5.0}) {
    const auto spec = calibrate_pareto(alpha);
    StreamRng rng(20240601, static_cast<std::uint64_t>(alpha * 10));
    std::vector<double> squares(kN);
    double mean = 0.0;
    for (int i = 0; i < kN; ++i) {
      const double w = sample(spec, rng);
      mean += w;
      squares[static_cast<std::size_t>(i)] = w * w;
    }
    mean /= kN;
    CHECK(std::fabs(mean) <= 0.005);
    CHECK(num::median_of_means(squares, 32) == doctest::Approx(1.0).epsilon(0.05));
  }
}

TEST_CASE("empirical tail frequencies match the exact tail" * doctest::timeout(120)) {
  constexpr int kN = 1000000;
  const auto spec = calibrate_pareto(3.0);
  StreamRng rng(555, 1);
  std::vector<double> magnitudes(kN);
  for (int i = 0; i < kN; ++i) {
    magnitudes[static_cast<std::size_t>(i)] = std::fabs(sample(spec, rng));
  }
  for (double t : kTailGrid) {
    const double q = exact_tail(spec, t);
    std::int64_t hits = 0;
    for (double m : magnitudes) hits += m >= t ? 1 : 0;
    const double q_hat = static_cast<double>(hits) / kN;
    const double band = 4.0 * std::sqrt(q * (1.0 - q) / kN);
    CHECK(std::fabs(q_hat - q) <= band + 1e-12);
  }
}

TEST_CASE("gaussian sampler matches erfc tail at N = 1e6" * doctest::timeout(120)) {
  constexpr int kN = 1000000;
  const auto spec = gaussian_spec();
  StreamRng rng(777, 1);
  std::int64_t hits1 = 0, hits2 = 0;
  double mean = 0.0;
  for (int i = 0; i < kN; ++i) {
    const double w = sample(spec, rng);
    mean += w;
    hits1 += std::fabs(w) >= 1.0 ? 1 : 0;
    hits2 += std::fabs(w) >= 2.0 ? 1 : 0;
  }
  mean /= kN;
  CHECK(std::fabs(mean) <= 0.005);
  const double q1 = std::erfc(1.0 / std::sqrt(2.0));
  const double q2 = std::erfc(2.0 / std::sqrt(2.0));
  CHECK(static_cast<double>(hits1) / kN ==
        doctest::Approx(q1).epsilon(4.0 * std::sqrt((1 - q1) / (q1 * kN))));
  CHECK(static_cast<double>(hits2) / kN ==
        doctest::Approx(q2).epsilon(4.0 * std::sqrt((1 - q2) / (q2 * kN))));
}

}  // TEST_SUITE distributions
