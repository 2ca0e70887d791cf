#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace rmt::num {

/// Standard normal quantile (inverse CDF), accurate to ~1 ulp after refinement.
/// Domain (0, 1); throws PreconditionError outside.
double normal_quantile(double p);

/// Regularized incomplete beta I_x(a, b) by Lentz continued fraction.
double incomplete_beta(double a, double b, double x);

/// P(Binomial(n, p) <= k), exact via the incomplete beta identity.
double binomial_cdf(std::int64_t k, std::int64_t n, double p);

/// Median of a sample (average of the two middle order statistics when even).
double median(std::vector<double> values);

/// Median-of-means: partition into `blocks` contiguous blocks, average each,
/// take the median of the block means. Robust when the law of the summands
/// has infinite variance.
double median_of_means(std::span<const double> values, int blocks);

}  // namespace rmt::num
