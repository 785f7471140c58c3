#pragma once

// Shared numerics: normal CDF/quantile, regularized incomplete beta and
// the exact binomial CDF built on it, an exact binomial sampler, and a
// few statistics helpers.

#include <cstdint>
#include <functional>
#include <vector>

#include "forkfluid/rng.hpp"

namespace forkfluid::num {

// Phi(x) through erfc; absolute error well under 1e-14 on [-8, 8].
double normal_cdf(double x);

// Inverse normal CDF, Wichura's algorithm AS 241 (PPND16).
double normal_quantile(double p);

// Regularized incomplete beta I_x(a,b) by the Lentz continued fraction
// (Numerical Recipes style), usable for large a, b.
double reg_inc_beta(double a, double b, double x);

// P(X <= k) and P(X >= k) for X ~ Binomial(n, p), exact via I_x(a,b).
double binomial_cdf(std::int64_t k, std::int64_t n, double p);
double binomial_sf(std::int64_t k, std::int64_t n, double p);  // P(X >= k)

// Exact Binomial(n, p) sampling: inversion for small n*p, otherwise the
// BTRS transformed-rejection sampler (Hoermann 1993). O(1) expected cost
// for any n, which is what makes tN^3 log N horizons reachable.
std::int64_t binomial_sample(std::int64_t n, double p, rng::Stream& rs);

// Kolmogorov-Smirnov distance between a sample and a reference CDF.
double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf);

struct Moments {
  double mean = 0.0;
  double stddev = 0.0;
};
Moments sample_moments(const std::vector<double>& xs);

double quantile_of_sorted(const std::vector<double>& sorted, double q);

// Bracketed bisection on [lo, hi]; f(lo) and f(hi) must differ in sign.
// Runs until the bracket is a few ulps wide.
double bisect(const std::function<double(double)>& f, double lo, double hi);

}  // namespace forkfluid::num
