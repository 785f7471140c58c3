#pragma once

// Numerical verification of the analytic rates and identities: the exact
// binomial mean/variance of the centered increment process, the weighted
// Kolmogorov distance of the standardized service process to the normal
// CDF, the 5/2-moment of the scaled maximum, and the max-of-exponentials
// standard deviation.

#include <cstdint>

#include "forkfluid/model.hpp"
#include "forkfluid/rng.hpp"

namespace forkfluid::validate {

struct VarianceIdentity {
  double mean_term = 0.0;       // E[(A - S_i)(n)] / (N^c sqrt(log N)); -> -beta t sqrt(log N)
  double variance_term = 0.0;   // Var[(A - S_i)(n)] / (N^2c log N);    -> 2 alpha t
  double arrival_std_raw = 0.0; // sqrt(p (1-p) floor(t N^(1+2c) log N))
  std::int64_t n_slots = 0;
};

VarianceIdentity variance_identity(const model::SystemParams& params, double t);

// Exact mean and variance of the standardized service variable Zhat; the
// binomial algebra gives exactly 0 and 1.
struct Standardization {
  double mean = 0.0;
  double variance = 1.0;
};
Standardization z_moments(const model::SystemParams& params, double t);

struct BerryEsseen {
  double d_n = 0.0;    // sup_y |F_N(y) - Phi(y)| (1 + |y|^3) over |y| <= 8
  double scaled = 0.0; // d_n * N * sqrt(log N)
  std::int64_t n_slots = 0;
};

// Exact binomial CDFs via the regularized incomplete beta; the supremum is
// taken over every CDF jump point inside |y| <= 8 (left and right limits).
// negate flips the standardization sign (the -Shat variant).
BerryEsseen berry_esseen_distance(const model::SystemParams& params, double t,
                                  bool negate = false);

struct PickandsEstimate {
  double estimate = 0.0;       // E[ max(0, max_i Shat_i / log N)^{5/2} ]
  double ci_halfwidth = 0.0;   // 1.96 sd/sqrt(reps)
  std::int64_t reps = 0;
};

// Monte Carlo over exact Binomial marginals of the centered service
// process (the per-slot path is irrelevant for a fixed-time marginal, and
// horizons of order N^3 log N rule out per-slot simulation).
PickandsEstimate pickands_moment(const model::SystemParams& params, double t, std::int64_t reps,
                                 rng::Handle handle);

// E[max of n i.i.d. standard normals] / sqrt(2 log n), by Monte Carlo with
// the max sampled exactly as Phi^{-1}(U^{1/n}).
double max_normal_baseline(std::int64_t n, std::int64_t reps, rng::Handle handle);

struct MaxExpStd {
  double mc_std = 0.0;
  double analytic_gumbel = 0.0;  // (pi/sqrt(6)) * n
  double exact_finite_n = 0.0;   // n * sqrt(sum_{i<=n} 1/i^2)
  std::int64_t reps = 0;
};

// Standard deviation of max_{i<=n} E_i with E_i ~ Exp(1/n), i.e. mean n.
MaxExpStd max_exponential_std(std::int64_t n, std::int64_t reps, rng::Handle handle);

}  // namespace forkfluid::validate
