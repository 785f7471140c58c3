#pragma once

// Chernoff machinery around the split A(n) - S_i(n) = Ahat(n) + Shat_i(n):
// the two-point increments with drift split parameter m in (0, beta), the
// strictly positive exponent roots of E[exp(theta * increment)] = 1, their
// Taylor predictions in 1/N, Doob-style tail bounds with Monte-Carlo
// companions, and the Gumbel limit of the dominating exponentials.

#include <cstdint>
#include <vector>

#include "forkfluid/model.hpp"
#include "forkfluid/rng.hpp"

namespace forkfluid::bounds {

// A two-point increment: value x_rare with probability p_rare, x_common
// with probability 1 - p_rare.
struct TwoPoint {
  double x_rare = 0.0;
  double p_rare = 0.0;
  double x_common = 0.0;

  double mean() const { return p_rare * x_rare + (1.0 - p_rare) * x_common; }
};

// Ahat increment: a_j - p - m/N^2 (rare branch is an arrival failure).
TwoPoint arrival_upper_increment(const model::SystemParams& params, double m);

// Shat increment: q - s_{i,j} - (beta - m)/N^2 (rare branch is a service
// failure).
TwoPoint service_upper_increment(const model::SystemParams& params, double m);

// Pathwise value of the increment given the Bernoulli indicator.
double increment_value(const TwoPoint& inc, bool rare);

// E[exp(theta * X)] - 1 evaluated through expm1 so the residual keeps full
// precision at theta of order 1e-6.
double mgf_minus_one(const TwoPoint& inc, double theta);

// The unique strictly positive root of mgf_minus_one = 0. The bracket
// starts at 10x the first-order guess and doubles until a sign change;
// theta = 0 is excluded because the increment has negative drift.
double solve_theta(const TwoPoint& inc, double first_order_guess, double tolerance);

double solve_theta_A(const model::SystemParams& params, double m, double tolerance = 1e-13);
double solve_theta_S(const model::SystemParams& params, double m, double tolerance = 1e-13);

double theta_A_first_order(const model::SystemParams& params, double m);   // 2m/(alpha N)
double theta_A_second_order(const model::SystemParams& params, double m);  // + Taylor x^2 term
double theta_S_first_order(const model::SystemParams& params, double m);   // 2(beta-m)/(alpha N)

struct ChernoffSetup {
  model::SystemParams params;
  double m = 0.0;
  double theta_A = 0.0;
  double theta_S = 0.0;
  double exp_mean = 0.0;  // alpha N / (2 (beta - m))
};

// m defaults to beta/2 when NaN is passed.
ChernoffSetup make_chernoff(const model::SystemParams& params, double m, double tolerance = 1e-13);

inline double tail_bound_sup(double theta, double x) { return std::exp(-theta * x); }

// Per-path suprema of the Ahat / Shat random walks over a finite horizon,
// simulated by geometric skip-ahead between the rare branches. The finite
// horizon only truncates the supremum, so empirical survival estimates
// stay on the conservative side of the analytic bounds.
std::vector<double> mc_sup_arrival_upper(const model::SystemParams& params, double m,
                                         std::int64_t horizon, std::int64_t paths,
                                         rng::Handle handle);
std::vector<double> mc_sup_service_upper(const model::SystemParams& params, double m,
                                         std::int64_t horizon, std::int64_t paths,
                                         rng::Handle handle);

// CDF of (max of N i.i.d. exponentials, normalized per the Gumbel display)
// at finite N: (1 - e^{-x}/N)^N.
double gumbel_finite_n_cdf(std::int64_t n, double x);

struct GumbelCheck {
  double ks_gumbel = 0.0;    // KS distance to exp(-e^{-x})
  double ks_finite_n = 0.0;  // KS distance to the exact finite-N law
  double scale = 0.0;        // alpha/(2(beta-m))
};

// Samples max_{i<=N} E_i with E_i ~ Exp(mean alpha N/(2(beta-m))) per
// replication, normalizes x = max/(N*scale) - log N, and measures KS
// distances.
GumbelCheck gumbel_check(const model::SystemParams& params, double m, std::int64_t reps,
                         rng::Handle handle);

}  // namespace forkfluid::bounds
