#pragma once

// Initial-condition families for the queue lengths at time zero:
// Q_i(0) = floor(r_N * U_i) + o_N. Each family carries its tail-exponent
// function h and the normalizer b_N used to build the scaling sequence
// r_N, so that max_i Q_i(0) / (N log N) concentrates near the requested
// q(0) as N grows.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "forkfluid/rng.hpp"

namespace forkfluid::initcond {

enum class Family {
  kZero,
  kDegenerate,
  kHalfNormal,
  kLogNormal,
  kExpOfExp,
  kExponential,
  kCustom,
};

std::string family_name(Family f);
Family family_from_name(const std::string& name);

struct InitialConditionSpec {
  Family family = Family::kZero;
  double q0_target = 0.0;
  double endpoint = 1.0;      // degenerate: U == endpoint
  double rate = 1.0;          // exponential: U ~ Exp(rate)
  double offset_kappa = 0.0;  // common additive offset o_N = floor(kappa * N * sqrt(log N))

  // kCustom hooks: tail exponent on [0,1] and an inverse CDF on (0,1).
  std::function<double(double)> custom_h;
  std::function<double(double)> custom_quantile;
};

// Families where U has a finite right endpoint (Assumption-4 branch).
bool has_finite_endpoint(Family f);

// Tail exponent h(v) on [0,1]. Finite-endpoint families return +infinity
// as the Assumption-4 marker. Throws if v is outside [0,1].
double h_of(const InitialConditionSpec& spec, double v);

// Family normalizer b_N: the (1 - 1/N) quantile of U, except
//  - finite-endpoint families use the right endpoint, and
//  - half-normal uses sqrt(2 log N), the convention under which
//    r_N = q0 * N log N / sqrt(2 log N).
double b_scale(const InitialConditionSpec& spec, std::int64_t n_servers);

// r_N = q0 * N log N / b_N (zero when q0 is zero).
double r_scaling_for(const InitialConditionSpec& spec, std::int64_t n_servers);

// One draw of U by inverse CDF.
double sample_u(const InitialConditionSpec& spec, rng::Stream& rs);

std::int64_t dependent_offset(const InitialConditionSpec& spec, std::int64_t n_servers);

// (floor(r_N U_i) + o_N)_{i<=N}. Rejects q0_target < 0 and N < 1.
std::vector<std::int64_t> sample_initial(const InitialConditionSpec& spec,
                                         std::int64_t n_servers, rng::Stream& rs);

}  // namespace forkfluid::initcond
