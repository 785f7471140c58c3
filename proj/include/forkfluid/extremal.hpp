#pragma once

// Maxima of sums of differently-scaled i.i.d. sequences: the scaling
// sequences a_N^(j) with P(Y >= a_N) = 1/N, the limiting constant
// c* = sup { sum_j u_j : sum_j h_j(u_j) <= 1, u_j <= 1 }, and Monte-Carlo
// convergence diagnostics.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "forkfluid/rng.hpp"

namespace forkfluid::extremal {

enum class Dist { kExponential, kStdNormal, kHalfNormal, kLogNormal, kExpOfExp, kCustom };

std::string dist_name(Dist d);
Dist dist_from_name(const std::string& name);

struct ComponentSpec {
  Dist dist = Dist::kExponential;
  double rate = 1.0;  // exponential only

  // kCustom hooks. survival is required (quantiles fall back to a root
  // solve on it); h defaults through h_of below.
  std::function<double(double)> custom_survival;
  std::function<double(double)> custom_h;
};

double survival(const ComponentSpec& c, double x);

// Tail exponent of the component: v for exponential, v^2 for (half-)normal,
// indicators for lognormal / exp-of-exp.
double h_of(const ComponentSpec& c, double v);

// Whether h is one of the indicator degenerations (boundary candidates
// are then enumerated exactly in the supremum solvers).
bool h_is_indicator(const ComponentSpec& c);

double sample(const ComponentSpec& c, rng::Stream& rs);

// The (1 - 1/N) quantile: closed form where available, otherwise a
// bracketed root solve on the survival function (relative tolerance 1e-10).
double scaling_sequence(const ComponentSpec& c, std::int64_t n_points);

// Constrained supremum over k <= 3 components by exhaustive grid with
// refinement; per-dimension boundary candidates {0, 0+, 1-, 1} are always
// included so indicator-type h cannot be missed by grid placement.
double c_star(const std::vector<std::function<double(double)>>& h_list, double tolerance = 1e-7);

struct ExtremalProblem {
  std::vector<ComponentSpec> components;
  std::int64_t n_points = 0;
  std::vector<double> a_scalings;
  double c_star = 0.0;
};

ExtremalProblem make_problem(std::vector<ComponentSpec> components, std::int64_t n_points,
                             double tolerance = 1e-7);

struct MaxSumStats {
  std::vector<double> samples;  // one max per replication, sorted
  double mean = 0.0;
  double stddev = 0.0;
  double median = 0.0;
  double q10 = 0.0;
  double q90 = 0.0;
};

// Replications of max_{i<=N} sum_j Y_i^(j) / a_N^(j).
MaxSumStats mc_max_of_sums(const ExtremalProblem& problem, std::int64_t reps, rng::Handle handle);

}  // namespace forkfluid::extremal
