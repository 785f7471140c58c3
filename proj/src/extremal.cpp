#include "forkfluid/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "forkfluid/numeric.hpp"

namespace forkfluid::extremal {

std::string dist_name(Dist d) {
  switch (d) {
    case Dist::kExponential: return "exponential";
    case Dist::kStdNormal: return "std_normal";
    case Dist::kHalfNormal: return "half_normal";
    case Dist::kLogNormal: return "lognormal";
    case Dist::kExpOfExp: return "exp_of_exp";
    case Dist::kCustom: return "custom";
  }
  return "unknown";
}

Dist dist_from_name(const std::string& name) {
  if (name == "exponential") return Dist::kExponential;
  if (name == "std_normal") return Dist::kStdNormal;
  if (name == "half_normal") return Dist::kHalfNormal;
  if (name == "lognormal") return Dist::kLogNormal;
  if (name == "exp_of_exp") return Dist::kExpOfExp;
  if (name == "custom") return Dist::kCustom;
  throw std::invalid_argument("unknown extremal distribution: " + name);
}

double survival(const ComponentSpec& c, double x) {
  switch (c.dist) {
    case Dist::kExponential: return x <= 0.0 ? 1.0 : std::exp(-c.rate * x);
    case Dist::kStdNormal: return 1.0 - num::normal_cdf(x);
    case Dist::kHalfNormal: return x <= 0.0 ? 1.0 : 2.0 * (1.0 - num::normal_cdf(x));
    case Dist::kLogNormal: return x <= 0.0 ? 1.0 : 1.0 - num::normal_cdf(std::log(x));
    case Dist::kExpOfExp: return x <= 0.0 ? 1.0 : std::exp(1.0 - std::exp(x));
    case Dist::kCustom:
      if (!c.custom_survival) throw std::invalid_argument("custom component has no survival");
      return c.custom_survival(x);
  }
  throw std::logic_error("survival: unreachable");
}

double h_of(const ComponentSpec& c, double v) {
  if (!(v >= 0.0 && v <= 1.0)) throw std::domain_error("h_of: v outside [0,1]");
  switch (c.dist) {
    case Dist::kExponential: return v;
    case Dist::kStdNormal:
    case Dist::kHalfNormal: return v * v;
    case Dist::kLogNormal: return v > 0.0 ? 1.0 : 0.0;
    case Dist::kExpOfExp: return v == 1.0 ? 1.0 : 0.0;
    case Dist::kCustom:
      if (!c.custom_h) throw std::invalid_argument("custom component has no h");
      return c.custom_h(v);
  }
  throw std::logic_error("h_of: unreachable");
}

bool h_is_indicator(const ComponentSpec& c) {
  return c.dist == Dist::kLogNormal || c.dist == Dist::kExpOfExp;
}

double sample(const ComponentSpec& c, rng::Stream& rs) {
  switch (c.dist) {
    case Dist::kExponential: return -std::log(rs.uniform01()) / c.rate;
    case Dist::kStdNormal: return rs.normal();
    case Dist::kHalfNormal: return num::normal_quantile(0.5 + 0.5 * rs.uniform01());
    case Dist::kLogNormal: return std::exp(rs.normal());
    case Dist::kExpOfExp: return std::log1p(-std::log(rs.uniform01()));
    case Dist::kCustom:
      throw std::invalid_argument("custom component has no sampler");
  }
  throw std::logic_error("sample: unreachable");
}

double scaling_sequence(const ComponentSpec& c, std::int64_t n_points) {
  if (n_points < 2) throw std::domain_error("scaling_sequence: N must be >= 2");
  const double tail = 1.0 / static_cast<double>(n_points);
  switch (c.dist) {
    case Dist::kExponential: return -std::log(tail) / c.rate;
    case Dist::kStdNormal: return num::normal_quantile(1.0 - tail);
    case Dist::kHalfNormal: return num::normal_quantile(1.0 - 0.5 * tail);
    case Dist::kLogNormal: return std::exp(num::normal_quantile(1.0 - tail));
    case Dist::kExpOfExp: return std::log1p(-std::log(tail));
    case Dist::kCustom: break;
  }
  // Bracketed root solve on survival(x) = 1/N.
  double lo = 0.0, hi = 1.0;
  int guard = 0;
  while (survival(c, hi) > tail) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 4000) throw std::runtime_error("scaling_sequence: bracket expansion failed");
  }
  const double root =
      num::bisect([&](double x) { return survival(c, x) - tail; }, lo, hi);
  if (!(std::abs(survival(c, root) - tail) <= 1e-10 * tail + 1e-300))
    throw std::runtime_error("scaling_sequence: root solve did not converge");
  return root;
}

namespace {

// Candidate values forced into every grid so that indicator-type h is
// evaluated at its jump neighborhoods, not left to grid luck.
constexpr double kJustAboveZero = 1e-12;
constexpr double kJustBelowOne = 1.0 - 1e-12;

double sweep(const std::vector<std::function<double(double)>>& h_list,
             const std::vector<double>& lo, const std::vector<double>& hi, int points,
             std::vector<double>& best_u) {
  const std::size_t k = h_list.size();
  std::vector<std::vector<double>> grids(k);
  for (std::size_t j = 0; j < k; ++j) {
    auto& g = grids[j];
    const double step = (hi[j] - lo[j]) / (points - 1);
    for (int i = 0; i < points; ++i) g.push_back(lo[j] + step * i);
    for (double c : {0.0, kJustAboveZero, kJustBelowOne, 1.0}) g.push_back(c);
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
  }
  double best = -1.0;
  std::vector<double> u(k, 0.0);
  std::vector<double> coord(k, 0.0);

  // Exhaustive product grid, k <= 3.
  const auto eval_last = [&](std::size_t j_last, double budget, double partial) {
    for (double v : grids[j_last]) {
      const double hj = h_list[j_last](v);
      if (hj > budget) continue;
      if (partial + v > best) {
        best = partial + v;
        coord[j_last] = v;
        u = coord;
      }
    }
  };
  if (k == 1) {
    eval_last(0, 1.0, 0.0);
  } else if (k == 2) {
    for (double v0 : grids[0]) {
      const double h0 = h_list[0](v0);
      if (h0 > 1.0) continue;
      coord[0] = v0;
      eval_last(1, 1.0 - h0, v0);
    }
  } else if (k == 3) {
    for (double v0 : grids[0]) {
      const double h0 = h_list[0](v0);
      if (h0 > 1.0) continue;
      coord[0] = v0;
      for (double v1 : grids[1]) {
        const double h1 = h_list[1](v1);
        if (h0 + h1 > 1.0) continue;
        coord[1] = v1;
        eval_last(2, 1.0 - h0 - h1, v0 + v1);
      }
    }
  }
  best_u = u;
  return best;
}

}  // namespace

double c_star(const std::vector<std::function<double(double)>>& h_list, double tolerance) {
  const std::size_t k = h_list.size();
  if (k < 1 || k > 3)
    throw std::invalid_argument("c_star: supported for 1 <= k <= 3 components");
  if (!(tolerance > 0.0)) throw std::domain_error("c_star: tolerance must be > 0");

  const int points = (k == 1) ? 4097 : (k == 2 ? 257 : 65);
  std::vector<double> lo(k, 0.0), hi(k, 1.0), best_u;
  double best = sweep(h_list, lo, hi, points, best_u);
  if (best < 0.0) throw std::runtime_error("c_star: feasible set empty on grid");

  double prev = best;
  for (int round = 0; round < 90; ++round) {
    for (std::size_t j = 0; j < k; ++j) {
      const double half = (hi[j] - lo[j]) / 8.0;
      lo[j] = std::max(0.0, best_u[j] - half);
      hi[j] = std::min(1.0, best_u[j] + half);
    }
    std::vector<double> u;
    const double val = sweep(h_list, lo, hi, points, u);
    if (val > best) {
      best = val;
      best_u = u;
    }
    if (round >= 2 && best - prev < tolerance * 0.25) return best;
    prev = best;
  }
  throw std::runtime_error("c_star: refinement did not converge");
}

ExtremalProblem make_problem(std::vector<ComponentSpec> components, std::int64_t n_points,
                             double tolerance) {
  if (components.empty() || components.size() > 3)
    throw std::invalid_argument("make_problem: need 1 to 3 components");
  ExtremalProblem p;
  p.components = std::move(components);
  p.n_points = n_points;
  for (const auto& c : p.components) p.a_scalings.push_back(scaling_sequence(c, n_points));
  std::vector<std::function<double(double)>> hs;
  for (const auto& c : p.components)
    hs.push_back([&c](double v) { return h_of(c, v); });
  p.c_star = c_star(hs, tolerance);
  return p;
}

MaxSumStats mc_max_of_sums(const ExtremalProblem& problem, std::int64_t reps, rng::Handle handle) {
  if (reps < 1) throw std::domain_error("mc_max_of_sums: reps must be >= 1");
  MaxSumStats stats;
  stats.samples.reserve(static_cast<std::size_t>(reps));
  const std::size_t k = problem.components.size();
  for (std::int64_t r = 0; r < reps; ++r) {
    const auto h = handle.for_rep(static_cast<std::uint32_t>(r));
    std::vector<rng::Stream> streams;
    streams.reserve(k);
    for (std::size_t j = 0; j < k; ++j)
      streams.push_back(h.scratch(static_cast<std::uint32_t>(j)));
    double best = -std::numeric_limits<double>::infinity();
    for (std::int64_t i = 0; i < problem.n_points; ++i) {
      double sum = 0.0;
      for (std::size_t j = 0; j < k; ++j)
        sum += sample(problem.components[j], streams[j]) / problem.a_scalings[j];
      best = std::max(best, sum);
    }
    stats.samples.push_back(best);
  }
  std::sort(stats.samples.begin(), stats.samples.end());
  const auto m = num::sample_moments(stats.samples);
  stats.mean = m.mean;
  stats.stddev = m.stddev;
  stats.median = num::quantile_of_sorted(stats.samples, 0.5);
  stats.q10 = num::quantile_of_sorted(stats.samples, 0.10);
  stats.q90 = num::quantile_of_sorted(stats.samples, 0.90);
  return stats;
}

}  // namespace forkfluid::extremal
