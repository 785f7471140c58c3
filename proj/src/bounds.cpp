#include "forkfluid/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "forkfluid/numeric.hpp"

namespace forkfluid::bounds {

namespace {

void check_m(const model::SystemParams& params, double m) {
  if (!(m > 0.0 && m < params.beta))
    throw std::domain_error("bounds: split parameter m must lie in (0, beta)");
}

}  // namespace

TwoPoint arrival_upper_increment(const model::SystemParams& params, double m) {
  check_m(params, m);
  const double nd = static_cast<double>(params.n_servers);
  const double n2 = nd * nd;
  const double shift = params.alpha / nd + params.beta / n2 - m / n2;
  TwoPoint inc;
  inc.p_rare = params.alpha / nd + params.beta / n2;  // 1 - p
  inc.x_rare = -1.0 + shift;
  inc.x_common = shift;
  return inc;
}

TwoPoint service_upper_increment(const model::SystemParams& params, double m) {
  check_m(params, m);
  const double nd = static_cast<double>(params.n_servers);
  const double n2 = nd * nd;
  const double shift = -params.alpha / nd - params.beta / n2 + m / n2;
  TwoPoint inc;
  inc.p_rare = params.alpha / nd;  // 1 - q
  inc.x_rare = 1.0 + shift;
  inc.x_common = shift;
  return inc;
}

double increment_value(const TwoPoint& inc, bool rare) {
  return rare ? inc.x_rare : inc.x_common;
}

double mgf_minus_one(const TwoPoint& inc, double theta) {
  return inc.p_rare * std::expm1(theta * inc.x_rare) +
         (1.0 - inc.p_rare) * std::expm1(theta * inc.x_common);
}

double solve_theta(const TwoPoint& inc, double first_order_guess, double tolerance) {
  if (!(tolerance > 0.0)) throw std::domain_error("solve_theta: tolerance must be > 0");
  if (!(inc.mean() < 0.0))
    throw std::domain_error("solve_theta: increment must have negative drift");
  double hi = 10.0 * first_order_guess;
  if (!(hi > 0.0)) throw std::domain_error("solve_theta: positive first-order guess required");
  int guard = 0;
  while (mgf_minus_one(inc, hi) <= 0.0) {
    hi *= 2.0;
    if (++guard > 200) throw std::runtime_error("solve_theta: bracket expansion failed");
  }
  // The MGF residual is negative on (0, root); start the bracket strictly
  // inside so bisection cannot collapse onto the trivial root at 0.
  double lo = 0.1 * first_order_guess;
  guard = 0;
  while (mgf_minus_one(inc, lo) >= 0.0) {
    lo *= 0.5;
    if (++guard > 200) throw std::runtime_error("solve_theta: no negative residual near 0");
  }
  const double theta =
      num::bisect([&](double th) { return mgf_minus_one(inc, th); }, lo, hi);
  if (!(theta > 0.0)) throw std::runtime_error("solve_theta: collapsed to the trivial root");
  if (std::abs(mgf_minus_one(inc, theta)) > tolerance)
    throw std::runtime_error("solve_theta: residual above tolerance");
  return theta;
}

double theta_A_first_order(const model::SystemParams& params, double m) {
  return 2.0 * m / (params.alpha * static_cast<double>(params.n_servers));
}

double theta_A_second_order(const model::SystemParams& params, double m) {
  const double a = params.alpha;
  const double b = params.beta;
  const double x = 1.0 / static_cast<double>(params.n_servers);
  const double second = 4.0 * m * (3.0 * a * a - 3.0 * b + 2.0 * m) / (3.0 * a * a);
  return (2.0 * m / a) * x + 0.5 * second * x * x;
}

double theta_S_first_order(const model::SystemParams& params, double m) {
  return 2.0 * (params.beta - m) / (params.alpha * static_cast<double>(params.n_servers));
}

double solve_theta_A(const model::SystemParams& params, double m, double tolerance) {
  return solve_theta(arrival_upper_increment(params, m), theta_A_first_order(params, m),
                     tolerance);
}

double solve_theta_S(const model::SystemParams& params, double m, double tolerance) {
  return solve_theta(service_upper_increment(params, m), theta_S_first_order(params, m),
                     tolerance);
}

ChernoffSetup make_chernoff(const model::SystemParams& params, double m, double tolerance) {
  if (std::isnan(m)) m = 0.5 * params.beta;
  check_m(params, m);
  ChernoffSetup s;
  s.params = params;
  s.m = m;
  s.theta_A = solve_theta_A(params, m, tolerance);
  s.theta_S = solve_theta_S(params, m, tolerance);
  s.exp_mean = params.alpha * static_cast<double>(params.n_servers) / (2.0 * (params.beta - m));
  return s;
}

namespace {

// Supremum of a two-point random walk whose common branch has constant
// sign, over slots 1..horizon. The path is piecewise linear between rare
// slots, so the supremum is attained at segment ends; geometric gaps give
// the rare slots.
double sup_two_point_walk(const TwoPoint& inc, std::int64_t horizon, rng::Stream& rs) {
  double value = 0.0;
  double sup = 0.0;  // k = 0 term
  std::int64_t pos = 0;
  const bool climb_common = inc.x_common > 0.0;
  for (;;) {
    const std::uint64_t gap = rs.geometric(inc.p_rare);
    if (gap > static_cast<std::uint64_t>(horizon - pos)) {
      const double tail = static_cast<double>(horizon - pos) * inc.x_common;
      if (climb_common) sup = std::max(sup, value + tail);
      return sup;
    }
    pos += static_cast<std::int64_t>(gap);
    const double before_rare = value + static_cast<double>(gap - 1) * inc.x_common;
    value = before_rare + inc.x_rare;
    sup = std::max(sup, climb_common ? before_rare : value);
  }
}

}  // namespace

std::vector<double> mc_sup_arrival_upper(const model::SystemParams& params, double m,
                                         std::int64_t horizon, std::int64_t paths,
                                         rng::Handle handle) {
  const TwoPoint inc = arrival_upper_increment(params, m);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(paths));
  for (std::int64_t r = 0; r < paths; ++r) {
    auto rs = handle.for_rep(static_cast<std::uint32_t>(r)).scratch(0);
    out.push_back(sup_two_point_walk(inc, horizon, rs));
  }
  return out;
}

std::vector<double> mc_sup_service_upper(const model::SystemParams& params, double m,
                                         std::int64_t horizon, std::int64_t paths,
                                         rng::Handle handle) {
  const TwoPoint inc = service_upper_increment(params, m);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(paths));
  for (std::int64_t r = 0; r < paths; ++r) {
    auto rs = handle.for_rep(static_cast<std::uint32_t>(r)).scratch(1);
    out.push_back(sup_two_point_walk(inc, horizon, rs));
  }
  return out;
}

double gumbel_finite_n_cdf(std::int64_t n, double x) {
  const double z = std::exp(-x) / static_cast<double>(n);
  if (z >= 1.0) return 0.0;
  return std::pow(1.0 - z, static_cast<double>(n));
}

GumbelCheck gumbel_check(const model::SystemParams& params, double m, std::int64_t reps,
                         rng::Handle handle) {
  check_m(params, m);
  if (reps < 100) throw std::domain_error("gumbel_check: reps must be >= 100");
  const std::int64_t n = params.n_servers;
  const double scale = params.alpha / (2.0 * (params.beta - m));
  const double mean = scale * static_cast<double>(n);
  const double log_n = std::log(static_cast<double>(n));

  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(reps));
  for (std::int64_t r = 0; r < reps; ++r) {
    auto rs = handle.for_rep(static_cast<std::uint32_t>(r)).scratch(2);
    double mx = 0.0;
    for (std::int64_t i = 0; i < n; ++i) mx = std::max(mx, rs.exponential(mean));
    xs.push_back(mx / (static_cast<double>(n) * scale) - log_n);
  }
  GumbelCheck out;
  out.scale = scale;
  out.ks_gumbel = num::ks_distance(xs, [](double x) { return std::exp(-std::exp(-x)); });
  out.ks_finite_n = num::ks_distance(xs, [n](double x) { return gumbel_finite_n_cdf(n, x); });
  return out;
}

}  // namespace forkfluid::bounds
