#include "forkfluid/validate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "forkfluid/numeric.hpp"

namespace forkfluid::validate {

VarianceIdentity variance_identity(const model::SystemParams& params, double t) {
  if (!(t > 0.0)) throw std::domain_error("variance_identity: t must be > 0");
  const double p = params.arrival_prob;
  const double q = params.service_prob;
  const std::int64_t n = model::slot_for_time(params, t);
  const double nd = static_cast<double>(n);
  const double nc = std::pow(static_cast<double>(params.n_servers), params.regime_exponent);
  const double log_n = params.log_n();

  VarianceIdentity out;
  out.n_slots = n;
  out.mean_term = (p - q) * nd / (nc * std::sqrt(log_n));
  out.variance_term = nd * (p * (1.0 - p) + q * (1.0 - q)) / (nc * nc * log_n);
  out.arrival_std_raw = std::sqrt(p * (1.0 - p) * nd);
  return out;
}

Standardization z_moments(const model::SystemParams& params, double t) {
  if (!(t > 0.0)) throw std::domain_error("z_moments: t must be > 0");
  const double q = params.service_prob;
  const std::int64_t n = model::slot_for_time(params, t);
  const double nd = static_cast<double>(n);
  const double n_servers = static_cast<double>(params.n_servers);
  const double log_n = params.log_n();
  // Zhat = Shat(n) * sqrt(t * clock) / (sqrt(alpha t (1-alpha/N) log N) sqrt(n)),
  // Shat(n) = (q n - S(n))/N with S(n) ~ Bin(n, q).
  const double k = std::sqrt(t * params.temporal_scale()) /
                   (n_servers * std::sqrt(params.alpha * t * (1.0 - params.alpha / n_servers) * log_n) *
                    std::sqrt(nd));
  Standardization s;
  s.mean = 0.0;  // E[q n - S(n)] = 0 identically
  s.variance = nd * q * (1.0 - q) * k * k;
  return s;
}

BerryEsseen berry_esseen_distance(const model::SystemParams& params, double t, bool negate) {
  if (!(t > 0.0)) throw std::domain_error("berry_esseen_distance: t must be > 0");
  const double q = params.service_prob;
  const std::int64_t n = model::slot_for_time(params, t);
  const double nd = static_cast<double>(n);
  const double n_servers = static_cast<double>(params.n_servers);
  const double log_n = params.log_n();
  const double k = std::sqrt(t * params.temporal_scale()) /
                   (n_servers * std::sqrt(params.alpha * t * (1.0 - params.alpha / n_servers) * log_n) *
                    std::sqrt(nd));
  const double mean = q * nd;

  // Zhat = (mean - S) * k jumps at z(s) = (mean - s) * k, s integer.
  // F(z(s)) = P(S >= s), left limit P(S >= s+1). For the negated variant
  // Zhat = (S - mean) * k, F(z(s)) = P(S <= s), left limit P(S <= s-1).
  const double span = 8.0 / k;
  const auto s_lo = static_cast<std::int64_t>(std::floor(mean - span));
  const auto s_hi = static_cast<std::int64_t>(std::ceil(mean + span));

  double d = 0.0;
  for (std::int64_t s = std::max<std::int64_t>(s_lo, 0); s <= std::min(s_hi, n); ++s) {
    const double z = negate ? (static_cast<double>(s) - mean) * k : (mean - static_cast<double>(s)) * k;
    if (std::abs(z) > 8.0) continue;
    const double phi = num::normal_cdf(z);
    double f_right, f_left;
    if (negate) {
      f_right = num::binomial_cdf(s, n, q);
      f_left = num::binomial_cdf(s - 1, n, q);
    } else {
      f_right = num::binomial_sf(s, n, q);
      f_left = num::binomial_sf(s + 1, n, q);
    }
    const double w = 1.0 + std::abs(z) * std::abs(z) * std::abs(z);
    d = std::max(d, std::abs(f_right - phi) * w);
    d = std::max(d, std::abs(f_left - phi) * w);
  }
  BerryEsseen out;
  out.d_n = d;
  out.scaled = d * n_servers * std::sqrt(log_n);
  out.n_slots = n;
  return out;
}

PickandsEstimate pickands_moment(const model::SystemParams& params, double t, std::int64_t reps,
                                 rng::Handle handle) {
  if (reps < 100) throw std::domain_error("pickands_moment: reps must be >= 100");
  const double q = params.service_prob;
  const std::int64_t n = model::slot_for_time(params, t);
  const double mean = q * static_cast<double>(n);
  const double n_servers_d = static_cast<double>(params.n_servers);
  const double log_n = params.log_n();

  std::vector<double> vals;
  vals.reserve(static_cast<std::size_t>(reps));
  for (std::int64_t r = 0; r < reps; ++r) {
    auto rs = handle.for_rep(static_cast<std::uint32_t>(r)).scratch(3);
    double mx = -std::numeric_limits<double>::infinity();
    for (std::int64_t i = 0; i < params.n_servers; ++i) {
      const auto s = num::binomial_sample(n, q, rs);
      mx = std::max(mx, (mean - static_cast<double>(s)) / n_servers_d);
    }
    const double positive = std::max(mx / log_n, 0.0);
    vals.push_back(std::pow(positive, 2.5));
  }
  const auto m = num::sample_moments(vals);
  PickandsEstimate out;
  out.estimate = m.mean;
  out.ci_halfwidth = 1.96 * m.stddev / std::sqrt(static_cast<double>(reps));
  out.reps = reps;
  return out;
}

double max_normal_baseline(std::int64_t n, std::int64_t reps, rng::Handle handle) {
  if (n < 2 || reps < 1) throw std::domain_error("max_normal_baseline: bad arguments");
  auto rs = handle.scratch(4);
  const double inv_n = 1.0 / static_cast<double>(n);
  double acc = 0.0;
  for (std::int64_t r = 0; r < reps; ++r) {
    const double u = std::exp(std::log(rs.uniform01()) * inv_n);  // U^(1/n) ~ CDF of the max
    acc += num::normal_quantile(u);
  }
  return (acc / static_cast<double>(reps)) / std::sqrt(2.0 * std::log(static_cast<double>(n)));
}

MaxExpStd max_exponential_std(std::int64_t n, std::int64_t reps, rng::Handle handle) {
  if (n < 1) throw std::domain_error("max_exponential_std: n must be >= 1");
  if (reps < 10000) throw std::domain_error("max_exponential_std: reps must be >= 1e4");
  const double mean = static_cast<double>(n);
  std::vector<double> maxima;
  maxima.reserve(static_cast<std::size_t>(reps));
  for (std::int64_t r = 0; r < reps; ++r) {
    auto rs = handle.for_rep(static_cast<std::uint32_t>(r)).scratch(5);
    double mx = 0.0;
    for (std::int64_t i = 0; i < n; ++i) mx = std::max(mx, rs.exponential(mean));
    maxima.push_back(mx);
  }
  MaxExpStd out;
  out.reps = reps;
  out.mc_std = num::sample_moments(maxima).stddev;
  out.analytic_gumbel = std::numbers::pi / std::sqrt(6.0) * mean;
  double basel = 0.0;
  for (std::int64_t i = n; i >= 1; --i) basel += 1.0 / (static_cast<double>(i) * static_cast<double>(i));
  out.exact_finite_n = mean * std::sqrt(basel);
  return out;
}

}  // namespace forkfluid::validate
