#include "forkfluid/initcond.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "forkfluid/numeric.hpp"

namespace forkfluid::initcond {

std::string family_name(Family f) {
  switch (f) {
    case Family::kZero: return "zero";
    case Family::kDegenerate: return "degenerate";
    case Family::kHalfNormal: return "half_normal";
    case Family::kLogNormal: return "lognormal";
    case Family::kExpOfExp: return "exp_of_exp";
    case Family::kExponential: return "exponential";
    case Family::kCustom: return "custom";
  }
  return "unknown";
}

Family family_from_name(const std::string& name) {
  if (name == "zero") return Family::kZero;
  if (name == "degenerate") return Family::kDegenerate;
  if (name == "half_normal") return Family::kHalfNormal;
  if (name == "lognormal") return Family::kLogNormal;
  if (name == "exp_of_exp") return Family::kExpOfExp;
  if (name == "exponential") return Family::kExponential;
  if (name == "custom") return Family::kCustom;
  throw std::invalid_argument("unknown initial-condition family: " + name);
}

bool has_finite_endpoint(Family f) {
  return f == Family::kZero || f == Family::kDegenerate;
}

double h_of(const InitialConditionSpec& spec, double v) {
  if (!(v >= 0.0 && v <= 1.0)) throw std::domain_error("h_of: v outside [0,1]");
  switch (spec.family) {
    case Family::kZero:
    case Family::kDegenerate:
      return std::numeric_limits<double>::infinity();
    case Family::kHalfNormal: return v * v;
    case Family::kLogNormal: return v > 0.0 ? 1.0 : 0.0;
    case Family::kExpOfExp: return v == 1.0 ? 1.0 : 0.0;
    case Family::kExponential: return v;
    case Family::kCustom:
      if (!spec.custom_h) throw std::invalid_argument("custom family has no h function");
      return spec.custom_h(v);
  }
  throw std::logic_error("h_of: unreachable");
}

double b_scale(const InitialConditionSpec& spec, std::int64_t n) {
  if (n < 3) throw std::domain_error("b_scale: requires N >= 3");
  const double nd = static_cast<double>(n);
  const double tail = 1.0 / nd;
  switch (spec.family) {
    case Family::kZero: return 1.0;
    case Family::kDegenerate: return spec.endpoint;
    case Family::kHalfNormal: return std::sqrt(2.0 * std::log(nd));
    case Family::kLogNormal: return std::exp(num::normal_quantile(1.0 - tail));
    case Family::kExpOfExp: return std::log(1.0 + std::log(nd));
    case Family::kExponential: return std::log(nd) / spec.rate;
    case Family::kCustom: {
      if (!spec.custom_quantile)
        throw std::invalid_argument("custom family has no quantile function");
      return spec.custom_quantile(1.0 - tail);
    }
  }
  throw std::logic_error("b_scale: unreachable");
}

double r_scaling_for(const InitialConditionSpec& spec, std::int64_t n) {
  if (spec.q0_target < 0.0) throw std::domain_error("r_scaling_for: q0 must be >= 0");
  if (spec.q0_target == 0.0 || spec.family == Family::kZero) return 0.0;
  if (n < 3) throw std::domain_error("r_scaling_for: requires N >= 3");
  const double nd = static_cast<double>(n);
  return spec.q0_target * nd * std::log(nd) / b_scale(spec, n);
}

double sample_u(const InitialConditionSpec& spec, rng::Stream& rs) {
  switch (spec.family) {
    case Family::kZero: return 0.0;
    case Family::kDegenerate: return spec.endpoint;
    case Family::kHalfNormal: {
      const double u = rs.uniform01();
      return num::normal_quantile(0.5 + 0.5 * u);
    }
    case Family::kLogNormal: return std::exp(num::normal_quantile(rs.uniform01()));
    case Family::kExpOfExp: {
      // survival exp(1 - e^v) inverted at s ~ U(0,1)
      return std::log1p(-std::log(rs.uniform01()));
    }
    case Family::kExponential: return -std::log(rs.uniform01()) / spec.rate;
    case Family::kCustom: {
      if (!spec.custom_quantile)
        throw std::invalid_argument("custom family has no quantile function");
      return spec.custom_quantile(rs.uniform01());
    }
  }
  throw std::logic_error("sample_u: unreachable");
}

std::int64_t dependent_offset(const InitialConditionSpec& spec, std::int64_t n) {
  if (spec.offset_kappa <= 0.0) return 0;
  const double nd = static_cast<double>(n);
  return static_cast<std::int64_t>(
      std::floor(spec.offset_kappa * nd * std::sqrt(std::log(nd))));
}

std::vector<std::int64_t> sample_initial(const InitialConditionSpec& spec, std::int64_t n,
                                         rng::Stream& rs) {
  if (n < 1) throw std::domain_error("sample_initial: N must be >= 1");
  if (spec.q0_target < 0.0) throw std::domain_error("sample_initial: q0 must be >= 0");
  const double r = r_scaling_for(spec, n);
  const std::int64_t off = dependent_offset(spec, n);
  std::vector<std::int64_t> out(static_cast<std::size_t>(n));
  for (auto& v : out) {
    const double scaled = (r == 0.0) ? 0.0 : std::floor(r * sample_u(spec, rs));
    v = static_cast<std::int64_t>(scaled) + off;
  }
  return out;
}

}  // namespace forkfluid::initcond
