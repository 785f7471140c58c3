#include "forkfluid/fluid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace forkfluid::fluid {

double q_empty_start(double alpha, double beta, double t) {
  if (!(alpha > 0.0 && beta > 0.0)) throw std::domain_error("q_empty_start: alpha, beta must be > 0");
  if (!(t >= 0.0)) throw std::domain_error("q_empty_start: t must be >= 0");
  if (t < alpha / (2.0 * beta * beta)) return std::sqrt(2.0 * alpha * t) - beta * t;
  return alpha / (2.0 * beta);
}

double steady_state(double alpha, double beta) {
  if (!(alpha > 0.0 && beta > 0.0)) throw std::domain_error("steady_state: alpha, beta must be > 0");
  return alpha / (2.0 * beta);
}

double q_n3_clock(double alpha, double t) {
  if (!(t >= 0.0)) throw std::domain_error("q_n3_clock: t must be >= 0");
  return std::sqrt(2.0 * alpha * t);
}

double g_closed_form(initcond::Family family, double alpha, double q0, double t) {
  if (!(q0 >= 0.0 && t >= 0.0)) throw std::domain_error("g_closed_form: q0, t must be >= 0");
  const double root = std::sqrt(2.0 * alpha * t);
  switch (family) {
    case initcond::Family::kZero:
    case initcond::Family::kDegenerate:
    case initcond::Family::kExpOfExp:
      return q0 + root;
    case initcond::Family::kHalfNormal:
      return std::sqrt(q0 * q0 + 2.0 * alpha * t);
    case initcond::Family::kLogNormal:
      return std::max(q0, root);
    case initcond::Family::kExponential:
      if (q0 == 0.0) return root;
      if (t < 2.0 * q0 * q0 / alpha) return q0 + alpha * t / (2.0 * q0);
      return root;
    case initcond::Family::kCustom:
      break;
  }
  throw std::invalid_argument("g_closed_form: no closed form for this family");
}

namespace {

double g_objective(const std::function<double(double)>& h, double coef_u, double q0, double v) {
  const double hv = h(v);
  if (!(hv >= 0.0)) throw std::domain_error("g_numeric: h(v) must be >= 0");
  if (hv > 1.0) return -1.0;  // infeasible even with u = 0
  const double u = std::sqrt(1.0 - hv);
  return coef_u * std::min(u, 1.0) + q0 * v;
}

}  // namespace

double g_numeric(const std::function<double(double)>& h, double alpha, double q0, double t,
                 double tolerance) {
  if (!(q0 >= 0.0 && t >= 0.0)) throw std::domain_error("g_numeric: q0, t must be >= 0");
  if (!(tolerance > 0.0)) throw std::domain_error("g_numeric: tolerance must be > 0");
  const double coef_u = std::sqrt(2.0 * alpha * t);

  constexpr int kPoints = 1025;
  double best = std::max(g_objective(h, coef_u, q0, 0.0), g_objective(h, coef_u, q0, 1.0));
  double lo = 0.0, hi = 1.0;
  double best_v = 0.0;
  double prev_best = -1.0;
  for (int round = 0; round < 120; ++round) {
    const double step = (hi - lo) / (kPoints - 1);
    for (int j = 0; j < kPoints; ++j) {
      const double v = lo + step * j;
      const double val = g_objective(h, coef_u, q0, v);
      if (val > best) {
        best = val;
        best_v = v;
      }
    }
    if (round >= 2 && best - prev_best < tolerance * 0.25) return best;
    prev_best = best;
    // shrink the window fourfold around the incumbent
    const double half = (hi - lo) / 8.0;
    lo = std::max(0.0, best_v - half);
    hi = std::min(1.0, best_v + half);
    if (hi - lo < 1e-300) return best;
  }
  throw std::runtime_error("g_numeric: grid refinement did not converge");
}

double q_full(double alpha, double beta, double q0, double t,
              const std::function<double(double, double, double)>& g_evaluator) {
  return std::max(q_empty_start(alpha, beta, t), g_evaluator(alpha, q0, t) - beta * t);
}

double q_full(initcond::Family family, double alpha, double beta, double q0, double t) {
  return std::max(q_empty_start(alpha, beta, t), g_closed_form(family, alpha, q0, t) - beta * t);
}

FluidCurve evaluate_curve(Regime regime, initcond::Family family, double alpha, double beta,
                          double q0, const std::vector<double>& t_grid) {
  FluidCurve c;
  c.regime = regime;
  c.alpha = alpha;
  c.beta = beta;
  c.q0 = q0;
  c.family = family;
  c.values.reserve(t_grid.size());
  for (double t : t_grid) {
    double v = 0.0;
    switch (regime) {
      case Regime::kTheorem1: v = q_full(family, alpha, beta, q0, t); break;
      case Regime::kN3Clock: v = q_n3_clock(alpha, t); break;
      case Regime::kSteadyState: v = steady_state(alpha, beta); break;
    }
    c.values.emplace_back(t, v);
  }
  return c;
}

}  // namespace forkfluid::fluid
