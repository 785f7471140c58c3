#pragma once

// Closed-form and numerical evaluation of the limit curves: the empty-start
// fluid limit, the initial-condition part g(t, q0) per family (closed form)
// or from its tail-exponent function h (constrained-supremum solver), the
// N^3-clock limit and the steady state.

#include <functional>
#include <vector>

#include "forkfluid/initcond.hpp"

namespace forkfluid::fluid {

// sqrt(2 alpha t) - beta t before the plateau time alpha/(2 beta^2),
// alpha/(2 beta) from there on.
double q_empty_start(double alpha, double beta, double t);

double steady_state(double alpha, double beta);

// Limit under the N^3 clock with sqrt(log N) spatial scaling.
double q_n3_clock(double alpha, double t);

// Family closed forms for g(t, q0):
//   finite-endpoint and exp_of_exp:  q0 + sqrt(2 alpha t)
//   half-normal:                     sqrt(q0^2 + 2 alpha t)
//   lognormal:                       max(q0, sqrt(2 alpha t))
//   exponential:                     q0 + alpha t/(2 q0) for t < 2 q0^2/alpha,
//                                    else sqrt(2 alpha t)
double g_closed_form(initcond::Family family, double alpha, double q0, double t);

// sup { sqrt(2 alpha t) u + q0 v : u^2 + h(v) <= 1, u,v in [0,1] } with
// u(v) = sqrt(max(0, 1 - h(v))) eliminated, maximized over a refining
// v-grid; v = 0 and v = 1 are always evaluated explicitly. Throws on
// non-convergence.
double g_numeric(const std::function<double(double)>& h, double alpha, double q0, double t,
                 double tolerance = 1e-9);

// Pairwise max of the empty-start branch and g(t, q0) - beta t.
double q_full(double alpha, double beta, double q0, double t,
              const std::function<double(double, double, double)>& g_evaluator);
double q_full(initcond::Family family, double alpha, double beta, double q0, double t);

enum class Regime { kTheorem1, kN3Clock, kSteadyState };

struct FluidCurve {
  Regime regime = Regime::kTheorem1;
  double alpha = 1.0;
  double beta = 1.0;
  double q0 = 0.0;
  initcond::Family family = initcond::Family::kZero;
  std::vector<std::pair<double, double>> values;  // (t, q(t))
};

FluidCurve evaluate_curve(Regime regime, initcond::Family family, double alpha, double beta,
                          double q0, const std::vector<double>& t_grid);

}  // namespace forkfluid::fluid
