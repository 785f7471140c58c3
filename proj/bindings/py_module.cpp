// Python bindings for the main operations: parameterization, simulators,
// fluid-limit evaluation, extremal constants, Chernoff roots, and the
// numeric validation checks.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "forkfluid/bounds.hpp"
#include "forkfluid/experiment.hpp"
#include "forkfluid/extremal.hpp"
#include "forkfluid/fluid.hpp"
#include "forkfluid/initcond.hpp"
#include "forkfluid/model.hpp"
#include "forkfluid/validate.hpp"

namespace py = pybind11;
using namespace forkfluid;

namespace {

initcond::InitialConditionSpec make_init_spec(const std::string& family, double q0,
                                              double endpoint, double rate, double offset_kappa) {
  initcond::InitialConditionSpec spec;
  spec.family = initcond::family_from_name(family);
  spec.q0_target = q0;
  spec.endpoint = endpoint;
  spec.rate = rate;
  spec.offset_kappa = offset_kappa;
  return spec;
}

}  // namespace

PYBIND11_MODULE(_forkfluid, m) {
  m.doc() = "N-server fork-join queues with nearly deterministic Bernoulli "
            "arrivals/services: simulators, fluid limits, extreme-value and "
            "Chernoff-bound numerics.";

  py::class_<model::SystemParams>(m, "SystemParams")
      .def_readonly("alpha", &model::SystemParams::alpha)
      .def_readonly("beta", &model::SystemParams::beta)
      .def_readonly("n_servers", &model::SystemParams::n_servers)
      .def_readonly("regime_exponent", &model::SystemParams::regime_exponent)
      .def_readonly("arrival_prob", &model::SystemParams::arrival_prob)
      .def_readonly("service_prob", &model::SystemParams::service_prob)
      .def("temporal_scale", &model::SystemParams::temporal_scale)
      .def("spatial_scale", &model::SystemParams::spatial_scale)
      .def("__repr__", [](const model::SystemParams& p) {
        return "SystemParams(alpha=" + std::to_string(p.alpha) +
               ", beta=" + std::to_string(p.beta) + ", N=" + std::to_string(p.n_servers) + ")";
      });

  m.def("make_params", &model::make_params, py::arg("alpha"), py::arg("beta"),
        py::arg("n_servers"), py::arg("regime_exponent") = 1.0);
  m.def("slot_for_time", &model::slot_for_time);

  py::class_<model::FailureSchedule>(m, "FailureSchedule")
      .def_readonly("horizon_slots", &model::FailureSchedule::horizon_slots)
      .def_readonly("arrival_failure_slots", &model::FailureSchedule::arrival_failure_slots)
      .def_readonly("service_failure_slots", &model::FailureSchedule::service_failure_slots);

  py::class_<model::TrajectoryFrame>(m, "TrajectoryFrame")
      .def_readonly("scaled_time", &model::TrajectoryFrame::scaled_time)
      .def_readonly("slot", &model::TrajectoryFrame::slot)
      .def_readonly("raw_max_queue", &model::TrajectoryFrame::raw_max_queue)
      .def_readonly("scaled_max_queue", &model::TrajectoryFrame::scaled_max_queue)
      .def_readonly("per_server_queues", &model::TrajectoryFrame::per_server_queues);

  py::class_<model::SimulationResult>(m, "SimulationResult")
      .def_readonly("frames", &model::SimulationResult::frames)
      .def_readonly("init_snapshot", &model::SimulationResult::init_snapshot)
      .def_readonly("event_count", &model::SimulationResult::event_count);

  m.def(
      "generate_schedule",
      [](const model::SystemParams& p, std::int64_t horizon, std::uint64_t seed, std::uint32_t rep) {
        return model::generate_schedule(p, horizon, rng::Handle{seed, rep});
      },
      py::arg("params"), py::arg("horizon_slots"), py::arg("seed"), py::arg("rep") = 0);

  m.def("simulate_slots", &model::simulate_slots, py::arg("params"), py::arg("schedule"),
        py::arg("init"), py::arg("sample_slots"), py::arg("with_per_server") = true);
  m.def("simulate_events", &model::simulate_events, py::arg("params"), py::arg("schedule"),
        py::arg("init"), py::arg("sample_slots"), py::arg("with_per_server") = true);

  m.def(
      "simulate_scaled",
      [](const model::SystemParams& p, const std::vector<double>& t_grid,
         const std::string& family, double q0, double rate, std::uint64_t seed, std::uint32_t rep,
         bool with_per_server) {
        const auto spec = make_init_spec(family, q0, 1.0, rate, 0.0);
        return model::simulate_scaled(p, t_grid, spec, rng::Handle{seed, rep}, with_per_server);
      },
      py::arg("params"), py::arg("t_grid"), py::arg("family") = "zero", py::arg("q0") = 0.0,
      py::arg("rate") = 1.0, py::arg("seed") = 20240904, py::arg("rep") = 0,
      py::arg("with_per_server") = false);

  py::class_<model::DualityReport>(m, "DualityReport")
      .def_readonly("pmf_forward", &model::DualityReport::pmf_forward)
      .def_readonly("pmf_reversed", &model::DualityReport::pmf_reversed)
      .def_readonly("tv_distance", &model::DualityReport::tv_distance)
      .def_readonly("pmf_monte_carlo", &model::DualityReport::pmf_monte_carlo);

  m.def(
      "duality_check",
      [](const model::SystemParams& p, std::int64_t n_slots, std::int64_t reps, std::uint64_t seed) {
        return model::duality_check(p, n_slots, reps, rng::Handle{seed, 0});
      },
      py::arg("params"), py::arg("n_slots"), py::arg("reps") = 0, py::arg("seed") = 20240904);

  // initial conditions
  m.def(
      "sample_initial",
      [](const std::string& family, double q0, std::int64_t n, double endpoint, double rate,
         double offset_kappa, std::uint64_t seed, std::uint32_t rep) {
        const auto spec = make_init_spec(family, q0, endpoint, rate, offset_kappa);
        auto rs = rng::Handle{seed, rep}.init();
        return initcond::sample_initial(spec, n, rs);
      },
      py::arg("family"), py::arg("q0"), py::arg("n_servers"), py::arg("endpoint") = 1.0,
      py::arg("rate") = 1.0, py::arg("offset_kappa") = 0.0, py::arg("seed") = 20240904,
      py::arg("rep") = 0);
  m.def(
      "h_of",
      [](const std::string& family, double v) {
        return initcond::h_of(make_init_spec(family, 0.0, 1.0, 1.0, 0.0), v);
      },
      py::arg("family"), py::arg("v"));
  m.def(
      "r_scaling_for",
      [](const std::string& family, double q0, std::int64_t n, double endpoint, double rate) {
        return initcond::r_scaling_for(make_init_spec(family, q0, endpoint, rate, 0.0), n);
      },
      py::arg("family"), py::arg("q0"), py::arg("n_servers"), py::arg("endpoint") = 1.0,
      py::arg("rate") = 1.0);

  // fluid limits
  m.def("q_empty_start", &fluid::q_empty_start);
  m.def("steady_state", &fluid::steady_state);
  m.def("q_n3_clock", &fluid::q_n3_clock);
  m.def(
      "g_closed_form",
      [](const std::string& family, double alpha, double q0, double t) {
        return fluid::g_closed_form(initcond::family_from_name(family), alpha, q0, t);
      },
      py::arg("family"), py::arg("alpha"), py::arg("q0"), py::arg("t"));
  m.def("g_numeric", &fluid::g_numeric, py::arg("h"), py::arg("alpha"), py::arg("q0"),
        py::arg("t"), py::arg("tolerance") = 1e-9);
  m.def(
      "q_full",
      [](const std::string& family, double alpha, double beta, double q0, double t) {
        return fluid::q_full(initcond::family_from_name(family), alpha, beta, q0, t);
      },
      py::arg("family"), py::arg("alpha"), py::arg("beta"), py::arg("q0"), py::arg("t"));

  // extremal
  m.def("c_star", &extremal::c_star, py::arg("h_list"), py::arg("tolerance") = 1e-7);
  m.def(
      "scaling_sequence",
      [](const std::string& dist, std::int64_t n, double rate) {
        extremal::ComponentSpec c;
        c.dist = extremal::dist_from_name(dist);
        c.rate = rate;
        return extremal::scaling_sequence(c, n);
      },
      py::arg("dist"), py::arg("n_points"), py::arg("rate") = 1.0);
  m.def(
      "mc_max_of_sums",
      [](const std::vector<std::string>& dists, std::int64_t n_points, std::int64_t reps,
         std::uint64_t seed) {
        std::vector<extremal::ComponentSpec> comps;
        for (const auto& d : dists) {
          extremal::ComponentSpec c;
          c.dist = extremal::dist_from_name(d);
          comps.push_back(c);
        }
        const auto problem = extremal::make_problem(comps, n_points);
        const auto stats = extremal::mc_max_of_sums(problem, reps, rng::Handle{seed, 0});
        py::dict out;
        out["c_star"] = problem.c_star;
        out["a_scalings"] = problem.a_scalings;
        out["mean"] = stats.mean;
        out["median"] = stats.median;
        out["stddev"] = stats.stddev;
        return out;
      },
      py::arg("dists"), py::arg("n_points"), py::arg("reps"), py::arg("seed") = 20240904);

  // bounds
  m.def("solve_theta_A", &bounds::solve_theta_A, py::arg("params"), py::arg("m"),
        py::arg("tolerance") = 1e-13);
  m.def("solve_theta_S", &bounds::solve_theta_S, py::arg("params"), py::arg("m"),
        py::arg("tolerance") = 1e-13);
  m.def("theta_A_first_order", &bounds::theta_A_first_order);
  m.def("theta_A_second_order", &bounds::theta_A_second_order);
  m.def("theta_S_first_order", &bounds::theta_S_first_order);
  m.def("tail_bound_sup", &bounds::tail_bound_sup);
  m.def(
      "gumbel_check",
      [](const model::SystemParams& p, double m, std::int64_t reps, std::uint64_t seed) {
        const auto g = bounds::gumbel_check(p, m, reps, rng::Handle{seed, 0});
        py::dict out;
        out["ks_gumbel"] = g.ks_gumbel;
        out["ks_finite_n"] = g.ks_finite_n;
        out["scale"] = g.scale;
        return out;
      },
      py::arg("params"), py::arg("m"), py::arg("reps"), py::arg("seed") = 20240904);

  // validation
  m.def("variance_identity", [](const model::SystemParams& p, double t) {
    const auto v = validate::variance_identity(p, t);
    py::dict out;
    out["mean_term"] = v.mean_term;
    out["variance_term"] = v.variance_term;
    out["arrival_std_raw"] = v.arrival_std_raw;
    out["n_slots"] = v.n_slots;
    return out;
  });
  m.def(
      "berry_esseen_distance",
      [](const model::SystemParams& p, double t, bool negate) {
        const auto b = validate::berry_esseen_distance(p, t, negate);
        py::dict out;
        out["d_n"] = b.d_n;
        out["scaled"] = b.scaled;
        out["n_slots"] = b.n_slots;
        return out;
      },
      py::arg("params"), py::arg("t"), py::arg("negate") = false);
  m.def(
      "pickands_moment",
      [](const model::SystemParams& p, double t, std::int64_t reps, std::uint64_t seed) {
        const auto e = validate::pickands_moment(p, t, reps, rng::Handle{seed, 0});
        py::dict out;
        out["estimate"] = e.estimate;
        out["ci_halfwidth"] = e.ci_halfwidth;
        return out;
      },
      py::arg("params"), py::arg("t"), py::arg("reps"), py::arg("seed") = 20240904);
  m.def(
      "max_exponential_std",
      [](std::int64_t n, std::int64_t reps, std::uint64_t seed) {
        const auto v = validate::max_exponential_std(n, reps, rng::Handle{seed, 0});
        py::dict out;
        out["mc_std"] = v.mc_std;
        out["analytic_gumbel"] = v.analytic_gumbel;
        out["exact_finite_n"] = v.exact_finite_n;
        return out;
      },
      py::arg("n"), py::arg("reps"), py::arg("seed") = 20240904);

  // experiment harness
  m.def("run_config_json", [](const std::string& json_text) {
    const auto config = cli::parse_config_json(json_text);
    const auto result = cli::run(config);
    py::dict out;
    out["exit_code"] = result.exit_code;
    out["files_written"] = result.files_written;
    out["csv_text"] = result.csv_text;
    return out;
  });
  m.def("preset_names", []() {
    std::vector<std::string> names;
    for (const auto& [name, config] : cli::preset_figures()) names.push_back(name);
    return names;
  });

  m.attr("__version__") = "0.1.0";
}
