#include "forkfluid/experiment.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "forkfluid/bounds.hpp"
#include "forkfluid/numeric.hpp"
#include "forkfluid/validate.hpp"

namespace forkfluid::cli {

using nlohmann::json;

std::string command_name(Command c) {
  switch (c) {
    case Command::kSimulate: return "simulate";
    case Command::kFluid: return "fluid";
    case Command::kCompare: return "compare";
    case Command::kExtremal: return "extremal";
    case Command::kBounds: return "bounds";
    case Command::kValidate: return "validate";
  }
  return "unknown";
}

Command command_from_name(const std::string& name) {
  if (name == "simulate") return Command::kSimulate;
  if (name == "fluid") return Command::kFluid;
  if (name == "compare") return Command::kCompare;
  if (name == "extremal") return Command::kExtremal;
  if (name == "bounds") return Command::kBounds;
  if (name == "validate") return Command::kValidate;
  throw ConfigError(".command", "unknown command '" + name + "'");
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

template <class T>
T field_as(const json& j, const std::string& path, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(path + "." + key, e.what());
  }
}

std::vector<std::int64_t> int_list(const json& j, const std::string& path, const char* key,
                                   std::vector<std::int64_t> fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  try {
    if (v.is_number_integer()) return {v.get<std::int64_t>()};
    return v.get<std::vector<std::int64_t>>();
  } catch (const json::exception& e) {
    throw ConfigError(path + "." + key, e.what());
  }
}

std::vector<double> time_grid_from(const json& j, const std::string& path,
                                   std::vector<double> fallback) {
  if (!j.contains("time_grid")) return fallback;
  const auto& v = j.at("time_grid");
  try {
    if (v.is_array()) return v.get<std::vector<double>>();
    const double start = v.at("start").get<double>();
    const double stop = v.at("stop").get<double>();
    const double step = v.at("step").get<double>();
    if (!(step > 0.0)) throw ConfigError(path + ".time_grid.step", "must be > 0");
    std::vector<double> g;
    for (double t = start; t <= stop + 1e-12 * step; t += step) g.push_back(t);
    return g;
  } catch (const json::exception& e) {
    throw ConfigError(path + ".time_grid", e.what());
  }
}

initcond::InitialConditionSpec init_from(const json& j, const std::string& path) {
  initcond::InitialConditionSpec spec;
  if (!j.contains("init")) return spec;
  const auto& v = j.at("init");
  try {
    spec.family = initcond::family_from_name(v.value("family", "zero"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path + ".init.family", e.what());
  }
  spec.q0_target = field_as<double>(v, path + ".init", "q0", 0.0);
  spec.endpoint = field_as<double>(v, path + ".init", "endpoint", 1.0);
  spec.rate = field_as<double>(v, path + ".init", "rate", 1.0);
  spec.offset_kappa = field_as<double>(v, path + ".init", "offset_kappa", 0.0);
  return spec;
}

std::vector<extremal::ComponentSpec> components_from(const json& j, const std::string& path) {
  std::vector<extremal::ComponentSpec> out;
  if (!j.contains("components")) return out;
  const auto& arr = j.at("components");
  if (!arr.is_array()) throw ConfigError(path + ".components", "must be an array");
  std::size_t idx = 0;
  for (const auto& c : arr) {
    extremal::ComponentSpec spec;
    const std::string p = path + ".components[" + std::to_string(idx++) + "]";
    try {
      spec.dist = extremal::dist_from_name(c.value("dist", "exponential"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(p + ".dist", e.what());
    }
    spec.rate = field_as<double>(c, p, "rate", 1.0);
    out.push_back(spec);
  }
  return out;
}

}  // namespace

ExperimentConfig parse_config_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
  }
  ExperimentConfig c;
  if (j.contains("command")) c.command = command_from_name(j.at("command").get<std::string>());
  if (j.contains("params")) {
    const auto& p = j.at("params");
    c.alpha = field_as<double>(p, ".params", "alpha", c.alpha);
    c.beta = field_as<double>(p, ".params", "beta", c.beta);
    c.regime_exponent = field_as<double>(p, ".params", "regime_exponent", c.regime_exponent);
    c.n_servers = int_list(p, ".params", "n_servers", c.n_servers);
  }
  c.init = init_from(j, "");
  c.t_grid = time_grid_from(j, "", c.t_grid);
  c.reps = field_as<std::int64_t>(j, "", "reps", c.reps);
  c.master_seed = field_as<std::uint64_t>(j, "", "seed", c.master_seed);
  c.out_path = field_as<std::string>(j, "", "out", c.out_path);
  c.workers = field_as<int>(j, "", "workers", c.workers);
  c.to_stdout = field_as<bool>(j, "", "stdout", c.to_stdout);
  if (j.contains("extremal")) {
    const auto& e = j.at("extremal");
    c.extremal.components = components_from(e, ".extremal");
    c.extremal.n_ladder = int_list(e, ".extremal", "n_ladder", c.extremal.n_ladder);
  }
  if (j.contains("bounds")) {
    const auto& b = j.at("bounds");
    c.bounds.m = field_as<double>(b, ".bounds", "m", c.bounds.m);
    c.bounds.n_ladder = int_list(b, ".bounds", "n_ladder", c.bounds.n_ladder);
    c.bounds.horizon = field_as<std::int64_t>(b, ".bounds", "horizon", c.bounds.horizon);
    c.bounds.paths = field_as<std::int64_t>(b, ".bounds", "paths", c.bounds.paths);
    c.bounds.gumbel_points =
        field_as<std::int64_t>(b, ".bounds", "gumbel_points", c.bounds.gumbel_points);
  }
  if (j.contains("validate")) {
    const auto& v = j.at("validate");
    c.validate.checks =
        field_as<std::vector<std::string>>(v, ".validate", "checks", c.validate.checks);
    c.validate.n_ladder = int_list(v, ".validate", "n_ladder", c.validate.n_ladder);
    c.validate.t = field_as<double>(v, ".validate", "t", c.validate.t);
    c.validate.max_exp_n = field_as<std::int64_t>(v, ".validate", "max_exp_n", c.validate.max_exp_n);
    c.validate.baseline_n =
        field_as<std::int64_t>(v, ".validate", "baseline_n", c.validate.baseline_n);
  }
  return c;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_json(ss.str());
}

std::string config_to_json(const ExperimentConfig& c) {
  json j;
  j["command"] = command_name(c.command);
  j["params"] = {{"alpha", c.alpha},
                 {"beta", c.beta},
                 {"regime_exponent", c.regime_exponent},
                 {"n_servers", c.n_servers}};
  j["init"] = {{"family", initcond::family_name(c.init.family)},
               {"q0", c.init.q0_target},
               {"endpoint", c.init.endpoint},
               {"rate", c.init.rate},
               {"offset_kappa", c.init.offset_kappa}};
  j["time_grid"] = c.t_grid;
  j["reps"] = c.reps;
  j["seed"] = c.master_seed;
  j["out"] = c.out_path;
  j["workers"] = c.workers;
  j["stdout"] = c.to_stdout;
  json comps = json::array();
  for (const auto& comp : c.extremal.components)
    comps.push_back({{"dist", extremal::dist_name(comp.dist)}, {"rate", comp.rate}});
  j["extremal"] = {{"components", comps}, {"n_ladder", c.extremal.n_ladder}};
  j["bounds"] = {{"m", c.bounds.m},
                 {"n_ladder", c.bounds.n_ladder},
                 {"horizon", c.bounds.horizon},
                 {"paths", c.bounds.paths},
                 {"gumbel_points", c.bounds.gumbel_points}};
  j["validate"] = {{"checks", c.validate.checks},
                   {"n_ladder", c.validate.n_ladder},
                   {"t", c.validate.t},
                   {"max_exp_n", c.validate.max_exp_n},
                   {"baseline_n", c.validate.baseline_n}};
  return j.dump(2);
}

void validate_config(const ExperimentConfig& c) {
  if (!(c.alpha > 0.0)) throw ConfigError(".params.alpha", "must be > 0");
  if (!(c.beta > 0.0)) throw ConfigError(".params.beta", "must be > 0");
  if (!(c.regime_exponent >= 1.0)) throw ConfigError(".params.regime_exponent", "must be >= 1");
  if (c.n_servers.empty()) throw ConfigError(".params.n_servers", "must not be empty");
  for (std::int64_t n : c.n_servers) {
    try {
      model::make_params(c.alpha, c.beta, n, c.regime_exponent);
    } catch (const std::exception& e) {
      throw ConfigError(".params.n_servers", e.what());
    }
  }
  if (c.init.q0_target < 0.0) throw ConfigError(".init.q0", "must be >= 0");
  for (std::size_t i = 0; i + 1 < c.t_grid.size(); ++i)
    if (c.t_grid[i] > c.t_grid[i + 1]) throw ConfigError(".time_grid", "must be sorted");
  if (!c.t_grid.empty() && c.t_grid.front() < 0.0)
    throw ConfigError(".time_grid", "entries must be >= 0");
  if (c.reps < 1) throw ConfigError(".reps", "must be >= 1");
  if (c.workers < 1) throw ConfigError(".workers", "must be >= 1");
  if (c.command == Command::kExtremal) {
    const auto k = c.extremal.components.size();
    if (k < 1 || k > 3) throw ConfigError(".extremal.components", "need 1 to 3 components");
    for (std::int64_t n : c.extremal.n_ladder)
      if (n < 2) throw ConfigError(".extremal.n_ladder", "entries must be >= 2");
  }
  if (c.command == Command::kBounds) {
    if (c.bounds.m >= 0.0 && !(c.bounds.m > 0.0 && c.bounds.m < c.beta))
      throw ConfigError(".bounds.m", "must lie in (0, beta)");
    if (c.bounds.horizon < 1) throw ConfigError(".bounds.horizon", "must be >= 1");
    if (c.bounds.paths < 1) throw ConfigError(".bounds.paths", "must be >= 1");
  }
}

namespace {

void parallel_for(std::int64_t count, int workers, const std::function<void(std::int64_t)>& fn) {
  if (workers <= 1 || count <= 1) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::vector<std::thread> pool;
  const int n_threads = static_cast<int>(std::min<std::int64_t>(workers, count));
  pool.reserve(static_cast<std::size_t>(n_threads));
  for (int w = 0; w < n_threads; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const std::int64_t i = next.fetch_add(1);
        if (i >= count) return;
        fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

struct CsvBuilder {
  std::ostringstream out;

  void header(const std::vector<std::string>& cols) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (i) out << ',';
      out << cols[i];
    }
    out << '\n';
  }
  void cell(const std::string& v, bool last = false) { out << v << (last ? '\n' : ','); }
  std::string str() const { return out.str(); }
};

std::string csv_simulate(const ExperimentConfig& c, std::uint64_t& events_total) {
  CsvBuilder csv;
  csv.header({"n_servers", "rep", "t", "slot", "raw_max_queue", "scaled_max_queue"});
  std::atomic<std::uint64_t> events{0};
  for (std::size_t ni = 0; ni < c.n_servers.size(); ++ni) {
    const auto params = model::make_params(c.alpha, c.beta, c.n_servers[ni], c.regime_exponent);
    std::vector<model::SimulationResult> results(static_cast<std::size_t>(c.reps));
    parallel_for(c.reps, c.workers, [&](std::int64_t r) {
      const std::uint32_t global_rep = static_cast<std::uint32_t>(ni * static_cast<std::size_t>(c.reps) + static_cast<std::size_t>(r));
      results[static_cast<std::size_t>(r)] = model::simulate_scaled(
          params, c.t_grid, c.init, rng::Handle{c.master_seed, global_rep});
    });
    for (std::int64_t r = 0; r < c.reps; ++r) {
      const auto& res = results[static_cast<std::size_t>(r)];
      events += res.event_count;
      for (const auto& f : res.frames) {
        csv.cell(std::to_string(params.n_servers));
        csv.cell(std::to_string(r));
        csv.cell(format_double(f.scaled_time));
        csv.cell(std::to_string(f.slot));
        csv.cell(std::to_string(f.raw_max_queue));
        csv.cell(format_double(f.scaled_max_queue), true);
      }
    }
  }
  events_total = events;
  return csv.str();
}

std::string csv_fluid(const ExperimentConfig& c) {
  CsvBuilder csv;
  csv.header({"t", "fluid_q", "n3_clock_q", "steady_q"});
  for (double t : c.t_grid) {
    csv.cell(format_double(t));
    csv.cell(format_double(fluid::q_full(c.init.family, c.alpha, c.beta, c.init.q0_target, t)));
    csv.cell(format_double(fluid::q_n3_clock(c.alpha, t)));
    csv.cell(format_double(fluid::steady_state(c.alpha, c.beta)), true);
  }
  return csv.str();
}

std::string csv_compare(const ExperimentConfig& c, const std::vector<AggregateRow>& rows) {
  (void)c;
  CsvBuilder csv;
  csv.header({"t", "n_servers", "mean_scaled_max", "std_scaled_max", "ci_halfwidth", "fluid_q",
              "n3_clock_q", "steady_q"});
  for (const auto& r : rows) {
    csv.cell(format_double(r.t));
    csv.cell(std::to_string(r.n_servers));
    csv.cell(format_double(r.mean_scaled_max));
    csv.cell(format_double(r.std_scaled_max));
    csv.cell(format_double(r.ci_halfwidth));
    csv.cell(format_double(r.fluid_q));
    csv.cell(r.n3_clock_q ? format_double(*r.n3_clock_q) : std::string());
    csv.cell(format_double(r.steady_q), true);
  }
  return csv.str();
}

std::string csv_extremal(const ExperimentConfig& c) {
  CsvBuilder csv;
  csv.header({"n_points", "c_star", "a_1", "a_2", "a_3", "mean", "median", "stddev", "q10", "q90",
              "reps"});
  for (std::int64_t n : c.extremal.n_ladder) {
    const auto problem = extremal::make_problem(c.extremal.components, n);
    const auto stats =
        extremal::mc_max_of_sums(problem, c.reps, rng::Handle{c.master_seed, 0});
    csv.cell(std::to_string(n));
    csv.cell(format_double(problem.c_star));
    for (std::size_t j = 0; j < 3; ++j)
      csv.cell(j < problem.a_scalings.size() ? format_double(problem.a_scalings[j])
                                             : std::string());
    csv.cell(format_double(stats.mean));
    csv.cell(format_double(stats.median));
    csv.cell(format_double(stats.stddev));
    csv.cell(format_double(stats.q10));
    csv.cell(format_double(stats.q90));
    csv.cell(std::to_string(c.reps), true);
  }
  return csv.str();
}

std::string csv_bounds(const ExperimentConfig& c) {
  CsvBuilder csv;
  csv.header({"n_servers", "m", "theta_A", "theta_A_first", "theta_A_second", "abs_err_second",
              "theta_S", "theta_S_first", "rel_err_S_first", "exp_mean", "gumbel_ks",
              "gumbel_ks_finite_n"});
  const double m_default = c.bounds.m < 0.0 ? 0.5 * c.beta : c.bounds.m;
  const auto gp = model::make_params(c.alpha, c.beta, c.bounds.gumbel_points, c.regime_exponent);
  const auto gum = bounds::gumbel_check(gp, m_default, std::max<std::int64_t>(c.bounds.paths, 100),
                                        rng::Handle{c.master_seed, 0});
  for (std::int64_t n : c.bounds.n_ladder) {
    const auto params = model::make_params(c.alpha, c.beta, n, c.regime_exponent);
    const double m = m_default;
    const auto setup = bounds::make_chernoff(params, m);
    const double second = bounds::theta_A_second_order(params, m);
    const double first_s = bounds::theta_S_first_order(params, m);
    csv.cell(std::to_string(n));
    csv.cell(format_double(m));
    csv.cell(format_double(setup.theta_A));
    csv.cell(format_double(bounds::theta_A_first_order(params, m)));
    csv.cell(format_double(second));
    csv.cell(format_double(std::abs(setup.theta_A - second)));
    csv.cell(format_double(setup.theta_S));
    csv.cell(format_double(first_s));
    csv.cell(format_double(std::abs(setup.theta_S - first_s) / setup.theta_S));
    csv.cell(format_double(setup.exp_mean));
    csv.cell(format_double(gum.ks_gumbel));
    csv.cell(format_double(gum.ks_finite_n), true);
  }
  return csv.str();
}

std::string csv_validate(const ExperimentConfig& c) {
  CsvBuilder csv;
  csv.header({"check", "n", "t", "value_a", "value_b", "reference"});
  const rng::Handle handle{c.master_seed, 0};
  for (const auto& check : c.validate.checks) {
    if (check == "variance") {
      for (std::int64_t n : c.validate.n_ladder) {
        const auto params = model::make_params(c.alpha, c.beta, n, c.regime_exponent);
        const auto v = validate::variance_identity(params, c.validate.t);
        csv.cell(check);
        csv.cell(std::to_string(n));
        csv.cell(format_double(c.validate.t));
        csv.cell(format_double(v.mean_term));
        csv.cell(format_double(v.variance_term));
        csv.cell(format_double(2.0 * c.alpha * c.validate.t), true);
      }
    } else if (check == "berry_esseen") {
      for (std::int64_t n : c.validate.n_ladder) {
        const auto params = model::make_params(c.alpha, c.beta, n, c.regime_exponent);
        const auto b = validate::berry_esseen_distance(params, c.validate.t);
        csv.cell(check);
        csv.cell(std::to_string(n));
        csv.cell(format_double(c.validate.t));
        csv.cell(format_double(b.d_n));
        csv.cell(format_double(b.scaled));
        csv.cell(std::string(), true);
      }
    } else if (check == "pickands") {
      for (std::int64_t n : c.validate.n_ladder) {
        const auto params = model::make_params(c.alpha, c.beta, n, c.regime_exponent);
        const auto p = validate::pickands_moment(params, c.validate.t,
                                                 std::max<std::int64_t>(c.reps, 100), handle);
        csv.cell(check);
        csv.cell(std::to_string(n));
        csv.cell(format_double(c.validate.t));
        csv.cell(format_double(p.estimate));
        csv.cell(format_double(p.ci_halfwidth));
        csv.cell(format_double(std::pow(2.0 * c.alpha * c.validate.t, 1.25)), true);
      }
    } else if (check == "max_exponential") {
      const auto m = validate::max_exponential_std(
          c.validate.max_exp_n, std::max<std::int64_t>(c.reps, 10000), handle);
      csv.cell(check);
      csv.cell(std::to_string(c.validate.max_exp_n));
      csv.cell(format_double(c.validate.t));
      csv.cell(format_double(m.mc_std));
      csv.cell(format_double(m.exact_finite_n));
      csv.cell(format_double(m.analytic_gumbel), true);
    } else if (check == "normal_baseline") {
      const double ratio = validate::max_normal_baseline(c.validate.baseline_n,
                                                         std::max<std::int64_t>(c.reps, 100), handle);
      csv.cell(check);
      csv.cell(std::to_string(c.validate.baseline_n));
      csv.cell(format_double(c.validate.t));
      csv.cell(format_double(ratio));
      csv.cell(std::string());
      csv.cell(format_double(1.0), true);
    } else {
      throw ConfigError(".validate.checks", "unknown check '" + check + "'");
    }
  }
  return csv.str();
}

}  // namespace

namespace {

std::vector<AggregateRow> run_compare_impl(const ExperimentConfig& c, std::uint64_t& events) {
  std::vector<AggregateRow> rows;
  events = 0;
  for (std::size_t ni = 0; ni < c.n_servers.size(); ++ni) {
    const auto params = model::make_params(c.alpha, c.beta, c.n_servers[ni], c.regime_exponent);
    std::vector<model::SimulationResult> results(static_cast<std::size_t>(c.reps));
    parallel_for(c.reps, c.workers, [&](std::int64_t r) {
      const std::uint32_t global_rep = static_cast<std::uint32_t>(
          ni * static_cast<std::size_t>(c.reps) + static_cast<std::size_t>(r));
      results[static_cast<std::size_t>(r)] = model::simulate_scaled(
          params, c.t_grid, c.init, rng::Handle{c.master_seed, global_rep});
    });
    for (const auto& res : results) events += res.event_count;
    for (std::size_t k = 0; k < c.t_grid.size(); ++k) {
      std::vector<double> vals;
      vals.reserve(results.size());
      for (const auto& res : results) vals.push_back(res.frames[k].scaled_max_queue);
      const auto m = num::sample_moments(vals);
      AggregateRow row;
      row.t = c.t_grid[k];
      row.n_servers = params.n_servers;
      row.mean_scaled_max = m.mean;
      row.std_scaled_max = m.stddev;
      row.ci_halfwidth = 1.96 * m.stddev / std::sqrt(static_cast<double>(c.reps));
      row.fluid_q = fluid::q_full(c.init.family, c.alpha, c.beta, c.init.q0_target, c.t_grid[k]);
      row.n3_clock_q = fluid::q_n3_clock(c.alpha, c.t_grid[k]);
      row.steady_q = fluid::steady_state(c.alpha, c.beta);
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace

std::vector<AggregateRow> run_compare(const ExperimentConfig& c) {
  validate_config(c);
  std::uint64_t events = 0;
  return run_compare_impl(c, events);
}

RunResult run(const ExperimentConfig& c) {
  validate_config(c);
  const auto t0 = std::chrono::steady_clock::now();

  RunResult out;
  std::uint64_t events = 0;
  switch (c.command) {
    case Command::kSimulate: out.csv_text = csv_simulate(c, events); break;
    case Command::kFluid: out.csv_text = csv_fluid(c); break;
    case Command::kCompare: {
      const auto rows = run_compare_impl(c, events);
      out.csv_text = csv_compare(c, rows);
      break;
    }
    case Command::kExtremal: out.csv_text = csv_extremal(c); break;
    case Command::kBounds: out.csv_text = csv_bounds(c); break;
    case Command::kValidate: out.csv_text = csv_validate(c); break;
  }

  if (c.to_stdout) std::cout << out.csv_text;
  {
    std::ofstream f(c.out_path, std::ios::binary);
    if (!f) {
      std::cerr << "forkfluid: cannot write " << c.out_path << "\n";
      out.exit_code = 2;
      return out;
    }
    f << out.csv_text;
    out.files_written.push_back(c.out_path);
  }
  const auto t1 = std::chrono::steady_clock::now();
  {
    json meta;
    meta["schema_version"] = kSchemaVersion;
    meta["tool_version"] = "forkfluid 0.1.0";
    meta["config"] = json::parse(config_to_json(c));
    meta["seed"] = c.master_seed;
    meta["workers"] = c.workers;
    meta["wall_clock_seconds"] =
        std::chrono::duration_cast<std::chrono::duration<double>>(t1 - t0).count();
    meta["event_counter"] = events;
    meta["files"] = out.files_written;
    const std::string meta_path = c.out_path + ".meta.json";
    std::ofstream f(meta_path, std::ios::binary);
    if (f) {
      f << meta.dump(2) << "\n";
      out.files_written.push_back(meta_path);
    }
  }
  return out;
}

std::vector<std::pair<std::string, ExperimentConfig>> preset_figures() {
  std::vector<std::pair<std::string, ExperimentConfig>> presets;

  auto grid = [](double start, double stop, double step) {
    std::vector<double> g;
    for (double t = start; t <= stop + 1e-12; t += step) g.push_back(t);
    return g;
  };

  // Figure-2 style panels: Theorem-1 clock, exponential initial condition.
  struct Panel {
    double alpha, beta, q0;
  };
  const Panel fig2[] = {{1, 1, 0.6}, {1, 1, 0.75}, {1, 1, 1.0}, {1, 1, 0.0}, {1, 10, 0.0}, {1, 100, 0.0}};
  for (const auto& p : fig2) {
    ExperimentConfig c;
    c.command = Command::kCompare;
    c.alpha = p.alpha;
    c.beta = p.beta;
    c.n_servers = {200};
    c.init.family = p.q0 > 0.0 ? initcond::Family::kExponential : initcond::Family::kZero;
    c.init.q0_target = p.q0;
    c.t_grid = grid(0.0, 1.0, 0.05);
    c.reps = 100;
    std::ostringstream name;
    name << "figure2-a" << p.alpha << "-b" << p.beta << "-q" << p.q0;
    c.out_path = name.str() + ".csv";
    presets.emplace_back(name.str(), c);
  }

  // Figure-3 style: empty start with the N^3-clock and steady-state overlays.
  for (double beta : {1.0, 10.0, 100.0}) {
    ExperimentConfig c;
    c.command = Command::kCompare;
    c.beta = beta;
    c.n_servers = {200};
    c.t_grid = grid(0.0, 1.0, 0.05);
    c.reps = 100;
    std::ostringstream name;
    name << "figure3-a1-b" << beta;
    c.out_path = name.str() + ".csv";
    presets.emplace_back(name.str(), c);
  }

  // Figure-5 style zoom on small times.
  for (double beta : {1.0, 10.0}) {
    ExperimentConfig c;
    c.command = Command::kCompare;
    c.beta = beta;
    c.n_servers = {200};
    c.t_grid = grid(0.0, 0.02, 0.001);
    c.reps = 100;
    std::ostringstream name;
    name << "figure5-zoom-a1-b" << beta;
    c.out_path = name.str() + ".csv";
    presets.emplace_back(name.str(), c);
  }

  // Single-replication N=1000 showcase; expect a multi-minute run per the README.
  {
    ExperimentConfig c;
    c.command = Command::kSimulate;
    c.n_servers = {1000};
    c.init.family = initcond::Family::kExponential;
    c.init.q0_target = 0.6;
    c.t_grid = grid(0.0, 1.0, 0.05);
    c.reps = 1;
    c.out_path = "showcase-n1000.csv";
    presets.emplace_back("showcase-n1000", c);
  }
  return presets;
}

}  // namespace forkfluid::cli
