#pragma once

// Experiment harness: configuration parsing and validation, deterministic
// parallel replication, aggregation, and CSV/metadata emission. Outputs
// depend only on (config, seed), never on the worker count: replications
// draw from disjoint counter-based streams and aggregation walks results
// in replication order.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "forkfluid/extremal.hpp"
#include "forkfluid/fluid.hpp"
#include "forkfluid/initcond.hpp"
#include "forkfluid/model.hpp"

namespace forkfluid::cli {

inline constexpr const char* kSchemaVersion = "forkfluid-csv-1";

enum class Command { kSimulate, kFluid, kCompare, kExtremal, kBounds, kValidate };

std::string command_name(Command c);
Command command_from_name(const std::string& name);

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& field, const std::string& what)
      : std::runtime_error("config field " + field + ": " + what), field(field) {}
  std::string field;
};

struct ExtremalBlock {
  std::vector<extremal::ComponentSpec> components;
  std::vector<std::int64_t> n_ladder{100000};
};

struct BoundsBlock {
  double m = -1.0;  // <0 means "default beta/2"
  std::vector<std::int64_t> n_ladder{100, 1000, 10000};
  std::int64_t horizon = 1000000;
  std::int64_t paths = 2000;
  std::int64_t gumbel_points = 10000;  // N for the Gumbel check
};

struct ValidateBlock {
  std::vector<std::string> checks{"variance", "berry_esseen", "pickands", "max_exponential"};
  std::vector<std::int64_t> n_ladder{25, 50, 100, 200};
  double t = 1.0;
  std::int64_t max_exp_n = 1000;
  std::int64_t baseline_n = 1000000;
};

struct ExperimentConfig {
  Command command = Command::kCompare;
  double alpha = 1.0;
  double beta = 1.0;
  double regime_exponent = 1.0;
  std::vector<std::int64_t> n_servers{100};
  initcond::InitialConditionSpec init;
  std::vector<double> t_grid{0.25};
  std::int64_t reps = 100;
  std::uint64_t master_seed = 20240904;
  std::string out_path = "forkfluid_out.csv";
  int workers = 1;
  bool to_stdout = false;

  ExtremalBlock extremal;
  BoundsBlock bounds;
  ValidateBlock validate;
};

// JSON file -> config; unknown or ill-typed fields raise ConfigError with
// the offending field path.
ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_json(const std::string& json_text);
std::string config_to_json(const ExperimentConfig& config);

// Full validation (also run by `run`); throws ConfigError.
void validate_config(const ExperimentConfig& config);

struct AggregateRow {
  double t = 0.0;
  std::int64_t n_servers = 0;
  double mean_scaled_max = 0.0;
  double std_scaled_max = 0.0;
  double ci_halfwidth = 0.0;  // 1.96 std/sqrt(reps)
  double fluid_q = 0.0;
  std::optional<double> n3_clock_q;
  double steady_q = 0.0;
};

// The `compare` pipeline without file I/O (used by tests and bindings).
std::vector<AggregateRow> run_compare(const ExperimentConfig& config);

struct RunResult {
  int exit_code = 0;
  std::vector<std::string> files_written;
  std::string csv_text;  // what was (or would be) written
};

// Dispatches on config.command, writes <out>.csv and <out>.meta.json.
RunResult run(const ExperimentConfig& config);

// Desk-scale analogues of the paper-style figure experiments plus the
// N=1000 single-replication showcase (hours-scale; see README).
std::vector<std::pair<std::string, ExperimentConfig>> preset_figures();

// Shortest round-trip decimal formatting used in all CSV output.
std::string format_double(double v);

}  // namespace forkfluid::cli
