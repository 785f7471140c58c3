// forkfluid: experiment harness for the N-server fork-join queue lab.
//
//   forkfluid <command> --config <path> [--seed u64] [--reps n] [--out path]
//             [--workers n] [--stdout]
//   forkfluid presets [--list] [--emit DIR]
//
// Commands: simulate, fluid, compare, extremal, bounds, validate.
// Progress goes to stderr; stdout carries the CSV only when --stdout is set.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "forkfluid/experiment.hpp"

namespace cli = forkfluid::cli;

namespace {

struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> reps;
  std::optional<std::string> out;
  std::optional<int> workers;
  bool to_stdout = false;
};

void add_common(CLI::App* sub, CommonFlags& flags) {
  sub->add_option("--config", flags.config_path, "JSON experiment config")->required();
  sub->add_option("--seed", flags.seed, "master seed override");
  sub->add_option("--reps", flags.reps, "replication count override");
  sub->add_option("--out", flags.out, "output CSV path override");
  sub->add_option("--workers", flags.workers, "worker thread count override");
  sub->add_flag("--stdout", flags.to_stdout, "echo the CSV to standard output");
}

int run_command(cli::Command command, const CommonFlags& flags) {
  try {
    auto config = cli::parse_config_file(flags.config_path);
    config.command = command;  // the subcommand wins over the file
    if (flags.seed) config.master_seed = *flags.seed;
    if (flags.reps) config.reps = *flags.reps;
    if (flags.out) config.out_path = *flags.out;
    if (flags.workers) config.workers = *flags.workers;
    if (flags.to_stdout) config.to_stdout = true;
    const auto result = cli::run(config);
    for (const auto& f : result.files_written) std::cerr << "wrote " << f << "\n";
    return result.exit_code;
  } catch (const cli::ConfigError& e) {
    std::cerr << "forkfluid: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "forkfluid: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fork-join queue heavy-traffic laboratory"};
  app.require_subcommand(1);

  CommonFlags flags;
  const std::pair<const char*, cli::Command> commands[] = {
      {"simulate", cli::Command::kSimulate}, {"fluid", cli::Command::kFluid},
      {"compare", cli::Command::kCompare},   {"extremal", cli::Command::kExtremal},
      {"bounds", cli::Command::kBounds},     {"validate", cli::Command::kValidate},
  };
  for (const auto& [name, cmd] : commands) {
    auto* sub = app.add_subcommand(name, "run the " + std::string(name) + " experiment");
    add_common(sub, flags);
    sub->callback([cmd, &flags]() { std::exit(run_command(cmd, flags)); });
  }

  bool list_only = false;
  std::string emit_dir;
  auto* presets = app.add_subcommand("presets", "built-in figure-style experiment configs");
  presets->add_flag("--list", list_only, "list preset names");
  presets->add_option("--emit", emit_dir, "write preset configs as JSON files into DIR");
  presets->callback([&]() {
    const auto all = cli::preset_figures();
    if (!emit_dir.empty()) {
      std::filesystem::create_directories(emit_dir);
      for (const auto& [name, config] : all) {
        const auto path = std::filesystem::path(emit_dir) / (name + ".json");
        std::ofstream f(path);
        f << cli::config_to_json(config) << "\n";
        std::cerr << "wrote " << path.string() << "\n";
      }
    }
    if (list_only || emit_dir.empty()) {
      for (const auto& [name, config] : all)
        std::cout << name << "  (" << cli::command_name(config.command) << ")\n";
    }
    std::exit(0);
  });

  CLI11_PARSE(app, argc, argv);
  return 0;
}
