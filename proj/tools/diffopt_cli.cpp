#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "diffopt/experiment.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kRuntimeError = 2;

struct RunArgs {
  std::string config;
  std::string out;
  std::string format;
  std::optional<int> round;
};

void write_trace(std::ostream& out, const diffopt::ExperimentConfig& cfg,
                 const diffopt::IterateTrace& trace) {
  if (cfg.format == diffopt::TraceFormat::kJson) {
    diffopt::write_json(out, trace, cfg.rounding);
  } else {
    diffopt::write_csv(out, trace, cfg.rounding);
  }
}

int run(const RunArgs& args) {
  diffopt::ExperimentConfig cfg;
  try {
    cfg = diffopt::load_config(args.config);
    if (!args.out.empty()) cfg.trace_path = args.out;
    if (!args.format.empty()) {
      if (args.format != "csv" && args.format != "json") {
        throw diffopt::ConfigError("--format must be csv or json");
      }
      cfg.format = args.format == "json" ? diffopt::TraceFormat::kJson : diffopt::TraceFormat::kCsv;
    }
    if (args.round) {
      if (*args.round < 0 || *args.round > 17) throw diffopt::ConfigError("--round must lie in [0,17]");
      cfg.rounding = *args.round;
    }
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  }

  diffopt::ExperimentResult result;
  try {
    result = diffopt::run_experiment(cfg);
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << '\n';
    return kRuntimeError;
  }

  if (cfg.trace_path.empty()) {
    write_trace(std::cout, cfg, result.trace);
  } else {
    std::ofstream file(cfg.trace_path, std::ios::binary);
    if (!file) {
      std::cerr << "cannot write " << cfg.trace_path << '\n';
      return kRuntimeError;
    }
    write_trace(file, cfg, result.trace);
  }
  if (!cfg.plot_path.empty()) {
    std::ofstream file(cfg.plot_path, std::ios::binary);
    if (!file) {
      std::cerr << "cannot write " << cfg.plot_path << '\n';
      return kRuntimeError;
    }
    diffopt::write_plot(file, result.segments, result.trace, cfg.rounding);
  }

  std::cerr << diffopt::to_string(result.trace.status) << " after "
            << result.trace.iterations() << " iterations";
  if (!result.trace.message.empty()) std::cerr << ": " << result.trace.message;
  std::cerr << '\n';
  return result.runtime_error() ? kRuntimeError : kOk;
}

int verify(const diffopt::VerifyOptions& options) {
  bool ok = true;
  for (const auto& item : diffopt::verify_suite(options)) {
    std::cout << (item.passed ? "PASS  " : "FAIL  ") << item.name;
    if (!item.detail.empty()) std::cout << "  (" << item.detail << ")";
    std::cout << '\n';
    ok = ok && item.passed;
  }
  return ok ? kOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steepest descent on diffeological spaces"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "Run the experiment described by a config file");
  run_cmd->add_option("config", run_args.config, "Config file")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--out", run_args.out, "Trace output path (default: stdout)");
  run_cmd->add_option("--format", run_args.format, "Trace format: csv or json");
  run_cmd->add_option("--round", run_args.round, "Decimals for printed values, 0..17");

  diffopt::VerifyOptions verify_options;
  auto* verify_cmd = app.add_subcommand("verify", "Run the property suites and golden traces");
  verify_cmd->add_option("--seed-grid", verify_options.seed_grid,
                         "Sample points per line / grid side")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_flag("--flip-retraction-sign", verify_options.flip_retraction_sign,
                       "Use R(x, r d_v) = x - r v (negative control)");
  verify_cmd->add_option("--origin-snap", verify_options.origin_snap,
                         "Origin snapping radius for the golden traces")
      ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  if (*run_cmd) return run(run_args);
  return verify(verify_options);
}
