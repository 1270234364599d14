#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lwr/config.hpp"
#include "lwr/runner.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string out;
  CLI::App* cmd = nullptr;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  opts.cmd = cmd;
  cmd->add_option("--config", opts.config_path, "Path to the JSON run configuration")
      ->required();
  cmd->add_option("--seed", opts.seed, "Override the config seed");
  cmd->add_option("--threads", opts.threads, "Override the thread count (0 = auto)");
  cmd->add_option("--out", opts.out, "Override the config output path");
}

lwr::RunConfig load(const CommonOpts& opts) {
  lwr::RunConfig config = lwr::load_config_file(opts.config_path);
  if (opts.cmd->count("--seed") > 0) config.seed = opts.seed;
  if (opts.cmd->count("--threads") > 0) config.threads = opts.threads;
  if (opts.cmd->count("--out") > 0) config.output_path = opts.out;
  return config;
}

int write_output(const lwr::RunConfig& config, const std::string& content) {
  if (config.output_path.empty() || config.output_path == "-") {
    std::cout << content;
    return 0;
  }
  std::ofstream out(config.output_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open output file '" << config.output_path << "'\n";
    return 1;
  }
  out << content;
  if (!out) {
    std::cerr << "error: write failed for '" << config.output_path << "'\n";
    return 1;
  }
  std::cerr << "wrote " << content.size() << " bytes to " << config.output_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Levy walks with rests: simulation and verification toolkit"};
  app.require_subcommand(1);

  CommonOpts simulate_opts, limit_opts, converge_opts, validate_opts;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Sample (scaled) walk marginals on the time grid (CSV)");
  add_common(simulate, simulate_opts);
  CLI::App* limit = app.add_subcommand(
      "limit", "Sample limit-process marginals for the matching case (CSV)");
  add_common(limit, limit_opts);
  CLI::App* converge = app.add_subcommand(
      "converge", "KS distances walk-vs-limit over the n-ladder (JSON report)");
  add_common(converge, converge_opts);
  CLI::App* validate = app.add_subcommand(
      "validate", "Run the invariant suite; nonzero exit on failure (JSON report)");
  add_common(validate, validate_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      const lwr::RunConfig config = load(simulate_opts);
      return write_output(config, lwr::run_simulate(config));
    }
    if (limit->parsed()) {
      const lwr::RunConfig config = load(limit_opts);
      return write_output(config, lwr::run_limit(config));
    }
    if (converge->parsed()) {
      const lwr::RunConfig config = load(converge_opts);
      return write_output(config, lwr::run_converge(config));
    }
    if (validate->parsed()) {
      const lwr::RunConfig config = load(validate_opts);
      const lwr::ValidateResult result = lwr::run_validate(config);
      const int io_status = write_output(config, result.report);
      if (io_status != 0) return io_status;
      return result.passed ? 0 : 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
