#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "abc/config.hpp"
#include "abc/engine.hpp"
#include "abc/errors.hpp"
#include "abc/output.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw abc::IoError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool has_workers_key(const std::string& text) {
  const auto root = nlohmann::json::parse(text, nullptr, false);
  return root.is_object() && root.contains("workers");
}

/// ABC_WORKERS, or 0 when unset. Applies only when neither the --workers
/// flag nor the config file picks a worker count.
unsigned env_workers() {
  const char* raw = std::getenv("ABC_WORKERS");
  if (!raw || !*raw) return 0;
  char* end = nullptr;
  const unsigned long v = std::strtoul(raw, &end, 10);
  if (*end != '\0' || v < 1 || v > 256) {
    throw abc::ConfigError("ABC_WORKERS must be an integer between 1 and 256");
  }
  return static_cast<unsigned>(v);
}

int run_command(const std::string& config_path,
                const std::optional<std::uint64_t>& seed_flag,
                const std::optional<unsigned>& workers_flag,
                const std::optional<std::string>& out_flag) {
  abc::RunConfig config;
  std::string text;
  try {
    text = read_file(config_path);
    config = abc::parse_config(text);
    if (seed_flag) config.seed = *seed_flag;
    if (workers_flag) {
      config.workers = *workers_flag;
    } else if (!has_workers_key(text)) {
      if (const unsigned env = env_workers()) config.workers = env;
    }
    if (out_flag) config.output_dir = *out_flag;
  } catch (const abc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  std::cerr << "running " << config.algorithm << ": n=" << config.n
            << " seed=" << config.seed << " workers=" << config.workers
            << " -> " << config.output_dir << "\n";
  try {
    const abc::ResultBundle bundle = abc::run(config);
    const abc::Manifest manifest = abc::emit_outputs(bundle, config.output_dir);
    std::cerr << "done: " << bundle.populations.size() << " generation(s), "
              << bundle.stats.simulations << " simulations, "
              << manifest.wall_time_ms << " ms\n";
    std::cout << abc::render_manifest(manifest);
    return 0;
  } catch (const abc::BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    try {
      abc::write_error_report(config.output_dir, config.algorithm, e.what(),
                              e.accepted(), e.attempts());
      std::cerr << "partial diagnostics written to " << config.output_dir
                << "/error.json\n";
    } catch (const abc::Error& io) {
      std::cerr << "error: " << io.what() << "\n";
    }
    return 3;
  } catch (const abc::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int validate_command(const std::string& config_path) {
  try {
    const abc::RunConfig config = abc::parse_config(read_file(config_path));
    std::cout << "valid: " << config.algorithm << ", n=" << config.n << ", "
              << config.models.size() << " model(s)";
    if (config.is_sequential()) {
      std::cout << ", " << config.schedule.size() << " generation(s)";
    }
    std::cout << "\n";
    return 0;
  } catch (const abc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Likelihood-free Bayesian inference over simulator models"};
  app.require_subcommand(1);

  std::string run_config_path;
  std::optional<std::uint64_t> seed_flag;
  std::optional<unsigned> workers_flag;
  std::optional<std::string> out_flag;
  CLI::App* run_cmd =
      app.add_subcommand("run", "Run the configured algorithm and write results");
  run_cmd->add_option("config", run_config_path, "JSON run configuration")
      ->required();
  run_cmd->add_option("--seed", seed_flag, "Override the configured seed");
  run_cmd->add_option("--workers", workers_flag, "Override the worker count")
      ->check(CLI::Range(1u, 256u));
  run_cmd->add_option("--out", out_flag, "Override the output directory");

  std::string validate_config_path;
  CLI::App* validate_cmd =
      app.add_subcommand("validate", "Parse and validate a configuration");
  validate_cmd->add_option("config", validate_config_path, "JSON run configuration")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (run_cmd->parsed()) {
    return run_command(run_config_path, seed_flag, workers_flag, out_flag);
  }
  return validate_command(validate_config_path);
}
