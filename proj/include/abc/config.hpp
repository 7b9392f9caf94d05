#ifndef ABC_CONFIG_HPP
#define ABC_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "abc/dataset.hpp"
#include "abc/prior.hpp"
#include "abc/simulator.hpp"

namespace abc {

/// Which simulation channel a model uses and how it is parameterized.
/// `type` names a built-in (see builtin_simulator_names()); `fields` are
/// scalar overrides of that built-in's defaults; `grid` is consumed only
/// by discrete built-ins.
struct SimulatorConfig {
  std::string type;
  std::vector<SimulatorField> fields;
  std::vector<double> grid;

  bool operator==(const SimulatorConfig&) const = default;
};

struct ModelConfig {
  std::string name;
  SimulatorConfig simulator;
  std::vector<MarginalPrior> prior;
  std::vector<double> kernel_sigma;  // empty: no kernel configured
  bool kernel_reflect = false;

  bool operator==(const ModelConfig&) const = default;
};

/// A fully validated run description. parse_config fills every default,
/// so two configs that behave identically compare equal.
struct RunConfig {
  std::string algorithm;  // reject | smc | reject-joint | smc-joint
  std::size_t n = 0;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::uint64_t max_attempts = 10'000'000;  // per generation
  std::string distance = "euclidean";
  std::optional<double> epsilon;  // reject algorithms
  std::vector<double> schedule;   // smc algorithms
  Dataset observed;
  std::vector<ModelConfig> models;  // exactly one for single-model algorithms
  std::vector<double> model_prior;  // joint algorithms; uniform by default
  double model_stay_prob = 0.75;    // smc-joint model kernel
  int hist_bins = 20;
  std::string output_dir = "out";

  bool is_joint() const {
    return algorithm == "reject-joint" || algorithm == "smc-joint";
  }
  bool is_sequential() const {
    return algorithm == "smc" || algorithm == "smc-joint";
  }

  bool operator==(const RunConfig&) const = default;
};

/// Parses and validates a JSON run description. Every reported error names
/// the offending key by path (for example "/models/1/prior/0"). Unknown
/// keys are rejected. Throws ConfigError.
RunConfig parse_config(const std::string& text);

/// Serializes a config back to JSON such that
/// parse_config(render(config)) == config.
std::string render(const RunConfig& config);

}  // namespace abc

#endif  // ABC_CONFIG_HPP
