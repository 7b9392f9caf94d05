#ifndef ABC_ENGINE_HPP
#define ABC_ENGINE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "abc/config.hpp"
#include "abc/joint.hpp"
#include "abc/particle.hpp"

namespace abc {

struct RunStats {
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::uint64_t attempts = 0;     // proposals across all generations
  std::uint64_t simulations = 0;  // simulator calls; equals attempts here,
                                  // every proposal is simulated exactly once
  double wall_time_ms = 0.0;
};

struct ResultBundle {
  RunConfig config;
  std::vector<Population> populations;
  std::optional<ModelMarginals> marginals;  // joint algorithms only
  RunStats stats;
  std::uint64_t config_hash = 0;  // FNV-1a of render(config)
};

/// Builds the distance, simulators, priors and kernels a config describes.
/// Exposed for the joint algorithms' tests; run() uses it internally.
ModelSet build_model_set(const RunConfig& config);

/// Dispatches the configured algorithm and collects every generation.
/// Deterministic given (config, seed) for any worker count; wall_time_ms is
/// the only field that varies between repeated runs.
ResultBundle run(const RunConfig& config);

/// FNV-1a over a byte string, the hash used throughout the output manifest.
std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace abc

#endif  // ABC_ENGINE_HPP
