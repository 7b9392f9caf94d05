#include "abc/engine.hpp"

#include <chrono>
#include <utility>

#include "abc/distance.hpp"
#include "abc/errors.hpp"
#include "abc/rejection.hpp"
#include "abc/smc.hpp"

namespace abc {

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  for (const char c : bytes) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001B3ULL;
  }
  return hash;
}

ModelSet build_model_set(const RunConfig& config) {
  ModelSet set;
  set.model_prior = config.model_prior;
  for (const ModelConfig& m : config.models) {
    ModelSpec spec;
    spec.name = m.name;
    spec.prior = PriorSpec(m.prior);
    spec.simulator = make_builtin_simulator(m.simulator.type, m.simulator.fields,
                                            m.simulator.grid,
                                            config.observed.times);
    if (!m.kernel_sigma.empty()) {
      spec.kernel = make_param_kernel(m.kernel_sigma, m.kernel_reflect, spec.prior);
    }
    set.models.push_back(std::move(spec));
  }
  return set;
}

ResultBundle run(const RunConfig& config) {
  const auto started = std::chrono::steady_clock::now();

  ResultBundle bundle;
  bundle.config = config;
  bundle.config_hash = fnv1a64(render(config));
  bundle.stats.seed = config.seed;
  bundle.stats.workers = config.workers;

  const Distance distance = distance_by_name(config.distance);
  const ModelSet models = build_model_set(config);

  if (config.algorithm == "reject") {
    const ModelSpec& m = models.models.front();
    RejectionResult result =
        abc_reject(m.prior, m.simulator, distance, config.observed,
                   *config.epsilon, config.n, config.max_attempts, config.seed,
                   config.workers);
    bundle.populations.push_back(std::move(result.population));
  } else if (config.algorithm == "smc") {
    const ModelSpec& m = models.models.front();
    SmcResult result =
        abc_smc(m.prior, m.simulator, distance, config.observed,
                ToleranceSchedule{config.schedule}, config.n, m.kernel,
                config.max_attempts, config.seed, config.workers);
    bundle.populations = std::move(result.populations);
  } else if (config.algorithm == "reject-joint") {
    JointRejectionResult result =
        abc_reject_joint(models, distance, config.observed, *config.epsilon,
                         config.n, config.max_attempts, config.seed,
                         config.workers);
    bundle.populations.push_back(std::move(result.population));
    bundle.marginals = std::move(result.marginals);
  } else if (config.algorithm == "smc-joint") {
    JointSmcResult result =
        abc_smc_joint(models, distance, config.observed,
                      ToleranceSchedule{config.schedule}, config.n,
                      make_model_kernel(config.model_stay_prob),
                      config.max_attempts, config.seed, config.workers);
    bundle.populations = std::move(result.populations);
    bundle.marginals = std::move(result.marginals);
  } else {
    throw ConfigError("unknown algorithm '" + config.algorithm + "'");
  }

  for (const Population& pop : bundle.populations) {
    bundle.stats.simulations += pop.simulations_used;
  }
  bundle.stats.attempts = bundle.stats.simulations;

  const auto finished = std::chrono::steady_clock::now();
  bundle.stats.wall_time_ms =
      std::chrono::duration<double, std::milli>(finished - started).count();
  return bundle;
}

}  // namespace abc
