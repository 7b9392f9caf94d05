#include "abc/smc.hpp"

#include <cmath>
#include <string>

#include "abc/errors.hpp"
#include "abc/pool.hpp"
#include "abc/rejection.hpp"

namespace abc {

std::vector<double> propose_from_population(const Population& prev,
                                            const ParamKernel& kernel,
                                            const PriorSpec& prior,
                                            RandomStream& rng, int max_retries) {
  if (prev.particles.empty()) {
    throw NumericError("cannot propose from an empty population");
  }
  for (int retry = 0; retry < max_retries; ++retry) {
    const std::size_t j = detail::sample_weighted_index(
        prev.particles.size(),
        [&](std::size_t i) { return prev.particles[i].weight; }, rng);
    std::vector<double> theta = perturb_param(kernel, prev.particles[j].theta, rng);
    if (prior.density(theta) > 0.0) return theta;
  }
  throw NumericError("gave up after " + std::to_string(max_retries) +
                     " perturbations without reaching the prior support");
}

double kernel_mixture_density(const Population& prev, std::optional<int> model,
                              const ParamKernel& kernel,
                              std::span<const double> theta) {
  double mixture = 0.0;
  double mass = 0.0;
  for (const Particle& p : prev.particles) {
    if (model && p.model != *model) continue;
    mixture += p.weight * kernel_density(kernel, theta, p.theta);
    mass += p.weight;
  }
  if (!(mass > 0.0)) {
    throw NumericError(model ? "model " + std::to_string(*model) +
                                   " holds no weight in the previous population"
                             : "previous population holds no weight");
  }
  if (!(mixture > 0.0)) {
    throw NumericError("kernel mixture density vanished; weight undefined");
  }
  return mixture / mass;
}

double compute_weight(std::span<const double> theta, const Population& prev,
                      const ParamKernel& kernel, const PriorSpec& prior) {
  const double numerator = prior.density(theta);
  if (numerator == 0.0) return 0.0;
  return numerator / kernel_mixture_density(prev, std::nullopt, kernel, theta);
}

SmcResult abc_smc(const PriorSpec& prior, const Simulator& simulator,
                  const Distance& distance, const Dataset& observed,
                  const ToleranceSchedule& schedule, std::size_t n,
                  const ParamKernel& kernel, std::uint64_t max_attempts_per_gen,
                  std::uint64_t seed, unsigned workers) {
  if (n < 2) throw ConfigError("SMC needs n >= 2");
  validate_schedule(schedule.epsilons);
  if (kernel.sigma.size() != prior.dim()) {
    throw ConfigError("kernel has " + std::to_string(kernel.sigma.size()) +
                      " scales but the prior has " + std::to_string(prior.dim()) +
                      " dimensions");
  }

  SmcResult result;
  const std::size_t generations = schedule.generations();
  result.populations.reserve(generations);

  RejectionResult first =
      abc_reject(prior, simulator, distance, observed, schedule.epsilons.front(),
                 n, max_attempts_per_gen, seed, workers);
  result.populations.push_back(std::move(first.population));

  for (std::size_t t = 2; t <= generations; ++t) {
    const Population& prev = result.populations.back();
    const double epsilon = schedule.epsilons[t - 1];

    auto eval = [&](std::uint64_t counter) -> std::optional<Particle> {
      RandomStream rng = derive_stream(seed, t, counter);
      std::vector<double> theta =
          propose_from_population(prev, kernel, prior, rng);
      const Dataset simulated = simulator(theta, rng);
      const double dist = distance(observed, simulated);
      if (!(dist <= epsilon)) return std::nullopt;
      Particle p;
      p.theta = std::move(theta);
      p.distance = dist;
      p.counter = counter;
      return p;
    };

    FillResult fill = fill_population(eval, n, max_attempts_per_gen, workers);

    Population pop;
    pop.index = static_cast<int>(t);
    pop.epsilon = epsilon;
    pop.particles = std::move(fill.accepted);
    pop.simulations_used = fill.attempts;
    for (Particle& p : pop.particles) {
      p.weight = compute_weight(p.theta, prev, kernel, prior);
    }
    pop.normalize();
    result.populations.push_back(std::move(pop));
  }

  for (const Population& pop : result.populations) {
    result.total_simulations += pop.simulations_used;
  }
  return result;
}

}  // namespace abc
