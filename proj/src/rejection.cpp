#include "abc/rejection.hpp"

#include <cmath>

#include "abc/errors.hpp"
#include "abc/pool.hpp"

namespace abc {

RejectionResult abc_reject(const PriorSpec& prior, const Simulator& simulator,
                           const Distance& distance, const Dataset& observed,
                           double epsilon, std::size_t n,
                           std::uint64_t max_attempts, std::uint64_t seed,
                           unsigned workers) {
  if (std::isnan(epsilon) || epsilon < 0.0) {
    throw ConfigError("tolerance must be >= 0");
  }
  if (n < 1) throw ConfigError("rejection needs n >= 1");
  observed.validate();

  auto eval = [&](std::uint64_t counter) -> std::optional<Particle> {
    RandomStream rng = derive_stream(seed, 1, counter);
    std::vector<double> theta = prior.sample(rng);
    const Dataset simulated = simulator(theta, rng);
    const double dist = distance(observed, simulated);
    if (!(dist <= epsilon)) return std::nullopt;
    Particle p;
    p.theta = std::move(theta);
    p.weight = 1.0;
    p.distance = dist;
    p.counter = counter;
    return p;
  };

  FillResult fill = fill_population(eval, n, max_attempts, workers);

  RejectionResult result;
  result.population.index = 1;
  result.population.epsilon = epsilon;
  result.population.particles = std::move(fill.accepted);
  result.population.simulations_used = fill.attempts;
  result.population.normalize();
  result.attempts = fill.attempts;
  result.acceptance_rate =
      static_cast<double>(n) / static_cast<double>(fill.attempts);
  return result;
}

}  // namespace abc
