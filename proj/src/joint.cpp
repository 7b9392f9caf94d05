#include "abc/joint.hpp"

#include <cmath>
#include <set>

#include "abc/errors.hpp"
#include "abc/pool.hpp"

namespace abc {

namespace {

std::set<int> alive_models(const std::vector<double>& marginals) {
  std::set<int> alive;
  for (std::size_t m = 0; m < marginals.size(); ++m) {
    if (marginals[m] > 0.0) alive.insert(static_cast<int>(m));
  }
  return alive;
}

}  // namespace

JointPrior ModelSet::joint_prior() const {
  JointPrior joint;
  joint.model_prior = model_prior;
  for (const ModelSpec& m : models) joint.param_priors.push_back(m.prior);
  return joint;
}

void ModelSet::validate() const {
  if (models.empty()) throw ConfigError("model set is empty");
  joint_prior().validate();
  for (std::size_t m = 0; m < models.size(); ++m) {
    if (models[m].kernel.sigma.size() != models[m].prior.dim()) {
      throw ConfigError("model " + std::to_string(m) + " ('" + models[m].name +
                        "'): kernel has " +
                        std::to_string(models[m].kernel.sigma.size()) +
                        " scales but the prior has " +
                        std::to_string(models[m].prior.dim()) + " dimensions");
    }
  }
}

std::vector<double> marginal_model_prob(const Population& pop,
                                        std::size_t n_models) {
  std::vector<double> marginals(n_models, 0.0);
  for (const Particle& p : pop.particles) {
    if (!p.model.has_value()) {
      throw NumericError("particle without a model index in a joint population");
    }
    const int m = *p.model;
    if (m < 0 || static_cast<std::size_t>(m) >= n_models) {
      throw NumericError("particle carries model index " + std::to_string(m) +
                         " outside the " + std::to_string(n_models) +
                         "-model set");
    }
    marginals[static_cast<std::size_t>(m)] += p.weight;
  }
  return marginals;
}

JointRejectionResult abc_reject_joint(const ModelSet& models,
                                      const Distance& distance,
                                      const Dataset& observed, double epsilon,
                                      std::size_t n, std::uint64_t max_attempts,
                                      std::uint64_t seed, unsigned workers) {
  models.validate();
  if (std::isnan(epsilon) || epsilon < 0.0) {
    throw ConfigError("tolerance must be >= 0");
  }
  if (n < 1) throw ConfigError("rejection needs n >= 1");
  observed.validate();

  auto eval = [&](std::uint64_t counter) -> std::optional<Particle> {
    RandomStream rng = derive_stream(seed, 1, counter);
    const std::size_t m = sample_categorical(models.model_prior, rng);
    std::vector<double> theta = models.models[m].prior.sample(rng);
    const Dataset simulated = models.models[m].simulator(theta, rng);
    const double dist = distance(observed, simulated);
    if (!(dist <= epsilon)) return std::nullopt;
    Particle p;
    p.model = static_cast<int>(m);
    p.theta = std::move(theta);
    p.weight = 1.0;
    p.distance = dist;
    p.counter = counter;
    return p;
  };

  FillResult fill = fill_population(eval, n, max_attempts, workers);

  JointRejectionResult result;
  result.population.index = 1;
  result.population.epsilon = epsilon;
  result.population.particles = std::move(fill.accepted);
  result.population.simulations_used = fill.attempts;
  result.population.normalize();
  result.attempts = fill.attempts;
  result.acceptance_rate =
      static_cast<double>(n) / static_cast<double>(fill.attempts);

  // Acceptance-count ratios: exact integer arithmetic per model.
  std::vector<std::uint64_t> counts(models.size(), 0);
  for (const Particle& p : result.population.particles) {
    ++counts[static_cast<std::size_t>(*p.model)];
  }
  std::vector<double> marginal(models.size());
  for (std::size_t m = 0; m < models.size(); ++m) {
    marginal[m] = static_cast<double>(counts[m]) / static_cast<double>(n);
  }
  result.marginals.per_generation.push_back(std::move(marginal));
  return result;
}

std::pair<int, std::vector<double>> propose_joint(const Population& prev,
                                                  const ModelSet& models,
                                                  const ModelKernel& model_kernel,
                                                  RandomStream& rng,
                                                  int max_retries) {
  const std::vector<double> marginals = marginal_model_prob(prev, models.size());
  const std::set<int> alive = alive_models(marginals);
  if (alive.empty()) {
    throw NumericError("no model holds weight in the previous population");
  }

  const auto m_star =
      static_cast<int>(sample_categorical(marginals, rng));
  const int m = perturb_model(model_kernel, m_star, alive, rng);
  const ModelSpec& spec = models.models[static_cast<std::size_t>(m)];

  // indices of the previous generation's particles belonging to model m
  std::vector<std::uint32_t> members;
  members.reserve(prev.particles.size());
  for (std::size_t i = 0; i < prev.particles.size(); ++i) {
    if (prev.particles[i].model == m) {
      members.push_back(static_cast<std::uint32_t>(i));
    }
  }

  for (int retry = 0; retry < max_retries; ++retry) {
    const std::size_t pick = detail::sample_weighted_index(
        members.size(),
        [&](std::size_t i) { return prev.particles[members[i]].weight; }, rng);
    std::vector<double> theta =
        perturb_param(spec.kernel, prev.particles[members[pick]].theta, rng);
    if (spec.prior.density(theta) > 0.0) return {m, std::move(theta)};
  }
  throw NumericError("gave up after " + std::to_string(max_retries) +
                     " perturbations without reaching the prior support of model " +
                     std::to_string(m));
}

double compute_joint_weight(int m, std::span<const double> theta,
                            const Population& prev, const ModelSet& models,
                            const ModelKernel& model_kernel) {
  if (m < 0 || static_cast<std::size_t>(m) >= models.size()) {
    throw NumericError("model index " + std::to_string(m) +
                       " outside the model set");
  }
  const std::vector<double> marginals = marginal_model_prob(prev, models.size());
  const std::set<int> alive = alive_models(marginals);
  if (!alive.count(m)) {
    throw NumericError("model " + std::to_string(m) +
                       " holds no weight in the previous population");
  }

  const ModelSpec& spec = models.models[static_cast<std::size_t>(m)];
  const double numerator =
      models.model_prior[static_cast<std::size_t>(m)] * spec.prior.density(theta);
  if (numerator == 0.0) return 0.0;

  // Mass of proposing model m. With a single alive model the proposal is
  // certain, which the summed marginals only reach up to rounding.
  double model_factor = 1.0;
  if (alive.size() > 1) {
    model_factor = 0.0;
    for (int source : alive) {
      model_factor += marginals[static_cast<std::size_t>(source)] *
                      model_kernel_density(model_kernel, m, source, alive);
    }
  }

  const double param_factor = kernel_mixture_density(prev, m, spec.kernel, theta);
  return numerator / (model_factor * param_factor);
}

JointSmcResult abc_smc_joint(const ModelSet& models, const Distance& distance,
                             const Dataset& observed,
                             const ToleranceSchedule& schedule, std::size_t n,
                             const ModelKernel& model_kernel,
                             std::uint64_t max_attempts_per_gen,
                             std::uint64_t seed, unsigned workers) {
  models.validate();
  if (n < 2) throw ConfigError("SMC needs n >= 2");
  validate_schedule(schedule.epsilons);

  JointSmcResult result;
  const std::size_t generations = schedule.generations();
  result.populations.reserve(generations);

  JointRejectionResult first =
      abc_reject_joint(models, distance, observed, schedule.epsilons.front(), n,
                       max_attempts_per_gen, seed, workers);
  result.populations.push_back(std::move(first.population));
  result.marginals.per_generation.push_back(
      marginal_model_prob(result.populations.back(), models.size()));

  for (std::size_t t = 2; t <= generations; ++t) {
    const Population& prev = result.populations.back();
    const double epsilon = schedule.epsilons[t - 1];

    auto eval = [&](std::uint64_t counter) -> std::optional<Particle> {
      RandomStream rng = derive_stream(seed, t, counter);
      auto [m, theta] = propose_joint(prev, models, model_kernel, rng);
      const Dataset simulated =
          models.models[static_cast<std::size_t>(m)].simulator(theta, rng);
      const double dist = distance(observed, simulated);
      if (!(dist <= epsilon)) return std::nullopt;
      Particle p;
      p.model = m;
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
      p.weight = compute_joint_weight(*p.model, p.theta, prev, models, model_kernel);
    }
    pop.normalize();
    result.marginals.per_generation.push_back(
        marginal_model_prob(pop, models.size()));
    result.populations.push_back(std::move(pop));
  }

  for (const Population& pop : result.populations) {
    result.total_simulations += pop.simulations_used;
  }
  return result;
}

}  // namespace abc
