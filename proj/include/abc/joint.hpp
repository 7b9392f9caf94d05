#ifndef ABC_JOINT_HPP
#define ABC_JOINT_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "abc/dataset.hpp"
#include "abc/distance.hpp"
#include "abc/kernels.hpp"
#include "abc/particle.hpp"
#include "abc/prior.hpp"
#include "abc/schedule.hpp"
#include "abc/simulator.hpp"
#include "abc/smc.hpp"

namespace abc {

/// One candidate model: a simulation channel plus its parameter prior and
/// the perturbation kernel used for it in SMC generations.
struct ModelSpec {
  std::string name;
  Simulator simulator;
  PriorSpec prior;
  ParamKernel kernel;
};

/// The candidate set shared by the joint-space algorithms.
struct ModelSet {
  std::vector<ModelSpec> models;
  std::vector<double> model_prior;  // probability per model, sums to 1

  std::size_t size() const { return models.size(); }

  /// The prior over the joint model and parameter space.
  JointPrior joint_prior() const;

  /// Throws ConfigError unless sizes agree and the model prior is a
  /// probability vector.
  void validate() const;
};

/// Marginal model probabilities, one vector per generation.
struct ModelMarginals {
  std::vector<std::vector<double>> per_generation;
};

struct JointRejectionResult {
  Population population;
  ModelMarginals marginals;  // single entry: acceptance-count ratios
  std::uint64_t attempts = 0;
  double acceptance_rate = 0.0;
};

struct JointSmcResult {
  std::vector<Population> populations;
  ModelMarginals marginals;  // one entry per generation, from weight sums
  std::uint64_t total_simulations = 0;
};

/// Marginal probability of each model: the sum of the weights of the
/// particles belonging to it. Requires a normalized population whose
/// particles all carry model indices in [0, n_models).
std::vector<double> marginal_model_prob(const Population& pop,
                                        std::size_t n_models);

/// Rejection sampling on the joint space: draw a model from the model
/// prior, a parameter from that model's prior, simulate with that model's
/// channel, accept on distance. Marginals are the exact acceptance-count
/// ratios per model.
JointRejectionResult abc_reject_joint(const ModelSet& models,
                                      const Distance& distance,
                                      const Dataset& observed, double epsilon,
                                      std::size_t n, std::uint64_t max_attempts,
                                      std::uint64_t seed, unsigned workers = 1);

/// Joint-space proposal for generation t: resample a model from the
/// previous generation's marginals, perturb it over the alive models,
/// resample a parameter belonging to the perturbed model (weights
/// renormalized within the model), perturb with that model's kernel, and
/// redraw until the parameter has positive prior density.
std::pair<int, std::vector<double>> propose_joint(const Population& prev,
                                                  const ModelSet& models,
                                                  const ModelKernel& model_kernel,
                                                  RandomStream& rng,
                                                  int max_retries = 1000);

/// Unnormalized importance weight of an accepted joint particle (m, theta):
/// the joint prior mass over the product of the model-move mass into m and
/// the within-model kernel mixture at theta. Throws NumericError when model
/// m holds no weight in the previous generation.
double compute_joint_weight(int m, std::span<const double> theta,
                            const Population& prev, const ModelSet& models,
                            const ModelKernel& model_kernel);

/// SMC over the joint model and parameter space. Generation 1 is joint
/// rejection at the first tolerance with uniform weights; later generations
/// are filled through propose_joint and weighted by compute_joint_weight.
/// Marginal model probabilities are recorded for every generation; the
/// final generation approximates the joint posterior.
JointSmcResult abc_smc_joint(const ModelSet& models, const Distance& distance,
                             const Dataset& observed,
                             const ToleranceSchedule& schedule, std::size_t n,
                             const ModelKernel& model_kernel,
                             std::uint64_t max_attempts_per_gen,
                             std::uint64_t seed, unsigned workers = 1);

}  // namespace abc

#endif  // ABC_JOINT_HPP
