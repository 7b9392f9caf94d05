#ifndef ABC_SMC_HPP
#define ABC_SMC_HPP

#include <cstdint>
#include <optional>
#include <span>

#include "abc/dataset.hpp"
#include "abc/distance.hpp"
#include "abc/kernels.hpp"
#include "abc/particle.hpp"
#include "abc/prior.hpp"
#include "abc/schedule.hpp"
#include "abc/simulator.hpp"

namespace abc {

struct SmcResult {
  std::vector<Population> populations;       // one per tolerance level
  std::uint64_t total_simulations = 0;
};

/// Resample a particle from the previous population (weight-proportional)
/// and perturb it, redrawing until the result has positive prior density.
/// Throws NumericError when max_retries redraws never reach the support.
std::vector<double> propose_from_population(const Population& prev,
                                            const ParamKernel& kernel,
                                            const PriorSpec& prior,
                                            RandomStream& rng,
                                            int max_retries = 1000);

/// Proposal density of the previous generation at theta: the weighted
/// kernel mixture sum_j w_j K(theta | theta_j) / sum_j w_j, optionally
/// restricted to the particles of one model (weights renormalized within
/// that model). Throws NumericError when the selected weight mass is zero.
double kernel_mixture_density(const Population& prev, std::optional<int> model,
                              const ParamKernel& kernel,
                              std::span<const double> theta);

/// Unnormalized importance weight of a generation-t particle:
/// prior density over the previous generation's kernel mixture.
/// Generation-1 particles bypass this and receive uniform weights.
double compute_weight(std::span<const double> theta, const Population& prev,
                      const ParamKernel& kernel, const PriorSpec& prior);

/// Sequential sampler over a decreasing tolerance schedule. Generation 1
/// is rejection sampling at the first tolerance; each later generation
/// resamples and perturbs the previous one, accepting at its own tolerance
/// and carrying importance weights. The final population approximates the
/// posterior at the last tolerance.
SmcResult abc_smc(const PriorSpec& prior, const Simulator& simulator,
                  const Distance& distance, const Dataset& observed,
                  const ToleranceSchedule& schedule, std::size_t n,
                  const ParamKernel& kernel, std::uint64_t max_attempts_per_gen,
                  std::uint64_t seed, unsigned workers = 1);

}  // namespace abc

#endif  // ABC_SMC_HPP
