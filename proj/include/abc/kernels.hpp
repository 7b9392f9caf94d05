#ifndef ABC_KERNELS_HPP
#define ABC_KERNELS_HPP

#include <cstddef>
#include <set>
#include <span>
#include <vector>

#include "abc/prior.hpp"
#include "abc/random.hpp"

namespace abc {

/// Component-wise Gaussian random-walk kernel. When reflection is enabled
/// the kernel needs the prior support it operates on: continuous excursions
/// are folded back into the interval, and grid dimensions snap to the
/// nearest atom so perturbed values stay inside the prior support.
struct ParamKernel {
  std::vector<double> sigma;            // one scale per dimension, > 0
  bool reflect = false;
  std::vector<MarginalPrior> support;   // empty means unbounded
};

/// Builds a kernel bound to a prior's support. Throws ConfigError when a
/// scale is non-positive or the dimensions disagree.
ParamKernel make_param_kernel(std::vector<double> sigma, bool reflect,
                              const PriorSpec& prior);

/// Validating constructor for an unbounded kernel (no reflection target).
ParamKernel make_param_kernel(std::vector<double> sigma);

/// One Gaussian step per dimension. Reflection (continuous dims) and grid
/// snapping apply only when the kernel carries a support.
std::vector<double> perturb_param(const ParamKernel& kernel,
                                  std::span<const double> theta,
                                  RandomStream& rng);

/// Density of the move theta_from -> theta_to: product of per-dimension
/// Gaussian densities of the difference. Deliberately the un-reflected
/// form, also when reflection is enabled (documented approximation).
double kernel_density(const ParamKernel& kernel, std::span<const double> theta_to,
                      std::span<const double> theta_from);

/// Model perturbation: keep the sampled model with probability stay_prob,
/// otherwise move uniformly over the remaining alive models.
struct ModelKernel {
  double stay_prob = 0.75;  // in (0, 1]
};

ModelKernel make_model_kernel(double stay_prob);

/// Proposes a model index. `alive` is the set of models with positive
/// marginal in the previous population; `m` must be a member. A singleton
/// alive set returns m without consuming randomness.
int perturb_model(const ModelKernel& kernel, int m, const std::set<int>& alive,
                  RandomStream& rng);

/// Transition mass of m_from -> m_to under the same kernel; sums to 1 over
/// the alive set for every source model. 1 when only one model is alive.
double model_kernel_density(const ModelKernel& kernel, int m_to, int m_from,
                            const std::set<int>& alive);

}  // namespace abc

#endif  // ABC_KERNELS_HPP
