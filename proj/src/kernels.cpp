#include "abc/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "abc/errors.hpp"

namespace abc {

namespace {

void check_sigma(const std::vector<double>& sigma) {
  if (sigma.empty()) {
    throw ConfigError("kernel needs at least one scale");
  }
  for (std::size_t d = 0; d < sigma.size(); ++d) {
    if (!(sigma[d] > 0.0) || !std::isfinite(sigma[d])) {
      throw ConfigError("kernel scale for dimension " + std::to_string(d) +
                        " must be positive and finite");
    }
  }
}

double reflect_into(double x, double lo, double hi) {
  if (lo == hi) return lo;
  const double span = hi - lo;
  double t = std::fmod(x - lo, 2.0 * span);
  if (t < 0.0) t += 2.0 * span;
  return lo + (t <= span ? t : 2.0 * span - t);
}

double snap_to_grid(double x, const std::vector<double>& grid) {
  auto it = std::lower_bound(grid.begin(), grid.end(), x);
  if (it == grid.begin()) return grid.front();
  if (it == grid.end()) return grid.back();
  const double above = *it;
  const double below = *std::prev(it);
  return (x - below) <= (above - x) ? below : above;
}

}  // namespace

ParamKernel make_param_kernel(std::vector<double> sigma, bool reflect,
                              const PriorSpec& prior) {
  check_sigma(sigma);
  if (sigma.size() != prior.dim()) {
    throw ConfigError("kernel has " + std::to_string(sigma.size()) +
                      " scales but the prior has " + std::to_string(prior.dim()) +
                      " dimensions");
  }
  return ParamKernel{std::move(sigma), reflect, prior.marginals()};
}

ParamKernel make_param_kernel(std::vector<double> sigma) {
  check_sigma(sigma);
  return ParamKernel{std::move(sigma), false, {}};
}

std::vector<double> perturb_param(const ParamKernel& kernel,
                                  std::span<const double> theta,
                                  RandomStream& rng) {
  if (theta.size() != kernel.sigma.size()) {
    throw ShapeError("perturb: theta has dimension " + std::to_string(theta.size()) +
                     ", kernel has " + std::to_string(kernel.sigma.size()));
  }
  std::vector<double> out(theta.size());
  for (std::size_t d = 0; d < theta.size(); ++d) {
    double x = theta[d] + kernel.sigma[d] * rng.normal();
    if (d < kernel.support.size()) {
      if (const auto* u = std::get_if<UniformDim>(&kernel.support[d])) {
        if (kernel.reflect) x = reflect_into(x, u->lo, u->hi);
      } else {
        x = snap_to_grid(x, std::get<GridDim>(kernel.support[d]).values);
      }
    }
    out[d] = x;
  }
  return out;
}

double kernel_density(const ParamKernel& kernel, std::span<const double> theta_to,
                      std::span<const double> theta_from) {
  if (theta_to.size() != kernel.sigma.size() ||
      theta_from.size() != kernel.sigma.size()) {
    throw ShapeError("kernel density: dimensions " + std::to_string(theta_to.size()) +
                     " / " + std::to_string(theta_from.size()) +
                     " do not match kernel dimension " +
                     std::to_string(kernel.sigma.size()));
  }
  double dens = 1.0;
  for (std::size_t d = 0; d < kernel.sigma.size(); ++d) {
    const double s = kernel.sigma[d];
    const double z = (theta_to[d] - theta_from[d]) / s;
    dens *= std::exp(-0.5 * z * z) / (s * std::sqrt(2.0 * std::numbers::pi));
  }
  return dens;
}

ModelKernel make_model_kernel(double stay_prob) {
  if (!(stay_prob > 0.0) || stay_prob > 1.0) {
    throw ConfigError("model kernel stay probability must be in (0, 1], got " +
                      std::to_string(stay_prob));
  }
  return ModelKernel{stay_prob};
}

int perturb_model(const ModelKernel& kernel, int m, const std::set<int>& alive,
                  RandomStream& rng) {
  if (alive.empty()) {
    throw NumericError("model perturbation with an empty alive set");
  }
  if (!alive.count(m)) {
    throw NumericError("model " + std::to_string(m) + " is not alive");
  }
  if (alive.size() == 1) return m;
  if (rng.uniform() < kernel.stay_prob) return m;
  // uniform over the remaining alive models
  const auto n_others = alive.size() - 1;
  auto k = static_cast<std::size_t>(rng.uniform() * static_cast<double>(n_others));
  if (k >= n_others) k = n_others - 1;
  for (int candidate : alive) {
    if (candidate == m) continue;
    if (k == 0) return candidate;
    --k;
  }
  return m;  // unreachable
}

double model_kernel_density(const ModelKernel& kernel, int m_to, int m_from,
                            const std::set<int>& alive) {
  if (!alive.count(m_to) || !alive.count(m_from)) {
    throw NumericError("model kernel density over indices outside the alive set");
  }
  if (alive.size() == 1) return 1.0;
  if (m_to == m_from) return kernel.stay_prob;
  return (1.0 - kernel.stay_prob) / static_cast<double>(alive.size() - 1);
}

}  // namespace abc
