#include "abc/prior.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "abc/errors.hpp"

namespace abc {

PriorSpec::PriorSpec(std::vector<MarginalPrior> dims) : dims_(std::move(dims)) {
  for (std::size_t d = 0; d < dims_.size(); ++d) {
    if (auto* u = std::get_if<UniformDim>(&dims_[d])) {
      if (!std::isfinite(u->lo) || !std::isfinite(u->hi) || u->lo > u->hi) {
        throw ConfigError("prior dimension " + std::to_string(d) +
                          ": uniform bounds must satisfy lo <= hi");
      }
    } else {
      auto& g = std::get<GridDim>(dims_[d]);
      if (g.values.empty()) {
        throw ConfigError("prior dimension " + std::to_string(d) +
                          ": grid must be non-empty");
      }
      std::sort(g.values.begin(), g.values.end());
      if (std::adjacent_find(g.values.begin(), g.values.end()) != g.values.end()) {
        throw ConfigError("prior dimension " + std::to_string(d) +
                          ": grid values must be distinct");
      }
      for (double v : g.values) {
        if (!std::isfinite(v)) {
          throw ConfigError("prior dimension " + std::to_string(d) +
                            ": grid contains a non-finite value");
        }
      }
    }
  }
}

std::vector<double> PriorSpec::sample(RandomStream& rng) const {
  std::vector<double> theta(dims_.size());
  for (std::size_t d = 0; d < dims_.size(); ++d) {
    if (const auto* u = std::get_if<UniformDim>(&dims_[d])) {
      theta[d] = u->lo == u->hi ? u->lo : rng.uniform(u->lo, u->hi);
    } else {
      const auto& g = std::get<GridDim>(dims_[d]);
      theta[d] = g.values.size() == 1
                     ? g.values.front()
                     : g.values[static_cast<std::size_t>(
                           rng.uniform() * static_cast<double>(g.values.size()))];
    }
  }
  return theta;
}

double PriorSpec::density(std::span<const double> theta) const {
  if (theta.size() != dims_.size()) {
    throw ShapeError("prior density: theta has dimension " +
                     std::to_string(theta.size()) + ", prior has " +
                     std::to_string(dims_.size()));
  }
  double dens = 1.0;
  for (std::size_t d = 0; d < dims_.size(); ++d) {
    if (const auto* u = std::get_if<UniformDim>(&dims_[d])) {
      if (u->lo == u->hi) {
        if (theta[d] != u->lo) return 0.0;
        // point mass contributes unit mass
      } else {
        if (theta[d] < u->lo || theta[d] > u->hi) return 0.0;
        dens *= 1.0 / (u->hi - u->lo);
      }
    } else {
      const auto& g = std::get<GridDim>(dims_[d]);
      if (!std::binary_search(g.values.begin(), g.values.end(), theta[d])) {
        return 0.0;
      }
      dens *= 1.0 / static_cast<double>(g.values.size());
    }
  }
  return dens;
}

void JointPrior::validate() const {
  if (model_prior.size() != param_priors.size()) {
    throw ConfigError("joint prior: " + std::to_string(model_prior.size()) +
                      " model probabilities but " +
                      std::to_string(param_priors.size()) + " parameter priors");
  }
  if (model_prior.empty()) {
    throw ConfigError("joint prior: needs at least one model");
  }
  double total = 0.0;
  for (double p : model_prior) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw ConfigError("joint prior: model probabilities must be non-negative");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw ConfigError("joint prior: model probabilities sum to " +
                      std::to_string(total) + ", expected 1");
  }
}

std::size_t sample_categorical(std::span<const double> weights, RandomStream& rng) {
  return detail::sample_weighted_index(
      weights.size(), [&](std::size_t i) { return weights[i]; }, rng);
}

namespace detail {

[[noreturn]] void throw_bad_categorical(const char* what) {
  throw NumericError(what);
}

}  // namespace detail

}  // namespace abc
