#include "abc/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "abc/errors.hpp"
#include "abc/prior.hpp"

namespace abc {

DiscreteToyModel::DiscreteToyModel(std::vector<double> grid,
                                   std::vector<double> outcomes,
                                   std::vector<std::vector<double>> pmf)
    : grid_(std::move(grid)), outcomes_(std::move(outcomes)), pmf_(std::move(pmf)) {
  if (grid_.empty() || outcomes_.empty()) {
    throw ConfigError("discrete toy model needs a non-empty grid and outcome set");
  }
  if (!std::is_sorted(grid_.begin(), grid_.end()) ||
      std::adjacent_find(grid_.begin(), grid_.end()) != grid_.end()) {
    throw ConfigError("discrete toy model grid must be sorted and distinct");
  }
  if (pmf_.size() != grid_.size()) {
    throw ConfigError("discrete toy model has " + std::to_string(pmf_.size()) +
                      " pmf rows for " + std::to_string(grid_.size()) +
                      " grid points");
  }
  for (std::size_t g = 0; g < pmf_.size(); ++g) {
    if (pmf_[g].size() != outcomes_.size()) {
      throw ConfigError("discrete toy model pmf row " + std::to_string(g) +
                        " has " + std::to_string(pmf_[g].size()) +
                        " entries for " + std::to_string(outcomes_.size()) +
                        " outcomes");
    }
    double total = 0.0;
    for (double p : pmf_[g]) {
      if (!(p >= 0.0) || !std::isfinite(p)) {
        throw ConfigError("discrete toy model pmf row " + std::to_string(g) +
                          " has a negative or non-finite probability");
      }
      total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) {
      throw ConfigError("discrete toy model pmf row " + std::to_string(g) +
                        " sums to " + std::to_string(total) + ", expected 1");
    }
  }
}

const std::vector<double>& DiscreteToyModel::conditional(double theta) const {
  auto it = std::lower_bound(grid_.begin(), grid_.end(), theta);
  if (it == grid_.end() || *it != theta) {
    throw NumericError("parameter " + std::to_string(theta) +
                       " is not on the model grid");
  }
  return pmf_[static_cast<std::size_t>(it - grid_.begin())];
}

Dataset simulate_discrete(const DiscreteToyModel& model,
                          std::span<const double> theta, RandomStream& rng) {
  if (theta.size() != 1) {
    throw ShapeError("discrete toy model takes a 1-dimensional parameter, got " +
                     std::to_string(theta.size()));
  }
  const std::vector<double>& row = model.conditional(theta[0]);
  const std::size_t k = sample_categorical(row, rng);
  return make_dataset({0.0}, {{model.outcomes()[k]}});
}

DiscreteToyModel make_bernoulli_count_model(std::vector<double> grid, int trials) {
  if (trials < 1) {
    throw ConfigError("bernoulli count model needs trials >= 1");
  }
  std::vector<double> outcomes(static_cast<std::size_t>(trials) + 1);
  for (int k = 0; k <= trials; ++k) outcomes[static_cast<std::size_t>(k)] = k;

  // binomial coefficients C(trials, k) via Pascal recurrence
  std::vector<double> binom(outcomes.size(), 1.0);
  for (int k = 1; k <= trials; ++k) {
    binom[static_cast<std::size_t>(k)] =
        binom[static_cast<std::size_t>(k - 1)] * (trials - k + 1) / k;
  }

  std::sort(grid.begin(), grid.end());
  std::vector<std::vector<double>> pmf;
  pmf.reserve(grid.size());
  for (double p : grid) {
    if (p < 0.0 || p > 1.0) {
      throw ConfigError("bernoulli count model grid value " + std::to_string(p) +
                        " outside [0, 1]");
    }
    std::vector<double> row(outcomes.size());
    for (int k = 0; k <= trials; ++k) {
      row[static_cast<std::size_t>(k)] = binom[static_cast<std::size_t>(k)] *
                                         std::pow(p, k) *
                                         std::pow(1.0 - p, trials - k);
    }
    pmf.push_back(std::move(row));
  }
  return DiscreteToyModel(std::move(grid), std::move(outcomes), std::move(pmf));
}

}  // namespace abc
