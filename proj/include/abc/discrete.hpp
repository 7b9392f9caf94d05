#ifndef ABC_DISCRETE_HPP
#define ABC_DISCRETE_HPP

#include <span>
#include <vector>

#include "abc/dataset.hpp"
#include "abc/random.hpp"

namespace abc {

/// Toy channel with an exactly known sampling distribution: a finite
/// parameter grid and, per grid point, the distribution of one discrete
/// data statistic. Exists so samplers can be checked against enumerated
/// posteriors.
class DiscreteToyModel {
 public:
  /// grid: sorted distinct parameter values; outcomes: the statistic's
  /// possible values; pmf: one row per grid point over the outcomes, each
  /// summing to 1 within 1e-9. Throws ConfigError on violation.
  DiscreteToyModel(std::vector<double> grid, std::vector<double> outcomes,
                   std::vector<std::vector<double>> pmf);

  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& outcomes() const { return outcomes_; }
  const std::vector<std::vector<double>>& pmf() const { return pmf_; }

  /// Exact conditional pmf row for a grid parameter value.
  const std::vector<double>& conditional(double theta) const;

 private:
  std::vector<double> grid_;
  std::vector<double> outcomes_;
  std::vector<std::vector<double>> pmf_;
};

/// One draw of the statistic given theta, as a single-time-point dataset
/// (time 0, one value). Throws NumericError when theta is off the grid.
Dataset simulate_discrete(const DiscreteToyModel& model,
                          std::span<const double> theta, RandomStream& rng);

/// Statistic = number of successes in `trials` Bernoulli(theta) draws,
/// with the exact binomial conditional per grid point.
DiscreteToyModel make_bernoulli_count_model(std::vector<double> grid, int trials);

}  // namespace abc

#endif  // ABC_DISCRETE_HPP
