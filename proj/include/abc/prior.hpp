#ifndef ABC_PRIOR_HPP
#define ABC_PRIOR_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "abc/random.hpp"

namespace abc {

/// Continuous uniform marginal on [lo, hi). A collapsed interval (lo == hi)
/// degenerates to a point mass at lo with unit mass.
struct UniformDim {
  double lo = 0.0;
  double hi = 1.0;

  bool operator==(const UniformDim&) const = default;
};

/// Uniform marginal over an explicit finite grid of distinct real values.
struct GridDim {
  std::vector<double> values;  // sorted at construction

  bool operator==(const GridDim&) const = default;
};

using MarginalPrior = std::variant<UniformDim, GridDim>;

/// Independent product prior over the parameter dimensions of one model.
class PriorSpec {
 public:
  PriorSpec() = default;

  /// Validates every marginal: lo <= hi for intervals, non-empty grids with
  /// distinct values. Grids are sorted. Throws ConfigError on violation.
  explicit PriorSpec(std::vector<MarginalPrior> dims);

  std::size_t dim() const { return dims_.size(); }
  const std::vector<MarginalPrior>& marginals() const { return dims_; }

  /// One independent draw per dimension.
  std::vector<double> sample(RandomStream& rng) const;

  /// Product of marginal densities (intervals) and masses (grids);
  /// 0 outside the support. Throws ShapeError on dimension mismatch.
  double density(std::span<const double> theta) const;

 private:
  std::vector<MarginalPrior> dims_;
};

/// Prior over the joint model and parameter space: a probability vector
/// over model indices plus one parameter prior per model.
struct JointPrior {
  std::vector<double> model_prior;
  std::vector<PriorSpec> param_priors;

  /// Enforces matching lengths and model_prior summing to 1 within 1e-12.
  void validate() const;
};

/// Draw an index with probability weights[i] / sum(weights). Weights need
/// not be normalized. Never returns an index whose weight is zero.
/// A single-entry vector returns 0 without consuming randomness.
/// Throws NumericError when the weights are all zero or any is negative.
std::size_t sample_categorical(std::span<const double> weights, RandomStream& rng);

namespace detail {

[[noreturn]] void throw_bad_categorical(const char* what);

/// Shared cumulative-walk core behind sample_categorical and the particle
/// resamplers, so every weighted draw in the engine performs identical
/// arithmetic. `weight(i)` is the i-th admissible weight, i in [0, size).
template <class WeightFn>
std::size_t sample_weighted_index(std::size_t size, WeightFn&& weight,
                                  RandomStream& rng) {
  if (size == 0) throw_bad_categorical("categorical sample over an empty set");
  double total = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    const double w = weight(i);
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw_bad_categorical("categorical weights must be non-negative and finite");
    }
    total += w;
  }
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw_bad_categorical("categorical weights are all zero or not finite");
  }
  if (size == 1) return 0;  // no randomness needed

  double r = rng.uniform() * total;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < size; ++i) {
    const double w = weight(i);
    if (w <= 0.0) continue;
    last_positive = i;
    r -= w;
    if (r < 0.0) return i;
  }
  // r landed on the far boundary through rounding; return the last
  // positive-weight index so zero-weight entries are never produced.
  return last_positive;
}

}  // namespace detail

}  // namespace abc

#endif  // ABC_PRIOR_HPP
