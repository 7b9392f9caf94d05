#ifndef ABC_DATASET_HPP
#define ABC_DATASET_HPP

#include <cstddef>
#include <vector>

namespace abc {

/// Observations on a fixed time grid: one row of values per time point,
/// one column per observed species. Both the experimental dataset and
/// every simulated dataset use this shape.
struct Dataset {
  std::vector<double> times;
  std::vector<std::vector<double>> values;

  std::size_t n_times() const { return times.size(); }
  std::size_t n_species() const { return values.empty() ? 0 : values.front().size(); }

  /// Enforces: times strictly increasing, one row per time point, rows of
  /// equal width, all entries finite. Throws ShapeError otherwise.
  void validate() const;

  bool operator==(const Dataset&) const = default;
};

/// Validating constructor.
Dataset make_dataset(std::vector<double> times,
                     std::vector<std::vector<double>> values);

}  // namespace abc

#endif  // ABC_DATASET_HPP
