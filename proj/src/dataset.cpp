#include "abc/dataset.hpp"

#include <cmath>
#include <string>

#include "abc/errors.hpp"

namespace abc {

void Dataset::validate() const {
  if (values.size() != times.size()) {
    throw ShapeError("dataset has " + std::to_string(times.size()) +
                     " time points but " + std::to_string(values.size()) +
                     " value rows");
  }
  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    if (!(times[i] < times[i + 1])) {
      throw ShapeError("dataset times must be strictly increasing (t[" +
                       std::to_string(i) + "]=" + std::to_string(times[i]) +
                       " >= t[" + std::to_string(i + 1) + "]=" +
                       std::to_string(times[i + 1]) + ")");
    }
  }
  const std::size_t width = n_species();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].size() != width) {
      throw ShapeError("dataset row " + std::to_string(i) + " has " +
                       std::to_string(values[i].size()) + " entries, expected " +
                       std::to_string(width));
    }
    for (double v : values[i]) {
      if (!std::isfinite(v)) {
        throw ShapeError("dataset row " + std::to_string(i) +
                         " contains a non-finite entry");
      }
    }
    if (!std::isfinite(times[i])) {
      throw ShapeError("dataset time " + std::to_string(i) + " is not finite");
    }
  }
}

Dataset make_dataset(std::vector<double> times,
                     std::vector<std::vector<double>> values) {
  Dataset d{std::move(times), std::move(values)};
  d.validate();
  return d;
}

}  // namespace abc
