#ifndef ABC_DISTANCE_HPP
#define ABC_DISTANCE_HPP

#include <functional>
#include <string>
#include <vector>

#include "abc/dataset.hpp"

namespace abc {

/// A distance compares a simulated dataset against the observed one.
/// Distances are pure and must be non-negative and symmetric.
using Distance = std::function<double(const Dataset&, const Dataset&)>;

/// Euclidean distance: sqrt of the sum of squared entry differences over
/// all shared time points. Requires identical shapes.
double distance_euclidean(const Dataset& d0, const Dataset& dstar);

/// Un-rooted sum of squared entry differences.
double distance_sumsq(const Dataset& d0, const Dataset& dstar);

/// Look up a built-in or user-registered distance by name.
/// Throws ConfigError listing the available names when unknown.
Distance distance_by_name(const std::string& name);

/// Names currently registered, sorted.
std::vector<std::string> distance_names();

/// Extension point: register a custom distance under a new name.
void register_distance(const std::string& name, Distance fn);

}  // namespace abc

#endif  // ABC_DISTANCE_HPP
