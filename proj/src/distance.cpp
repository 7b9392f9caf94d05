#include "abc/distance.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "abc/errors.hpp"

namespace abc {

namespace {

void check_shapes(const Dataset& d0, const Dataset& dstar) {
  if (d0.n_times() != dstar.n_times() || d0.n_species() != dstar.n_species()) {
    throw ShapeError("distance shape mismatch: (" + std::to_string(d0.n_times()) +
                     " x " + std::to_string(d0.n_species()) + ") vs (" +
                     std::to_string(dstar.n_times()) + " x " +
                     std::to_string(dstar.n_species()) + ")");
  }
}

std::map<std::string, Distance>& registry() {
  static std::map<std::string, Distance> reg{
      {"euclidean", distance_euclidean},
      {"sumsq", distance_sumsq},
  };
  return reg;
}

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

double distance_sumsq(const Dataset& d0, const Dataset& dstar) {
  check_shapes(d0, dstar);
  double total = 0.0;
  for (std::size_t i = 0; i < d0.values.size(); ++i) {
    for (std::size_t j = 0; j < d0.values[i].size(); ++j) {
      const double diff = d0.values[i][j] - dstar.values[i][j];
      total += diff * diff;
    }
  }
  return total;
}

double distance_euclidean(const Dataset& d0, const Dataset& dstar) {
  return std::sqrt(distance_sumsq(d0, dstar));
}

Distance distance_by_name(const std::string& name) {
  std::lock_guard lock(registry_mutex());
  auto it = registry().find(name);
  if (it == registry().end()) {
    std::string known;
    for (const auto& [k, v] : registry()) {
      if (!known.empty()) known += ", ";
      known += k;
    }
    throw ConfigError("unknown distance '" + name + "' (available: " + known + ")");
  }
  return it->second;
}

std::vector<std::string> distance_names() {
  std::lock_guard lock(registry_mutex());
  std::vector<std::string> names;
  for (const auto& [k, v] : registry()) names.push_back(k);
  return names;
}

void register_distance(const std::string& name, Distance fn) {
  std::lock_guard lock(registry_mutex());
  registry()[name] = std::move(fn);
}

}  // namespace abc
