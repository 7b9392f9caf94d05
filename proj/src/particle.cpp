#include "abc/particle.hpp"

#include <cmath>

#include "abc/errors.hpp"

namespace abc {

void Population::normalize() {
  double total = 0.0;
  for (const Particle& p : particles) {
    if (!(p.weight >= 0.0) || !std::isfinite(p.weight)) {
      throw NumericError("population " + std::to_string(index) +
                         " has a negative or non-finite particle weight");
    }
    total += p.weight;
  }
  if (total <= 0.0) {
    throw NumericError("population " + std::to_string(index) +
                       " has zero total weight, cannot normalize");
  }
  for (Particle& p : particles) p.weight /= total;
}

bool Population::is_normalized(double tol) const {
  if (particles.empty()) return false;
  double total = 0.0;
  for (const Particle& p : particles) {
    if (p.weight < 0.0 || !std::isfinite(p.weight)) return false;
    total += p.weight;
  }
  return std::abs(total - 1.0) <= tol;
}

}  // namespace abc
