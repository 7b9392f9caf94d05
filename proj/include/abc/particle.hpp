#ifndef ABC_PARTICLE_HPP
#define ABC_PARTICLE_HPP

#include <cstdint>
#include <optional>
#include <vector>

namespace abc {

/// One accepted sample point: a parameter vector, optionally tagged with
/// the model it belongs to, plus its importance weight. The distance and
/// proposal counter recorded at acceptance make every particle
/// re-derivable from (seed, generation, counter).
struct Particle {
  std::optional<int> model;
  std::vector<double> theta;
  double weight = 0.0;
  double distance = 0.0;
  std::uint64_t counter = 0;
};

/// N accepted particles at one tolerance level.
struct Population {
  int index = 1;        // generation number, 1-based
  double epsilon = 0.0;
  std::vector<Particle> particles;
  std::uint64_t simulations_used = 0;

  /// Rescales weights to sum to 1. Throws NumericError on zero total mass.
  void normalize();

  /// True when weights are non-negative and sum to 1 within tol.
  bool is_normalized(double tol = 1e-12) const;
};

}  // namespace abc

#endif  // ABC_PARTICLE_HPP
