#ifndef ABC_SSA_HPP
#define ABC_SSA_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "abc/dataset.hpp"
#include "abc/random.hpp"

namespace abc {

/// One reaction channel: state change vector plus a propensity function of
/// the current counts and the parameters.
struct Reaction {
  std::vector<int> stoichiometry;  // one entry per species
  std::function<double(std::span<const std::int64_t> state,
                       std::span<const double> theta)>
      propensity;
};

/// Continuous-time jump process over integer species counts.
struct SsaModel {
  std::size_t n_species = 1;
  std::vector<Reaction> reactions;
  std::vector<std::int64_t> initial_state;
};

/// Exact stochastic simulation, direct method: at each jump the waiting
/// time is exponential in the total propensity and the channel is drawn
/// proportionally to its propensity. Recorded values are the state held
/// from the latest jump before each requested time; no observation noise
/// is added. Throws SimulationError on negative or non-finite propensities
/// or when a firing would drive a count negative.
Dataset simulate_ssa(const SsaModel& model, std::span<const double> theta,
                     const std::vector<double>& times, RandomStream& rng);

}  // namespace abc

#endif  // ABC_SSA_HPP
