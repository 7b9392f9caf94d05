#include "abc/ssa.hpp"

#include <cmath>

#include "abc/errors.hpp"
#include "abc/prior.hpp"

namespace abc {

Dataset simulate_ssa(const SsaModel& model, std::span<const double> theta,
                     const std::vector<double>& times, RandomStream& rng) {
  if (model.n_species == 0 || model.initial_state.size() != model.n_species) {
    throw ShapeError("SSA model: initial state has " +
                     std::to_string(model.initial_state.size()) +
                     " entries, species count is " + std::to_string(model.n_species));
  }
  for (const Reaction& r : model.reactions) {
    if (r.stoichiometry.size() != model.n_species) {
      throw ShapeError("SSA reaction stoichiometry has " +
                       std::to_string(r.stoichiometry.size()) +
                       " entries, species count is " +
                       std::to_string(model.n_species));
    }
  }

  Dataset out;
  out.times = times;
  out.values.reserve(times.size());

  std::vector<std::int64_t> state = model.initial_state;
  std::vector<double> propensities(model.reactions.size());
  double t = 0.0;
  bool exhausted = model.reactions.empty();

  for (double target : times) {
    while (!exhausted && t < target) {
      double total = 0.0;
      for (std::size_t j = 0; j < model.reactions.size(); ++j) {
        const double a = model.reactions[j].propensity(state, theta);
        if (!(a >= 0.0) || !std::isfinite(a)) {
          throw SimulationError("SSA propensity of reaction " + std::to_string(j) +
                                " is negative or non-finite at t = " +
                                std::to_string(t));
        }
        propensities[j] = a;
        total += a;
      }
      if (!std::isfinite(total)) {
        throw SimulationError("SSA total propensity overflowed at t = " +
                              std::to_string(t));
      }
      if (total <= 0.0) {
        exhausted = true;  // absorbing state, held forever
        break;
      }

      const double wait = -std::log(1.0 - rng.uniform()) / total;
      if (t + wait >= target) {
        // Next jump falls at or beyond the record point: hold the state.
        // The discarded waiting time is memoryless, so redrawing from the
        // record time is exact.
        t = target;
        break;
      }
      t += wait;

      const std::size_t j = sample_categorical(propensities, rng);
      for (std::size_t i = 0; i < model.n_species; ++i) {
        state[i] += model.reactions[j].stoichiometry[i];
        if (state[i] < 0) {
          throw SimulationError("SSA reaction " + std::to_string(j) +
                                " drove species " + std::to_string(i) +
                                " negative at t = " + std::to_string(t));
        }
      }
    }
    std::vector<double> row(model.n_species);
    for (std::size_t i = 0; i < model.n_species; ++i) {
      row[i] = static_cast<double>(state[i]);
    }
    out.values.push_back(std::move(row));
  }
  out.validate();
  return out;
}

}  // namespace abc
