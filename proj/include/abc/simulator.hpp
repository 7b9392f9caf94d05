#ifndef ABC_SIMULATOR_HPP
#define ABC_SIMULATOR_HPP

#include <functional>
#include <string>
#include <vector>

#include "abc/dataset.hpp"
#include "abc/discrete.hpp"
#include "abc/ode.hpp"
#include "abc/random.hpp"
#include "abc/ssa.hpp"

namespace abc {

/// A simulation channel bound to the observation grid of one experiment:
/// produces one simulated dataset per call. Simulators are pure given
/// (theta, stream) and safe to call concurrently with per-proposal streams.
using Simulator =
    std::function<Dataset(const std::vector<double>& theta, RandomStream&)>;

Simulator make_ode_simulator(OdeModel model, std::vector<double> times,
                             double step = 1e-3);

Simulator make_ssa_simulator(SsaModel model, std::vector<double> times);

Simulator make_discrete_simulator(DiscreteToyModel model);

/// Built-in toy models, selectable by name from a run configuration.
///
///   decay-ode        dx/dt = -theta[0] * x, Gaussian observation noise
///                    fields: x0 (default 1.0), noise_sd (default 0.1),
///                            step (default 1e-3)
///   birth-death-ssa  X -> 2X at theta[0]*x, X -> 0 at theta[1]*x
///                    fields: x0 (default 50)
///   bernoulli-count  successes in `trials` Bernoulli(theta[0]) draws;
///                    requires `grid`, the parameter values admitted
///                    fields: trials (default 5), grid
///
/// Unknown names raise ConfigError listing the registry.
struct SimulatorField {
  std::string key;
  double value;

  bool operator==(const SimulatorField&) const = default;
};

Simulator make_builtin_simulator(const std::string& type,
                                 const std::vector<SimulatorField>& fields,
                                 const std::vector<double>& grid,
                                 const std::vector<double>& times);

std::vector<std::string> builtin_simulator_names();

OdeModel make_decay_ode(double x0, double noise_sd);
SsaModel make_birth_death_ssa(std::int64_t x0);

}  // namespace abc

#endif  // ABC_SIMULATOR_HPP
