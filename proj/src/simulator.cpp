#include "abc/simulator.hpp"

#include <memory>
#include <utility>

#include "abc/errors.hpp"

namespace abc {

namespace {

double field_or(const std::vector<SimulatorField>& fields, const std::string& key,
                double fallback) {
  for (const auto& f : fields) {
    if (f.key == key) return f.value;
  }
  return fallback;
}

void check_fields(const std::string& type,
                  const std::vector<SimulatorField>& fields,
                  std::initializer_list<const char*> known) {
  for (const auto& f : fields) {
    bool found = false;
    for (const char* k : known) {
      if (f.key == k) found = true;
    }
    if (found) continue;
    std::string names;
    for (const char* k : known) {
      if (!names.empty()) names += ", ";
      names += k;
    }
    throw ConfigError("simulator '" + type + "' has no field '" + f.key +
                      "' (available: " + names + ")");
  }
}

}  // namespace

Simulator make_ode_simulator(OdeModel model, std::vector<double> times, double step) {
  return [model = std::move(model), times = std::move(times),
          step](const std::vector<double>& theta, RandomStream& rng) {
    return simulate_deterministic(model, theta, times, rng, step);
  };
}

Simulator make_ssa_simulator(SsaModel model, std::vector<double> times) {
  return [model = std::move(model),
          times = std::move(times)](const std::vector<double>& theta,
                                    RandomStream& rng) {
    return simulate_ssa(model, theta, times, rng);
  };
}

Simulator make_discrete_simulator(DiscreteToyModel model) {
  auto shared = std::make_shared<DiscreteToyModel>(std::move(model));
  return [shared](const std::vector<double>& theta, RandomStream& rng) {
    return simulate_discrete(*shared, theta, rng);
  };
}

OdeModel make_decay_ode(double x0, double noise_sd) {
  OdeModel model;
  model.dimension = 1;
  model.rhs = [](double, std::span<const double> x, std::span<const double> theta,
                 std::span<double> dxdt) { dxdt[0] = -theta[0] * x[0]; };
  model.initial_state = {x0};
  model.noise_sd = noise_sd;
  return model;
}

SsaModel make_birth_death_ssa(std::int64_t x0) {
  SsaModel model;
  model.n_species = 1;
  model.initial_state = {x0};
  model.reactions = {
      {{+1},
       [](std::span<const std::int64_t> state, std::span<const double> theta) {
         return theta[0] * static_cast<double>(state[0]);
       }},
      {{-1},
       [](std::span<const std::int64_t> state, std::span<const double> theta) {
         return theta[1] * static_cast<double>(state[0]);
       }},
  };
  return model;
}

Simulator make_builtin_simulator(const std::string& type,
                                 const std::vector<SimulatorField>& fields,
                                 const std::vector<double>& grid,
                                 const std::vector<double>& times) {
  if (type == "decay-ode") {
    check_fields(type, fields, {"x0", "noise_sd", "step"});
    const double x0 = field_or(fields, "x0", 1.0);
    const double noise_sd = field_or(fields, "noise_sd", 0.1);
    const double step = field_or(fields, "step", 1e-3);
    return make_ode_simulator(make_decay_ode(x0, noise_sd), times, step);
  }
  if (type == "birth-death-ssa") {
    check_fields(type, fields, {"x0"});
    const auto x0 = static_cast<std::int64_t>(field_or(fields, "x0", 50.0));
    if (x0 < 0) throw ConfigError("birth-death-ssa needs x0 >= 0");
    return make_ssa_simulator(make_birth_death_ssa(x0), times);
  }
  if (type == "bernoulli-count") {
    check_fields(type, fields, {"trials"});
    const int trials = static_cast<int>(field_or(fields, "trials", 5.0));
    if (grid.empty()) {
      throw ConfigError("bernoulli-count simulator needs the parameter grid");
    }
    return make_discrete_simulator(make_bernoulli_count_model(grid, trials));
  }
  std::string known;
  for (const auto& name : builtin_simulator_names()) {
    if (!known.empty()) known += ", ";
    known += name;
  }
  throw ConfigError("unknown simulator '" + type + "' (available: " + known + ")");
}

std::vector<std::string> builtin_simulator_names() {
  return {"bernoulli-count", "birth-death-ssa", "decay-ode"};
}

}  // namespace abc
