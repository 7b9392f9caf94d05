#include "abc/ode.hpp"

#include <cmath>
#include <string>

#include "abc/errors.hpp"

namespace abc {

namespace {

void rk4_step(const OdeModel& model, std::span<const double> theta, double t,
              double h, std::vector<double>& x, std::vector<double>& k1,
              std::vector<double>& k2, std::vector<double>& k3,
              std::vector<double>& k4, std::vector<double>& tmp) {
  const std::size_t n = x.size();
  model.rhs(t, x, theta, k1);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
  model.rhs(t + 0.5 * h, tmp, theta, k2);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
  model.rhs(t + 0.5 * h, tmp, theta, k3);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + h * k3[i];
  model.rhs(t + h, tmp, theta, k4);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
}

}  // namespace

Dataset integrate_ode(const OdeModel& model, std::span<const double> theta,
                      const std::vector<double>& times, double step) {
  if (model.dimension == 0 || model.initial_state.size() != model.dimension) {
    throw ShapeError("ODE model: initial state has " +
                     std::to_string(model.initial_state.size()) +
                     " entries, dimension is " + std::to_string(model.dimension));
  }
  if (!(step > 0.0)) {
    throw ConfigError("ODE step size must be positive");
  }
  if (!times.empty() && times.front() < 0.0) {
    throw ConfigError("ODE record times must start at t >= 0");
  }

  Dataset out;
  out.times = times;
  out.values.reserve(times.size());

  std::vector<double> x = model.initial_state;
  std::vector<double> k1(x.size()), k2(x.size()), k3(x.size()), k4(x.size()),
      tmp(x.size());
  double t = 0.0;
  for (double target : times) {
    while (t < target) {
      const double h = std::min(step, target - t);
      rk4_step(model, theta, t, h, x, k1, k2, k3, k4, tmp);
      t += h;
      for (double v : x) {
        if (!std::isfinite(v)) {
          throw SimulationError("ODE state diverged at t = " + std::to_string(t));
        }
      }
    }
    out.values.push_back(x);
  }
  out.validate();
  return out;
}

Dataset simulate_deterministic(const OdeModel& model, std::span<const double> theta,
                               const std::vector<double>& times, RandomStream& rng,
                               double step) {
  if (model.noise_sd < 0.0) {
    throw ConfigError("observation noise sd must be >= 0");
  }
  Dataset data = integrate_ode(model, theta, times, step);
  if (model.noise_sd > 0.0) {
    for (auto& row : data.values) {
      for (double& v : row) v += rng.normal(0.0, model.noise_sd);
    }
  }
  return data;
}

}  // namespace abc
