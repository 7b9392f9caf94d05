#ifndef ABC_ODE_HPP
#define ABC_ODE_HPP

#include <functional>
#include <span>
#include <vector>

#include "abc/dataset.hpp"
#include "abc/random.hpp"

namespace abc {

/// Deterministic dynamical model dx/dt = f(t, x, theta) observed with
/// additive Gaussian noise of standard deviation noise_sd at the recorded
/// time points.
struct OdeModel {
  std::size_t dimension = 1;
  std::function<void(double t, std::span<const double> x,
                     std::span<const double> theta, std::span<double> dxdt)>
      rhs;
  std::vector<double> initial_state;
  double noise_sd = 0.0;
};

/// Classic fixed-step 4th-order Runge-Kutta from t = 0, recording the state
/// at each requested time (a shortened final step lands on it exactly).
/// Throws SimulationError naming the time when the state goes non-finite.
Dataset integrate_ode(const OdeModel& model, std::span<const double> theta,
                      const std::vector<double>& times, double step = 1e-3);

/// integrate_ode plus i.i.d. Gaussian observation noise on every recorded
/// entry. With noise_sd == 0 this is a pure function of theta.
Dataset simulate_deterministic(const OdeModel& model, std::span<const double> theta,
                               const std::vector<double>& times, RandomStream& rng,
                               double step = 1e-3);

}  // namespace abc

#endif  // ABC_ODE_HPP
