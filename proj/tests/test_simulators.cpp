#include <doctest.h>

#include <cmath>
#include <vector>

#include "abc/discrete.hpp"
#include "abc/errors.hpp"
#include "abc/ode.hpp"
#include "abc/random.hpp"
#include "abc/simulator.hpp"
#include "abc/ssa.hpp"

using namespace abc;

namespace {

OdeModel decay_model(double x0) {
  OdeModel model;
  model.dimension = 1;
  model.rhs = [](double, std::span<const double> x, std::span<const double> theta,
                 std::span<double> dxdt) { dxdt[0] = -theta[0] * x[0]; };
  model.initial_state = {x0};
  return model;
}

SsaModel pure_death(std::int64_t n0) {
  SsaModel model;
  model.n_species = 1;
  model.initial_state = {n0};
  model.reactions = {{{-1},
                      [](std::span<const std::int64_t> state,
                         std::span<const double> theta) {
                        return theta[0] * static_cast<double>(state[0]);
                      }}};
  return model;
}

// Binomial coefficients recomputed here so the model's pmf is checked
// against arithmetic it does not share.
double binom_pmf(int n, int k, double p) {
  double coeff = 1.0;
  for (int i = 0; i < k; ++i) {
    coeff *= static_cast<double>(n - i) / static_cast<double>(i + 1);
  }
  return coeff * std::pow(p, k) * std::pow(1.0 - p, n - k);
}

}  // namespace

TEST_SUITE("simulators") {

TEST_CASE("decay ODE matches the closed form") {
  const Dataset out = integrate_ode(decay_model(1.0), std::vector<double>{1.0},
                                    {1.0});
  CHECK(out.values[0][0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-6));

  const Dataset half = integrate_ode(decay_model(1.0), std::vector<double>{2.0},
                                     {0.5});
  CHECK(half.values[0][0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-6));
}

TEST_CASE("zero derivative holds the state constant") {
  OdeModel model;
  model.dimension = 1;
  model.rhs = [](double, std::span<const double>, std::span<const double>,
                 std::span<double> dxdt) { dxdt[0] = 0.0; };
  model.initial_state = {3.25};
  const Dataset out = integrate_ode(model, std::vector<double>{}, {0.5, 1.0, 7.0});
  for (const auto& row : out.values) CHECK(row[0] == 3.25);
}

TEST_CASE("halving the step shrinks the error like a 4th-order method") {
  const std::vector<double> times{0.5, 1.0, 1.5, 2.0};
  auto max_error = [&](double step) {
    const Dataset out =
        integrate_ode(decay_model(1.0), std::vector<double>{1.0}, times, step);
    double worst = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
      worst = std::max(worst, std::abs(out.values[i][0] - std::exp(-times[i])));
    }
    return worst;
  };
  const double ratio = max_error(0.1) / max_error(0.05);
  CHECK(ratio >= 8.0);
  CHECK(ratio <= 32.0);
}

TEST_CASE("divergent state raises a simulation error naming the time") {
  OdeModel model;
  model.dimension = 1;
  model.rhs = [](double, std::span<const double> x, std::span<const double>,
                 std::span<double> dxdt) { dxdt[0] = x[0] * x[0]; };
  model.initial_state = {1.0};
  CHECK_THROWS_WITH_AS(
      integrate_ode(model, std::vector<double>{}, {2.0}, 1e-3),
      doctest::Contains("diverged"), SimulationError);
}

TEST_CASE("noise-free simulation equals the integration") {
  OdeModel model = decay_model(1.0);
  model.noise_sd = 0.0;
  RandomStream rng(31);
  const std::vector<double> times{0.25, 0.75};
  const Dataset pure = integrate_ode(model, std::vector<double>{1.0}, times);
  const Dataset sim =
      simulate_deterministic(model, std::vector<double>{1.0}, times, rng);
  CHECK(sim.values == pure.values);
}

TEST_CASE("observation noise has the configured spread") {
  OdeModel model = decay_model(1.0);
  model.noise_sd = 0.1;
  const std::vector<double> times{1.0};
  const double center = std::exp(-1.0);
  double sum = 0.0, sumsq = 0.0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    RandomStream rng = derive_stream(32, 1, static_cast<std::uint64_t>(i));
    const double v =
        simulate_deterministic(model, std::vector<double>{1.0}, times, rng)
            .values[0][0];
    sum += v - center;
    sumsq += (v - center) * (v - center);
  }
  const double mean = sum / n;
  const double sd = std::sqrt(sumsq / n - mean * mean);
  CHECK(sd == doctest::Approx(0.1).epsilon(0.05));
}

TEST_CASE("simulation is a pure function of the stream") {
  OdeModel model = decay_model(1.0);
  model.noise_sd = 0.1;
  const std::vector<double> times{0.5, 1.0};
  RandomStream a(33), b(33), c(34);
  const Dataset da = simulate_deterministic(model, std::vector<double>{1.0}, times, a);
  const Dataset db = simulate_deterministic(model, std::vector<double>{1.0}, times, b);
  const Dataset dc = simulate_deterministic(model, std::vector<double>{1.0}, times, c);
  CHECK(da.values == db.values);
  CHECK(da.values != dc.values);
}

TEST_CASE("jump process with zero propensities never moves") {
  SsaModel model = pure_death(40);
  RandomStream rng(35);
  const Dataset out = simulate_ssa(model, std::vector<double>{0.0}, {0.5, 2.0}, rng);
  CHECK(out.values[0][0] == 40.0);
  CHECK(out.values[1][0] == 40.0);
}

TEST_CASE("pure-death mean matches the analytic decay") {
  const SsaModel model = pure_death(100);
  const int n = 10000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    RandomStream rng = derive_stream(36, 1, static_cast<std::uint64_t>(i));
    const double v =
        simulate_ssa(model, std::vector<double>{1.0}, {1.0}, rng).values[0][0];
    sum += v;
    sumsq += v * v;
  }
  const double mean = sum / n;
  const double sd = std::sqrt(sumsq / n - mean * mean);
  const double se = sd / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(mean - 100.0 * std::exp(-1.0)) < 3.0 * se);
}

TEST_CASE("same stream gives a bit-identical trajectory") {
  const SsaModel model = pure_death(60);
  RandomStream a(37), b(37);
  const std::vector<double> times{0.2, 0.6, 1.0, 1.8};
  const Dataset da = simulate_ssa(model, std::vector<double>{1.3}, times, a);
  const Dataset db = simulate_ssa(model, std::vector<double>{1.3}, times, b);
  CHECK(da.values == db.values);
}

TEST_CASE("birth-death counts stay non-negative integers") {
  const SsaModel model = make_birth_death_ssa(30);
  for (int i = 0; i < 50; ++i) {
    RandomStream rng = derive_stream(38, 1, static_cast<std::uint64_t>(i));
    const Dataset out =
        simulate_ssa(model, std::vector<double>{2.0, 2.5}, {0.5, 1.0, 2.0}, rng);
    for (const auto& row : out.values) {
      CHECK(row[0] >= 0.0);
      CHECK(row[0] == std::floor(row[0]));
    }
  }
}

TEST_CASE("negative propensity is a simulation error") {
  SsaModel model = pure_death(10);
  RandomStream rng(39);
  CHECK_THROWS_AS(
      simulate_ssa(model, std::vector<double>{-1.0}, {1.0}, rng),
      SimulationError);
}

TEST_CASE("point-mass conditional always yields its value") {
  const DiscreteToyModel model({1.0, 2.0}, {5.0, 9.0},
                               {{1.0, 0.0}, {0.0, 1.0}});
  RandomStream rng(40);
  for (int i = 0; i < 100; ++i) {
    CHECK(simulate_discrete(model, std::vector<double>{2.0}, rng).values[0][0] ==
          9.0);
  }
}

TEST_CASE("success counts follow the binomial pmf") {
  const DiscreteToyModel model =
      make_bernoulli_count_model({0.1, 0.3, 0.5, 0.7, 0.9}, 5);
  int threes = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    RandomStream rng = derive_stream(41, 1, static_cast<std::uint64_t>(i));
    const double v =
        simulate_discrete(model, std::vector<double>{0.5}, rng).values[0][0];
    if (v == 3.0) ++threes;
  }
  CHECK(static_cast<double>(threes) / n == doctest::Approx(0.3125).epsilon(0.032));
}

TEST_CASE("bernoulli-count conditionals match an independent binomial") {
  const std::vector<double> grid{0.1, 0.3, 0.5, 0.7};
  const DiscreteToyModel model = make_bernoulli_count_model(grid, 5);
  for (double theta : grid) {
    const std::vector<double>& row = model.conditional(theta);
    REQUIRE(row.size() == 6);
    for (int k = 0; k <= 5; ++k) {
      CHECK(row[static_cast<std::size_t>(k)] ==
            doctest::Approx(binom_pmf(5, k, theta)).epsilon(1e-12));
    }
  }
}

TEST_CASE("a conditional that sums to 0.999 is rejected") {
  CHECK_THROWS_AS(DiscreteToyModel({1.0}, {0.0, 1.0}, {{0.5, 0.499}}),
                  ConfigError);
}

TEST_CASE("off-grid parameters cannot be simulated") {
  const DiscreteToyModel model = make_bernoulli_count_model({0.2, 0.8}, 3);
  RandomStream rng(42);
  CHECK_THROWS_AS(simulate_discrete(model, std::vector<double>{0.5}, rng),
                  NumericError);
}

TEST_CASE("builtin simulator registry") {
  const std::vector<double> times{0.5, 1.0};
  CHECK_NOTHROW(make_builtin_simulator("decay-ode", {}, {}, times));
  CHECK_NOTHROW(make_builtin_simulator("birth-death-ssa", {{"x0", 20.0}}, {}, times));
  CHECK_THROWS_WITH_AS(make_builtin_simulator("logistic", {}, {}, times),
                       doctest::Contains("decay-ode"), ConfigError);
  CHECK_THROWS_WITH_AS(
      make_builtin_simulator("decay-ode", {{"stepp", 0.1}}, {}, times),
      doctest::Contains("no field 'stepp'"), ConfigError);
  CHECK_THROWS_AS(make_builtin_simulator("bernoulli-count", {}, {}, times),
                  ConfigError);
}

}  // TEST_SUITE
