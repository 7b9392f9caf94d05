#ifndef ABC_ERRORS_HPP
#define ABC_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace abc {

/// Base class for all errors raised by the engine.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Mismatched dataset or vector dimensions. The message names both shapes.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Invalid tolerance schedule (non-decreasing, negative, or empty).
class ScheduleError : public Error {
 public:
  using Error::Error;
};

/// Proposal budget exhausted before the requested number of acceptances.
class BudgetError : public Error {
 public:
  BudgetError(const std::string& what, std::uint64_t accepted, std::uint64_t attempts)
      : Error(what), accepted_(accepted), attempts_(attempts) {}

  /// Particles accepted before the budget ran out.
  std::uint64_t accepted() const { return accepted_; }
  std::uint64_t attempts() const { return attempts_; }

 private:
  std::uint64_t accepted_;
  std::uint64_t attempts_;
};

/// Simulator failure (diverged ODE state, invalid propensity, ...).
class SimulationError : public Error {
 public:
  using Error::Error;
};

/// Degenerate numeric situation (zero-mass distribution, dead model, ...).
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Invalid run configuration; message carries the path of the offending key.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Output emission failure; message carries the file path.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace abc

#endif  // ABC_ERRORS_HPP
