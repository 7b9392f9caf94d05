#ifndef ABC_SCHEDULE_HPP
#define ABC_SCHEDULE_HPP

#include <cstddef>
#include <vector>

namespace abc {

/// Strictly decreasing tolerance sequence eps_1 > ... > eps_T >= 0 that
/// drives the SMC generations toward the posterior.
struct ToleranceSchedule {
  std::vector<double> epsilons;

  std::size_t generations() const { return epsilons.size(); }
};

/// Validates and wraps a tolerance sequence. Throws ScheduleError when the
/// sequence is empty, not strictly decreasing, or ends below zero.
ToleranceSchedule validate_schedule(const std::vector<double>& epsilons);

}  // namespace abc

#endif  // ABC_SCHEDULE_HPP
