#include "abc/schedule.hpp"

#include <cmath>
#include <string>

#include "abc/errors.hpp"

namespace abc {

ToleranceSchedule validate_schedule(const std::vector<double>& epsilons) {
  if (epsilons.empty()) {
    throw ScheduleError("tolerance schedule is empty");
  }
  for (double e : epsilons) {
    if (std::isnan(e)) throw ScheduleError("tolerance schedule contains NaN");
  }
  for (std::size_t i = 0; i + 1 < epsilons.size(); ++i) {
    if (!(epsilons[i] > epsilons[i + 1])) {
      throw ScheduleError("tolerance schedule must be strictly decreasing (eps[" +
                          std::to_string(i) + "]=" + std::to_string(epsilons[i]) +
                          " <= eps[" + std::to_string(i + 1) + "]=" +
                          std::to_string(epsilons[i + 1]) + ")");
    }
  }
  if (epsilons.back() < 0.0) {
    throw ScheduleError("final tolerance must be >= 0, got " +
                        std::to_string(epsilons.back()));
  }
  return ToleranceSchedule{epsilons};
}

}  // namespace abc
