#ifndef ABC_REJECTION_HPP
#define ABC_REJECTION_HPP

#include <cstdint>

#include "abc/dataset.hpp"
#include "abc/distance.hpp"
#include "abc/particle.hpp"
#include "abc/prior.hpp"
#include "abc/simulator.hpp"

namespace abc {

struct RejectionResult {
  Population population;
  std::uint64_t attempts = 0;
  double acceptance_rate = 0.0;
};

/// Plain rejection sampling: draw theta from the prior, simulate a dataset,
/// accept when d(observed, simulated) <= epsilon, until n particles are
/// accepted. Accepted particles carry uniform weights. Throws BudgetError
/// (with the partial acceptance count) when max_attempts proposals are not
/// enough.
RejectionResult abc_reject(const PriorSpec& prior, const Simulator& simulator,
                           const Distance& distance, const Dataset& observed,
                           double epsilon, std::size_t n,
                           std::uint64_t max_attempts, std::uint64_t seed,
                           unsigned workers = 1);

}  // namespace abc

#endif  // ABC_REJECTION_HPP
