#ifndef ABC_POOL_HPP
#define ABC_POOL_HPP

#include <cstdint>
#include <functional>
#include <optional>

#include "abc/particle.hpp"

namespace abc {

/// Evaluates one proposal. Must be a pure function of the counter: all
/// randomness is derived from it, so the outcome cannot depend on which
/// worker runs it. Returns the accepted particle (with counter and
/// distance filled in) or nullopt on rejection. May throw.
using ProposalEval = std::function<std::optional<Particle>(std::uint64_t counter)>;

struct FillResult {
  std::vector<Particle> accepted;  // exactly n, ordered by proposal counter
  std::uint64_t attempts = 0;      // counter of the n-th acceptance, plus one
};

/// Runs proposals 0, 1, 2, ... until n are accepted, keeping the first n
/// in counter order. Workers evaluate disjoint counter ranges in waves;
/// surplus acceptances and errors beyond the n-th acceptance are discarded,
/// so the result is identical for every worker count. Errors the serial
/// order would have reached are rethrown. Throws BudgetError when
/// max_attempts proposals yield fewer than n acceptances.
FillResult fill_population(const ProposalEval& eval, std::size_t n,
                           std::uint64_t max_attempts, unsigned workers);

}  // namespace abc

#endif  // ABC_POOL_HPP
