#include "abc/pool.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>
#include <vector>

#include "abc/errors.hpp"

namespace abc {

namespace {

constexpr std::uint64_t kWaveCap = 1u << 16;
constexpr std::uint64_t kChunk = 64;

struct Slot {
  std::optional<Particle> particle;
  std::exception_ptr error;
};

FillResult fill_serial(const ProposalEval& eval, std::size_t n,
                       std::uint64_t max_attempts) {
  FillResult result;
  result.accepted.reserve(n);
  for (std::uint64_t counter = 0; counter < max_attempts; ++counter) {
    if (auto p = eval(counter)) {
      result.accepted.push_back(std::move(*p));
      if (result.accepted.size() == n) {
        result.attempts = counter + 1;
        return result;
      }
    }
  }
  throw BudgetError("accepted only " + std::to_string(result.accepted.size()) +
                        " of " + std::to_string(n) + " particles in " +
                        std::to_string(max_attempts) + " proposals",
                    result.accepted.size(), max_attempts);
}

std::uint64_t next_wave_size(std::size_t n, std::size_t accepted,
                             std::uint64_t evaluated, std::uint64_t remaining) {
  double rate = evaluated > 0
                    ? static_cast<double>(accepted) / static_cast<double>(evaluated)
                    : 1.0;
  rate = std::max(rate, 1e-6);
  const double need = static_cast<double>(n - accepted);
  auto want = static_cast<std::uint64_t>(std::ceil(1.25 * need / rate));
  want = std::clamp<std::uint64_t>(want, 256, kWaveCap);
  return std::min(want, remaining);
}

}  // namespace

FillResult fill_population(const ProposalEval& eval, std::size_t n,
                           std::uint64_t max_attempts, unsigned workers) {
  if (n == 0) throw ConfigError("population size must be >= 1");
  if (max_attempts == 0) {
    throw ConfigError("proposal budget must be >= 1");
  }
  if (workers <= 1) return fill_serial(eval, n, max_attempts);

  FillResult result;
  result.accepted.reserve(n);
  std::uint64_t evaluated = 0;

  while (evaluated < max_attempts) {
    const std::uint64_t wave_start = evaluated;
    const std::uint64_t wave_size = next_wave_size(
        n, result.accepted.size(), evaluated, max_attempts - evaluated);

    std::vector<Slot> slots(wave_size);
    std::atomic<std::uint64_t> cursor{0};
    auto work = [&]() {
      while (true) {
        const std::uint64_t begin = cursor.fetch_add(kChunk);
        if (begin >= wave_size) return;
        const std::uint64_t end = std::min(begin + kChunk, wave_size);
        for (std::uint64_t i = begin; i < end; ++i) {
          try {
            slots[i].particle = eval(wave_start + i);
          } catch (...) {
            slots[i].error = std::current_exception();
          }
        }
      }
    };

    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work);
    for (auto& t : threads) t.join();

    // Reduce in counter order: this reproduces exactly what a serial pass
    // would have seen, so extra work past the n-th acceptance is invisible.
    for (std::uint64_t i = 0; i < wave_size; ++i) {
      if (slots[i].error) std::rethrow_exception(slots[i].error);
      if (slots[i].particle) {
        result.accepted.push_back(std::move(*slots[i].particle));
        if (result.accepted.size() == n) {
          result.attempts = wave_start + i + 1;
          return result;
        }
      }
    }
    evaluated += wave_size;
  }

  throw BudgetError("accepted only " + std::to_string(result.accepted.size()) +
                        " of " + std::to_string(n) + " particles in " +
                        std::to_string(max_attempts) + " proposals",
                    result.accepted.size(), max_attempts);
}

}  // namespace abc
