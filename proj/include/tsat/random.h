#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace tsat {

/// All randomized code draws from std::mt19937_64, whose output sequence is
/// fixed by the standard. The standard distributions are not, so bounded
/// draws and shuffles are done here.
using Rng = std::mt19937_64;

/// splitmix64 finalizer.
std::uint64_t mixSeed(std::uint64_t x);

/// Seed for sub-task (a, b) of a run with the given master seed.
std::uint64_t deriveSeed(std::uint64_t master, std::uint64_t a,
                         std::uint64_t b = 0);

/// Uniform integer in [0, bound) by rejection; `bound` must be positive.
std::uint64_t uniformBelow(Rng &rng, std::uint64_t bound);

/// Uniform double in [0, 1) from the top 53 bits.
double uniformUnit(Rng &rng);

template <typename T> void shuffle(std::span<T> items, Rng &rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(uniformBelow(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}

} // namespace tsat
