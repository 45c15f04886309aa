#include "tsat/random.h"

namespace tsat {

std::uint64_t mixSeed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t deriveSeed(std::uint64_t master, std::uint64_t a,
                         std::uint64_t b) {
  return mixSeed(mixSeed(mixSeed(master) ^ a) ^ (b * 0x632be59bd9b4e019ull));
}

std::uint64_t uniformBelow(Rng &rng, std::uint64_t bound) {
  // Largest multiple of `bound` representable; draws at or above it are
  // rejected so every residue is equally likely.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

double uniformUnit(Rng &rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace tsat
