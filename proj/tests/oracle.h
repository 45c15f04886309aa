#pragma once

// Test-only reference routines. Everything here works cell by cell over the
// whole 2^N space and shares no code with the library's cube, trie or ledger
// paths.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace oracle {

using CellSet = std::vector<bool>;

/// Cell index k encodes v_1 as its most significant of N bits.
inline bool textCovers(const std::string &cube, std::uint64_t k) {
  const std::size_t n = cube.size();
  for (std::size_t i = 0; i < n; ++i) {
    const bool bit = (k >> (n - 1 - i)) & 1u;
    if (cube[i] == '0' && bit)
      return false;
    if (cube[i] == '1' && !bit)
      return false;
  }
  return true;
}

inline CellSet cells(const std::string &cube) {
  const std::uint64_t total = std::uint64_t{1} << cube.size();
  CellSet s(total, false);
  for (std::uint64_t k = 0; k < total; ++k)
    s[k] = textCovers(cube, k);
  return s;
}

inline CellSet unite(const std::vector<std::string> &cubes, std::size_t n) {
  CellSet s(std::uint64_t{1} << n, false);
  for (const auto &c : cubes)
    for (std::uint64_t k = 0; k < s.size(); ++k)
      if (!s[k] && textCovers(c, k))
        s[k] = true;
  return s;
}

inline std::uint64_t count(const CellSet &s) {
  std::uint64_t c = 0;
  for (bool b : s)
    c += b;
  return c;
}

inline std::string cellText(std::uint64_t k, std::size_t n) {
  std::string s(n, '0');
  for (std::size_t i = 0; i < n; ++i)
    if ((k >> (n - 1 - i)) & 1u)
      s[i] = '1';
  return s;
}

/// Random cube text; each position is x with probability `freeBias`.
inline std::string randomCubeText(std::mt19937_64 &rng, std::size_t n,
                                  double freeBias = 0.5) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::string s(n, 'x');
  for (auto &ch : s)
    if (u(rng) >= freeBias)
      ch = u(rng) < 0.5 ? '0' : '1';
  return s;
}

/// 3-literal clause cube text over n variables with random positions.
inline std::string randomClauseText(std::mt19937_64 &rng, std::size_t n) {
  std::string s(n, 'x');
  std::size_t placed = 0;
  while (placed < 3) {
    std::size_t pos = rng() % n;
    if (s[pos] != 'x')
      continue;
    s[pos] = (rng() & 1) ? '1' : '0';
    ++placed;
  }
  return s;
}

} // namespace oracle
