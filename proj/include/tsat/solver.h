#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tsat/instance.h"
#include "tsat/trie.h"

namespace tsat {

using Fraction = boost::multiprecision::cpp_rational;

struct OrderingStrategy {
  enum class Kind { AsGiven, RandomShuffle, GreedyMinGrowth, DensityOptimized };

  Kind kind = Kind::AsGiven;
  std::uint64_t seed = 0; // RandomShuffle only

  static OrderingStrategy asGiven() { return {Kind::AsGiven, 0}; }
  static OrderingStrategy randomShuffle(std::uint64_t seed) {
    return {Kind::RandomShuffle, seed};
  }
  static OrderingStrategy greedyMinGrowth() { return {Kind::GreedyMinGrowth, 0}; }
  static OrderingStrategy densityOptimized() {
    return {Kind::DensityOptimized, 0};
  }

  /// "as-given", "random:<seed>", "greedy", "density".
  std::string name() const;
  static OrderingStrategy parse(std::string_view text);

  friend bool operator==(const OrderingStrategy &,
                         const OrderingStrategy &) = default;
};

struct TraceRecord {
  std::size_t step = 0; // 1-based count of clauses inserted so far
  std::size_t nodeCount = 0;
  std::size_t leafCount = 0;
  std::size_t serializedLength = 0;
  Volume occupiedVolume = 0;
  Fraction fillFraction = 0; // occupiedVolume / 2^N
};

struct SolveReport {
  bool sat = false;
  Volume modelCount = 0;
  /// At most `solutionLimit` models in the original variable numbering,
  /// sorted lexicographically.
  std::vector<Assignment> solutions;
  std::size_t clausesConsumed = 0;
  std::vector<TraceRecord> trace;
  /// Clause indices in insertion order (the full permutation, including
  /// clauses skipped by the early exit).
  std::vector<std::size_t> clauseOrder;

  std::size_t peakNodeCount() const;
};

/// Inserts the clause cubes in the order chosen by `strategy`, stopping as
/// soon as the trie covers the whole space.
SolveReport solve(const Instance &inst, const OrderingStrategy &strategy,
                  std::size_t solutionLimit = 1);

/// Adaptive order: at each step, the remaining clause whose tentative
/// insertion grows node_count least (ties: serialized length growth, then
/// lowest index). Quadratic in M.
std::vector<std::size_t> orderGreedyMinGrowth(const Instance &inst);

struct DensityOrder {
  std::vector<std::size_t> clauseOrder;
  /// newPosition[i] is the 0-based position given to v_{i+1}.
  std::vector<std::size_t> newPosition;
};

/// Growing-subset ordering. Starts from the variables of the first clause
/// of the earliest pair sharing the most variables, emits every clause that
/// fits inside the subset, then grows the subset by the variable completing
/// the most pending clauses (ties: most pending clauses touched, then lowest
/// index). Variables are renumbered in discovery order.
DensityOrder orderDensityOptimized(const Instance &inst);

std::string fractionDecimal(const Fraction &f);

/// Header plus one row per trace record.
std::string traceToCsv(const SolveReport &report);

struct PeakStats {
  std::size_t nVars = 0;
  std::size_t instances = 0;
  double meanPeakNodes = 0.0;
  std::size_t minPeakNodes = 0;
  std::size_t maxPeakNodes = 0;
};

/// Peak node_count over `nInstances` random instances. Instance i uses seed
/// deriveSeed(seed, i); a RandomShuffle strategy reseeds per instance with
/// deriveSeed(strategy.seed, i, 1).
PeakStats maxTreeSizeStats(std::size_t nVars, std::size_t nInstances,
                           std::size_t clausesPerInstance,
                           const OrderingStrategy &strategy, std::uint64_t seed);

std::string peakStatsCsv(const std::vector<PeakStats> &rows);

} // namespace tsat
