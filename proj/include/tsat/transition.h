#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tsat/tiling.h"

namespace tsat {

enum class Engine { Trie, Oracle };

struct TransitionPoint {
  std::size_t m = 0;
  double ratio = 0; // m / n
  std::size_t trials = 0;
  std::size_t satCount = 0;
  double satFraction = 0;
};

struct TransitionCurve {
  std::size_t nVars = 0;
  std::uint64_t seed = 0;
  std::vector<TransitionPoint> points;
};

/// {round(r N) : r = 1.0, 1.5, ..., 8.0}.
std::vector<std::size_t> defaultClauseCounts(std::size_t nVars);

/// Instance j at clause count m uses seed deriveSeed(seed, m, j), so every
/// point can be reproduced on its own.
TransitionCurve computeTransition(std::size_t nVars,
                                  const std::vector<std::size_t> &clauseCounts,
                                  std::size_t trialsPerPoint, std::uint64_t seed,
                                  Engine engine);

/// Linear interpolation between the first adjacent pair straddling `level`.
/// Throws LevelNotBracketed.
double crossingPoint(const std::vector<std::pair<double, double>> &xy,
                     double level);
double crossingPoint(const TransitionCurve &curve, double level);

/// Least-squares nonincreasing fit (pool adjacent violators), weighted.
std::vector<double> isotonicNonincreasing(const std::vector<double> &values,
                                          const std::vector<double> &weights);

/// "n_vars,m,ratio,trials,sat_count,sat_fraction" with header.
std::string transitionCsv(const TransitionCurve &curve);

/// Empirical points with the model's D interpolated at the same ratio:
/// "m_over_n,sat_fraction,model_d_value". Ratios outside the model's range
/// leave the model column empty; an empty model drops the column.
std::string compareWithModel(const TransitionCurve &curve,
                             const std::vector<CurvePoint> &model);

} // namespace tsat
