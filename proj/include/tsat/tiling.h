#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tsat/cube.h"

namespace tsat {

using Rational = boost::multiprecision::cpp_rational;

/// Stirling numbers of the second kind S(t, f) for t <= tMax, f <= fMax,
/// exact.
class StirlingTable {
public:
  StirlingTable(std::size_t tMax, std::size_t fMax);

  std::size_t tMax() const { return tMax_; }
  std::size_t fMax() const { return fMax_; }

  /// Throws OutOfTableBounds outside the table.
  const Volume &operator()(std::size_t t, std::size_t f) const;

  /// "t,f,value" rows for 1 <= f <= min(t, fMax).
  std::string csv() const;

private:
  std::size_t tMax_, fMax_;
  std::vector<Volume> values_; // row-major, (fMax + 1) per row
};

/// One-off S(t, f).
Volume stirling(std::size_t t, std::size_t f);

enum class TilingMode { Simple, LessSimple };

/// Distribution of the number f of covered cells out of V = 2^N after t
/// placements, kept as a single row.
///
/// Simple: every step covers one uniform cell. LessSimple: every step
/// covers a block of b distinct uniform cells, so the number of new cells is
/// hypergeometric.
class OccupancyLattice {
public:
  /// Windowed mode zeroes entries below 1e-18 and renormalizes; it trades
  /// exactness for speed at large N.
  OccupancyLattice(std::size_t n, TilingMode mode, std::size_t blockSize = 1,
                   bool windowed = false);

  std::size_t n() const { return n_; }
  std::size_t blockSize() const { return b_; }
  std::size_t space() const { return v_; }
  std::size_t steps() const { return t_; }
  const std::vector<double> &row() const { return row_; }

  void step();

  /// 1 - P(t, V), summed over the not-full entries.
  double notFull() const;
  /// Expected covered fraction, E[f] / V.
  double meanFill() const;
  double rowSum() const;

private:
  std::size_t n_, b_, v_;
  bool windowed_;
  std::size_t t_ = 0;
  std::size_t lo_ = 0, hi_ = 0; // nonzero support
  std::vector<double> row_;
  std::vector<double> next_;
};

struct CurvePoint {
  std::size_t t = 0;    // placements (tiles or blocks)
  double tPrime = 0;    // t b / (N 2^N)
  double mOverN = 0;    // t b / (2^(N-3) N)
  double dValue = 0;    // probability the space is not yet full
  std::optional<double> mValue;
};

CurvePoint makeCurvePoint(std::size_t n, std::size_t blockSize, std::size_t t,
                          double d);

/// D(N, t) for t = 1..tMax from the lattice.
std::vector<CurvePoint> dCurveLattice(std::size_t n, std::size_t tMax,
                                      TilingMode mode = TilingMode::Simple,
                                      std::size_t blockSize = 1,
                                      bool windowed = false);

/// 1 - S(t, V) V! / V^t, exact until the final conversion.
Rational dCurveFormulaExact(const StirlingTable &s, std::size_t n, std::size_t t);
double dCurveFormula(std::size_t n, std::size_t t);
std::vector<CurvePoint> dCurveFormulaSeries(std::size_t n, std::size_t tMax);

/// ((V + 1)^(t - 1) - V! S(t, V + 1)) / V^t.
Rational mCurveExact(const StirlingTable &s, std::size_t n, std::size_t t);
double mCurve(std::size_t n, std::size_t t);

/// M(N, t) for t = 1..tMax from the exact formula; N <= 8.
std::vector<double> mCurveSeries(std::size_t n, std::size_t tMax);

/// Mean fill fraction of the second lattice
/// P(t+1, f+1) = P(t, f) f/V + P(t, f+1) (1 - (f+1)/V), started from
/// P(1, 1) = 1; values for t = 1..tMax. Matches M(N, t) for t <= 2^N only.
std::vector<double> mCurveLattice(std::size_t n, std::size_t tMax);

/// Simple-model curve, D from the lattice and M from the formula; N <= 8.
std::vector<CurvePoint> simpleModelCurve(std::size_t n, std::size_t tMax);

enum class InflectionMethod { FromD, FromIntersection };

struct Inflection {
  double t0 = 0;
  double d0 = 0;
  double tPrime0 = 0;
  double m0OverN = 0;
};

/// FromD: where the centered second difference of D changes sign from
/// negative to positive (steepest descent), linearly interpolated.
/// FromIntersection: first crossing of M and D, linearly interpolated.
/// Throws CurveTooShort if the curve does not contain the point.
Inflection findInflection(const std::vector<CurvePoint> &curve, std::size_t n,
                          std::size_t blockSize, InflectionMethod method);

/// Simple model with a t range long enough for either method.
Inflection findInflection(std::size_t n, InflectionMethod method);

/// t up to which the simple-model D curve is above `floor`.
std::size_t simpleCurveLength(std::size_t n, double floor = 1e-4);

/// Monte Carlo D curve: trials of repeated b-cell blocks, d(t) = share of
/// trials not full after t blocks. Trial i draws from deriveSeed(seed, i).
std::vector<CurvePoint> dCurveMonteCarlo(std::size_t n, std::size_t tMax,
                                         std::size_t blockSize,
                                         std::size_t trials, std::uint64_t seed);

/// Level crossing of d on the m/n axis, linear interpolation. Throws
/// LevelNotBracketed.
double curveCrossing(const std::vector<CurvePoint> &curve, double level);

/// "n,t,t_prime,m_over_n,d_value[,m_value]" with header.
std::string curveCsv(std::size_t n, const std::vector<CurvePoint> &curve);

} // namespace tsat
