#include "tsat/tiling.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "tsat/error.h"
#include "tsat/format.h"
#include "tsat/random.h"

namespace tsat {

namespace {

constexpr std::size_t kMaxTilingWidth = 24;
constexpr std::size_t kMaxExactM = 8;

std::size_t spaceSize(std::size_t n) {
  if (n == 0)
    throw Error(ErrorKind::EmptyInput, "N must be at least 1");
  if (n > kMaxTilingWidth)
    throw Error(ErrorKind::WidthTooLarge,
                "tiling models support N <= " + std::to_string(kMaxTilingWidth));
  return std::size_t{1} << n;
}

void checkBlock(std::size_t b, std::size_t v) {
  if (b == 0 || b > v)
    throw Error(ErrorKind::InvalidBlockSize,
                "block size " + std::to_string(b) + " outside [1, " +
                    std::to_string(v) + "]");
}

Volume factorial(std::size_t k) {
  Volume r = 1;
  for (std::size_t i = 2; i <= k; ++i)
    r *= i;
  return r;
}

double toDouble(const Rational &r) { return r.convert_to<double>(); }

/// Hypergeometric law of the number of new cells when b distinct cells are
/// drawn from V, f of them already covered. Index k - kMin.
std::vector<double> newCellPmf(std::size_t v, std::size_t f, std::size_t b,
                               std::size_t &kMin) {
  kMin = b > f ? b - f : 0;
  const std::size_t kMax = std::min(b, v - f);
  std::vector<double> logw(kMax - kMin + 1, 0.0);
  for (std::size_t k = kMin; k < kMax; ++k) {
    // p(k+1) / p(k) = (V-f-k)(b-k) / ((k+1)(f-b+k+1))
    double num = static_cast<double>(v - f - k) * static_cast<double>(b - k);
    double den = static_cast<double>(k + 1) * static_cast<double>(f + k + 1 - b);
    logw[k + 1 - kMin] = logw[k - kMin] + std::log(num / den);
  }
  double peak = *std::max_element(logw.begin(), logw.end());
  double total = 0;
  for (double &w : logw) {
    w = std::exp(w - peak);
    total += w;
  }
  for (double &w : logw)
    w /= total;
  return logw;
}

double lerp(double x0, double y0, double x1, double y1, double x) {
  if (x1 == x0)
    return y0;
  return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
}

} // namespace

//===----------------------------------------------------------------------===//
// Stirling numbers
//===----------------------------------------------------------------------===//

StirlingTable::StirlingTable(std::size_t tMax, std::size_t fMax)
    : tMax_(tMax), fMax_(fMax), values_((tMax + 1) * (fMax + 1)) {
  const std::size_t w = fMax + 1;
  values_[0] = 1;
  for (std::size_t t = 1; t <= tMax; ++t)
    for (std::size_t f = 1; f <= std::min(t, fMax); ++f)
      values_[t * w + f] =
          values_[(t - 1) * w + f - 1] + values_[(t - 1) * w + f] * f;
}

const Volume &StirlingTable::operator()(std::size_t t, std::size_t f) const {
  if (t > tMax_ || f > fMax_)
    throw Error(ErrorKind::OutOfTableBounds,
                "S(" + std::to_string(t) + "," + std::to_string(f) +
                    ") outside a " + std::to_string(tMax_) + "x" +
                    std::to_string(fMax_) + " table");
  return values_[t * (fMax_ + 1) + f];
}

std::string StirlingTable::csv() const {
  std::ostringstream os;
  os << "t,f,value\n";
  for (std::size_t t = 1; t <= tMax_; ++t)
    for (std::size_t f = 1; f <= std::min(t, fMax_); ++f)
      os << t << ',' << f << ',' << (*this)(t, f) << '\n';
  return os.str();
}

Volume stirling(std::size_t t, std::size_t f) {
  if (f > t)
    return 0;
  return StirlingTable(t, f)(t, f);
}

//===----------------------------------------------------------------------===//
// Occupancy lattice
//===----------------------------------------------------------------------===//

OccupancyLattice::OccupancyLattice(std::size_t n, TilingMode mode,
                                   std::size_t blockSize, bool windowed)
    : n_(n), b_(blockSize), v_(spaceSize(n)), windowed_(windowed),
      row_(v_ + 1, 0.0), next_(v_ + 1, 0.0) {
  checkBlock(b_, v_);
  if (mode == TilingMode::Simple && b_ != 1)
    throw Error(ErrorKind::InvalidBlockSize, "the simple model places single cells");
  row_[0] = 1.0;
}

void OccupancyLattice::step() {
  const double v = static_cast<double>(v_);
  const std::size_t newHi = std::min(v_, hi_ + b_);
  if (b_ == 1) {
    for (std::size_t f = lo_; f <= hi_; ++f) {
      const double p = row_[f];
      next_[f] += p * (static_cast<double>(f) / v);
      if (f < v_)
        next_[f + 1] += p * (static_cast<double>(v_ - f) / v);
    }
  } else {
    for (std::size_t f = lo_; f <= hi_; ++f) {
      const double p = row_[f];
      if (p == 0.0)
        continue;
      std::size_t kMin = 0;
      std::vector<double> pmf = newCellPmf(v_, f, b_, kMin);
      for (std::size_t i = 0; i < pmf.size(); ++i)
        next_[f + kMin + i] += p * pmf[i];
    }
  }
  // The old row becomes the scratch buffer; clear its support.
  std::fill(row_.begin() + static_cast<std::ptrdiff_t>(lo_),
            row_.begin() + static_cast<std::ptrdiff_t>(hi_) + 1, 0.0);
  std::swap(row_, next_);
  hi_ = newHi;
  ++t_;

  if (windowed_) {
    constexpr double kCut = 1e-18;
    bool cut = false;
    while (lo_ < hi_ && row_[lo_] < kCut) {
      cut = cut || row_[lo_] != 0.0;
      row_[lo_++] = 0.0;
    }
    while (hi_ > lo_ && row_[hi_] < kCut) {
      cut = cut || row_[hi_] != 0.0;
      row_[hi_--] = 0.0;
    }
    if (cut) {
      double s = rowSum();
      for (std::size_t f = lo_; f <= hi_; ++f)
        row_[f] /= s;
    }
  } else {
    while (lo_ < hi_ && row_[lo_] == 0.0)
      ++lo_;
  }
}

double OccupancyLattice::notFull() const {
  double s = 0;
  for (std::size_t f = lo_; f <= std::min(hi_, v_ - 1); ++f)
    s += row_[f];
  return std::min(1.0, s);
}

double OccupancyLattice::meanFill() const {
  double s = 0;
  for (std::size_t f = lo_; f <= hi_; ++f)
    s += row_[f] * static_cast<double>(f);
  return s / static_cast<double>(v_);
}

double OccupancyLattice::rowSum() const {
  double s = 0;
  for (std::size_t f = lo_; f <= hi_; ++f)
    s += row_[f];
  return s;
}

//===----------------------------------------------------------------------===//
// Curves
//===----------------------------------------------------------------------===//

CurvePoint makeCurvePoint(std::size_t n, std::size_t blockSize, std::size_t t,
                          double d) {
  const double tiles = static_cast<double>(t) * static_cast<double>(blockSize);
  const double v = std::ldexp(1.0, static_cast<int>(n));
  CurvePoint p;
  p.t = t;
  p.tPrime = tiles / (static_cast<double>(n) * v);
  p.mOverN = tiles * 8.0 / (v * static_cast<double>(n));
  p.dValue = d;
  return p;
}

std::vector<CurvePoint> dCurveLattice(std::size_t n, std::size_t tMax,
                                      TilingMode mode, std::size_t blockSize,
                                      bool windowed) {
  OccupancyLattice lat(n, mode, blockSize, windowed);
  std::vector<CurvePoint> out;
  out.reserve(tMax);
  for (std::size_t t = 1; t <= tMax; ++t) {
    lat.step();
    out.push_back(makeCurvePoint(n, blockSize, t, lat.notFull()));
  }
  return out;
}

Rational dCurveFormulaExact(const StirlingTable &s, std::size_t n, std::size_t t) {
  const std::size_t v = spaceSize(n);
  Volume filled = s(t, v) * factorial(v);
  Volume all = boost::multiprecision::pow(Volume(v), static_cast<unsigned>(t));
  return Rational(1) - Rational(filled, all);
}

double dCurveFormula(std::size_t n, std::size_t t) {
  const std::size_t v = spaceSize(n);
  return toDouble(dCurveFormulaExact(StirlingTable(t, v), n, t));
}

std::vector<CurvePoint> dCurveFormulaSeries(std::size_t n, std::size_t tMax) {
  const std::size_t v = spaceSize(n);
  StirlingTable s(tMax, v);
  std::vector<CurvePoint> out;
  for (std::size_t t = 1; t <= tMax; ++t)
    out.push_back(makeCurvePoint(n, 1, t, toDouble(dCurveFormulaExact(s, n, t))));
  return out;
}

Rational mCurveExact(const StirlingTable &s, std::size_t n, std::size_t t) {
  if (t == 0)
    throw Error(ErrorKind::InvalidArgument, "M(N, t) needs t >= 1");
  const std::size_t v = spaceSize(n);
  const auto e = static_cast<unsigned>(t);
  Volume num = boost::multiprecision::pow(Volume(v + 1), e - 1) -
               factorial(v) * s(t, v + 1);
  return Rational(num, boost::multiprecision::pow(Volume(v), e));
}

double mCurve(std::size_t n, std::size_t t) {
  const std::size_t v = spaceSize(n);
  return toDouble(mCurveExact(StirlingTable(t, v + 1), n, t));
}

std::vector<double> mCurveLattice(std::size_t n, std::size_t tMax) {
  const std::size_t v = spaceSize(n);
  const double vd = static_cast<double>(v);
  std::vector<double> row(v + 1, 0.0), next(v + 1, 0.0), out;
  if (tMax == 0)
    return out;
  row[1] = 1.0;
  for (std::size_t t = 1;; ++t) {
    double mean = 0;
    for (std::size_t f = 1; f <= v; ++f)
      mean += row[f] * static_cast<double>(f);
    out.push_back(mean / vd);
    if (t == tMax)
      break;
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t g = 1; g <= v; ++g) {
      next[g] += row[g] * (1.0 - static_cast<double>(g) / vd);
      next[g] += row[g - 1] * (static_cast<double>(g - 1) / vd);
    }
    std::swap(row, next);
  }
  return out;
}

std::vector<double> mCurveSeries(std::size_t n, std::size_t tMax) {
  const std::size_t v = spaceSize(n);
  if (n > kMaxExactM)
    throw Error(ErrorKind::WidthTooLarge,
                "exact M curve supports N <= " + std::to_string(kMaxExactM));
  StirlingTable s(tMax, v + 1);
  std::vector<double> out;
  for (std::size_t t = 1; t <= tMax; ++t)
    out.push_back(toDouble(mCurveExact(s, n, t)));
  return out;
}

std::vector<CurvePoint> simpleModelCurve(std::size_t n, std::size_t tMax) {
  std::vector<CurvePoint> curve = dCurveLattice(n, tMax);
  std::vector<double> m = mCurveSeries(n, tMax);
  for (std::size_t i = 0; i < curve.size(); ++i)
    curve[i].mValue = m[i];
  return curve;
}

//===----------------------------------------------------------------------===//
// Inflection
//===----------------------------------------------------------------------===//

Inflection findInflection(const std::vector<CurvePoint> &curve, std::size_t n,
                          std::size_t blockSize, InflectionMethod method) {
  const std::size_t size = curve.size();
  if (size < 3)
    throw Error(ErrorKind::CurveTooShort, "need at least three curve points");
  auto t = [&](std::size_t i) { return static_cast<double>(curve[i].t); };
  auto d = [&](std::size_t i) { return curve[i].dValue; };

  std::optional<double> t0;
  if (method == InflectionMethod::FromD) {
    std::vector<double> s(size, 0.0);
    for (std::size_t i = 1; i + 1 < size; ++i)
      s[i] = d(i + 1) - 2.0 * d(i) + d(i - 1);
    // Rounding leaves tiny second differences on the flat D = 1 stretch.
    constexpr double kFlat = 1e-12;
    bool sawConcave = false;
    for (std::size_t i = 1; i + 1 < size; ++i) {
      if (s[i] < -kFlat) {
        sawConcave = true;
      } else if (sawConcave && s[i] >= 0) {
        t0 = t(i - 1) + s[i - 1] / (s[i - 1] - s[i]) * (t(i) - t(i - 1));
        break;
      }
    }
  } else {
    for (std::size_t i = 0; i + 1 < size; ++i) {
      if (!curve[i].mValue || !curve[i + 1].mValue)
        throw Error(ErrorKind::CurveTooShort, "curve carries no M values");
      double g0 = d(i) - *curve[i].mValue;
      double g1 = d(i + 1) - *curve[i + 1].mValue;
      if (g0 >= 0 && g1 < 0) {
        t0 = t(i) + g0 / (g0 - g1) * (t(i + 1) - t(i));
        break;
      }
    }
  }
  if (!t0)
    throw Error(ErrorKind::CurveTooShort, "the curve does not reach the inflection");

  std::size_t i = 0;
  while (i + 2 < size && t(i + 1) < *t0)
    ++i;
  Inflection r;
  r.t0 = *t0;
  r.d0 = lerp(t(i), d(i), t(i + 1), d(i + 1), *t0);
  const double tiles = *t0 * static_cast<double>(blockSize);
  const double v = std::ldexp(1.0, static_cast<int>(n));
  r.tPrime0 = tiles / (static_cast<double>(n) * v);
  r.m0OverN = tiles * 8.0 / (v * static_cast<double>(n));
  return r;
}

std::size_t simpleCurveLength(std::size_t n, double floor) {
  OccupancyLattice lat(n, TilingMode::Simple);
  do
    lat.step();
  while (lat.notFull() > floor);
  return lat.steps();
}

Inflection findInflection(std::size_t n, InflectionMethod method) {
  return findInflection(simpleModelCurve(n, simpleCurveLength(n, 1e-3)), n, 1,
                        method);
}

//===----------------------------------------------------------------------===//
// Monte Carlo and output
//===----------------------------------------------------------------------===//

std::vector<CurvePoint> dCurveMonteCarlo(std::size_t n, std::size_t tMax,
                                         std::size_t blockSize,
                                         std::size_t trials, std::uint64_t seed) {
  const std::size_t v = spaceSize(n);
  checkBlock(blockSize, v);
  if (trials == 0)
    throw Error(ErrorKind::InvalidArgument, "need at least one trial");

  // fullAt[t]: trials that became full at block t; index tMax + 1 = never.
  std::vector<std::size_t> fullAt(tMax + 2, 0);
  std::vector<std::uint32_t> perm(v);
  std::vector<char> filled(v);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Rng rng(deriveSeed(seed, trial));
    std::iota(perm.begin(), perm.end(), 0u);
    std::fill(filled.begin(), filled.end(), 0);
    std::size_t count = 0, when = tMax + 1;
    for (std::size_t t = 1; t <= tMax; ++t) {
      for (std::size_t i = 0; i < blockSize; ++i) {
        std::size_t j = i + static_cast<std::size_t>(uniformBelow(rng, v - i));
        std::swap(perm[i], perm[j]);
        if (!filled[perm[i]]) {
          filled[perm[i]] = 1;
          ++count;
        }
      }
      if (count == v) {
        when = t;
        break;
      }
    }
    ++fullAt[when];
  }

  std::vector<CurvePoint> out;
  std::size_t full = 0;
  for (std::size_t t = 1; t <= tMax; ++t) {
    full += fullAt[t];
    out.push_back(makeCurvePoint(
        n, blockSize, t,
        static_cast<double>(trials - full) / static_cast<double>(trials)));
  }
  return out;
}

double curveCrossing(const std::vector<CurvePoint> &curve, double level) {
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    double y0 = curve[i].dValue, y1 = curve[i + 1].dValue;
    if ((y0 >= level && y1 <= level) || (y0 <= level && y1 >= level))
      return lerp(y0, curve[i].mOverN, y1, curve[i + 1].mOverN, level);
  }
  throw Error(ErrorKind::LevelNotBracketed,
              "curve never crosses " + formatNumber(level));
}

std::string curveCsv(std::size_t n, const std::vector<CurvePoint> &curve) {
  const bool withM = std::any_of(curve.begin(), curve.end(),
                                 [](const CurvePoint &p) { return p.mValue.has_value(); });
  std::ostringstream os;
  os << "n,t,t_prime,m_over_n,d_value" << (withM ? ",m_value" : "") << '\n';
  for (const CurvePoint &p : curve) {
    os << n << ',' << p.t << ',' << formatNumber(p.tPrime) << ','
       << formatNumber(p.mOverN) << ',' << formatNumber(p.dValue);
    if (withM)
      os << ',' << (p.mValue ? formatNumber(*p.mValue) : "");
    os << '\n';
  }
  return os.str();
}

} // namespace tsat
