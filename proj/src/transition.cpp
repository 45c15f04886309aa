#include "tsat/transition.h"

#include <cmath>
#include <sstream>

#include "tsat/error.h"
#include "tsat/format.h"
#include "tsat/instance.h"
#include "tsat/random.h"
#include "tsat/solver.h"

namespace tsat {

std::vector<std::size_t> defaultClauseCounts(std::size_t nVars) {
  std::vector<std::size_t> out;
  for (int half = 2; half <= 16; ++half)
    out.push_back(static_cast<std::size_t>(
        std::lround(0.5 * half * static_cast<double>(nVars))));
  return out;
}

TransitionCurve computeTransition(std::size_t nVars,
                                  const std::vector<std::size_t> &clauseCounts,
                                  std::size_t trialsPerPoint, std::uint64_t seed,
                                  Engine engine) {
  if (clauseCounts.empty())
    throw Error(ErrorKind::InvalidArgument, "no clause counts given");
  if (trialsPerPoint == 0)
    throw Error(ErrorKind::InvalidArgument, "need at least one trial per point");
  if (engine == Engine::Oracle && nVars > kBruteForceMaxVars)
    throw Error(ErrorKind::WidthTooLarge,
                "the oracle engine supports N <= " +
                    std::to_string(kBruteForceMaxVars));

  TransitionCurve curve;
  curve.nVars = nVars;
  curve.seed = seed;
  for (std::size_t m : clauseCounts) {
    TransitionPoint p;
    p.m = m;
    p.ratio = static_cast<double>(m) / static_cast<double>(nVars);
    p.trials = trialsPerPoint;
    for (std::size_t j = 0; j < trialsPerPoint; ++j) {
      Instance inst = randomInstance(nVars, m, deriveSeed(seed, m, j));
      bool sat = engine == Engine::Oracle
                     ? bruteForceSolve(inst).sat
                     : solve(inst, OrderingStrategy::asGiven(), 0).sat;
      p.satCount += sat;
    }
    p.satFraction =
        static_cast<double>(p.satCount) / static_cast<double>(p.trials);
    curve.points.push_back(p);
  }
  return curve;
}

double crossingPoint(const std::vector<std::pair<double, double>> &xy,
                     double level) {
  for (std::size_t i = 0; i + 1 < xy.size(); ++i) {
    auto [x0, y0] = xy[i];
    auto [x1, y1] = xy[i + 1];
    if ((y0 >= level && y1 <= level) || (y0 <= level && y1 >= level)) {
      if (y0 == y1)
        return x0;
      return x0 + (level - y0) * (x1 - x0) / (y1 - y0);
    }
  }
  throw Error(ErrorKind::LevelNotBracketed,
              "curve never crosses " + formatNumber(level));
}

double crossingPoint(const TransitionCurve &curve, double level) {
  std::vector<std::pair<double, double>> xy;
  for (const auto &p : curve.points)
    xy.emplace_back(p.ratio, p.satFraction);
  return crossingPoint(xy, level);
}

std::vector<double> isotonicNonincreasing(const std::vector<double> &values,
                                          const std::vector<double> &weights) {
  struct Block {
    double mean, weight;
    std::size_t count;
  };
  std::vector<Block> blocks;
  for (std::size_t i = 0; i < values.size(); ++i) {
    double w = i < weights.size() ? weights[i] : 1.0;
    blocks.push_back({values[i], w, 1});
    while (blocks.size() > 1 &&
           blocks[blocks.size() - 2].mean < blocks.back().mean) {
      Block b = blocks.back();
      blocks.pop_back();
      Block &a = blocks.back();
      double w2 = a.weight + b.weight;
      a.mean = (a.mean * a.weight + b.mean * b.weight) / w2;
      a.weight = w2;
      a.count += b.count;
    }
  }
  std::vector<double> out;
  for (const Block &b : blocks)
    out.insert(out.end(), b.count, b.mean);
  return out;
}

std::string transitionCsv(const TransitionCurve &curve) {
  std::ostringstream os;
  os << "n_vars,m,ratio,trials,sat_count,sat_fraction\n";
  for (const auto &p : curve.points)
    os << curve.nVars << ',' << p.m << ',' << formatNumber(p.ratio) << ','
       << p.trials << ',' << p.satCount << ',' << formatNumber(p.satFraction)
       << '\n';
  return os.str();
}

std::string compareWithModel(const TransitionCurve &curve,
                             const std::vector<CurvePoint> &model) {
  std::ostringstream os;
  os << "m_over_n,sat_fraction" << (model.empty() ? "" : ",model_d_value")
     << '\n';
  for (const auto &p : curve.points) {
    os << formatNumber(p.ratio) << ',' << formatNumber(p.satFraction);
    if (!model.empty()) {
      os << ',';
      for (std::size_t i = 0; i + 1 < model.size(); ++i) {
        const CurvePoint &a = model[i], &b = model[i + 1];
        if (a.mOverN <= p.ratio && p.ratio <= b.mOverN) {
          double u = (p.ratio - a.mOverN) / (b.mOverN - a.mOverN);
          os << formatNumber(a.dValue + u * (b.dValue - a.dValue));
          break;
        }
      }
    }
    os << '\n';
  }
  return os.str();
}

} // namespace tsat
