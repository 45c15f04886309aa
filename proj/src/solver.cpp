#include "tsat/solver.h"

#include <algorithm>
#include <charconv>
#include <limits>
#include <numeric>
#include <sstream>
#include <tuple>

#include "tsat/error.h"
#include "tsat/format.h"
#include "tsat/random.h"

namespace tsat {

std::string OrderingStrategy::name() const {
  switch (kind) {
  case Kind::AsGiven:
    return "as-given";
  case Kind::RandomShuffle:
    return "random:" + std::to_string(seed);
  case Kind::GreedyMinGrowth:
    return "greedy";
  case Kind::DensityOptimized:
    return "density";
  }
  return "?";
}

OrderingStrategy OrderingStrategy::parse(std::string_view text) {
  if (text == "as-given")
    return asGiven();
  if (text == "greedy")
    return greedyMinGrowth();
  if (text == "density")
    return densityOptimized();
  if (text == "random")
    return randomShuffle(0);
  if (text.starts_with("random:")) {
    std::string_view digits = text.substr(7);
    std::uint64_t s = 0;
    auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), s);
    if (ec == std::errc() && p == digits.data() + digits.size() && !digits.empty())
      return randomShuffle(s);
  }
  throw Error(ErrorKind::InvalidArgument,
              "unknown ordering strategy '" + std::string(text) + "'");
}

std::size_t SolveReport::peakNodeCount() const {
  std::size_t peak = 0;
  for (const auto &r : trace)
    peak = std::max(peak, r.nodeCount);
  return peak;
}

//===----------------------------------------------------------------------===//
// Orderings
//===----------------------------------------------------------------------===//

std::vector<std::size_t> orderGreedyMinGrowth(const Instance &inst) {
  const std::size_t m = inst.numClauses();
  std::vector<TritCube> cubes = instanceCubes(inst);
  std::vector<bool> used(m, false);
  std::vector<std::size_t> order;
  order.reserve(m);
  SubspaceTrie trie(inst.numVars());

  while (order.size() < m) {
    if (trie.isFull()) {
      // Nothing can grow any more; keep the rest in input order.
      for (std::size_t i = 0; i < m; ++i)
        if (!used[i])
          order.push_back(i);
      break;
    }
    const auto baseNodes = static_cast<std::ptrdiff_t>(trie.nodeCount());
    const auto baseLen = static_cast<std::ptrdiff_t>(trie.serializedLength());
    std::size_t best = m;
    std::tuple<std::ptrdiff_t, std::ptrdiff_t> bestCost;
    SubspaceTrie bestTrie(inst.numVars());
    for (std::size_t i = 0; i < m; ++i) {
      if (used[i])
        continue;
      SubspaceTrie scratch = trie;
      scratch.insert(cubes[i]);
      std::tuple<std::ptrdiff_t, std::ptrdiff_t> cost{
          static_cast<std::ptrdiff_t>(scratch.nodeCount()) - baseNodes,
          static_cast<std::ptrdiff_t>(scratch.serializedLength()) - baseLen};
      if (best == m || cost < bestCost) {
        best = i;
        bestCost = cost;
        bestTrie = std::move(scratch);
      }
    }
    used[best] = true;
    order.push_back(best);
    trie = std::move(bestTrie);
  }
  return order;
}

namespace {

std::vector<std::uint32_t> clauseVars(const Clause &c) {
  std::vector<std::uint32_t> vs;
  for (const Literal &l : c)
    vs.push_back(l.var);
  std::sort(vs.begin(), vs.end());
  return vs;
}

std::size_t sharedVars(const std::vector<std::uint32_t> &a,
                       const std::vector<std::uint32_t> &b) {
  std::size_t k = 0;
  for (auto v : a)
    k += std::binary_search(b.begin(), b.end(), v);
  return k;
}

} // namespace

DensityOrder orderDensityOptimized(const Instance &inst) {
  const std::size_t n = inst.numVars();
  const std::size_t m = inst.numClauses();
  DensityOrder out;
  std::vector<std::size_t> discovery;
  std::vector<bool> inSet(n + 1, false);

  std::vector<std::vector<std::uint32_t>> vars(m);
  for (std::size_t i = 0; i < m; ++i)
    vars[i] = clauseVars(inst.clause(i));

  auto addVar = [&](std::uint32_t v) {
    if (!inSet[v]) {
      inSet[v] = true;
      discovery.push_back(v);
    }
  };

  if (m > 0) {
    std::size_t seedClause = 0, bestShared = 0;
    for (std::size_t i = 0; i < m && bestShared < Clause::kMaxLiterals; ++i)
      for (std::size_t j = i + 1; j < m; ++j) {
        std::size_t s = sharedVars(vars[i], vars[j]);
        if (s > bestShared) {
          bestShared = s;
          seedClause = i;
          if (s == Clause::kMaxLiterals)
            break;
        }
      }
    for (auto v : vars[seedClause])
      addVar(v);
  }

  std::vector<bool> done(m, false);
  // missing[i]: variables of clause i not yet in the subset.
  std::vector<std::size_t> missing(m);
  for (std::size_t i = 0; i < m; ++i)
    missing[i] = static_cast<std::size_t>(std::count_if(
        vars[i].begin(), vars[i].end(), [&](auto v) { return !inSet[v]; }));

  std::size_t emitted = 0;
  while (emitted < m) {
    for (std::size_t i = 0; i < m; ++i)
      if (!done[i] && missing[i] == 0) {
        done[i] = true;
        out.clauseOrder.push_back(i);
        ++emitted;
      }
    if (emitted == m)
      break;

    std::vector<std::size_t> completes(n + 1, 0), touches(n + 1, 0);
    for (std::size_t i = 0; i < m; ++i) {
      if (done[i])
        continue;
      for (auto v : vars[i]) {
        if (inSet[v])
          continue;
        ++touches[v];
        if (missing[i] == 1)
          ++completes[v];
      }
    }
    std::uint32_t pick = 0;
    for (std::uint32_t v = 1; v <= n; ++v) {
      if (inSet[v] || touches[v] == 0)
        continue;
      if (pick == 0 ||
          std::tie(completes[v], touches[v]) > std::tie(completes[pick], touches[pick]))
        pick = v;
    }
    addVar(pick);
    for (std::size_t i = 0; i < m; ++i)
      if (!done[i] && std::binary_search(vars[i].begin(), vars[i].end(), pick))
        --missing[i];
  }

  for (std::uint32_t v = 1; v <= n; ++v)
    addVar(v);
  out.newPosition.assign(n, 0);
  for (std::size_t pos = 0; pos < discovery.size(); ++pos)
    out.newPosition[discovery[pos] - 1] = pos;
  return out;
}

//===----------------------------------------------------------------------===//
// Solve
//===----------------------------------------------------------------------===//

SolveReport solve(const Instance &inst, const OrderingStrategy &strategy,
                  std::size_t solutionLimit) {
  const std::size_t n = inst.numVars();
  if (n == 0)
    throw Error(ErrorKind::EmptyInput, "instance has no variables");

  SolveReport report;
  std::vector<std::size_t> newPosition;
  switch (strategy.kind) {
  case OrderingStrategy::Kind::AsGiven:
    report.clauseOrder.resize(inst.numClauses());
    std::iota(report.clauseOrder.begin(), report.clauseOrder.end(), 0);
    break;
  case OrderingStrategy::Kind::RandomShuffle: {
    report.clauseOrder.resize(inst.numClauses());
    std::iota(report.clauseOrder.begin(), report.clauseOrder.end(), 0);
    Rng rng(strategy.seed);
    shuffle(std::span<std::size_t>(report.clauseOrder), rng);
    break;
  }
  case OrderingStrategy::Kind::GreedyMinGrowth:
    report.clauseOrder = orderGreedyMinGrowth(inst);
    break;
  case OrderingStrategy::Kind::DensityOptimized: {
    DensityOrder d = orderDensityOptimized(inst);
    report.clauseOrder = std::move(d.clauseOrder);
    newPosition = std::move(d.newPosition);
    break;
  }
  }

  const Instance work = newPosition.empty() ? inst : inst.renamed(newPosition);
  const Volume space = powerOfTwo(n);
  SubspaceTrie trie(n);
  for (std::size_t idx : report.clauseOrder) {
    if (trie.isFull())
      break;
    trie.insert(clauseToCube(work.clause(idx), n));
    ++report.clausesConsumed;
    TraceRecord r;
    r.step = report.clausesConsumed;
    SizeMetrics sm = trie.sizeMetrics();
    r.nodeCount = sm.nodeCount;
    r.leafCount = sm.leafCount;
    r.serializedLength = sm.serializedLength;
    r.occupiedVolume = trie.occupiedVolume();
    r.fillFraction = Fraction(r.occupiedVolume, space);
    report.trace.push_back(std::move(r));
  }

  report.modelCount = space - trie.occupiedVolume();
  report.sat = report.modelCount > 0;
  report.solutions = trie.enumerateSolutions(solutionLimit);
  if (!newPosition.empty()) {
    for (Assignment &a : report.solutions) {
      Assignment orig(n);
      for (std::size_t i = 0; i < n; ++i)
        orig[i] = a[newPosition[i]];
      a = std::move(orig);
    }
  }
  std::sort(report.solutions.begin(), report.solutions.end());
  return report;
}

//===----------------------------------------------------------------------===//
// Output and batch statistics
//===----------------------------------------------------------------------===//

std::string fractionDecimal(const Fraction &f) {
  if (f == 0)
    return "0";
  if (f == 1)
    return "1";
  return formatNumber(f.convert_to<double>());
}

std::string traceToCsv(const SolveReport &report) {
  std::ostringstream os;
  os << "step,node_count,leaf_count,serialized_length,occupied_volume,"
        "fill_fraction\n";
  for (const TraceRecord &r : report.trace)
    os << r.step << ',' << r.nodeCount << ',' << r.leafCount << ','
       << r.serializedLength << ',' << r.occupiedVolume << ','
       << fractionDecimal(r.fillFraction) << '\n';
  return os.str();
}

PeakStats maxTreeSizeStats(std::size_t nVars, std::size_t nInstances,
                           std::size_t clausesPerInstance,
                           const OrderingStrategy &strategy, std::uint64_t seed) {
  if (nInstances == 0)
    throw Error(ErrorKind::InvalidArgument, "need at least one instance");
  PeakStats s;
  s.nVars = nVars;
  s.instances = nInstances;
  s.minPeakNodes = std::numeric_limits<std::size_t>::max();
  double total = 0.0;
  for (std::size_t i = 0; i < nInstances; ++i) {
    Instance inst = randomInstance(nVars, clausesPerInstance, deriveSeed(seed, i));
    OrderingStrategy st = strategy;
    if (st.kind == OrderingStrategy::Kind::RandomShuffle)
      st.seed = deriveSeed(strategy.seed, i, 1);
    std::size_t peak = solve(inst, st, 0).peakNodeCount();
    total += static_cast<double>(peak);
    s.minPeakNodes = std::min(s.minPeakNodes, peak);
    s.maxPeakNodes = std::max(s.maxPeakNodes, peak);
  }
  s.meanPeakNodes = total / static_cast<double>(nInstances);
  return s;
}

std::string peakStatsCsv(const std::vector<PeakStats> &rows) {
  std::ostringstream os;
  os << "n_vars,instances,mean_peak_nodes,min_peak_nodes,max_peak_nodes\n";
  for (const PeakStats &r : rows)
    os << r.nVars << ',' << r.instances << ',' << formatNumber(r.meanPeakNodes) << ','
       << r.minPeakNodes << ',' << r.maxPeakNodes << '\n';
  return os.str();
}

} // namespace tsat
