#include "tsat/iex.h"

#include <algorithm>
#include <sstream>

#include "tsat/error.h"

namespace tsat {

namespace {

void requireWidth(std::size_t expected, const TritCube &c) {
  if (c.width() != expected)
    throw Error(ErrorKind::WidthMismatch,
                "cube width " + std::to_string(c.width()) + " in a ledger of width " +
                    std::to_string(expected));
}

} // namespace

SignedCubeLedger::SignedCubeLedger(std::size_t width, bool mergeDuplicates)
    : width_(width), merge_(mergeDuplicates) {}

void SignedCubeLedger::addTerm(const TritCube &c, std::int64_t coefficient) {
  if (merge_) {
    auto it = index_.find(c);
    if (it != index_.end()) {
      terms_[it->second].coefficient += coefficient;
      return;
    }
    index_.emplace(c, terms_.size());
  }
  terms_.push_back({c, coefficient});
}

void SignedCubeLedger::insert(const TritCube &c) {
  requireWidth(width_, c);
  std::vector<SignedTerm> pending;
  for (const SignedTerm &t : terms_)
    if (auto x = intersect(c, t.cube))
      pending.push_back({std::move(*x), -t.coefficient});
  pending.push_back({c, 1});
  for (const SignedTerm &t : pending)
    addTerm(t.cube, t.coefficient);

  auto zero = [](const SignedTerm &t) { return t.coefficient == 0; };
  if (std::any_of(terms_.begin(), terms_.end(), zero)) {
    std::erase_if(terms_, zero);
    if (merge_) {
      index_.clear();
      for (std::size_t i = 0; i < terms_.size(); ++i)
        index_.emplace(terms_[i].cube, i);
    }
  }
}

Volume SignedCubeLedger::uncoveredVolume(const TritCube &c) const {
  requireWidth(width_, c);
  Volume covered = 0;
  for (const SignedTerm &t : terms_)
    if (auto x = intersect(c, t.cube))
      covered += volume(*x) * t.coefficient;
  return volume(c) - covered;
}

bool SignedCubeLedger::insertUnlessContained(const TritCube &c) {
  if (isRedundant(c))
    return true;
  insert(c);
  return false;
}

Volume SignedCubeLedger::count() const {
  Volume total = 0;
  for (const SignedTerm &t : terms_)
    total += volume(t.cube) * t.coefficient;
  return total;
}

std::string SignedCubeLedger::dump() const {
  std::ostringstream os;
  for (int sign : {1, -1}) {
    os << (sign > 0 ? "+:" : "-:");
    bool first = true;
    for (const SignedTerm &t : terms_) {
      if ((t.coefficient > 0) != (sign > 0))
        continue;
      os << (first ? " " : ", ");
      first = false;
      std::int64_t mag = t.coefficient * sign;
      if (mag != 1)
        os << mag << '*';
      os << t.cube.str();
    }
    os << '\n';
  }
  return os.str();
}

IexCount countByInclusionExclusion(const Instance &inst, bool dropContained) {
  const std::size_t n = inst.numVars();
  SignedCubeLedger ledger(n);
  IexCount out;
  for (const TritCube &c : instanceCubes(inst)) {
    if (dropContained) {
      out.dropped += ledger.insertUnlessContained(c);
    } else {
      ledger.insert(c);
    }
    out.peakTerms = std::max(out.peakTerms, ledger.termCount());
  }
  out.occupiedVolume = ledger.count();
  out.modelCount = powerOfTwo(n) - out.occupiedVolume;
  out.finalTerms = ledger.termCount();
  return out;
}

} // namespace tsat
