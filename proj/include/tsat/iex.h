#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "tsat/cube.h"
#include "tsat/instance.h"

namespace tsat {

struct SignedTerm {
  TritCube cube;
  std::int64_t coefficient = 0;
};

/// Inclusion-exclusion over cubes: the union volume is kept as a signed sum
/// of cube volumes. Every insertion adds the negated intersections with all
/// existing terms, then the cube itself.
class SignedCubeLedger {
public:
  /// With `mergeDuplicates` off, equal cubes stay separate terms (slower,
  /// same count).
  explicit SignedCubeLedger(std::size_t width, bool mergeDuplicates = true);

  std::size_t width() const { return width_; }

  void insert(const TritCube &c);

  /// |c \ union| from signed intersection volumes.
  Volume uncoveredVolume(const TritCube &c) const;

  /// True when c adds nothing to the union; callers may then skip it.
  bool isRedundant(const TritCube &c) const { return uncoveredVolume(c) == 0; }

  /// Inserts c unless it is redundant. Returns true if it was dropped.
  bool insertUnlessContained(const TritCube &c);

  /// Signed volume, i.e. the size of the union.
  Volume count() const;

  std::size_t termCount() const { return terms_.size(); }
  /// Terms in the order they were first created; no zero coefficients.
  const std::vector<SignedTerm> &terms() const { return terms_; }

  /// "+: a, b, ...\n-: c, ...\n"; a coefficient k beyond ±1 prints as "k*cube".
  std::string dump() const;

private:
  void addTerm(const TritCube &c, std::int64_t coefficient);

  std::size_t width_;
  bool merge_;
  std::vector<SignedTerm> terms_;
  std::unordered_map<TritCube, std::size_t, TritCubeHash> index_;
};

struct IexCount {
  Volume occupiedVolume = 0;
  Volume modelCount = 0;
  std::size_t finalTerms = 0;
  std::size_t peakTerms = 0;
  std::size_t dropped = 0;
};

/// Model count of an instance through the ledger alone.
IexCount countByInclusionExclusion(const Instance &inst, bool dropContained);

} // namespace tsat
