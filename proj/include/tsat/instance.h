#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tsat/cube.h"

namespace tsat {

struct Literal {
  std::uint32_t var = 0; // 1-based
  bool negated = false;

  /// DIMACS-style signed integer.
  int dimacs() const {
    return negated ? -static_cast<int>(var) : static_cast<int>(var);
  }
  static Literal fromDimacs(int lit) {
    return {static_cast<std::uint32_t>(lit < 0 ? -lit : lit), lit < 0};
  }

  friend bool operator==(const Literal &, const Literal &) = default;
};

/// Disjunction of up to three literals on distinct variables. Parsed and
/// generated instances hold exactly three; fixing a variable shortens
/// clauses, so shorter ones occur after `splitOnVariable`.
class Clause {
public:
  static constexpr std::size_t kMaxLiterals = 3;

  Clause() = default;
  Clause(std::initializer_list<Literal> lits);
  /// From DIMACS literals, e.g. `Clause::of({-2, 3, 5})`.
  static Clause of(std::initializer_list<int> lits);
  static Clause fromLiterals(const std::vector<Literal> &lits);

  std::size_t size() const { return size_; }
  const Literal &operator[](std::size_t i) const { return lits_[i]; }
  const Literal *begin() const { return lits_.data(); }
  const Literal *end() const { return lits_.data() + size_; }

  bool mentions(std::uint32_t var) const;
  bool satisfiedBy(const Assignment &a) const;

  friend bool operator==(const Clause &a, const Clause &b) {
    return a.size_ == b.size_ &&
           std::equal(a.begin(), a.end(), b.begin());
  }

private:
  void push(Literal lit);

  std::array<Literal, kMaxLiterals> lits_{};
  std::size_t size_ = 0;
};

/// N variables and an ordered list of clauses.
class Instance {
public:
  Instance() = default;
  Instance(std::size_t nVars, std::vector<Clause> clauses);

  std::size_t numVars() const { return nVars_; }
  std::size_t numClauses() const { return clauses_.size(); }
  const std::vector<Clause> &clauses() const { return clauses_; }
  const Clause &clause(std::size_t i) const { return clauses_[i]; }

  /// True when every clause has exactly three literals.
  bool isThreeSat() const;
  bool satisfiedBy(const Assignment &a) const;

  /// Same clauses in the given order (a permutation of clause indices).
  Instance reordered(const std::vector<std::size_t> &order) const;
  /// Renames variables: old v_i becomes v_{newPosition[i-1] + 1}.
  Instance renamed(const std::vector<std::size_t> &newPosition) const;

  friend bool operator==(const Instance &, const Instance &) = default;

private:
  std::size_t nVars_ = 0;
  std::vector<Clause> clauses_;
};

/// The falsifying cube of a clause: a positive literal pins its variable to
/// 0, a negative one to 1, every other position is 'x'.
TritCube clauseToCube(const Clause &cl, std::size_t nVars);
std::vector<TritCube> instanceCubes(const Instance &inst);

/// The eight polarity combinations over v1, v2, v3; their cubes tile the
/// whole space.
Instance buildUnsatKernel(std::size_t nVars);

/// Uniform random 3-SAT. Per clause, with an mt19937_64 seeded by `seed`:
/// three variables drawn one after another by rejection until distinct
/// (`uniformBelow(N)` each), then one polarity bit per literal in the same
/// order, taken from the top bit of a fresh 64-bit draw (set = negated).
/// Duplicate clauses are allowed.
Instance randomInstance(std::size_t nVars, std::size_t nClauses,
                        std::uint64_t seed);

Instance parseDimacs(std::string_view text);
std::string emitDimacs(const Instance &inst);
/// 64-bit FNV-1a over `emitDimacs(inst)`.
std::uint64_t instanceDigest(const Instance &inst);

/// Fixes v_var to 0 (first) and 1 (second). Each half has N - 1 variables;
/// variables above `var` shift down by one. Satisfied clauses are dropped
/// and the falsified literal is removed from the others.
std::pair<Instance, Instance> splitOnVariable(const Instance &inst,
                                              std::size_t var);

struct BruteForceResult {
  bool sat = false;
  std::uint64_t modelCount = 0;
  /// Lexicographically first model (v_1 most significant).
  std::optional<Assignment> firstSolution;
};

constexpr std::size_t kBruteForceMaxVars = 24;

/// Exhaustive evaluation of every assignment.
BruteForceResult bruteForceSolve(const Instance &inst);

/// All models in lexicographic order; same width guard as bruteForceSolve.
std::vector<Assignment> bruteForceModels(const Instance &inst);

} // namespace tsat
