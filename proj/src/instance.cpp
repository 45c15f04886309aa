#include "tsat/instance.h"

#include <cctype>
#include <sstream>

#include "tsat/error.h"
#include "tsat/random.h"

namespace tsat {

//===----------------------------------------------------------------------===//
// Clause / Instance
//===----------------------------------------------------------------------===//

Clause::Clause(std::initializer_list<Literal> lits) {
  for (const Literal &l : lits)
    push(l);
}

Clause Clause::of(std::initializer_list<int> lits) {
  Clause c;
  for (int l : lits)
    c.push(Literal::fromDimacs(l));
  return c;
}

Clause Clause::fromLiterals(const std::vector<Literal> &lits) {
  Clause c;
  for (const Literal &l : lits)
    c.push(l);
  return c;
}

void Clause::push(Literal lit) {
  if (size_ == kMaxLiterals)
    throw Error(ErrorKind::NonTernaryClause, "more than three literals");
  if (lit.var == 0)
    throw Error(ErrorKind::VariableOutOfRange, "variable index 0");
  if (mentions(lit.var))
    throw Error(ErrorKind::RepeatedVariable,
                "variable " + std::to_string(lit.var) + " repeated");
  lits_[size_++] = lit;
}

bool Clause::mentions(std::uint32_t var) const {
  for (const Literal &l : *this)
    if (l.var == var)
      return true;
  return false;
}

bool Clause::satisfiedBy(const Assignment &a) const {
  for (const Literal &l : *this)
    if (a[l.var - 1] != l.negated)
      return true;
  return false;
}

Instance::Instance(std::size_t nVars, std::vector<Clause> clauses)
    : nVars_(nVars), clauses_(std::move(clauses)) {
  for (std::size_t i = 0; i < clauses_.size(); ++i)
    for (const Literal &l : clauses_[i])
      if (l.var > nVars_)
        throw Error(ErrorKind::VariableOutOfRange,
                    "clause " + std::to_string(i) + " uses v" +
                        std::to_string(l.var) + " but N = " +
                        std::to_string(nVars_),
                    static_cast<std::ptrdiff_t>(i));
}

bool Instance::isThreeSat() const {
  return std::all_of(clauses_.begin(), clauses_.end(),
                     [](const Clause &c) { return c.size() == 3; });
}

bool Instance::satisfiedBy(const Assignment &a) const {
  if (a.size() != nVars_)
    throw Error(ErrorKind::WidthMismatch, "assignment width differs");
  return std::all_of(clauses_.begin(), clauses_.end(),
                     [&](const Clause &c) { return c.satisfiedBy(a); });
}

Instance Instance::reordered(const std::vector<std::size_t> &order) const {
  std::vector<Clause> out;
  out.reserve(order.size());
  for (std::size_t i : order)
    out.push_back(clauses_.at(i));
  return Instance(nVars_, std::move(out));
}

Instance Instance::renamed(const std::vector<std::size_t> &newPosition) const {
  if (newPosition.size() != nVars_)
    throw Error(ErrorKind::WidthMismatch, "variable map has wrong size");
  std::vector<Clause> out;
  out.reserve(clauses_.size());
  for (const Clause &c : clauses_) {
    std::vector<Literal> lits;
    for (const Literal &l : c)
      lits.push_back({static_cast<std::uint32_t>(newPosition[l.var - 1] + 1),
                      l.negated});
    out.push_back(Clause::fromLiterals(lits));
  }
  return Instance(nVars_, std::move(out));
}

//===----------------------------------------------------------------------===//
// Cubes
//===----------------------------------------------------------------------===//

TritCube clauseToCube(const Clause &cl, std::size_t nVars) {
  TritCube c(nVars);
  for (const Literal &l : cl) {
    if (l.var > nVars)
      throw Error(ErrorKind::WidthMismatch,
                  "clause variable v" + std::to_string(l.var) +
                      " outside width " + std::to_string(nVars));
    c.set(l.var - 1, l.negated ? Trit::One : Trit::Zero);
  }
  return c;
}

std::vector<TritCube> instanceCubes(const Instance &inst) {
  std::vector<TritCube> cubes;
  cubes.reserve(inst.numClauses());
  for (const Clause &c : inst.clauses())
    cubes.push_back(clauseToCube(c, inst.numVars()));
  return cubes;
}

Instance buildUnsatKernel(std::size_t nVars) {
  if (nVars < 3)
    throw Error(ErrorKind::WidthTooSmall, "the kernel needs N >= 3");
  std::vector<Clause> clauses;
  for (int mask = 0; mask < 8; ++mask) {
    int a = (mask & 4) ? -1 : 1;
    int b = (mask & 2) ? -2 : 2;
    int c = (mask & 1) ? -3 : 3;
    clauses.push_back(Clause::of({a, b, c}));
  }
  return Instance(nVars, std::move(clauses));
}

Instance randomInstance(std::size_t nVars, std::size_t nClauses,
                        std::uint64_t seed) {
  if (nVars < 3)
    throw Error(ErrorKind::WidthTooSmall, "random 3-SAT needs N >= 3");
  Rng rng(seed);
  std::vector<Clause> clauses;
  clauses.reserve(nClauses);
  for (std::size_t i = 0; i < nClauses; ++i) {
    std::uint32_t vars[3];
    for (int k = 0; k < 3; ++k) {
      bool fresh;
      do {
        vars[k] = static_cast<std::uint32_t>(uniformBelow(rng, nVars) + 1);
        fresh = true;
        for (int j = 0; j < k; ++j)
          fresh = fresh && vars[j] != vars[k];
      } while (!fresh);
    }
    Literal lits[3];
    for (int k = 0; k < 3; ++k)
      lits[k] = {vars[k], (rng() >> 63) != 0};
    clauses.push_back(Clause{lits[0], lits[1], lits[2]});
  }
  return Instance(nVars, std::move(clauses));
}

//===----------------------------------------------------------------------===//
// DIMACS
//===----------------------------------------------------------------------===//

Instance parseDimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  long long nVars = -1, nClauses = -1;
  std::vector<Clause> clauses;
  std::vector<long long> pending;

  auto finishClause = [&]() {
    const std::ptrdiff_t index = static_cast<std::ptrdiff_t>(clauses.size());
    if (pending.size() != 3)
      throw Error(ErrorKind::NonTernaryClause,
                  "clause " + std::to_string(index) + " has " +
                      std::to_string(pending.size()) + " literals",
                  index);
    for (long long lit : pending) {
      long long v = lit < 0 ? -lit : lit;
      if (v > nVars)
        throw Error(ErrorKind::VariableOutOfRange,
                    "clause " + std::to_string(index) + " uses variable " +
                        std::to_string(v),
                    index);
    }
    if (pending[0] == pending[1] || pending[0] == -pending[1] ||
        pending[0] == pending[2] || pending[0] == -pending[2] ||
        pending[1] == pending[2] || pending[1] == -pending[2])
      throw Error(ErrorKind::RepeatedVariable,
                  "clause " + std::to_string(index) + " repeats a variable",
                  index);
    clauses.push_back(Clause::of({static_cast<int>(pending[0]),
                                  static_cast<int>(pending[1]),
                                  static_cast<int>(pending[2])}));
    pending.clear();
  };

  bool stop = false;
  while (!stop && std::getline(in, line)) {
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos)
      continue;
    char lead = line[first];
    if (lead == 'c')
      continue;
    if (lead == '%')
      break;
    if (lead == 'p') {
      if (nVars >= 0)
        throw Error(ErrorKind::MalformedHeader, "duplicate problem line");
      std::istringstream hs(line.substr(first));
      std::string p, fmt, extra;
      if (!(hs >> p >> fmt >> nVars >> nClauses) || p != "p" ||
          fmt != "cnf" || nVars < 0 || nClauses < 0 || (hs >> extra))
        throw Error(ErrorKind::MalformedHeader, "bad problem line: " + line);
      continue;
    }
    if (nVars < 0)
      throw Error(ErrorKind::MalformedHeader,
                  "clause data before the problem line");
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      if (tok == "%") {
        stop = true;
        break;
      }
      std::size_t used = 0;
      long long lit;
      try {
        lit = std::stoll(tok, &used);
      } catch (const std::exception &) {
        used = 0;
      }
      if (used != tok.size())
        throw Error(ErrorKind::MalformedHeader, "unexpected token '" + tok +
                                                    "'",
                    static_cast<std::ptrdiff_t>(clauses.size()));
      if (lit == 0)
        finishClause();
      else
        pending.push_back(lit);
    }
  }
  if (nVars < 0)
    throw Error(ErrorKind::MalformedHeader, "missing problem line");
  if (!pending.empty())
    finishClause();
  if (static_cast<long long>(clauses.size()) != nClauses)
    throw Error(ErrorKind::MalformedHeader,
                "header declares " + std::to_string(nClauses) +
                    " clauses, found " + std::to_string(clauses.size()));
  return Instance(static_cast<std::size_t>(nVars), std::move(clauses));
}

std::string emitDimacs(const Instance &inst) {
  std::string out = "p cnf " + std::to_string(inst.numVars()) + " " +
                    std::to_string(inst.numClauses()) + "\n";
  for (const Clause &c : inst.clauses()) {
    for (const Literal &l : c) {
      out += std::to_string(l.dimacs());
      out += ' ';
    }
    out += "0\n";
  }
  return out;
}

std::uint64_t instanceDigest(const Instance &inst) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : emitDimacs(inst)) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

//===----------------------------------------------------------------------===//
// Split
//===----------------------------------------------------------------------===//

std::pair<Instance, Instance> splitOnVariable(const Instance &inst,
                                              std::size_t var) {
  if (var < 1 || var > inst.numVars())
    throw Error(ErrorKind::IndexOutOfRange,
                "variable " + std::to_string(var) + " outside [1, " +
                    std::to_string(inst.numVars()) + "]");
  auto shift = [var](Literal l) {
    if (l.var > var)
      --l.var;
    return l;
  };
  std::vector<Clause> halves[2];
  for (int value = 0; value < 2; ++value) {
    for (const Clause &c : inst.clauses()) {
      std::vector<Literal> kept;
      bool satisfied = false;
      for (const Literal &l : c) {
        if (l.var == var)
          satisfied = satisfied || (l.negated != (value == 1));
        else
          kept.push_back(shift(l));
      }
      if (!satisfied)
        halves[value].push_back(Clause::fromLiterals(kept));
    }
  }
  return {Instance(inst.numVars() - 1, std::move(halves[0])),
          Instance(inst.numVars() - 1, std::move(halves[1]))};
}

//===----------------------------------------------------------------------===//
// Brute force
//===----------------------------------------------------------------------===//

namespace {

// Bit (N - 1 - i) of the counter is v_{i+1}, so counting upward walks the
// assignments in lexicographic order.
struct PackedClause {
  std::uint32_t mask = 0;
  std::uint32_t falsifying = 0;
};

std::vector<PackedClause> packClauses(const Instance &inst) {
  if (inst.numVars() > kBruteForceMaxVars)
    throw Error(ErrorKind::WidthTooLarge,
                "brute force is limited to N <= " +
                    std::to_string(kBruteForceMaxVars));
  const std::size_t n = inst.numVars();
  std::vector<PackedClause> packed;
  for (const Clause &c : inst.clauses()) {
    PackedClause p;
    for (const Literal &l : c) {
      std::uint32_t bit = std::uint32_t{1} << (n - l.var);
      p.mask |= bit;
      if (l.negated)
        p.falsifying |= bit;
    }
    packed.push_back(p);
  }
  return packed;
}

Assignment unpack(std::uint32_t bits, std::size_t n) {
  Assignment a(n, false);
  for (std::size_t i = 0; i < n; ++i)
    a[i] = (bits >> (n - 1 - i)) & 1u;
  return a;
}

template <typename OnModel>
void forEachModel(const Instance &inst, OnModel onModel) {
  const auto packed = packClauses(inst);
  const std::uint64_t total = std::uint64_t{1} << inst.numVars();
  for (std::uint64_t k = 0; k < total; ++k) {
    const auto bits = static_cast<std::uint32_t>(k);
    bool ok = true;
    for (const PackedClause &p : packed) {
      if ((bits & p.mask) == p.falsifying) {
        ok = false;
        break;
      }
    }
    if (ok)
      onModel(bits);
  }
}

} // namespace

BruteForceResult bruteForceSolve(const Instance &inst) {
  BruteForceResult r;
  forEachModel(inst, [&](std::uint32_t bits) {
    if (!r.firstSolution)
      r.firstSolution = unpack(bits, inst.numVars());
    ++r.modelCount;
  });
  r.sat = r.modelCount > 0;
  return r;
}

std::vector<Assignment> bruteForceModels(const Instance &inst) {
  std::vector<Assignment> models;
  forEachModel(inst, [&](std::uint32_t bits) {
    models.push_back(unpack(bits, inst.numVars()));
  });
  return models;
}

} // namespace tsat
