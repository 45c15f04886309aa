#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tsat/error.h"
#include "tsat/format.h"
#include "tsat/iex.h"
#include "tsat/instance.h"
#include "tsat/solver.h"
#include "tsat/tiling.h"
#include "tsat/transition.h"

using json = nlohmann::ordered_json;
using namespace tsat;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { Csv, Json, Text };

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::vector<std::string> splitCommas(const std::string &line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ','))
    out.push_back(cell);
  if (!line.empty() && line.back() == ',')
    out.emplace_back();
  return out;
}

Table parseCsv(const std::string &csv) {
  Table t;
  std::istringstream is(csv);
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (line.empty())
      continue;
    if (first)
      t.header = splitCommas(line);
    else
      t.rows.push_back(splitCommas(line));
    first = false;
  }
  return t;
}

json cellValue(const std::string &s) {
  if (s.empty())
    return nullptr;
  const char *b = s.data(), *e = s.data() + s.size();
  std::int64_t i = 0;
  if (auto [p, ec] = std::from_chars(b, e, i); ec == std::errc() && p == e)
    return i;
  double d = 0;
  if (auto [p, ec] = std::from_chars(b, e, d); ec == std::errc() && p == e)
    return d;
  return s;
}

// Big counts stay exact: numbers when they fit, strings otherwise.
json volumeValue(const Volume &v) {
  if (v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

using Summary = std::vector<std::pair<std::string, json>>;

std::string jsonScalar(const json &v) {
  if (v.is_string())
    return v.get<std::string>();
  if (v.is_number_float())
    return formatNumber(v.get<double>());
  return v.dump();
}

struct Output {
  std::string invocation;
  Summary meta;    // before the rows (seeds, parameters)
  Summary summary; // after the rows
  std::vector<std::string> notes;
};

std::string render(const Table &t, const Output &o, Format fmt) {
  std::ostringstream os;
  if (fmt == Format::Json) {
    json doc;
    doc["invocation"] = o.invocation;
    for (const auto &[k, v] : o.meta)
      doc[k] = v;
    json rows = json::array();
    for (const auto &r : t.rows) {
      json obj = json::object();
      for (std::size_t i = 0; i < t.header.size(); ++i)
        obj[t.header[i]] = i < r.size() ? cellValue(r[i]) : json(nullptr);
      rows.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows);
    if (!o.summary.empty()) {
      json s = json::object();
      for (const auto &[k, v] : o.summary)
        s[k] = v;
      doc["summary"] = std::move(s);
    }
    if (!o.notes.empty())
      doc["notes"] = o.notes;
    os << doc.dump(2) << '\n';
    return os.str();
  }

  auto line = [&](const Summary &s) {
    std::string out;
    for (const auto &[k, v] : s)
      out += (out.empty() ? "" : " ") + k + "=" + jsonScalar(v);
    return out;
  };
  os << "# " << o.invocation << '\n';
  if (!o.meta.empty())
    os << "# " << line(o.meta) << '\n';
  if (fmt == Format::Csv) {
    auto join = [](const std::vector<std::string> &cells) {
      std::string out;
      for (std::size_t i = 0; i < cells.size(); ++i)
        out += (i ? "," : "") + cells[i];
      return out;
    };
    os << join(t.header) << '\n';
    for (const auto &r : t.rows)
      os << join(r) << '\n';
  } else {
    std::vector<std::size_t> width(t.header.size(), 0);
    for (std::size_t i = 0; i < t.header.size(); ++i)
      width[i] = t.header[i].size();
    for (const auto &r : t.rows)
      for (std::size_t i = 0; i < r.size() && i < width.size(); ++i)
        width[i] = std::max(width[i], r[i].size());
    auto emit = [&](const std::vector<std::string> &cells) {
      for (std::size_t i = 0; i < width.size(); ++i) {
        std::string c = i < cells.size() ? cells[i] : "";
        os << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << c;
      }
      os << '\n';
    };
    emit(t.header);
    for (const auto &r : t.rows)
      emit(r);
  }
  if (!o.summary.empty())
    os << "# " << line(o.summary) << '\n';
  for (const auto &n : o.notes)
    os << "# " << n << '\n';
  return os.str();
}

void writeOut(const std::string &path, const std::string &text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f)
    throw UsageError("cannot write '" + path + "'");
  f << text;
}

Instance readInstance(const std::string &path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream f(path);
    if (!f)
      throw UsageError("cannot read '" + path + "'");
    text.assign(std::istreambuf_iterator<char>(f), {});
  }
  return parseDimacs(text);
}

std::string quoteArg(const std::string &a) {
  if (!a.empty() && a.find_first_of(" \t\"'\\$") == std::string::npos)
    return a;
  std::string out = "'";
  for (char c : a)
    out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

std::uint64_t freshSeed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

const std::map<std::string, Format> kFormats = {
    {"csv", Format::Csv}, {"json", Format::Json}, {"text", Format::Text}};

//===----------------------------------------------------------------------===//
// solve
//===----------------------------------------------------------------------===//

struct SolveOpts {
  std::string path;
  std::string order = "given";
  std::optional<std::uint64_t> seed;
  bool count = false;
  std::optional<std::size_t> enumerate;
  std::string trace;
  Format format = Format::Text;
};

int runSolve(const SolveOpts &o, const std::string &invocation) {
  Instance inst = readInstance(o.path);
  OrderingStrategy strategy;
  std::optional<std::uint64_t> seed = o.seed;
  bool generated = false;
  if (o.order == "given") {
    strategy = OrderingStrategy::asGiven();
  } else if (o.order == "greedy") {
    strategy = OrderingStrategy::greedyMinGrowth();
  } else if (o.order == "density") {
    strategy = OrderingStrategy::densityOptimized();
  } else {
    if (!seed) {
      seed = freshSeed();
      generated = true;
    }
    strategy = OrderingStrategy::randomShuffle(*seed);
  }
  if (o.seed && o.order != "random")
    throw UsageError("--seed only applies to --order random");

  SolveReport rep = solve(inst, strategy, o.enumerate.value_or(0));

  if (!o.trace.empty())
    writeOut(o.trace, "# " + invocation + "\n" + traceToCsv(rep));

  if (o.format == Format::Json) {
    json doc;
    doc["invocation"] = invocation;
    doc["order"] = strategy.name();
    if (seed)
      doc["seed"] = *seed;
    doc["result"] = rep.sat ? "SAT" : "UNSAT";
    if (o.count)
      doc["model_count"] = volumeValue(rep.modelCount);
    if (o.enumerate) {
      json sols = json::array();
      for (const auto &a : rep.solutions)
        sols.push_back(formatAssignment(a));
      doc["solutions"] = std::move(sols);
    }
    doc["clauses_consumed"] = rep.clausesConsumed;
    doc["peak_node_count"] = rep.peakNodeCount();
    std::cout << doc.dump(2) << '\n';
  } else {
    std::cout << "c " << invocation << '\n';
    std::cout << "c order " << strategy.name();
    if (seed)
      std::cout << " seed " << *seed << (generated ? " (generated)" : "");
    std::cout << '\n';
    if (o.format == Format::Csv) {
      std::cout << "result,model_count,clauses_consumed,peak_node_count\n"
                << (rep.sat ? "SAT" : "UNSAT") << ',' << rep.modelCount << ','
                << rep.clausesConsumed << ',' << rep.peakNodeCount() << '\n';
    } else {
      std::cout << (rep.sat ? "SAT" : "UNSAT") << '\n';
      if (o.count)
        std::cout << "models " << rep.modelCount << '\n';
      for (const auto &a : rep.solutions)
        std::cout << formatAssignment(a) << '\n';
    }
  }
  return rep.sat ? 10 : 20;
}

//===----------------------------------------------------------------------===//
// count
//===----------------------------------------------------------------------===//

int runCount(const std::string &path, const std::string &method, Format fmt,
             const std::string &invocation) {
  Instance inst = readInstance(path);
  Volume count;
  if (method == "trie") {
    if (inst.numVars() == 0)
      count = inst.numClauses() == 0 ? 1 : 0;
    else
      count = solve(inst, OrderingStrategy::asGiven(), 0).modelCount;
  } else if (method == "iex") {
    count = countByInclusionExclusion(inst, true).modelCount;
  } else {
    count = bruteForceSolve(inst).modelCount;
  }
  if (fmt == Format::Text) {
    std::cout << count << '\n';
    return 0;
  }
  Table t{{"method", "n_vars", "n_clauses", "model_count"},
          {{method, std::to_string(inst.numVars()),
            std::to_string(inst.numClauses()), count.str()}}};
  std::cout << render(t, {invocation, {}, {}, {}}, fmt);
  return 0;
}

//===----------------------------------------------------------------------===//
// gen
//===----------------------------------------------------------------------===//

struct GenOpts {
  std::size_t n = 0;
  std::optional<std::size_t> m;
  std::optional<std::uint64_t> seed;
  bool kernel = false;
  std::string output;
};

int runGen(const GenOpts &o, const std::string &invocation) {
  if (o.n == 0)
    throw UsageError("--n must be positive");
  std::string head = "c " + invocation + "\n";
  Instance inst;
  if (o.kernel) {
    if (o.m || o.seed)
      throw UsageError("--kernel takes neither --m nor --seed");
    inst = buildUnsatKernel(o.n);
  } else {
    if (!o.m)
      throw UsageError("--m is required unless --kernel is given");
    std::uint64_t seed = o.seed.value_or(0);
    if (!o.seed) {
      seed = freshSeed();
      head += "c seed " + std::to_string(seed) + " (generated)\n";
    }
    inst = randomInstance(o.n, *o.m, seed);
  }
  writeOut(o.output, head + emitDimacs(inst));
  return 0;
}

//===----------------------------------------------------------------------===//
// transition
//===----------------------------------------------------------------------===//

struct TransitionOpts {
  std::size_t n = 0;
  std::optional<std::size_t> mMin, mMax, mStep;
  std::size_t trials = 100;
  std::optional<std::uint64_t> seed;
  std::string engine = "oracle";
  bool compare = false;
  std::string output;
  Format format = Format::Csv;
};

constexpr std::size_t kCompareMaxVars = 16;

int runTransition(const TransitionOpts &o, const std::string &invocation) {
  if (o.n == 0)
    throw UsageError("--n must be positive");
  std::vector<std::size_t> ms;
  if (!o.mMin && !o.mMax && !o.mStep) {
    ms = defaultClauseCounts(o.n);
  } else {
    std::size_t lo = o.mMin.value_or(o.n), hi = o.mMax.value_or(8 * o.n);
    std::size_t step = o.mStep.value_or(std::max<std::size_t>(1, o.n / 2));
    if (step == 0 || lo > hi)
      throw UsageError("need --m-min <= --m-max and --m-step > 0");
    for (std::size_t m = lo; m <= hi; m += step)
      ms.push_back(m);
  }
  Output out{invocation, {}, {}, {}};
  std::uint64_t seed = o.seed.value_or(0);
  if (!o.seed) {
    seed = freshSeed();
    out.meta.emplace_back("seed", seed);
    out.meta.emplace_back("seed_source", "generated");
  }
  Engine engine = o.engine == "trie" ? Engine::Trie : Engine::Oracle;
  TransitionCurve curve = computeTransition(o.n, ms, o.trials, seed, engine);

  std::string csv;
  if (o.compare) {
    if (o.n > kCompareMaxVars)
      throw Error(ErrorKind::WidthTooLarge,
                  "--compare-model supports N <= " +
                      std::to_string(kCompareMaxVars));
    double maxRatio = curve.points.back().ratio;
    auto tMax = static_cast<std::size_t>(
        std::ceil(maxRatio * static_cast<double>(o.n) *
                  std::ldexp(1.0, static_cast<int>(o.n)) / 8.0)) + 1;
    csv = compareWithModel(curve, dCurveLattice(o.n, tMax));
  } else {
    csv = transitionCsv(curve);
  }
  for (double level : {0.5}) {
    try {
      out.summary.emplace_back("crossing_50", crossingPoint(curve, level));
    } catch (const Error &) {
      out.notes.push_back("50% level not bracketed by the grid");
    }
  }
  writeOut(o.output, render(parseCsv(csv), out, o.format));
  return 0;
}

//===----------------------------------------------------------------------===//
// tiling
//===----------------------------------------------------------------------===//

struct TilingOpts {
  std::size_t n = 0;
  std::string mode = "simple";
  std::optional<std::size_t> blockSize, tMax, trials;
  std::optional<std::uint64_t> seed;
  std::string method;
  bool windowed = false;
  std::string output;
  Format format = Format::Csv;
};

constexpr std::size_t kMCurveMaxVars = 8;

int runTiling(const TilingOpts &o, const std::string &invocation) {
  if (o.n == 0)
    throw UsageError("--n must be positive");
  bool blocks = o.mode == "lattice-less-simple" || o.mode == "montecarlo";
  bool random = o.mode == "montecarlo";
  bool lattice = o.mode == "simple" || o.mode == "lattice-less-simple";
  if (o.blockSize && !blocks)
    throw UsageError("--block-size applies to lattice-less-simple and montecarlo");
  if ((o.trials || o.seed) && !random)
    throw UsageError("--trials and --seed apply to montecarlo only");
  if (o.windowed && !lattice)
    throw UsageError("--windowed applies to the lattice modes only");

  std::size_t b = 1;
  if (o.blockSize)
    b = *o.blockSize;
  else if (o.mode == "lattice-less-simple" && o.n >= 3)
    b = std::size_t{1} << (o.n - 3);

  // A block of b distinct cells covers at least as much as b single tiles,
  // so the simple curve length bounds every mode.
  std::size_t tMax =
      o.tMax.value_or((simpleCurveLength(o.n) + b - 1) / b + 1);
  if (tMax < 3)
    tMax = 3;

  Output out{invocation, {}, {}, {}};
  std::vector<CurvePoint> curve;
  bool haveM = false;
  if (o.mode == "simple") {
    curve = dCurveLattice(o.n, tMax, TilingMode::Simple, 1, o.windowed);
    if (o.n <= kMCurveMaxVars) {
      auto m = mCurveSeries(o.n, tMax);
      for (std::size_t i = 0; i < curve.size(); ++i)
        curve[i].mValue = m[i];
      haveM = true;
    }
  } else if (o.mode == "lattice-less-simple") {
    curve = dCurveLattice(o.n, tMax, TilingMode::LessSimple, b, o.windowed);
    out.meta.emplace_back("block_size", b);
  } else if (o.mode == "montecarlo") {
    std::uint64_t seed = o.seed.value_or(0);
    if (!o.seed) {
      seed = freshSeed();
      out.meta.emplace_back("seed", seed);
      out.meta.emplace_back("seed_source", "generated");
    }
    curve = dCurveMonteCarlo(o.n, tMax, b, o.trials.value_or(1000), seed);
    out.meta.emplace_back("block_size", b);
  } else if (o.mode == "formula") {
    curve = dCurveFormulaSeries(o.n, tMax);
  } else {
    curve = simpleModelCurve(o.n, tMax);
    haveM = true;
  }

  InflectionMethod method =
      haveM ? InflectionMethod::FromIntersection : InflectionMethod::FromD;
  if (o.method == "d")
    method = InflectionMethod::FromD;
  else if (o.method == "intersection")
    method = InflectionMethod::FromIntersection;
  if (method == InflectionMethod::FromIntersection && !haveM)
    throw UsageError("the intersection method needs an M curve "
                     "(simple with N <= 8, or m-curve)");
  try {
    out.summary.emplace_back("crossing_50", curveCrossing(curve, 0.5));
  } catch (const Error &) {
    out.notes.push_back("50% level not reached within --t-max");
  }
  if (random) {
    if (!o.method.empty())
      throw UsageError("--method does not apply to sampled curves");
    out.notes.push_back("no inflection for sampled curves; second differences "
                        "are dominated by sampling noise");
    writeOut(o.output, render(parseCsv(curveCsv(o.n, curve)), out, o.format));
    return 0;
  }
  try {
    Inflection inf = findInflection(curve, o.n, b, method);
    out.summary.insert(out.summary.end(), {
        {"inflection", method == InflectionMethod::FromD ? "d" : "intersection"},
        {"t0", inf.t0},
        {"t_prime0", inf.tPrime0},
        {"m0_over_n", inf.m0OverN},
        {"d0", inf.d0}});
  } catch (const Error &e) {
    out.notes.push_back(std::string("inflection unavailable: ") + e.what());
  }
  writeOut(o.output, render(parseCsv(curveCsv(o.n, curve)), out, o.format));
  return 0;
}

std::string invocationOf(int argc, char **argv) {
  std::string s = "tsat";
  for (int i = 1; i < argc; ++i)
    s += " " + quoteArg(argv[i]);
  return s;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Subspace-trie 3-SAT solver and tiling-model toolkit", "tsat"};
  app.require_subcommand(1);
  std::string invocation = invocationOf(argc, argv);

  auto formatOpt = [](CLI::App *sub, Format &target) {
    sub->add_option("--format", target, "Output format")
        ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
  };

  SolveOpts solveO;
  auto *solveCmd = app.add_subcommand("solve", "Decide a DIMACS instance");
  solveCmd->add_option("dimacs", solveO.path, "DIMACS file, '-' for stdin")
      ->required();
  solveCmd->add_option("--order", solveO.order, "Clause ordering")
      ->check(CLI::IsMember({"given", "random", "greedy", "density"}));
  solveCmd->add_option("--seed", solveO.seed, "Seed for --order random");
  solveCmd->add_flag("--count", solveO.count, "Print the model count");
  solveCmd->add_option("--enumerate", solveO.enumerate,
                       "Print up to LIMIT solutions");
  solveCmd->add_option("--trace", solveO.trace, "Write the growth trace CSV");
  formatOpt(solveCmd, solveO.format);

  std::string countPath, countMethod = "trie";
  Format countFormat = Format::Text;
  auto *countCmd = app.add_subcommand("count", "Exact model count");
  countCmd->add_option("dimacs", countPath, "DIMACS file, '-' for stdin")
      ->required();
  countCmd->add_option("--method", countMethod, "Counting method")
      ->check(CLI::IsMember({"trie", "iex", "oracle"}));
  formatOpt(countCmd, countFormat);

  GenOpts genO;
  auto *genCmd = app.add_subcommand("gen", "Emit a random or kernel instance");
  genCmd->add_option("--n", genO.n, "Variables")->required();
  genCmd->add_option("--m", genO.m, "Clauses");
  genCmd->add_option("--seed", genO.seed, "Generator seed");
  genCmd->add_flag("--kernel", genO.kernel,
                   "Emit the 8-clause unsatisfiable kernel instead");
  genCmd->add_option("-o,--output", genO.output, "Output path");

  TransitionOpts trO;
  auto *trCmd = app.add_subcommand("transition", "SAT fraction against m/n");
  trCmd->add_option("--n", trO.n, "Variables")->required();
  trCmd->add_option("--m-min", trO.mMin, "Smallest clause count");
  trCmd->add_option("--m-max", trO.mMax, "Largest clause count");
  trCmd->add_option("--m-step", trO.mStep, "Clause count step");
  trCmd->add_option("--trials", trO.trials, "Instances per point")
      ->capture_default_str();
  trCmd->add_option("--seed", trO.seed, "Master seed");
  trCmd->add_option("--engine", trO.engine, "Decision engine")
      ->check(CLI::IsMember({"trie", "oracle"}))
      ->capture_default_str();
  trCmd->add_flag("--compare-model", trO.compare,
                  "Add the simple tiling model's D at each ratio");
  trCmd->add_option("-o,--output", trO.output, "Output path");
  formatOpt(trCmd, trO.format);

  TilingOpts tiO;
  auto *tiCmd = app.add_subcommand("tiling", "Tiling-model curves");
  tiCmd->add_option("--n", tiO.n, "Variables")->required();
  tiCmd->add_option("--mode", tiO.mode, "Curve to compute")
      ->check(CLI::IsMember(
          {"simple", "lattice-less-simple", "montecarlo", "formula", "m-curve"}))
      ->capture_default_str();
  tiCmd->add_option("--block-size", tiO.blockSize, "Cells per placement");
  tiCmd->add_option("--t-max", tiO.tMax, "Placements to compute");
  tiCmd->add_option("--trials", tiO.trials, "Monte Carlo trials");
  tiCmd->add_option("--seed", tiO.seed, "Monte Carlo seed");
  tiCmd->add_option("--method", tiO.method, "Inflection method")
      ->check(CLI::IsMember({"d", "intersection"}));
  tiCmd->add_flag("--windowed", tiO.windowed,
                  "Truncate lattice entries below 1e-18");
  tiCmd->add_option("-o,--output", tiO.output, "Output path");
  formatOpt(tiCmd, tiO.format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (solveCmd->parsed())
      return runSolve(solveO, invocation);
    if (countCmd->parsed())
      return runCount(countPath, countMethod, countFormat, invocation);
    if (genCmd->parsed())
      return runGen(genO, invocation);
    if (trCmd->parsed())
      return runTransition(trO, invocation);
    if (tiCmd->parsed())
      return runTiling(tiO, invocation);
  } catch (const Error &e) {
    std::cerr << "tsat: " << errorKindName(e.kind()) << ": " << e.what()
              << '\n';
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "tsat: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
