// Command-line front end. Talks to the checker only through the C API.
#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "amc/amc.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;

struct ModelDeleter {
  void operator()(amc_model* m) const { amc_model_free(m); }
};
struct FormulaDeleter {
  void operator()(amc_formula* f) const { amc_formula_free(f); }
};
struct GameDeleter {
  void operator()(amc_game* g) const { amc_game_free(g); }
};
struct BenchmarkDeleter {
  void operator()(amc_benchmark* b) const { amc_benchmark_free(b); }
};
using ModelPtr = std::unique_ptr<amc_model, ModelDeleter>;
using FormulaPtr = std::unique_ptr<amc_formula, FormulaDeleter>;
using GamePtr = std::unique_ptr<amc_game, GameDeleter>;
using BenchmarkPtr = std::unique_ptr<amc_benchmark, BenchmarkDeleter>;

// Carries a C API failure up to main, which turns it into an exit code.
struct ApiFailure {
  amc_status status;
  std::string message;
};

struct UsageFailure {
  std::string message;
};

void ok(amc_status s, const std::string& context = {}) {
  if (s == AMC_OK) return;
  std::string msg = amc_last_error();
  throw ApiFailure{s, context.empty() ? msg : context + ": " + msg};
}

std::string takeString(char* s) {
  std::string out(s);
  amc_string_free(s);
  return out;
}

std::string readText(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ApiFailure{AMC_ERR_IO, "cannot open '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void writeText(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw ApiFailure{AMC_ERR_IO, "cannot write '" + path + "'"};
}

ModelPtr loadModel(const std::string& path) {
  amc_model* m = nullptr;
  ok(amc_model_parse(readText(path).c_str(), &m), path);
  return ModelPtr(m);
}

FormulaPtr parseFormula(const std::string& text, const std::string& context) {
  amc_formula* f = nullptr;
  ok(amc_formula_parse(text.c_str(), &f), context);
  return FormulaPtr(f);
}

std::string printFormula(const amc_formula* f) {
  char* s = nullptr;
  ok(amc_formula_print(f, &s));
  return takeString(s);
}

std::vector<std::uint64_t> coalitionsOf(const amc_formula* f) {
  std::size_t count = 0;
  ok(amc_formula_coalitions(f, nullptr, 0, &count));
  std::vector<std::uint64_t> masks(count);
  ok(amc_formula_coalitions(f, masks.data(), masks.size(), &count));
  return masks;
}

amc_engine engineByName(const std::string& name) {
  amc_engine e{};
  if (amc_engine_parse(name.c_str(), &e) != AMC_OK) throw UsageFailure{amc_last_error()};
  return e;
}

bool isEfEngine(amc_engine e) { return e == AMC_ENGINE_EF_GAME || e == AMC_ENGINE_EF_LOCAL; }

// "2..10", "2,5,10" or a single number.
std::vector<int> parseRange(const std::string& text) {
  std::vector<int> out;
  try {
    if (auto dots = text.find(".."); dots != std::string::npos) {
      int lo = std::stoi(text.substr(0, dots));
      int hi = std::stoi(text.substr(dots + 2));
      for (int i = lo; i <= hi; ++i) out.push_back(i);
    } else {
      std::stringstream ss(text);
      std::string item;
      while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    }
  } catch (const std::exception&) {
    throw UsageFailure{"bad range '" + text + "'"};
  }
  if (out.empty()) throw UsageFailure{"empty range '" + text + "'"};
  return out;
}

std::uint64_t seedFromEnvironment(std::uint64_t fallback) {
  const char* env = std::getenv("AMC_SEED");
  if (!env || !*env) return fallback;
  try {
    return std::stoull(env);
  } catch (const std::exception&) {
    throw UsageFailure{"AMC_SEED is not a number"};
  }
}

ModelPtr convertModel(const amc_model* cgf, bool minimize, const std::vector<std::uint64_t>* coalitions,
                      double* seconds) {
  amc_convert_options opts;
  amc_convert_options_init(&opts);
  opts.minimize = minimize ? 1 : 0;
  opts.threads = 1;
  if (coalitions) {
    opts.restrict_coalitions = 1;
    opts.coalitions = coalitions->data();
    opts.coalition_count = coalitions->size();
  }
  amc_model* out = nullptr;
  ok(amc_convert(cgf, &opts, &out, seconds), "convert");
  return ModelPtr(out);
}

// ---------------------------------------------------------------------------
// check

struct CheckArgs {
  std::string model;
  std::string formulaFile;
  std::string formulaText;
  std::string engine = "cgf-game";
  std::vector<std::string> states;
  bool convert = false;
  bool minimize = false;
  double timeout = 0;
  bool stats = false;
};

int runCheck(const CheckArgs& a) {
  using clock = std::chrono::steady_clock;
  amc_engine engine = engineByName(a.engine);
  if (a.formulaFile.empty() == a.formulaText.empty())
    throw UsageFailure{"give exactly one of --formula and --expr"};
  if (a.minimize && !a.convert) throw UsageFailure{"--minimize needs --convert"};

  auto t0 = clock::now();
  ModelPtr model = loadModel(a.model);
  FormulaPtr formula = a.formulaText.empty() ? parseFormula(readText(a.formulaFile), a.formulaFile)
                                             : parseFormula(a.formulaText, "formula");
  std::chrono::duration<double> parseTime = clock::now() - t0;

  double convertTime = 0;
  if (a.convert) {
    if (!amc_model_is_cgf(model.get())) throw ApiFailure{AMC_ERR_KIND, "--convert needs a CGF model"};
    if (!isEfEngine(engine)) throw UsageFailure{"--convert only makes sense with an ef-* engine"};
    model = convertModel(model.get(), a.minimize, nullptr, &convertTime);
  } else if (isEfEngine(engine) && amc_model_is_cgf(model.get())) {
    throw ApiFailure{AMC_ERR_KIND, "engine " + a.engine + " needs an EF model; pass --convert to convert this CGF"};
  }

  std::vector<std::size_t> query;
  for (const auto& s : a.states) {
    std::size_t w = 0;
    if (s == "initial") {
      if (!amc_model_initial(model.get(), &w)) throw ApiFailure{AMC_ERR_VALIDATION, "model has no initial state"};
    } else {
      ok(amc_model_state_index(model.get(), s.c_str(), &w));
    }
    query.push_back(w);
  }
  if (query.empty()) {
    query.resize(amc_model_state_count(model.get()));
    std::iota(query.begin(), query.end(), std::size_t{0});
  }

  std::vector<unsigned char> verdicts(amc_model_state_count(model.get()));
  double checkTime = 0;
  ok(amc_check(model.get(), formula.get(), engine, a.timeout, verdicts.data(), &checkTime));
  for (std::size_t w : query)
    std::cout << amc_model_state_name(model.get(), w) << '\t' << (verdicts[w] ? "true" : "false") << '\n';
  if (a.stats) {
    std::cerr << "parse-seconds\t" << parseTime.count() << '\n';
    if (a.convert) std::cerr << "convert-seconds\t" << convertTime << '\n';
    std::cerr << "check-seconds\t" << checkTime << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// convert

struct ConvertArgs {
  std::string in;
  std::string out = "-";
  bool minimize = false;
  std::vector<std::string> coalitions;
};

int runConvert(const ConvertArgs& a) {
  ModelPtr model = loadModel(a.in);
  if (!amc_model_is_cgf(model.get())) throw ApiFailure{AMC_ERR_KIND, "convert needs a CGF model"};
  std::optional<std::vector<std::uint64_t>> restrictTo;
  if (!a.coalitions.empty()) {
    if (a.coalitions.size() != 2 || a.coalitions[0] != "from-formula")
      throw UsageFailure{"--coalitions expects: from-formula <file>"};
    FormulaPtr f = parseFormula(readText(a.coalitions[1]), a.coalitions[1]);
    restrictTo = coalitionsOf(f.get());
  }
  double seconds = 0;
  ModelPtr ef = convertModel(model.get(), a.minimize, restrictTo ? &*restrictTo : nullptr, &seconds);
  char* json = nullptr;
  ok(amc_model_to_json(ef.get(), &json));
  writeText(a.out, takeString(json) + "\n");
  std::cerr << "convert-seconds\t" << seconds << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------
// gen

struct GenArgs {
  std::string outDir = ".";
  int states = 10;
  int agents = 2;
  int moves = 2;
  int atoms = 2;
  int connectives = 8;
  int depth = 3;
  int castles = 2;
  int hp = 1;
  int base = 10;
  std::uint64_t seed = 1;
};

std::string joinPath(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

void saveModelFile(const amc_model* m, const std::string& path) {
  ok(amc_model_save(m, path.c_str()), path);
  std::cout << path << '\n';
}

void saveFormulaFile(const amc_formula* f, const std::string& path) {
  writeText(path, printFormula(f) + "\n");
  std::cout << path << '\n';
}

int runGenBenchmark(const GenArgs& a, amc_benchmark* raw, const std::string& stem) {
  BenchmarkPtr b(raw);
  std::filesystem::create_directories(a.outDir);
  saveModelFile(amc_benchmark_model(b.get()), joinPath(a.outDir, stem + ".cgf.json"));
  for (std::size_t i = 0; i < amc_benchmark_formula_count(b.get()); ++i)
    saveFormulaFile(amc_benchmark_formula(b.get(), i),
                    joinPath(a.outDir, stem + "-" + amc_benchmark_formula_name(b.get(), i) + ".amc"));
  return kExitOk;
}

int runGen(const std::string& family, const GenArgs& a) {
  std::uint64_t seed = seedFromEnvironment(a.seed);
  if (family == "castle") {
    amc_benchmark* b = nullptr;
    ok(amc_gen_castle(a.castles, a.hp, &b));
    return runGenBenchmark(a, b, "castle-n" + std::to_string(a.castles) + "-h" + std::to_string(a.hp));
  }
  if (family == "modulo") {
    amc_benchmark* b = nullptr;
    ok(amc_gen_modulo(a.agents, a.moves, a.base, &b));
    return runGenBenchmark(a, b,
                           "modulo-a" + std::to_string(a.agents) + "-m" + std::to_string(a.moves) + "-b" +
                               std::to_string(a.base));
  }
  std::filesystem::create_directories(a.outDir);
  if (family == "random-model") {
    amc_model* m = nullptr;
    ok(amc_gen_random_cgf(a.states, a.agents, a.moves, a.atoms, seed, &m));
    ModelPtr model(m);
    saveModelFile(model.get(), joinPath(a.outDir, "random-s" + std::to_string(a.states) + "-a" +
                                                      std::to_string(a.agents) + "-m" + std::to_string(a.moves) +
                                                      "-seed" + std::to_string(seed) + ".cgf.json"));
    return kExitOk;
  }
  amc_formula* f = nullptr;
  ok(amc_gen_random_formula(a.connectives, a.agents, a.atoms, a.depth, seed, &f));
  FormulaPtr formula(f);
  saveFormulaFile(formula.get(), joinPath(a.outDir, "random-c" + std::to_string(a.connectives) + "-a" +
                                                        std::to_string(a.agents) + "-seed" + std::to_string(seed) +
                                                        ".amc"));
  return kExitOk;
}

// ---------------------------------------------------------------------------
// solve-game

int runSolveGame(const std::string& in, double timeout) {
  amc_game* raw = nullptr;
  ok(amc_game_parse_pgsolver(readText(in).c_str(), &raw), in);
  GamePtr game(raw);
  std::vector<amc_player> winners(amc_game_size(game.get()));
  ok(amc_game_solve(game.get(), timeout, winners.data()));
  for (std::size_t v = 0; v < winners.size(); ++v)
    std::cout << v << ": " << (winners[v] == AMC_EXISTS ? "Exists" : "Forall") << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------
// bench

struct BenchArgs {
  std::string suite = "modulo";
  std::vector<std::string> engines{"cgf-local", "ef-local"};
  int repetitions = 5;
  double timeout = 200;
  bool minimize = false;
  bool parallel = false;
  std::string convertCsv;
  // modulo
  int agents = 2;
  std::string moves = "2..10";
  int base = 10;
  std::string formula = "phi1";
  // castle
  std::string castles = "2..3";
  int hp = 1;
  // random
  int states = 10;
  int randomAgents = 4;
  int randomMoves = 2;
  int atoms = 4;
  std::string sizes = "2..10";
  int instances = 5;
  std::uint64_t seed = 1;
};

// One benchmark point: models with the formulas to check on each.
struct Instance {
  ModelPtr model;
  std::vector<FormulaPtr> formulas;
};

struct Cell {
  int parameter = 0;
  std::vector<Instance> instances;
};

FormulaPtr copyFormula(const amc_formula* f) { return parseFormula(printFormula(f), "formula"); }

std::vector<Cell> buildCells(const BenchArgs& a) {
  std::vector<Cell> cells;
  if (a.suite == "modulo") {
    if (a.formula != "phi1" && a.formula != "phi2") throw UsageFailure{"--formula must be phi1 or phi2"};
    std::string wanted = a.formula + "-" + std::to_string(a.agents);
    for (int m : parseRange(a.moves)) {
      amc_benchmark* raw = nullptr;
      ok(amc_gen_modulo(a.agents, m, a.base, &raw));
      BenchmarkPtr b(raw);
      Instance inst;
      char* json = nullptr;
      ok(amc_model_to_json(amc_benchmark_model(b.get()), &json));
      amc_model* copy = nullptr;
      ok(amc_model_parse(takeString(json).c_str(), &copy));
      inst.model.reset(copy);
      for (std::size_t i = 0; i < amc_benchmark_formula_count(b.get()); ++i)
        if (wanted == amc_benchmark_formula_name(b.get(), i))
          inst.formulas.push_back(copyFormula(amc_benchmark_formula(b.get(), i)));
      Cell c{m, {}};
      c.instances.push_back(std::move(inst));
      cells.push_back(std::move(c));
    }
  } else if (a.suite == "castle") {
    for (int n : parseRange(a.castles)) {
      amc_benchmark* raw = nullptr;
      ok(amc_gen_castle(n, a.hp, &raw));
      BenchmarkPtr b(raw);
      Instance inst;
      char* json = nullptr;
      ok(amc_model_to_json(amc_benchmark_model(b.get()), &json));
      amc_model* copy = nullptr;
      ok(amc_model_parse(takeString(json).c_str(), &copy));
      inst.model.reset(copy);
      for (std::size_t i = 0; i < amc_benchmark_formula_count(b.get()); ++i)
        inst.formulas.push_back(copyFormula(amc_benchmark_formula(b.get(), i)));
      Cell c{n, {}};
      c.instances.push_back(std::move(inst));
      cells.push_back(std::move(c));
    }
  } else if (a.suite == "random") {
    std::uint64_t seed = seedFromEnvironment(a.seed);
    for (int size : parseRange(a.sizes)) {
      Cell c{size, {}};
      for (int i = 0; i < a.instances; ++i) {
        std::uint64_t s = seed * 1000003ULL + static_cast<std::uint64_t>(size) * 7919ULL + static_cast<std::uint64_t>(i);
        amc_model* m = nullptr;
        ok(amc_gen_random_cgf(a.states, a.randomAgents, a.randomMoves, a.atoms, s, &m));
        amc_formula* f = nullptr;
        ok(amc_gen_random_formula(size, a.randomAgents, a.atoms, 3, s, &f));
        Instance inst;
        inst.model.reset(m);
        inst.formulas.emplace_back(f);
        c.instances.push_back(std::move(inst));
      }
      cells.push_back(std::move(c));
    }
  } else {
    throw UsageFailure{"unknown suite '" + a.suite + "'"};
  }
  return cells;
}

struct Row {
  int parameter = 0;
  std::string engine;
  std::optional<double> mean;
  int reps = 0;
  int timeouts = 0;
  double convertSeconds = 0;
  bool converted = false;
};

Row measure(const BenchArgs& a, const Cell& cell, const std::string& engineName) {
  amc_engine engine = engineByName(engineName);
  Row row{cell.parameter, engineName, std::nullopt, a.repetitions, 0, 0, false};

  // EF engines run on the converted model (conversion timed on its own).
  std::vector<ModelPtr> converted;
  for (const Instance& inst : cell.instances) {
    if (isEfEngine(engine) && amc_model_is_cgf(inst.model.get())) {
      double s = 0;
      converted.push_back(convertModel(inst.model.get(), a.minimize, nullptr, &s));
      row.convertSeconds += s;
      row.converted = true;
    } else {
      converted.emplace_back();
    }
  }

  double total = 0;
  for (int rep = 0; rep < a.repetitions; ++rep) {
    double repSeconds = 0;
    for (std::size_t i = 0; i < cell.instances.size(); ++i) {
      const amc_model* m = converted[i] ? converted[i].get() : cell.instances[i].model.get();
      std::vector<unsigned char> verdicts(amc_model_state_count(m));
      for (const FormulaPtr& f : cell.instances[i].formulas) {
        double s = 0;
        double remaining = a.timeout > 0 ? a.timeout - repSeconds : 0;
        amc_status st = remaining < 0 ? AMC_ERR_TIMEOUT : amc_check(m, f.get(), engine, remaining, verdicts.data(), &s);
        if (st == AMC_ERR_TIMEOUT) {
          // Deterministic work: later repetitions would time out as well.
          row.timeouts = a.repetitions;
          return row;
        }
        ok(st, engineName);
        repSeconds += s;
      }
    }
    total += repSeconds;
  }
  row.mean = total / a.repetitions;
  return row;
}

int runBench(const BenchArgs& a) {
  if (a.repetitions < 5) throw UsageFailure{"--repetitions must be at least 5"};
  for (const auto& e : a.engines) engineByName(e);
  std::vector<Cell> cells = buildCells(a);

  std::vector<std::pair<const Cell*, std::string>> work;
  for (const Cell& c : cells)
    for (const auto& e : a.engines) work.emplace_back(&c, e);

  std::vector<Row> rows(work.size());
  if (a.parallel) {
    std::vector<std::future<Row>> futures;
    for (const auto& [cell, engine] : work)
      futures.push_back(std::async(std::launch::async, measure, std::cref(a), std::cref(*cell), engine));
    for (std::size_t i = 0; i < futures.size(); ++i) rows[i] = futures[i].get();
  } else {
    for (std::size_t i = 0; i < work.size(); ++i) rows[i] = measure(a, *work[i].first, work[i].second);
  }

  std::cout << "parameter,engine,mean,reps,timeouts\n";
  for (const Row& r : rows) {
    std::cout << r.parameter << ',' << r.engine << ',';
    if (r.mean) std::cout << *r.mean;
    std::cout << ',' << r.reps << ',' << r.timeouts << '\n';
  }

  // Conversion time is kept apart from the check timings.
  std::ostringstream conv;
  conv << "parameter,engine,convert_seconds\n";
  for (const Row& r : rows)
    if (r.converted) conv << r.parameter << ',' << r.engine << ',' << r.convertSeconds << '\n';
  if (!a.convertCsv.empty()) {
    writeText(a.convertCsv, conv.str());
  } else {
    std::istringstream lines(conv.str());
    for (std::string line; std::getline(lines, line);) std::cerr << "# " << line << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Model checker for the alternating-time mu-calculus"};
  app.require_subcommand(1);

  CheckArgs check;
  auto* checkCmd = app.add_subcommand("check", "Check a formula on a model");
  checkCmd->add_option("--model", check.model, "Model file (JSON)")->required();
  checkCmd->add_option("--formula", check.formulaFile, "Formula file");
  checkCmd->add_option("--expr", check.formulaText, "Formula text");
  checkCmd->add_option("--engine", check.engine, "cgf-game, cgf-local, ef-game or ef-local")->capture_default_str();
  checkCmd->add_option("--state", check.states, "State name or 'initial' (default: all states)");
  checkCmd->add_flag("--convert", check.convert, "Convert a CGF to its effectivity frame first");
  checkCmd->add_flag("--minimize", check.minimize, "Keep only minimal effectivity sets after --convert");
  checkCmd->add_option("--timeout", check.timeout, "Seconds, 0 for none");
  checkCmd->add_flag("--stats", check.stats, "Print timings on stderr");

  ConvertArgs conv;
  auto* convCmd = app.add_subcommand("convert", "Convert a CGF to its effectivity frame");
  convCmd->add_option("--in", conv.in, "CGF model file")->required();
  convCmd->add_option("--out", conv.out, "EF output file ('-' for stdout)")->capture_default_str();
  convCmd->add_flag("--minimize", conv.minimize, "Keep only minimal sets");
  convCmd->add_option("--coalitions", conv.coalitions, "from-formula <file>: only that formula's coalitions")
      ->expected(2);

  std::string family;
  GenArgs gen;
  auto* genCmd = app.add_subcommand("gen", "Write benchmark models and formulas");
  genCmd->add_option("family", family, "castle, modulo, random-model or random-formula")
      ->required()
      ->check(CLI::IsMember({"castle", "modulo", "random-model", "random-formula"}));
  genCmd->add_option("--out-dir", gen.outDir)->capture_default_str();
  genCmd->add_option("--states", gen.states)->capture_default_str();
  genCmd->add_option("--agents", gen.agents)->capture_default_str();
  genCmd->add_option("--moves", gen.moves)->capture_default_str();
  genCmd->add_option("--atoms", gen.atoms)->capture_default_str();
  genCmd->add_option("--connectives", gen.connectives)->capture_default_str();
  genCmd->add_option("--depth", gen.depth, "Maximal fixpoint nesting")->capture_default_str();
  genCmd->add_option("--castles", gen.castles)->capture_default_str();
  genCmd->add_option("--hp", gen.hp)->capture_default_str();
  genCmd->add_option("--base", gen.base)->capture_default_str();
  genCmd->add_option("--seed", gen.seed, "Overridden by AMC_SEED")->capture_default_str();

  std::string gameIn = "-";
  double gameTimeout = 0;
  auto* solveCmd = app.add_subcommand("solve-game", "Solve a parity game in PGSolver format");
  solveCmd->add_option("--in", gameIn, "Game file ('-' for stdin)")->capture_default_str();
  solveCmd->add_option("--timeout", gameTimeout, "Seconds, 0 for none");

  BenchArgs bench;
  auto* benchCmd = app.add_subcommand("bench", "Time engines on a benchmark family, CSV on stdout");
  benchCmd->add_option("--suite", bench.suite)->check(CLI::IsMember({"random", "castle", "modulo"}))->capture_default_str();
  benchCmd->add_option("--engines", bench.engines)->delimiter(',')->capture_default_str();
  benchCmd->add_option("--repetitions", bench.repetitions)->capture_default_str();
  benchCmd->add_option("--timeout", bench.timeout, "Seconds per cell")->capture_default_str();
  benchCmd->add_flag("--minimize", bench.minimize, "Minimize converted effectivity frames");
  benchCmd->add_flag("--parallel", bench.parallel, "Run cells concurrently");
  benchCmd->add_flag("--csv", "CSV output (always on)");
  benchCmd->add_option("--convert-csv", bench.convertCsv, "Write conversion times here instead of stderr");
  benchCmd->add_option("--agents", bench.agents, "modulo: agents")->capture_default_str();
  benchCmd->add_option("--moves", bench.moves, "modulo: moves per agent range")->capture_default_str();
  benchCmd->add_option("--base", bench.base, "modulo: base")->capture_default_str();
  benchCmd->add_option("--formula", bench.formula, "modulo: phi1 or phi2")->capture_default_str();
  benchCmd->add_option("--castles", bench.castles, "castle: castle count range")->capture_default_str();
  benchCmd->add_option("--hp", bench.hp, "castle: health points")->capture_default_str();
  benchCmd->add_option("--states", bench.states, "random: states")->capture_default_str();
  benchCmd->add_option("--random-agents", bench.randomAgents, "random: agents")->capture_default_str();
  benchCmd->add_option("--random-moves", bench.randomMoves, "random: moves per agent")->capture_default_str();
  benchCmd->add_option("--atoms", bench.atoms, "random: atoms")->capture_default_str();
  benchCmd->add_option("--sizes", bench.sizes, "random: connective count range")->capture_default_str();
  benchCmd->add_option("--instances", bench.instances, "random: pairs per size")->capture_default_str();
  benchCmd->add_option("--seed", bench.seed, "random: seed, overridden by AMC_SEED")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*checkCmd) return runCheck(check);
    if (*convCmd) return runConvert(conv);
    if (*genCmd) return runGen(family, gen);
    if (*solveCmd) return runSolveGame(gameIn, gameTimeout);
    if (*benchCmd) return runBench(bench);
  } catch (const UsageFailure& e) {
    std::cerr << "error: " << e.message << '\n';
    return kExitUsage;
  } catch (const ApiFailure& e) {
    std::cerr << "error: " << e.message << '\n';
    switch (e.status) {
      case AMC_ERR_PARSE:
      case AMC_ERR_VALIDATION:
      case AMC_ERR_IO:
      case AMC_ERR_KIND:
      case AMC_ERR_CHECK: return kExitInput;
      case AMC_ERR_ARGUMENT: return kExitUsage;
      default: return kExitFailure;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
