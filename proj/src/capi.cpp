#include "amc/amc.h"

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <stdexcept>
#include <string>

#include "amc/benchgen.hpp"
#include "amc/closure.hpp"
#include "amc/convert.hpp"
#include "amc/error.hpp"
#include "amc/game.hpp"
#include "amc/localfp.hpp"

struct amc_model {
  amc::Model model;
};

struct amc_formula {
  amc::FormulaPtr formula;
};

struct amc_game {
  amc::ParityGame game;
  std::vector<amc::PositionId> roots;
  double bound = 0;
};

struct amc_benchmark {
  amc_model model;
  std::vector<std::string> names;
  std::vector<amc_formula> formulas;
};

namespace {

thread_local std::string lastError;

amc_status fail(amc_status s, const std::string& message) {
  lastError = message;
  return s;
}

// Maps exceptions thrown by `body` to status codes.
template <typename Body>
amc_status guarded(Body&& body) {
  try {
    return body();
  } catch (const amc::ParseError& e) {
    return fail(AMC_ERR_PARSE, e.what());
  } catch (const amc::ValidationError& e) {
    return fail(AMC_ERR_VALIDATION, e.what());
  } catch (const amc::TimeoutError& e) {
    return fail(AMC_ERR_TIMEOUT, e.what());
  } catch (const amc::CheckError& e) {
    return fail(AMC_ERR_CHECK, e.what());
  } catch (const amc::IoError& e) {
    return fail(AMC_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(AMC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(AMC_ERR_INTERNAL, e.what());
  }
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

#define AMC_REQUIRE(cond, what) \
  if (!(cond)) return fail(AMC_ERR_ARGUMENT, what)

}  // namespace

extern "C" {

const char* amc_last_error(void) { return lastError.c_str(); }

const char* amc_status_name(amc_status status) {
  switch (status) {
    case AMC_OK: return "ok";
    case AMC_ERR_PARSE: return "parse error";
    case AMC_ERR_VALIDATION: return "validation error";
    case AMC_ERR_IO: return "i/o error";
    case AMC_ERR_ARGUMENT: return "invalid argument";
    case AMC_ERR_KIND: return "wrong model kind";
    case AMC_ERR_TIMEOUT: return "timeout";
    case AMC_ERR_CHECK: return "check error";
    case AMC_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void amc_string_free(char* s) { std::free(s); }

amc_status amc_engine_parse(const char* name, amc_engine* out) {
  AMC_REQUIRE(name && out, "null argument");
  static const char* const names[] = {"cgf-game", "cgf-local", "ef-game", "ef-local"};
  for (int i = 0; i < 4; ++i) {
    if (std::strcmp(name, names[i]) == 0) {
      *out = static_cast<amc_engine>(i);
      return AMC_OK;
    }
  }
  return fail(AMC_ERR_ARGUMENT, std::string("unknown engine '") + name + "'");
}

const char* amc_engine_name(amc_engine engine) {
  switch (engine) {
    case AMC_ENGINE_CGF_GAME: return "cgf-game";
    case AMC_ENGINE_CGF_LOCAL: return "cgf-local";
    case AMC_ENGINE_EF_GAME: return "ef-game";
    case AMC_ENGINE_EF_LOCAL: return "ef-local";
  }
  return "unknown";
}

// ---- models

amc_status amc_model_load(const char* path, amc_model** out) {
  AMC_REQUIRE(path && out, "null argument");
  return guarded([&] {
    *out = new amc_model{amc::loadModel(path)};
    return AMC_OK;
  });
}

amc_status amc_model_parse(const char* json, amc_model** out) {
  AMC_REQUIRE(json && out, "null argument");
  return guarded([&] {
    *out = new amc_model{amc::parseModel(json)};
    return AMC_OK;
  });
}

amc_status amc_model_save(const amc_model* m, const char* path) {
  AMC_REQUIRE(m && path, "null argument");
  return guarded([&] {
    amc::saveModel(m->model, path);
    return AMC_OK;
  });
}

amc_status amc_model_to_json(const amc_model* m, char** out) {
  AMC_REQUIRE(m && out, "null argument");
  return guarded([&] {
    *out = duplicate(amc::toJson(m->model));
    return AMC_OK;
  });
}

void amc_model_free(amc_model* m) { delete m; }

int amc_model_is_cgf(const amc_model* m) { return m && m->model.isCgf() ? 1 : 0; }

size_t amc_model_state_count(const amc_model* m) { return m ? m->model.base().stateCount() : 0; }

int amc_model_agent_count(const amc_model* m) { return m ? m->model.base().agents : 0; }

const char* amc_model_state_name(const amc_model* m, size_t state) {
  if (!m || state >= m->model.base().stateCount()) return nullptr;
  return m->model.base().states[state].c_str();
}

amc_status amc_model_state_index(const amc_model* m, const char* name, size_t* out) {
  AMC_REQUIRE(m && name && out, "null argument");
  return guarded([&] {
    *out = m->model.base().stateIndex(name);
    return AMC_OK;
  });
}

int amc_model_initial(const amc_model* m, size_t* out) {
  if (!m || !m->model.base().initial) return 0;
  if (out) *out = *m->model.base().initial;
  return 1;
}

// ---- formulas

amc_status amc_formula_parse(const char* text, amc_formula** out) {
  AMC_REQUIRE(text && out, "null argument");
  return guarded([&] {
    *out = new amc_formula{amc::parseFormula(text)};
    return AMC_OK;
  });
}

amc_status amc_formula_print(const amc_formula* f, char** out) {
  AMC_REQUIRE(f && out, "null argument");
  return guarded([&] {
    *out = duplicate(amc::print(*f->formula));
    return AMC_OK;
  });
}

void amc_formula_free(amc_formula* f) { delete f; }

size_t amc_formula_connectives(const amc_formula* f) { return f ? f->formula->connectives() : 0; }

amc_status amc_formula_coalitions(const amc_formula* f, uint64_t* masks, size_t capacity, size_t* count) {
  AMC_REQUIRE(f && count, "null argument");
  AMC_REQUIRE(masks || capacity == 0, "null mask buffer");
  std::vector<amc::Coalition> cs = f->formula->coalitions();
  for (size_t i = 0; i < cs.size() && i < capacity; ++i) masks[i] = cs[i].mask();
  *count = cs.size();
  return AMC_OK;
}

// ---- conversion

void amc_convert_options_init(amc_convert_options* options) {
  if (options) *options = amc_convert_options{0, 0, nullptr, 0, 1};
}

amc_status amc_convert(const amc_model* cgf, const amc_convert_options* options, amc_model** out,
                       double* seconds) {
  AMC_REQUIRE(cgf && out, "null argument");
  if (!cgf->model.isCgf()) return fail(AMC_ERR_KIND, "conversion needs a CGF model");
  return guarded([&] {
    amc::ConvertOptions opts;
    if (options) {
      opts.minimize = options->minimize != 0;
      opts.threads = options->threads;
      if (options->restrict_coalitions) {
        if (options->coalition_count && !options->coalitions) return fail(AMC_ERR_ARGUMENT, "null coalition list");
        std::vector<amc::Coalition> cs;
        for (size_t i = 0; i < options->coalition_count; ++i)
          cs.push_back(amc::Coalition::fromMask(options->coalitions[i]));
        opts.coalitions = std::move(cs);
      }
    }
    amc::Conversion c = amc::convert(cgf->model.cgf(), opts);
    if (seconds) *seconds = c.seconds;
    *out = new amc_model{amc::Model(std::move(c.ef))};
    return AMC_OK;
  });
}

// ---- checking

amc_status amc_check(const amc_model* m, const amc_formula* f, amc_engine engine, double timeout,
                     unsigned char* verdicts, double* seconds) {
  AMC_REQUIRE(m && f && verdicts, "null argument");
  const bool wantsCgf = engine == AMC_ENGINE_CGF_GAME || engine == AMC_ENGINE_CGF_LOCAL;
  const bool game = engine == AMC_ENGINE_CGF_GAME || engine == AMC_ENGINE_EF_GAME;
  AMC_REQUIRE(wantsCgf || engine == AMC_ENGINE_EF_GAME || engine == AMC_ENGINE_EF_LOCAL, "unknown engine");
  if (wantsCgf != m->model.isCgf())
    return fail(AMC_ERR_KIND, std::string("engine ") + amc_engine_name(engine) + " needs " +
                                  (wantsCgf ? "a CGF" : "an EF") + " model");
  return guarded([&] {
    auto start = std::chrono::steady_clock::now();
    amc::Deadline deadline = amc::Deadline::after(timeout);
    amc::ClosureGraph cl = amc::ClosureGraph::build(*f->formula);
    std::vector<bool> result =
        game ? amc::checkAllViaGame(m->model, cl, deadline) : amc::checkAllViaFixpoint(m->model, cl, deadline);
    std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    for (size_t w = 0; w < result.size(); ++w) verdicts[w] = result[w] ? 1 : 0;
    if (seconds) *seconds = elapsed.count();
    return AMC_OK;
  });
}

// ---- generators

amc_status amc_gen_random_cgf(int states, int agents, int moves, int atoms, uint64_t seed, amc_model** out) {
  AMC_REQUIRE(out, "null argument");
  AMC_REQUIRE(atoms >= 0, "negative atom count");
  return guarded([&] {
    *out = new amc_model{amc::Model(amc::randomCgf(states, agents, moves, amc::atomNames(atoms), seed))};
    return AMC_OK;
  });
}

amc_status amc_gen_random_formula(int connectives, int agents, int atoms, int max_fixpoint_depth, uint64_t seed,
                                  amc_formula** out) {
  AMC_REQUIRE(out, "null argument");
  AMC_REQUIRE(atoms >= 0, "negative atom count");
  return guarded([&] {
    amc::RandomFormulaOptions opts;
    opts.agents = agents;
    opts.atoms = amc::atomNames(atoms);
    opts.maxFixpointDepth = max_fixpoint_depth;
    *out = new amc_formula{amc::randomFormula(connectives, opts, seed)};
    return AMC_OK;
  });
}

namespace {

amc_benchmark* wrap(amc::Benchmark b) {
  auto* out = new amc_benchmark{amc_model{amc::Model(std::move(b.model))}, {}, {}};
  for (auto& nf : b.formulas) {
    out->names.push_back(nf.name);
    out->formulas.push_back(amc_formula{nf.formula});
  }
  return out;
}

}  // namespace

amc_status amc_gen_castle(int castles, int hp, amc_benchmark** out) {
  AMC_REQUIRE(out, "null argument");
  return guarded([&] {
    *out = wrap(amc::castleGame(castles, hp));
    return AMC_OK;
  });
}

amc_status amc_gen_modulo(int agents, int moves, int base, amc_benchmark** out) {
  AMC_REQUIRE(out, "null argument");
  return guarded([&] {
    *out = wrap(amc::moduloGame(agents, moves, base));
    return AMC_OK;
  });
}

const amc_model* amc_benchmark_model(const amc_benchmark* b) { return b ? &b->model : nullptr; }

size_t amc_benchmark_formula_count(const amc_benchmark* b) { return b ? b->formulas.size() : 0; }

const char* amc_benchmark_formula_name(const amc_benchmark* b, size_t i) {
  return b && i < b->names.size() ? b->names[i].c_str() : nullptr;
}

const amc_formula* amc_benchmark_formula(const amc_benchmark* b, size_t i) {
  return b && i < b->formulas.size() ? &b->formulas[i] : nullptr;
}

void amc_benchmark_free(amc_benchmark* b) { delete b; }

// ---- games

amc_status amc_game_build(const amc_model* m, const amc_formula* f, const size_t* states, size_t count, int labels,
                          amc_game** out) {
  AMC_REQUIRE(m && f && out, "null argument");
  return guarded([&] {
    std::vector<amc::StateId> query;
    if (states) {
      for (size_t i = 0; i < count; ++i) {
        if (states[i] >= m->model.base().stateCount()) {
          lastError = "state index " + std::to_string(states[i]) + " out of range";
          return AMC_ERR_ARGUMENT;
        }
        query.push_back(static_cast<amc::StateId>(states[i]));
      }
    } else {
      for (size_t w = 0; w < m->model.base().stateCount(); ++w) query.push_back(static_cast<amc::StateId>(w));
    }
    amc::ClosureGraph cl = amc::ClosureGraph::build(*f->formula);
    amc::GameBuildOptions opts;
    opts.labels = labels != 0;
    amc::ModelCheckingGame mc = amc::buildGame(m->model, cl, query, opts);
    *out = new amc_game{std::move(mc.game), std::move(mc.roots), mc.positionBound};
    return AMC_OK;
  });
}

amc_status amc_game_parse_pgsolver(const char* text, amc_game** out) {
  AMC_REQUIRE(text && out, "null argument");
  return guarded([&] {
    *out = new amc_game{amc::parsePgsolver(text), {}, 0};
    return AMC_OK;
  });
}

amc_status amc_game_export_pgsolver(const amc_game* g, char** out) {
  AMC_REQUIRE(g && out, "null argument");
  return guarded([&] {
    *out = duplicate(amc::exportPgsolver(g->game));
    return AMC_OK;
  });
}

void amc_game_free(amc_game* g) { delete g; }

size_t amc_game_size(const amc_game* g) { return g ? g->game.size() : 0; }

size_t amc_game_root_count(const amc_game* g) { return g ? g->roots.size() : 0; }

amc_status amc_game_root(const amc_game* g, size_t i, size_t* out) {
  AMC_REQUIRE(g && out, "null argument");
  AMC_REQUIRE(i < g->roots.size(), "root index out of range");
  *out = g->roots[i];
  return AMC_OK;
}

double amc_game_position_bound(const amc_game* g) { return g ? g->bound : 0; }

amc_status amc_game_solve(const amc_game* g, double timeout, amc_player* winners) {
  AMC_REQUIRE(g && winners, "null argument");
  return guarded([&] {
    amc::Solution s = amc::zielonkaSolve(g->game, amc::Deadline::after(timeout));
    for (size_t v = 0; v < s.winner.size(); ++v)
      winners[v] = s.winner[v] == amc::Player::Exists ? AMC_EXISTS : AMC_FORALL;
    return AMC_OK;
  });
}

}  // extern "C"
