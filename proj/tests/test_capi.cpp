#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "amc/amc.h"

namespace {

struct Model {
  amc_model* p = nullptr;
  ~Model() { amc_model_free(p); }
};
struct Formula {
  amc_formula* p = nullptr;
  ~Formula() { amc_formula_free(p); }
};
struct Game {
  amc_game* p = nullptr;
  ~Game() { amc_game_free(p); }
};

std::string take(char* s) {
  std::string out = s ? s : "";
  amc_string_free(s);
  return out;
}

std::vector<unsigned char> verdicts(const amc_model* m, const amc_formula* f, amc_engine e) {
  std::vector<unsigned char> out(amc_model_state_count(m), 2);
  REQUIRE(amc_check(m, f, e, 0, out.data(), nullptr) == AMC_OK);
  return out;
}

}  // namespace

TEST_CASE("C API: model loading and queries") {
  Model m;
  REQUIRE(amc_model_load(AMC_FIXTURES "/fig1.cgf.json", &m.p) == AMC_OK);
  CHECK(amc_model_is_cgf(m.p) == 1);
  CHECK(amc_model_state_count(m.p) == 3);
  CHECK(amc_model_agent_count(m.p) == 3);
  CHECK(std::string(amc_model_state_name(m.p, 2)) == "w3");
  CHECK(amc_model_state_name(m.p, 3) == nullptr);
  size_t idx = 99;
  CHECK(amc_model_state_index(m.p, "w2", &idx) == AMC_OK);
  CHECK(idx == 1);
  CHECK(amc_model_state_index(m.p, "w9", &idx) == AMC_ERR_VALIDATION);
  CHECK(amc_model_initial(m.p, &idx) == 1);
  CHECK(idx == 0);

  char* json = nullptr;
  REQUIRE(amc_model_to_json(m.p, &json) == AMC_OK);
  std::string text = take(json);
  Model back;
  REQUIRE(amc_model_parse(text.c_str(), &back.p) == AMC_OK);
  REQUIRE(amc_model_to_json(back.p, &json) == AMC_OK);
  CHECK(take(json) == text);
}

TEST_CASE("C API: error statuses") {
  Model m;
  CHECK(amc_model_load("/nonexistent/x.json", &m.p) == AMC_ERR_IO);
  CHECK(m.p == nullptr);
  CHECK(std::strlen(amc_last_error()) > 0);
  CHECK(amc_model_parse("{oops", &m.p) == AMC_ERR_PARSE);
  CHECK(amc_model_parse(R"({"kind":"ef","agents":1,"states":["a"],"effectivity":{"a":{"{1}":[]}}})", &m.p) ==
        AMC_ERR_VALIDATION);
  CHECK(amc_model_parse(nullptr, &m.p) == AMC_ERR_ARGUMENT);

  Formula f;
  CHECK(amc_formula_parse("p & & q", &f.p) == AMC_ERR_PARSE);
  CHECK(std::string(amc_last_error()).find("4") != std::string::npos);
  CHECK(amc_formula_parse("mu X. Y", &f.p) != AMC_OK);
  CHECK(std::string(amc_status_name(AMC_ERR_TIMEOUT)).size() > 0);

  amc_engine e;
  CHECK(amc_engine_parse("ef-local", &e) == AMC_OK);
  CHECK(e == AMC_ENGINE_EF_LOCAL);
  CHECK(std::string(amc_engine_name(AMC_ENGINE_CGF_GAME)) == "cgf-game");
  CHECK(amc_engine_parse("magic", &e) == AMC_ERR_ARGUMENT);
}

TEST_CASE("C API: formulas") {
  Formula f;
  REQUIRE(amc_formula_parse("([{1,3}] q) | <{2}> p", &f.p) == AMC_OK);
  CHECK(amc_formula_connectives(f.p) == 3);
  char* s = nullptr;
  REQUIRE(amc_formula_print(f.p, &s) == AMC_OK);
  CHECK(take(s).find("[{1,3}]") != std::string::npos);
  uint64_t masks[4];
  size_t count = 0;
  REQUIRE(amc_formula_coalitions(f.p, masks, 4, &count) == AMC_OK);
  REQUIRE(count == 2);
  CHECK(masks[0] == 0x2);
  CHECK(masks[1] == 0x5);
  // Modalities extend to the right: one [{1,3}] over the whole disjunction.
  Formula g;
  REQUIRE(amc_formula_parse("[{1,3}] q | <{2}> p", &g.p) == AMC_OK);
  REQUIRE(amc_formula_connectives(g.p) == 3);
  REQUIRE(amc_formula_coalitions(g.p, masks, 1, &count) == AMC_OK);
  CHECK(count == 2);
}

TEST_CASE("C API: checking with every engine") {
  Model cgf;
  REQUIRE(amc_model_load(AMC_FIXTURES "/fig1.cgf.json", &cgf.p) == AMC_OK);
  Formula f;
  REQUIRE(amc_formula_parse("[{1,3}] q", &f.p) == AMC_OK);

  CHECK(verdicts(cgf.p, f.p, AMC_ENGINE_CGF_GAME)[0] == 1);
  CHECK(verdicts(cgf.p, f.p, AMC_ENGINE_CGF_LOCAL)[0] == 1);
  std::vector<unsigned char> out(3);
  CHECK(amc_check(cgf.p, f.p, AMC_ENGINE_EF_LOCAL, 0, out.data(), nullptr) == AMC_ERR_KIND);

  amc_convert_options opts;
  amc_convert_options_init(&opts);
  opts.minimize = 1;
  Model ef;
  double seconds = -1;
  REQUIRE(amc_convert(cgf.p, &opts, &ef.p, &seconds) == AMC_OK);
  CHECK(seconds >= 0);
  CHECK(amc_model_is_cgf(ef.p) == 0);
  CHECK(verdicts(ef.p, f.p, AMC_ENGINE_EF_GAME) == verdicts(cgf.p, f.p, AMC_ENGINE_CGF_GAME));
  CHECK(verdicts(ef.p, f.p, AMC_ENGINE_EF_LOCAL) == verdicts(cgf.p, f.p, AMC_ENGINE_CGF_LOCAL));
  Model again;
  CHECK(amc_convert(ef.p, &opts, &again.p, nullptr) == AMC_ERR_KIND);

  // Restricted conversion missing the formula's coalition fails at check time.
  uint64_t only = 0x1;
  opts.restrict_coalitions = 1;
  opts.coalitions = &only;
  opts.coalition_count = 1;
  Model sparse;
  REQUIRE(amc_convert(cgf.p, &opts, &sparse.p, nullptr) == AMC_OK);
  CHECK(amc_check(sparse.p, f.p, AMC_ENGINE_EF_LOCAL, 0, out.data(), nullptr) == AMC_ERR_CHECK);
}

TEST_CASE("C API: generators") {
  Model m;
  REQUIRE(amc_gen_random_cgf(5, 2, 2, 2, 7, &m.p) == AMC_OK);
  CHECK(amc_model_state_count(m.p) == 5);
  Formula f;
  REQUIRE(amc_gen_random_formula(6, 2, 2, 2, 7, &f.p) == AMC_OK);
  CHECK(amc_formula_connectives(f.p) == 6);
  CHECK(verdicts(m.p, f.p, AMC_ENGINE_CGF_GAME) == verdicts(m.p, f.p, AMC_ENGINE_CGF_LOCAL));

  amc_benchmark* b = nullptr;
  REQUIRE(amc_gen_modulo(2, 3, 10, &b) == AMC_OK);
  CHECK(amc_benchmark_formula_count(b) == 4);
  CHECK(std::string(amc_benchmark_formula_name(b, 0)) == "phi1-1");
  CHECK(amc_model_state_count(amc_benchmark_model(b)) == 10);
  CHECK(amc_benchmark_formula(b, 4) == nullptr);
  amc_benchmark_free(b);

  REQUIRE(amc_gen_castle(2, 1, &b) == AMC_OK);
  CHECK(amc_model_state_count(amc_benchmark_model(b)) == 16);
  amc_benchmark_free(b);
  CHECK(amc_gen_castle(1, 1, &b) == AMC_ERR_VALIDATION);
}

TEST_CASE("C API: parity games") {
  Model m;
  REQUIRE(amc_model_load(AMC_FIXTURES "/fig1.cgf.json", &m.p) == AMC_OK);
  Formula f;
  REQUIRE(amc_formula_parse("[{1,3}] q", &f.p) == AMC_OK);
  size_t root = 0;
  Game g;
  REQUIRE(amc_game_build(m.p, f.p, &root, 1, 1, &g.p) == AMC_OK);
  CHECK(amc_game_root_count(g.p) == 1);
  CHECK(amc_game_position_bound(g.p) == doctest::Approx(54));
  size_t r = 99;
  REQUIRE(amc_game_root(g.p, 0, &r) == AMC_OK);
  std::vector<amc_player> winners(amc_game_size(g.p));
  REQUIRE(amc_game_solve(g.p, 0, winners.data()) == AMC_OK);
  CHECK(winners[r] == AMC_EXISTS);
  CHECK(amc_game_root(g.p, 1, &r) == AMC_ERR_ARGUMENT);

  char* text = nullptr;
  REQUIRE(amc_game_export_pgsolver(g.p, &text) == AMC_OK);
  std::string pg = take(text);
  Game parsed;
  REQUIRE(amc_game_parse_pgsolver(pg.c_str(), &parsed.p) == AMC_OK);
  CHECK(amc_game_size(parsed.p) == amc_game_size(g.p));
  CHECK(amc_game_root_count(parsed.p) == 0);
  CHECK(amc_game_parse_pgsolver("0 0 0 7;", &parsed.p) == AMC_ERR_PARSE);

  size_t bad = 5;
  Game none;
  CHECK(amc_game_build(m.p, f.p, &bad, 1, 0, &none.p) == AMC_ERR_ARGUMENT);
}
