/* C interface to the AMC model checker.
 *
 * Objects are opaque handles released with the matching *_free function.
 * Every fallible call returns an amc_status; on failure amc_last_error()
 * describes the problem (per thread, valid until the next failing call).
 * Strings returned through char** are heap-allocated; release them with
 * amc_string_free. Strings returned as const char* are owned by the handle. */
#ifndef AMC_AMC_H
#define AMC_AMC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define AMC_API __declspec(dllexport)
#else
#define AMC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum amc_status {
  AMC_OK = 0,
  AMC_ERR_PARSE = 1,      /* malformed model, formula or game text */
  AMC_ERR_VALIDATION = 2, /* well-formed but invalid input */
  AMC_ERR_IO = 3,
  AMC_ERR_ARGUMENT = 4,   /* null pointer, index out of range, bad option */
  AMC_ERR_KIND = 5,       /* CGF operation on an EF or vice versa */
  AMC_ERR_TIMEOUT = 6,
  AMC_ERR_CHECK = 7,      /* e.g. coalition missing from a sparse EF */
  AMC_ERR_INTERNAL = 8
} amc_status;

typedef enum amc_engine {
  AMC_ENGINE_CGF_GAME = 0,
  AMC_ENGINE_CGF_LOCAL = 1,
  AMC_ENGINE_EF_GAME = 2,
  AMC_ENGINE_EF_LOCAL = 3
} amc_engine;

typedef enum amc_player { AMC_EXISTS = 0, AMC_FORALL = 1 } amc_player;

typedef struct amc_model amc_model;
typedef struct amc_formula amc_formula;
typedef struct amc_game amc_game;
typedef struct amc_benchmark amc_benchmark;

AMC_API const char* amc_last_error(void);
AMC_API const char* amc_status_name(amc_status status);
AMC_API void amc_string_free(char* s);

/* Engine names: "cgf-game", "cgf-local", "ef-game", "ef-local". */
AMC_API amc_status amc_engine_parse(const char* name, amc_engine* out);
AMC_API const char* amc_engine_name(amc_engine engine);

/* ---- models ---- */

AMC_API amc_status amc_model_load(const char* path, amc_model** out);
AMC_API amc_status amc_model_parse(const char* json, amc_model** out);
AMC_API amc_status amc_model_save(const amc_model* m, const char* path);
AMC_API amc_status amc_model_to_json(const amc_model* m, char** out);
AMC_API void amc_model_free(amc_model* m);

AMC_API int amc_model_is_cgf(const amc_model* m);
AMC_API size_t amc_model_state_count(const amc_model* m);
AMC_API int amc_model_agent_count(const amc_model* m);
AMC_API const char* amc_model_state_name(const amc_model* m, size_t state);
AMC_API amc_status amc_model_state_index(const amc_model* m, const char* name, size_t* out);
/* 1 and *out set if the model names an initial state, 0 otherwise. */
AMC_API int amc_model_initial(const amc_model* m, size_t* out);

/* ---- formulas ---- */

AMC_API amc_status amc_formula_parse(const char* text, amc_formula** out);
AMC_API amc_status amc_formula_print(const amc_formula* f, char** out);
AMC_API void amc_formula_free(amc_formula* f);
AMC_API size_t amc_formula_connectives(const amc_formula* f);
/* Coalition masks (bit a-1 for agent a) of all modalities, ascending.
 * Writes at most `capacity` masks; *count receives the total. */
AMC_API amc_status amc_formula_coalitions(const amc_formula* f, uint64_t* masks, size_t capacity,
                                          size_t* count);

/* ---- conversion ---- */

typedef struct amc_convert_options {
  int minimize;
  /* If nonzero, convert only the `coalition_count` masks given. */
  int restrict_coalitions;
  const uint64_t* coalitions;
  size_t coalition_count;
  unsigned threads;
} amc_convert_options;

AMC_API void amc_convert_options_init(amc_convert_options* options);
/* Effectivity frame induced by a CGF model. `seconds` may be null. */
AMC_API amc_status amc_convert(const amc_model* cgf, const amc_convert_options* options, amc_model** out,
                               double* seconds);

/* ---- checking ---- */

/* Verdict for every state: verdicts[w] = 1 iff the formula holds at w.
 * `verdicts` must hold amc_model_state_count entries. `timeout` <= 0 means
 * none. `seconds` (may be null) receives the engine wall time, which
 * excludes parsing. Game engines need the matching model kind. */
AMC_API amc_status amc_check(const amc_model* m, const amc_formula* f, amc_engine engine, double timeout,
                             unsigned char* verdicts, double* seconds);

/* ---- generators ---- */

/* Atoms are named p0 .. p{atoms-1}. */
AMC_API amc_status amc_gen_random_cgf(int states, int agents, int moves, int atoms, uint64_t seed,
                                      amc_model** out);
AMC_API amc_status amc_gen_random_formula(int connectives, int agents, int atoms, int max_fixpoint_depth,
                                          uint64_t seed, amc_formula** out);
AMC_API amc_status amc_gen_castle(int castles, int hp, amc_benchmark** out);
AMC_API amc_status amc_gen_modulo(int agents, int moves, int base, amc_benchmark** out);

AMC_API const amc_model* amc_benchmark_model(const amc_benchmark* b);
AMC_API size_t amc_benchmark_formula_count(const amc_benchmark* b);
AMC_API const char* amc_benchmark_formula_name(const amc_benchmark* b, size_t i);
AMC_API const amc_formula* amc_benchmark_formula(const amc_benchmark* b, size_t i);
AMC_API void amc_benchmark_free(amc_benchmark* b);

/* ---- parity games ---- */

/* Model-checking game rooted at the given states (all states if `states`
 * is null). `labels` nonzero attaches "state,formula[,choice]" labels. */
AMC_API amc_status amc_game_build(const amc_model* m, const amc_formula* f, const size_t* states, size_t count,
                                  int labels, amc_game** out);
AMC_API amc_status amc_game_parse_pgsolver(const char* text, amc_game** out);
AMC_API amc_status amc_game_export_pgsolver(const amc_game* g, char** out);
AMC_API void amc_game_free(amc_game* g);

AMC_API size_t amc_game_size(const amc_game* g);
/* Number of root positions (0 for parsed games) and the i-th of them. */
AMC_API size_t amc_game_root_count(const amc_game* g);
AMC_API amc_status amc_game_root(const amc_game* g, size_t i, size_t* out);
/* Position ceiling of the full product game (0 for parsed games). */
AMC_API double amc_game_position_bound(const amc_game* g);
/* Winner of each position; `winners` must hold amc_game_size entries. */
AMC_API amc_status amc_game_solve(const amc_game* g, double timeout, amc_player* winners);

#ifdef __cplusplus
}
#endif

#endif
