#ifndef SLICELAB_SLICELAB_H
#define SLICELAB_SLICELAB_H

/* C interface to slicelab. Every call returns a slicelab_status; on failure
 * slicelab_last_error() describes the problem (per thread). Strings handed
 * out through char** parameters are owned by the caller and released with
 * slicelab_string_free. Results are compact JSON unless noted. */

#include <stdint.h>

#if defined(_WIN32)
#define SLICELAB_API __declspec(dllexport)
#else
#define SLICELAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum slicelab_status {
  SLICELAB_OK = 0,
  SLICELAB_ERR_DOMAIN = 1,
  SLICELAB_ERR_PRECONDITION = 2,
  SLICELAB_ERR_STRUCTURAL = 3,
  SLICELAB_ERR_PARSE = 4,
  SLICELAB_ERR_RESOURCE = 5,
  SLICELAB_ERR_INTERNAL = 6,
  SLICELAB_ERR_IO = 7,
  SLICELAB_ERR_ARGUMENT = 8
} slicelab_status;

SLICELAB_API const char* slicelab_version(void);
SLICELAB_API const char* slicelab_status_name(int status);
SLICELAB_API const char* slicelab_last_error(void);
SLICELAB_API void slicelab_string_free(char* s);

/* ---- slice functions ---------------------------------------------------- */

typedef struct slicelab_function slicelab_function;

/* "slice n k\n<bits>" or {"n":..,"k":..,"table":".."}. */
SLICELAB_API int slicelab_function_parse(const char* text, slicelab_function** out);
SLICELAB_API int slicelab_function_load(const char* path, slicelab_function** out);
SLICELAB_API int slicelab_function_from_bits(int n, int k, const char* bits, slicelab_function** out);
SLICELAB_API int slicelab_function_compose(const slicelab_function* f1, const slicelab_function* f2,
                                           slicelab_function** out);
SLICELAB_API void slicelab_function_free(slicelab_function* f);
SLICELAB_API int slicelab_function_json(const slicelab_function* f, char** out);
SLICELAB_API int slicelab_function_text(const slicelab_function* f, char** out);

/* ---- query solver ------------------------------------------------------- */

/* {"n","k","D","E","nodes_expanded"[,"tree"]} */
SLICELAB_API int slicelab_solve(const slicelab_function* f, int extract_tree, int threads, char** out);
/* Optimal tree as DOT text. */
SLICELAB_API int slicelab_solve_dot(const slicelab_function* f, int threads, char** out);
/* {"valid","height"[,"counterexample"]} */
SLICELAB_API int slicelab_verify_tree(const slicelab_function* f, const char* tree_json, char** out);
/* {"n","k","D","E","witness","functions_checked"} */
SLICELAB_API int slicelab_maxdepth(int n, int k, int threads, char** out);
/* mode 0 = padded, 1 = early leaves. {"n","k","hmax","mode","count"} */
SLICELAB_API int slicelab_census(int n, int k, int hmax, int mode, char** out);

/* ---- counting bounds ---------------------------------------------------- */

SLICELAB_API int slicelab_bounds_g(int n, int k, int t, int precision_bits, char** out);
SLICELAB_API int slicelab_bounds_kozep(int t, int n_lo, int n_hi, int threads, char** out);
SLICELAB_API int slicelab_bounds_kozep_chain(int precision_bits, char** out);
SLICELAB_API int slicelab_bounds_alfa(long alpha_num, long alpha_den, int C, int n, int precision_bits, char** out);
/* {"n","k","t","verdict","log2_g_hi","binom",...} */
SLICELAB_API int slicelab_bounds_certify(int n, int k, char** out);

/* ---- Disc-max ----------------------------------------------------------- */

/* Boards are strings over "+-." or JSON arrays of -1/0/1. */
SLICELAB_API int slicelab_discmax_eval(const char* board, int d, char** out);
/* target 1 = true value, 0 = false value. */
SLICELAB_API int slicelab_discmax_feasible(const char* board, int d, int target, char** out);
/* variant "i" | "ii" | "i_prime" | "ii_prime" */
SLICELAB_API int slicelab_discmax_claim(const char* board, int d, const char* variant, char** out);
SLICELAB_API int slicelab_discmax_claims(int n, int d, char** out);
/* method "alternating" | "even_interval"; order is a comma list or NULL. */
SLICELAB_API int slicelab_discmax_complete(const char* board, int d, const char* method, const char* order,
                                           char** out);
SLICELAB_API int slicelab_discmax_E(int n, int d, int threads, char** out);
SLICELAB_API int slicelab_discmax_remark(int d, int n, char** out);

/* ---- games -------------------------------------------------------------- */

/* scoring "prefix" | "interval"; strategy "optimal" | "sqrt_blocks" |
 * "bisection" | "random"; role "positioner" | "signgiver". */
SLICELAB_API int slicelab_game_value(int n, const char* scoring, int threads, char** out);
SLICELAB_API int slicelab_game_exploit(const char* strategy, const char* role, int n, const char* scoring,
                                       char** out);
SLICELAB_API int slicelab_game_play(const char* positioner, const char* signgiver, int n, const char* scoring,
                                    uint64_t seed, char** out);
/* pending <= 0 asks the positioner strategy; otherwise the signgiver's sign
 * for that position. */
SLICELAB_API int slicelab_strategy_move(const char* strategy, const char* board, int pending, int* out);
SLICELAB_API int slicelab_game_corollary(int n, int threads, char** out);

typedef struct slicelab_match slicelab_match;

SLICELAB_API int slicelab_match_create(int n, const char* scoring, slicelab_match** out);
SLICELAB_API void slicelab_match_free(slicelab_match* m);
/* The opponent plays `role` with `strategy`. */
SLICELAB_API int slicelab_match_set_opponent(slicelab_match* m, const char* role, const char* strategy, uint64_t seed);
SLICELAB_API int slicelab_match_opponent_position(slicelab_match* m, int* out);
SLICELAB_API int slicelab_match_opponent_sign(slicelab_match* m, int position, int* out);
/* SLICELAB_OK when legal, SLICELAB_ERR_DOMAIN with the reason otherwise. */
SLICELAB_API int slicelab_match_check(const slicelab_match* m, int position, int sign);
SLICELAB_API int slicelab_match_apply(slicelab_match* m, int position, int sign);
SLICELAB_API int slicelab_match_finished(const slicelab_match* m, int* out);
SLICELAB_API int slicelab_match_peak_doubled(const slicelab_match* m, int* out);
SLICELAB_API int slicelab_match_board(const slicelab_match* m, char** out);
/* JSON lines, one move per line. */
SLICELAB_API int slicelab_match_trace(const slicelab_match* m, char** out);

/* ---- sweeps ------------------------------------------------------------- */

/* CSV "n,t,ratio_hi" */
SLICELAB_API int slicelab_sweep_kozep_csv(int t, int n_lo, int n_hi, int threads, char** out);
/* E table over even n <= n_max, d in [1, d_max], plus seeded claim sampling
 * on random boards of length n_max. */
SLICELAB_API int slicelab_sweep_E(int n_max, int d_max, uint64_t seed, int samples, int threads, char** out);

#ifdef __cplusplus
}
#endif

#endif
