/* C interface to the terminal-pairability solvers. Every function returning
 * tpb_status sets a thread-local message readable with tpb_last_error() when
 * it fails. Strings returned by getters are owned by their handle. */
#ifndef TPB_H
#define TPB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define TPB_API __declspec(dllexport)
#else
#define TPB_API __attribute__((visibility("default")))
#endif

typedef enum {
  TPB_OK = 0,
  TPB_ERR_ARGUMENT,     /* null pointer or bad enum value */
  TPB_ERR_NOT_FOUND,
  TPB_ERR_DOMAIN,
  TPB_ERR_PRECONDITION, /* input outside a solver's hypotheses */
  TPB_ERR_STRUCTURAL,   /* internal invariant failed */
  TPB_ERR_PARSE,
  TPB_ERR_BUDGET,
  TPB_ERR_INTERNAL
} tpb_status;

typedef struct tpb_instance tpb_instance;
typedef struct tpb_result tpb_result;
typedef struct tpb_verdict tpb_verdict;

TPB_API const char* tpb_last_error(void);
TPB_API void tpb_string_free(char* s);

/* Instances */

typedef enum {
  TPB_FAMILY_SHARP_CONJ = 0,
  TPB_FAMILY_SHARP_EDGE,
  TPB_FAMILY_CHAIN,
  TPB_FAMILY_RANDOM_EDGE,
  TPB_FAMILY_RANDOM_BLOCKED,
  TPB_FAMILY_RANDOM_SEMIREGULAR
} tpb_family;

typedef struct {
  tpb_family family;
  int n;          /* square families */
  int a, b;       /* random-semiregular */
  int delta_a;    /* random-semiregular */
  int max_edges;  /* random-edge; negative means 2n-2 */
  int max_degree; /* random-edge; negative means n */
  int blocks[3];  /* random-blocked; all zero means as equal as possible */
  uint64_t seed;
} tpb_gen_params;

TPB_API void tpb_gen_params_init(tpb_gen_params* p);
TPB_API tpb_status tpb_instance_parse(const char* text, tpb_instance** out);
TPB_API tpb_status tpb_instance_generate(const tpb_gen_params* p, tpb_instance** out);
/* Canonical text; release with tpb_string_free. */
TPB_API tpb_status tpb_instance_serialize(const tpb_instance* inst, char** out);
TPB_API void tpb_instance_free(tpb_instance* inst);

typedef struct {
  int a, b;
  int64_t edges;
  int max_degree;
  int max_multiplicity;
} tpb_summary;

TPB_API tpb_status tpb_instance_summary(const tpb_instance* inst, tpb_summary* out);

/* Solving */

typedef enum {
  TPB_ALGO_AUTO = 0,
  TPB_ALGO_EDGE,
  TPB_ALGO_BLOCKED,
  TPB_ALGO_QUARTER,
  TPB_ALGO_ORACLE
} tpb_algo;

typedef struct {
  tpb_algo algo;
  uint64_t seed;       /* recorded in the report; the solvers are deterministic */
  int64_t timeout_ms;  /* search time limit for oracle calls */
  int64_t max_nodes;   /* search node limit for oracle calls */
  int has_blocks;
  int blocks[3];       /* consecutive block sizes for the blocked solver */
} tpb_solve_options;

typedef enum {
  TPB_OUTCOME_SOLVED = 0,
  TPB_OUTCOME_UNSOLVED,
  TPB_OUTCOME_UNKNOWN,
  TPB_OUTCOME_INVALID_INPUT
} tpb_outcome;

TPB_API void tpb_solve_options_init(tpb_solve_options* o);
/* Fails only on bad arguments or internal errors; unsolved and out-of-range
 * inputs are reported through the result's outcome. */
TPB_API tpb_status tpb_solve(const tpb_instance* inst, const tpb_solve_options* o,
                             tpb_result** out);
TPB_API tpb_outcome tpb_result_outcome(const tpb_result* r);
TPB_API const char* tpb_outcome_name(tpb_outcome o);
TPB_API const char* tpb_result_algorithm(const tpb_result* r);
TPB_API const char* tpb_result_resolution_text(const tpb_result* r);
TPB_API const char* tpb_result_report(const tpb_result* r);
TPB_API int64_t tpb_result_nodes(const tpb_result* r);
TPB_API double tpb_result_elapsed_ms(const tpb_result* r);
TPB_API void tpb_result_free(tpb_result* r);

/* Verification */

TPB_API tpb_status tpb_verify(const tpb_instance* inst, const char* resolution_text,
                              tpb_verdict** out);
TPB_API int tpb_verdict_valid(const tpb_verdict* v);
TPB_API size_t tpb_verdict_violation_count(const tpb_verdict* v);
TPB_API const char* tpb_verdict_violation(const tpb_verdict* v, size_t i);
TPB_API void tpb_verdict_free(tpb_verdict* v);

#ifdef __cplusplus
}
#endif

#endif /* TPB_H */
