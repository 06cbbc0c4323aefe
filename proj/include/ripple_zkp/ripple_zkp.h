#ifndef RIPPLE_ZKP_H
#define RIPPLE_ZKP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define RZKP_API __declspec(dllexport)
#else
#define RZKP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct rzkp_puzzle rzkp_puzzle;
typedef struct rzkp_assignment rzkp_assignment;
typedef struct rzkp_proof rzkp_proof;
typedef struct rzkp_audit_report rzkp_audit_report;

typedef enum rzkp_status {
  RZKP_OK = 0,
  RZKP_ERR_INVALID_ARGUMENT = 1, /* null pointer, zero trials, ... */
  RZKP_ERR_PARSE = 2,            /* malformed puzzle or solution text */
  RZKP_ERR_SHAPE = 3,            /* solution grid does not match the puzzle */
  RZKP_ERR_UNSATISFIABLE = 4,    /* the puzzle has no solution */
  RZKP_ERR_INTERNAL = 5
} rzkp_status;

/* Option bits for rzkp_prove and rzkp_audit. */
enum {
  RZKP_DEDUPE_DIRECTIONS = 1u << 0, /* skip left/up distance checks */
  RZKP_INJECT_BIAS = 1u << 1        /* audit only: bias the simulator's room permutations */
};

typedef struct rzkp_card_stats {
  size_t k, m, n;
  size_t grid_cards;
  size_t peak_aux_cards;
  size_t total;
  size_t fixed_rows;
  size_t appended_block;
  size_t edge_padding;
} rzkp_card_stats;

/* Message for the last failed call on this thread; "" if none. */
RZKP_API const char* rzkp_last_error(void);
RZKP_API void rzkp_string_free(char* s);

RZKP_API rzkp_status rzkp_puzzle_parse(const char* text, rzkp_puzzle** out);
RZKP_API void rzkp_puzzle_free(rzkp_puzzle* puzzle);
RZKP_API rzkp_status rzkp_puzzle_shape(const rzkp_puzzle* puzzle, int* rows, int* cols, int* k);

RZKP_API rzkp_status rzkp_assignment_parse(const char* text, rzkp_assignment** out);
RZKP_API void rzkp_assignment_free(rzkp_assignment* assignment);
/* Solution text (one row per line). Free with rzkp_string_free. */
RZKP_API rzkp_status rzkp_assignment_format(const rzkp_assignment* assignment, char** out);

/* First solution in search order; RZKP_ERR_UNSATISFIABLE if none. */
RZKP_API rzkp_status rzkp_solve(const rzkp_puzzle* puzzle, rzkp_assignment** out);
/* Number of solutions, stopping at limit. */
RZKP_API rzkp_status rzkp_count_solutions(const rzkp_puzzle* puzzle, size_t limit, size_t* count);

/* Violations, one per line, into *report (may be NULL). Free with rzkp_string_free. */
RZKP_API rzkp_status rzkp_validate(const rzkp_puzzle* puzzle, const rzkp_assignment* assignment,
                                   size_t* violations, char** report);

/* Closed-form card accounting. */
RZKP_API rzkp_status rzkp_card_count(const rzkp_puzzle* puzzle, rzkp_card_stats* out);

/* Runs the protocol with the assignment committed as is (no honesty check). */
RZKP_API rzkp_status rzkp_prove(const rzkp_puzzle* puzzle, const rzkp_assignment* assignment,
                                uint64_t seed, unsigned flags, rzkp_proof** out);
RZKP_API void rzkp_proof_free(rzkp_proof* proof);
RZKP_API int rzkp_proof_accepted(const rzkp_proof* proof);
/* "None" on acceptance, otherwise e.g. "DistanceHeartFound@(2,3):right". */
RZKP_API const char* rzkp_proof_reason(const rzkp_proof* proof);
RZKP_API const char* rzkp_proof_transcript(const rzkp_proof* proof);
/* Measured grid cards and auxiliary peak of this run. */
RZKP_API rzkp_status rzkp_proof_cards(const rzkp_proof* proof, rzkp_card_stats* out);

/* trials real runs of `solution` against trials simulated transcripts.
   threads = 0 picks the hardware concurrency. */
RZKP_API rzkp_status rzkp_audit(const rzkp_puzzle* puzzle, const rzkp_assignment* solution,
                                uint64_t seed, size_t trials, unsigned flags, unsigned threads,
                                rzkp_audit_report** out);
RZKP_API void rzkp_audit_report_free(rzkp_audit_report* report);
RZKP_API int rzkp_audit_report_pass(const rzkp_audit_report* report);
RZKP_API int rzkp_audit_report_underpowered(const rzkp_audit_report* report);
RZKP_API const char* rzkp_audit_report_text(const rzkp_audit_report* report);

#ifdef __cplusplus
}
#endif

#endif
