/*
 * chainstore C API: reputation spillover game solver, verifier and simulator.
 *
 * The library solves the two-market entry-deterrence game with partial
 * cross-market observability (plus the noisy-signal, costly-observation and
 * N-market extensions), certifies equilibria against an exact game-tree
 * enumeration, and runs seeded Monte Carlo simulations.
 *
 * Usage model: build a JSON config document, call cs_run() with a command
 * name, read the JSON/CSV payloads off the opaque result handle, release it
 * with cs_result_free(). A handful of direct numeric helpers cover the
 * closed-form objects without JSON plumbing.
 */
#ifndef CHAINSTORE_H
#define CHAINSTORE_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cs_status {
  CS_OK = 0,
  CS_INVALID_CONFIG = 2,
  CS_VERIFICATION_FAILED = 3,
  CS_NUMERICAL_DEGENERACY = 4,
  CS_INTERNAL_ERROR = 5
} cs_status;

/* Opaque result handle owning the payload strings. */
typedef struct cs_result cs_result;

/* Commands: "solve" | "regions" | "sweep" | "simulate" | "verify" | "voi".
 * config_json may be NULL or empty for defaults. Always sets *out (free it
 * with cs_result_free), including on failure, so the message is available. */
cs_status cs_run(const char* command, const char* config_json, cs_result** out);

/* Payload accessors; strings are owned by the result and valid until
 * cs_result_free. cs_result_csv returns an empty string when the command has
 * no tabular payload. */
const char* cs_result_json(const cs_result* result);
const char* cs_result_csv(const cs_result* result);
const char* cs_result_message(const cs_result* result);
cs_status cs_result_status(const cs_result* result);
void cs_result_free(cs_result* result);

/* ---- direct numeric helpers (floating mode) ---------------------------- */

/* Entry cutoff phi = v / (v + d). */
cs_status cs_entry_cutoff(double v, double d, double* out);

/* Deterrence gain threshold delta = (a + c) / (M - a). */
cs_status cs_deterrence_threshold(double M, double a, double c, double* out);

/* Posterior toughness after an observed fight (conventions: qA=0 -> 1,
 * qA=1 -> p0). */
cs_status cs_posterior_after_fight(double p0, double qA, double* out);

/* Value of certain observation of the period-1 action for the later entrant. */
cs_status cs_value_of_information(double p0, double qA, double pi, double v, double d,
                                  double* out);

/* Compact sequential-protocol equilibrium summary. */
typedef struct cs_outcome {
  int regime; /* 0 HIGH_FIGHT, 1 LOW_ACCOMMODATE, 2 BOUNDARY_MIX, 3 SIMULTANEOUS */
  double qA;
  double qA_interval_low;  /* meaningful when has_interval != 0 */
  double qA_interval_high; /* interval is [low, high) */
  int has_interval;
  double lambda_A;
  double lambda_F;
  double delta_lambda;
  double ex_ante_entry_B;
  double strategic_payoff;
  double tough_payoff;
  int entrant_A_enters;
  double knife_entry_prob; /* 1 when no knife-edge mixing applies */
  double phi;
  double delta;
} cs_outcome;

cs_status cs_solve_sequential(double p0, double pi, double M, double a, double c, double d,
                              double v, cs_outcome* out);

const char* cs_version(void);

#ifdef __cplusplus
}
#endif

#endif /* CHAINSTORE_H */
