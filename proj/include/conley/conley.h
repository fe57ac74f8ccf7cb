#ifndef CONLEY_H
#define CONLEY_H

/* C interface to the Conley index engine.  All composite results are
 * returned as heap-allocated JSON strings owned by the caller; release them
 * with conley_string_free.  On failure, conley_last_error() and
 * conley_last_error_name() describe the most recent error on the calling
 * thread. */

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  CONLEY_OK = 0,
  CONLEY_REFINE = 1, /* refine / degenerate-pair / budget signal */
  CONLEY_ERROR = 2   /* usage, IO, or internal error */
} conley_status;

typedef struct conley_system conley_system;

/* Parse a System JSON document (sampled or digraph form). */
conley_status conley_system_from_json(const char* json_text, conley_system** out);
conley_status conley_system_from_file(const char* path, conley_system** out);
void conley_system_free(conley_system* sys);

/* Override the box-enumeration and interval-enumeration guardrails for this
 * handle.  Values <= 0 keep the current setting. */
conley_status conley_set_budgets(conley_system* sys, long long box_budget,
                                 long long interval_budget);

/* Full pipeline report.  depth < 0 and padding < 0 fall back to the values
 * stored in the system document.  mode is "chain" or "poset". */
conley_status conley_analyze(conley_system* sys, int depth, double padding,
                             const char* mode, char** report_json);

/* Morse graph DOT plus the analysis report. */
conley_status conley_morse(conley_system* sys, int depth, double padding,
                           const char* mode, char** report_json, char** dot);

/* Filtration pair and quotient digraph of the pipeline. */
conley_status conley_pair(conley_system* sys, int depth, double padding,
                          char** pair_json);

/* Maximal invariant set of the whole region as a JSON id array. */
conley_status conley_invariant(conley_system* sys, int depth, double padding,
                               char** inv_json);

/* Continuation: re-run against the system translated by `perturbation`
 * (length `len`, per axis) and compare indices over the same pair. */
conley_status conley_continue(conley_system* sys, const double* perturbation,
                              int len, int depth, double padding,
                              char** report_json);

/* Shift-equivalence verdict for two square integer matrices given as Matrix
 * JSON ({"rows":..,"cols":..,"entries":[[..]]}). */
conley_status conley_shifteq(const char* a_json, const char* b_json,
                             char** verdict_json);

void conley_string_free(char* s);

const char* conley_last_error(void);
const char* conley_last_error_name(void);

#ifdef __cplusplus
}
#endif

#endif
