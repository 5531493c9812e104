/* C interface to the reserve security assessment toolkit.
 *
 * All functions return a resa_status; RESA_OK means success. On failure
 * resa_last_error() returns a thread-local description. Structured inputs and
 * outputs travel as JSON text; strings returned through char** out-parameters
 * are heap-allocated and must be released with resa_string_free().
 */
#ifndef RESA_RESA_H
#define RESA_RESA_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum resa_status {
    RESA_OK = 0,
    RESA_E_INVALID_ARG = 1,
    RESA_E_DATA = 2,       /* missing/invalid input data or configuration */
    RESA_E_SOLVER = 3,     /* optimization backend failure */
    RESA_E_INTERNAL = 4,   /* broken internal assumption */
    RESA_E_IO = 5          /* file system failure */
} resa_status;

typedef struct resa_system resa_system; /* opaque power-system handle */

const char* resa_version(void);
const char* resa_status_name(resa_status status);

/* Thread-local message describing the most recent failure in this thread. */
const char* resa_last_error(void);

void resa_string_free(char* text);

/* Loads a compact JSON fixture (file) or an RTS-GMLC-style CSV directory.
 * options_json may be NULL or a JSON object with any of:
 *   line_rating_factor, wind_availability_factor (numbers),
 *   default_sync_rates, default_adverse (booleans),
 *   wind_turbine_for (number).
 */
resa_status resa_system_load(const char* path, const char* options_json,
                             resa_system** out_system);
void resa_system_free(resa_system* system);

/* Element counts and ids as JSON. */
resa_status resa_system_info(const resa_system* system, char** out_json);

/* Single base SCUC solve; returns the schedule as JSON. config_json uses the
 * case-config schema (see the README); NULL applies defaults. */
resa_status resa_scuc_solve(const resa_system* system, const char* config_json,
                            char** out_schedule_json);

/* Corrective contingency analysis of a given schedule over the credible N-1
 * set. Returns {"outcomes": {id: outcome}} as JSON; csv_path, when non-NULL,
 * additionally receives one row per (scenario, period). */
resa_status resa_contingency_run(const resa_system* system, const char* config_json,
                                 const char* schedule_json, const char* csv_path,
                                 char** out_outcomes_json);

/* Contingency probabilities and EENS for previously computed outcomes. */
resa_status resa_risk_assess(const resa_system* system, const char* config_json,
                             const char* schedule_json, const char* outcomes_json,
                             char** out_risk_json);

/* The full iterative loop. Checkpoints and reports are written under out_dir;
 * returns the run summary as JSON (terminated_by, iterations, final EENS...).
 * resume != 0 continues from checkpoints already present in out_dir. */
resa_status resa_run_loop(const resa_system* system, const char* config_json,
                          const char* out_dir, int resume, char** out_summary_json);

/* Re-emits the report files from a checkpoint directory. */
resa_status resa_report_emit(const char* checkpoint_dir, const char* out_dir);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* RESA_RESA_H */
