/* C interface of the RIS impedance-model optimization library.
 *
 * All functions return ris_status; RIS_OK means success. On failure a
 * human-readable message is available from ris_last_error() (thread-local).
 * Objects returned through out-parameters are owned by the caller and must
 * be released with the matching _free function.
 */
#ifndef RIS_RIS_H
#define RIS_RIS_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ris_status {
    RIS_OK = 0,
    RIS_ERR_INVALID_ARGUMENT = 1,
    RIS_ERR_SINGULAR_MATRIX = 2,
    RIS_ERR_DEGENERATE_GEOMETRY = 3,
    RIS_ERR_INVALID_RESISTANCE = 4,
    RIS_ERR_RESONANT_PHASE = 5,
    RIS_ERR_PROBLEM_TOO_LARGE = 6,
    RIS_ERR_DIVISION_BY_ZERO = 7,
    RIS_ERR_NON_CONVERGENCE = 8,
    RIS_ERR_IO = 9,
    RIS_ERR_INTERNAL = 10
} ris_status;

const char* ris_status_name(ris_status status);

/* Message describing the most recent failure on this thread. */
const char* ris_last_error(void);

typedef struct ris_scenario ris_scenario;
typedef struct ris_network ris_network;

/* --- scenario ---------------------------------------------------------- */

/* Known presets: "paper-28ghz". */
ris_status ris_scenario_create_preset(const char* name, ris_scenario** out);

/* Plain-text key = value scenario file. */
ris_status ris_scenario_load_file(const char* path, ris_scenario** out);

/* Overrides the RIS grid: side m (N_RIS = m*m), spacing in wavelengths. */
ris_status ris_scenario_set_grid(ris_scenario* s, int m, double d_over_lambda);

ris_status ris_scenario_get_wavelength(const ris_scenario* s, double* out_m);
ris_status ris_scenario_get_n_ris(const ris_scenario* s, int* out_n);

void ris_scenario_free(ris_scenario* s);

/* --- impedance network ------------------------------------------------- */

ris_status ris_network_assemble(const ris_scenario* s, ris_network** out);
ris_status ris_network_size(const ris_network* net, int* out_n);
void ris_network_free(ris_network* net);

/* --- optimization and evaluation --------------------------------------- */

/* Closed-form no-coupling design applied to the diagonal of Z_SS.
 * reactances_out must hold N entries; either out pointer may be NULL. */
ris_status ris_optimize_no_coupling(const ris_network* net, double r0_ohm,
                                    double* reactances_out, double* predicted_gain_db_out);

/* Iterative coupling-aware design. eps_delta scales the per-iteration
 * perturbation magnitude relative to 1/||G^{-1}||. When trace_csv_path is
 * non-NULL the per-iteration trace is written there. */
ris_status ris_optimize_coupling_aware(const ris_network* net, double r0_ohm, int max_iters,
                                       double eps_delta, const char* trace_csv_path,
                                       double* reactances_out, double* gain_db_out,
                                       int* monotonicity_violations_out);

/* End-to-end channel gain in dB for the given reactances (length n). */
ris_status ris_channel_gain_db(const ris_network* net, const double* reactances, int n,
                               double r0_ohm, double* gain_db_out);

/* --- experiment drivers ------------------------------------------------ */

/* strategies: comma-separated subset of
 * "no_coupling_ideal,coupling_unaware,coupling_aware". */

ris_status ris_run_convergence(const ris_scenario* s, const int* n_ris, int n_count,
                               const double* d_over_lambda, int d_count, int max_iters,
                               const char* out_csv_path);

ris_status ris_run_distance_sweep(const ris_scenario* s, const double* d_over_lambda,
                                  int d_count, const char* strategies, int max_iters,
                                  const char* out_csv_path);

ris_status ris_run_area_sweep(const ris_scenario* s, const int* n_ris, int n_count,
                              double area_over_lambda2, const char* strategies, int max_iters,
                              const char* out_csv_path);

/* Runs the built-in validation suite; writes one line per check to
 * report_path (or stdout when NULL) and stores the number of failed checks.
 */
ris_status ris_run_validate(const char* report_path, int* failed_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* RIS_RIS_H */
