/* pradar - polarization-reconfigurable MIMO radar BCRB optimization.
 *
 * C interface to the shared library. All state lives behind an opaque
 * context handle created from a JSON experiment configuration; every call
 * returns a status code and leaves a human-readable message retrievable
 * through pradar_last_error() on failure. Handles are not thread-safe;
 * distinct handles may be used from distinct threads.
 */
#ifndef PRADAR_H
#define PRADAR_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct pradar_ctx pradar_ctx;

typedef enum {
  PRADAR_OK = 0,
  PRADAR_E_BAD_INPUT = 1,    /* malformed config or invalid argument */
  PRADAR_E_CHECK_FAILED = 2, /* a verification check exceeded its tolerance */
  PRADAR_E_IO = 3,           /* file could not be read or written */
  PRADAR_E_INTERNAL = 4      /* unexpected failure; see pradar_last_error() */
} pradar_status;

const char* pradar_version(void);

/* Message describing the most recent failure on the calling thread. */
const char* pradar_last_error(void);

/* Context creation. On success *out owns the context; destroy it with
 * pradar_ctx_destroy. On failure *out is set to NULL. */
pradar_status pradar_ctx_create_from_file(const char* config_path,
                                          pradar_ctx** out);
pradar_status pradar_ctx_create_from_json(const char* json_text,
                                          pradar_ctx** out);
void pradar_ctx_destroy(pradar_ctx* ctx);

/* Overrides applied on top of the loaded config. */
pradar_status pradar_ctx_set_seed(pradar_ctx* ctx, unsigned long long seed);
pradar_status pradar_ctx_set_restarts(pradar_ctx* ctx, int n_restarts);
pradar_status pradar_ctx_set_output_dir(pradar_ctx* ctx, const char* dir);

/* Experiment runners. Each writes its CSV artifacts into the configured
 * output directory:
 *   optimize    -> trace.csv, design.csv
 *   beampattern -> beampattern.csv
 *   sweep_snr   -> bcrb_vs_snr.csv
 *   compare     -> scheme_comparison.csv
 *   verify      -> verify_report.csv (PRADAR_E_CHECK_FAILED when any check
 *                  fails; *n_failed_checks receives the count when non-NULL)
 */
pradar_status pradar_run_optimize(pradar_ctx* ctx);
pradar_status pradar_run_beampattern(pradar_ctx* ctx);
pradar_status pradar_run_sweep_snr(pradar_ctx* ctx);
pradar_status pradar_run_compare(pradar_ctx* ctx);
pradar_status pradar_run_verify(pradar_ctx* ctx, int* n_failed_checks);

/* Scalar results, computed on demand. */
pradar_status pradar_prior_fisher_info(pradar_ctx* ctx, double* out);
pradar_status pradar_optimized_objective(pradar_ctx* ctx,
                                         double* out_objective,
                                         double* out_bcrb);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PRADAR_H */
