/* C interface to the acstab library. All functions are thread-safe; the
 * last-error message is kept per thread. */
#ifndef ACSTAB_H
#define ACSTAB_H

#include <stddef.h>

#if defined(ACSTAB_BUILDING_LIBRARY)
#define ACSTAB_API __attribute__((visibility("default")))
#else
#define ACSTAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum acstab_status {
  ACSTAB_OK = 0,
  ACSTAB_INVALID_ARGUMENT = 1,
  ACSTAB_DIMENSION_MISMATCH = 2,
  ACSTAB_MODE_MISMATCH = 3,
  ACSTAB_PARSE_ERROR = 4,
  ACSTAB_DIVERGENT_SERIES = 5,
  ACSTAB_OVERFLOW_GUARD = 6,
  ACSTAB_EXCLUDED_EXPONENT = 7,
  ACSTAB_NO_CERTIFIED_ENVELOPE = 8,
  ACSTAB_IO_ERROR = 9,
  ACSTAB_INTERNAL_ERROR = 10
} acstab_status;

typedef enum acstab_subcommand {
  ACSTAB_CHECK_LEMMAS = 0,
  ACSTAB_REPLAY_CHAIN = 1,
  ACSTAB_RECOVER = 2,
  ACSTAB_BOUNDS = 3,
  ACSTAB_SWEEP = 4
} acstab_subcommand;

typedef enum acstab_mode { ACSTAB_EXACT = 0, ACSTAB_FLOAT = 1 } acstab_mode;

typedef struct acstab_model acstab_model;
typedef struct acstab_report acstab_report;

ACSTAB_API const char* acstab_version(void);
ACSTAB_API const char* acstab_status_string(acstab_status status);
/* Message of the last failed call on this thread; "" if none. */
ACSTAB_API const char* acstab_last_error(void);

/* Builds a model from a config document; only "dimensions", "norm" and
 * "model" are read. */
ACSTAB_API acstab_status acstab_model_from_json(const char* config_json, acstab_model** out);
ACSTAB_API void acstab_model_free(acstab_model* model);
ACSTAB_API acstab_status acstab_model_dims(const acstab_model* model, size_t* d, size_t* m);

/* f(x) with x of length d into out of length m. In exact mode the doubles
 * are converted exactly and the result is truncated toward zero. */
ACSTAB_API acstab_status acstab_model_eval(const acstab_model* model, acstab_mode mode, const double* x,
                                           size_t d, double* out, size_t m);
/* D_f(x, y) into out (length m) and its norm into magnitude (may be NULL). */
ACSTAB_API acstab_status acstab_d_residual(const acstab_model* model, acstab_mode mode, const double* x,
                                           const double* y, size_t d, double* out, size_t m,
                                           double* magnitude);

ACSTAB_API acstab_status acstab_corollary_sum_bound(double theta, double p, double norm_x, double* out);
ACSTAB_API acstab_status acstab_corollary_product_bound(double theta, double r, double s, double norm_x,
                                                        double* out);

ACSTAB_API acstab_status acstab_subcommand_parse(const char* name, acstab_subcommand* out);

/* Runs a subcommand on a config document, writing reports under out_dir
 * (NULL or "": the config's output.dir, else the working directory).
 * Returns ACSTAB_OK whenever a report handle was produced; the outcome of
 * the run itself is acstab_report_exit_code. */
ACSTAB_API acstab_status acstab_run(acstab_subcommand sub, const char* config_json, const char* out_dir,
                                    acstab_report** out);
ACSTAB_API int acstab_report_exit_code(const acstab_report* report);
ACSTAB_API const char* acstab_report_summary(const acstab_report* report);
ACSTAB_API size_t acstab_report_file_count(const acstab_report* report);
ACSTAB_API const char* acstab_report_file(const acstab_report* report, size_t index);
ACSTAB_API void acstab_report_free(acstab_report* report);

#ifdef __cplusplus
}
#endif

#endif /* ACSTAB_H */
