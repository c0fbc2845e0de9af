#ifndef GSQG_GSQG_H
#define GSQG_GSQG_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define GSQG_API __attribute__((visibility("default")))
#else
#define GSQG_API
#endif

/* Status codes. Nonzero values match gsqg::ErrorCode. */
typedef enum gsqg_status {
  GSQG_OK = 0,
  GSQG_ERR_DOMAIN = 1,
  GSQG_ERR_RANGE = 2,
  GSQG_ERR_QUADRATURE = 3,
  GSQG_ERR_CONSISTENCY = 4,
  GSQG_ERR_CONFIG = 5,
  GSQG_ERR_BLOWUP = 6,
  GSQG_ERR_REGIME_EXIT = 7,
  GSQG_ERR_LOCALIZATION = 8,
  GSQG_ERR_RESOLUTION = 9,
  GSQG_ERR_IO = 10,
  GSQG_ERR_VERIFICATION = 11,
  GSQG_ERR_INVALID_ARGUMENT = 12,
  GSQG_ERR_INTERNAL = 13
} gsqg_status;

GSQG_API const char* gsqg_version(void);
GSQG_API const char* gsqg_status_name(gsqg_status status);

/* Message of the last failed call on this thread; "" after a success. */
GSQG_API const char* gsqg_last_error(void);

/* ---- derived constants ---- */

typedef struct gsqg_params gsqg_params;

typedef struct gsqg_constants {
  double alpha;
  double gamma;
  double beta;
  double p0;
  int n0;
  int n1;
  int n2;
  double d1;
  double k_alpha;
} gsqg_constants;

GSQG_API gsqg_status gsqg_params_create(double alpha, gsqg_params** out);
GSQG_API void gsqg_params_destroy(gsqg_params* params);
GSQG_API gsqg_status gsqg_params_constants(const gsqg_params* params, gsqg_constants* out);
/* Resonant coefficient c_tilde(xi), closed form; xi != 0. */
GSQG_API gsqg_status gsqg_c_tilde(const gsqg_params* params, double xi, double* out);

/* ---- run configuration ---- */

typedef struct gsqg_config gsqg_config;

/* Strict JSON; unknown keys are GSQG_ERR_CONFIG. */
GSQG_API gsqg_status gsqg_config_load(const char* path, gsqg_config** out);
GSQG_API gsqg_status gsqg_config_parse(const char* json_text, gsqg_config** out);
GSQG_API void gsqg_config_destroy(gsqg_config* config);
GSQG_API gsqg_status gsqg_config_set_output_dir(gsqg_config* config, const char* dir);
/* Canonical JSON into buf (NUL-terminated). *needed receives the size
   including the terminator; buf may be NULL to query it. */
GSQG_API gsqg_status gsqg_config_to_json(const gsqg_config* config, char* buf, size_t size,
                                         size_t* needed);

/* ---- commands ---- */

typedef struct gsqg_simulate_summary {
  double final_t;
  int64_t steps;
  int64_t records;
  int energetic_band;
} gsqg_simulate_summary;

/* resume may be NULL or "". summary may be NULL. */
GSQG_API gsqg_status gsqg_simulate(const gsqg_config* config, const char* resume,
                                   gsqg_simulate_summary* summary);

typedef struct gsqg_symbols_options {
  double alpha;
  int triples;
  uint64_t seed;
  int xi_points;
  double xi_min;
  double xi_max;
  const char* output_dir;
} gsqg_symbols_options;

GSQG_API void gsqg_symbols_defaults(gsqg_symbols_options* opt);
GSQG_API gsqg_status gsqg_symbols(const gsqg_symbols_options* opt, double* max_rel_diff);

typedef struct gsqg_dispersive_options {
  double alpha;
  int band;
  double t_min;
  double t_max;
  int samples;
  const char* output_dir;
} gsqg_dispersive_options;

GSQG_API void gsqg_dispersive_defaults(gsqg_dispersive_options* opt);
GSQG_API gsqg_status gsqg_dispersive(const gsqg_dispersive_options* opt, double* slope,
                                     double* prefactor);

GSQG_API gsqg_status gsqg_resonances(double alpha, const double* xi, size_t n_xi,
                                     const char* output_dir, int* unexpected);

#ifdef __cplusplus
}
#endif

#endif
