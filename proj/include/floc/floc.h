/*
 * Copyright 2026 The flocsteady Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the steady-state flocculation solver.
 *
 * Every function returning floc_status leaves a message for
 * floc_last_error() (thread-local) on failure. Strings returned through
 * char** are heap allocated and must be released with floc_string_free.
 */

#ifndef FLOC_FLOC_H_
#define FLOC_FLOC_H_

#include <stddef.h>

#if defined(_WIN32)
#define FLOC_API __declspec(dllexport)
#elif defined(__GNUC__)
#define FLOC_API __attribute__((visibility("default")))
#else
#define FLOC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum floc_status {
  FLOC_OK = 0,
  FLOC_ERR_INVALID_ARGUMENT = 1,
  FLOC_ERR_DOMAIN = 2,
  FLOC_ERR_SINGULAR = 3,
  FLOC_ERR_NON_FINITE = 4,
  FLOC_ERR_NOT_CONVERGED = 5,
  FLOC_ERR_IO = 6,
  FLOC_ERR_INTERNAL = 7
} floc_status;

typedef struct floc_params floc_params;
typedef struct floc_state floc_state;

FLOC_API const char* floc_version(void);
FLOC_API const char* floc_last_error(void);
FLOC_API void floc_string_free(char* s);

/* Parameters. Keys for floc_params_set: gamma_dot, nu, a, b, c_g, xbar,
 * c_mu (explicit removal coefficient). */
FLOC_API floc_status floc_params_create(floc_params** out);
FLOC_API floc_status floc_params_from_json(const char* text, floc_params** out);
FLOC_API floc_status floc_params_load(const char* path, floc_params** out);
FLOC_API void floc_params_destroy(floc_params* params);
FLOC_API floc_status floc_params_set(floc_params* params, const char* key,
                                     double value);
FLOC_API floc_status floc_params_get(const floc_params* params,
                                     const char* key, double* value);
/* "exp_decay" or "reciprocal"; clears an explicit c_mu. */
FLOC_API floc_status floc_params_set_convention(floc_params* params,
                                                const char* name);
FLOC_API floc_status floc_params_to_json(const floc_params* params, char** out);

typedef enum floc_method { FLOC_NEWTON = 0, FLOC_PICARD = 1 } floc_method;
typedef enum floc_boundary { FLOC_IVP = 0, FLOC_BVP = 1 } floc_boundary;

typedef struct floc_solve_options {
  floc_method method;
  floc_boundary boundary;
  double c_q;         /* bvp only */
  double tol;
  int max_iter;       /* 0 selects the method default */
  int fd_jacobian;    /* nonzero: finite-difference Jacobian */
} floc_solve_options;

FLOC_API void floc_solve_options_init(floc_solve_options* options);

/* Produces a state even when the iteration fails; check
 * floc_state_converged. options may be NULL. */
FLOC_API floc_status floc_solve(const floc_params* params, int n,
                                const floc_solve_options* options,
                                floc_state** out);
FLOC_API void floc_state_destroy(floc_state* state);
FLOC_API size_t floc_state_size(const floc_state* state);
/* Copy len = floc_state_size() values into out. */
FLOC_API floc_status floc_state_nodes(const floc_state* state, double* out,
                                      size_t len);
FLOC_API floc_status floc_state_values(const floc_state* state, double* out,
                                       size_t len);
FLOC_API int floc_state_converged(const floc_state* state);
FLOC_API int floc_state_iterations(const floc_state* state);
FLOC_API double floc_state_residual_norm(const floc_state* state);
FLOC_API double floc_state_c_q(const floc_state* state);
FLOC_API const char* floc_state_status(const floc_state* state);
/* Number-weighted (mass_weighted = 0) or mass-weighted mean size. */
FLOC_API floc_status floc_state_average_size(const floc_state* state,
                                             int mass_weighted, double* out);
FLOC_API floc_status floc_state_to_json(const floc_state* state, char** out);

/* Reports. applies/passed may be NULL. */
FLOC_API floc_status floc_check_theorem(const floc_params* params,
                                        int n_samples, char** json,
                                        int* applies);
FLOC_API floc_status floc_validate_rates(const floc_params* params,
                                         char** text, int* passed);

/* mode: "linear" or "nonlinear". reference_n <= 0 selects 200. */
FLOC_API floc_status floc_convergence_csv(const floc_params* params,
                                          const char* mode, const int* n_values,
                                          size_t count, int reference_n,
                                          char** csv, int* all_converged);

/* Rows ordered outer c_g, inner gamma_dot. trends_ok (may be NULL) receives
 * the monotonicity post-check over converged rows. */
FLOC_API floc_status floc_sweep_csv(const floc_params* base,
                                    const double* gamma_dot_values,
                                    size_t gamma_count,
                                    const double* c_g_values, size_t c_g_count,
                                    int n, const floc_solve_options* options,
                                    int parallel, char** csv,
                                    int* all_converged, int* trends_ok);

#ifdef __cplusplus
}
#endif

#endif /* FLOC_FLOC_H_ */
