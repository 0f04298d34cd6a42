// Copyright 2026 The schmidtnum Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/*
 * C interface to the Schmidt-number library. Objects are opaque handles owned
 * by the caller and released with the matching *_free function. Every
 * fallible call returns an sn_status; on failure sn_last_error() holds a
 * message for the calling thread. Strings returned through char** outputs
 * are heap-allocated and released with sn_string_free. Angles are degrees.
 */
#ifndef SCHMIDTNUM_SCHMIDTNUM_H
#define SCHMIDTNUM_SCHMIDTNUM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SCHMIDTNUM_BUILDING)
#    define SN_API __declspec(dllexport)
#  else
#    define SN_API __declspec(dllimport)
#  endif
#else
#  define SN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sn_status {
    SN_OK = 0,
    SN_ERR_NOT_HERMITIAN = 1,
    SN_ERR_NON_FINITE = 2,
    SN_ERR_METRIC_NOT_PSD = 3,
    SN_ERR_DEGENERATE_METRIC = 4,
    SN_ERR_ZERO_STATE = 5,
    SN_ERR_BAD_PARAMETER = 6,
    SN_ERR_DIMENSION_MISMATCH = 7,
    SN_ERR_NOT_REAL = 8,
    SN_ERR_TOO_SMALL = 9,
    SN_ERR_RANK_TOO_HIGH = 10,
    SN_ERR_NO_CONVERGENCE = 11,
    SN_ERR_CONFIG_INVALID = 12,
    SN_ERR_PARSE = 13,
    SN_ERR_NULL_ARGUMENT = 14,
    SN_ERR_INTERNAL = 15
} sn_status;

typedef enum sn_fr_source {
    SN_FR_CLOSED_FORM = 0,
    SN_FR_ENUMERATION = 1,
    SN_FR_GREEDY = 2,
    SN_FR_ORACLE = 3
} sn_fr_source;

typedef enum sn_operator_kind {
    SN_OPERATOR_MATCHED = 0,
    SN_OPERATOR_FLAT_SINC = 1
} sn_operator_kind;

typedef struct sn_state sn_state;
typedef struct sn_operator sn_operator;

typedef struct sn_fr_options {
    uint64_t enumeration_cap; /* principal-subset budget for gamma operators */
    int restarts;             /* oracle, dense operators only */
    int max_iters;
    uint64_t seed;
    int threads;              /* 0 = hardware concurrency */
} sn_fr_options;

typedef struct sn_fr_result {
    double value;
    sn_fr_source source;
    int approximate;
} sn_fr_result;

typedef struct sn_scenario {
    double epsilon;
    int cutoff;
    sn_operator_kind kind;
    int r;
    int threads;
} sn_scenario;

SN_API const char *sn_last_error(void);
SN_API const char *sn_status_name(sn_status status);
SN_API void sn_string_free(char *s);
SN_API void sn_fr_options_default(sn_fr_options *options);
SN_API void sn_scenario_default(sn_scenario *scenario);

/* States */
SN_API sn_status sn_state_from_json(const char *json, sn_state **out);
SN_API sn_status sn_state_tmsv(double epsilon, double phase, int cutoff, sn_state **out);
SN_API sn_status sn_state_to_json(const sn_state *state, char **out);
SN_API sn_status sn_state_schmidt_json(const sn_state *state, double rank_tol, char **out);
SN_API sn_status sn_state_schmidt_rank(const sn_state *state, double rank_tol, int *out);
SN_API void sn_state_free(sn_state *state);

/* Operators: gamma (Schmidt-diagonal), dense, or rank-one projector. */
SN_API sn_status sn_operator_from_json(const char *json, sn_operator **out);
SN_API sn_status sn_operator_matched(double epsilon, double delta_phi_deg, int cutoff,
                                     sn_operator **out);
SN_API sn_status sn_operator_flat_sinc(double delta_phi_deg, int cutoff, sn_operator **out);
SN_API sn_status sn_operator_projector(const sn_state *target, sn_operator **out);
SN_API sn_status sn_operator_identity(int d_a, int d_b, sn_operator **out);
SN_API sn_status sn_operator_to_json(const sn_operator *op, char **out);
SN_API void sn_operator_free(sn_operator *op);

/* Maximal SN-r expectation value. Gamma operators use closed forms or the
 * principal-submatrix search, projectors their Schmidt coefficients, dense
 * operators the randomized alternating oracle. */
SN_API sn_status sn_fr(const sn_operator *op, int r, const sn_fr_options *options,
                       sn_fr_result *out);

SN_API sn_status sn_expectation_state(const sn_operator *op, const sn_state *state,
                                      double *out);

/* Tr(rho L) for the phase-randomized squeezed vacuum; gamma operators only.
 * trace_deficit may be NULL. */
SN_API sn_status sn_expectation_tmsv_mixed(const sn_operator *op, double epsilon,
                                           double delta_phi_deg, double *value,
                                           double *trace_deficit);

/* WitnessReport JSON. detection_tol <= 0 selects the default for the f_r
 * source. */
SN_API sn_status sn_verdict_json(const sn_operator *op, double expectation, int r,
                                 double detection_tol, const sn_fr_options *options, char **out);

/* Alternating r-SE oracle on the dense form of op; RSESolution JSON. */
SN_API sn_status sn_oracle_json(const sn_operator *op, int r, const sn_fr_options *options,
                                char **out);

/* Form-2 residual of a given state; RSESolution JSON. */
SN_API sn_status sn_rse_residual_json(const sn_operator *op, const sn_state *state, int r,
                                      char **out);

SN_API sn_status sn_tmsv_scan_csv(const sn_scenario *scenario, const double *angles_deg,
                                  size_t count, char **out);
SN_API sn_status sn_tmsv_scan_json(const sn_scenario *scenario, const double *angles_deg,
                                   size_t count, char **out);
SN_API sn_status sn_tmsv_threshold_json(const sn_scenario *scenario, double coarse_step_deg,
                                        double refine_tol_deg, char **out);

SN_API sn_status sn_db_to_epsilon(double db, double *out);
SN_API sn_status sn_epsilon_to_db(double epsilon, double *out);

#ifdef __cplusplus
}
#endif

#endif /* SCHMIDTNUM_SCHMIDTNUM_H */
