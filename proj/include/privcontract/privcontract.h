/* Copyright 2026 The privcontract Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the privcontract solver library.
 *
 * Every fallible call returns a pc_status. On failure the message, and for
 * parse errors the line and field, are available from pc_last_error*() on the
 * calling thread until its next library call. Handles are opaque and must be
 * released with their matching *_free function. Strings returned through
 * char** are owned by the caller and released with pc_string_free.
 *
 * Handles are immutable after creation and may be shared across threads.
 */

#ifndef PRIVCONTRACT_PRIVCONTRACT_H_
#define PRIVCONTRACT_PRIVCONTRACT_H_

#include <stddef.h>

#if defined(PRIVCONTRACT_BUILDING_LIBRARY)
#define PC_API __attribute__((visibility("default")))
#else
#define PC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pc_status {
  PC_OK = 0,
  PC_ERR_ARGUMENT = 1,
  PC_ERR_DOMAIN = 2,
  PC_ERR_NUMERIC = 3,
  PC_ERR_VALIDATION = 4,
  PC_ERR_UNSUPPORTED = 5,
  PC_ERR_PARSE = 6,
  PC_ERR_IO = 7,
  PC_ERR_INTERNAL = 8
} pc_status;

typedef enum pc_type { PC_TYPE_LOW = 0, PC_TYPE_HIGH = 1 } pc_type;

typedef enum pc_regime {
  PC_REGIME_FIRST_BEST = 0,
  PC_REGIME_SECOND_BEST = 1
} pc_regime;

typedef enum pc_boundary {
  PC_BOUNDARY_INTERIOR = 0,
  PC_BOUNDARY_LOWER = 1,
  PC_BOUNDARY_UPPER = 2
} pc_boundary;

typedef enum pc_risk_kind {
  PC_RISK_NONE = 0,
  PC_RISK_LINEAR_BREACH = 1,
  PC_RISK_CUSTOM = 2
} pc_risk_kind;

typedef struct pc_config pc_config;
typedef struct pc_model pc_model;
typedef struct pc_sweep pc_sweep;
typedef struct pc_comparison pc_comparison;

typedef struct pc_menu {
  double x_low;
  double t_low;
  double x_high;
  double t_high;
  int regime;      /* pc_regime */
  int risk_active; /* 0 or 1 */
} pc_menu;

/* LHS - RHS of each constraint; nonnegative iff satisfied. */
typedef struct pc_residuals {
  double ic_high;
  double ic_low;
  double ir_low;
  double ir_high;
} pc_residuals;

typedef struct pc_report {
  pc_menu menu;
  pc_residuals residuals;
  double information_rent;
  double profit;
  double welfare;
  double prior;
  int boundary_low;  /* pc_boundary */
  int boundary_high; /* pc_boundary */
  int feasible;
  int reduction_valid;
  int pooled;
} pc_report;

typedef struct pc_solver_options {
  double tol;          /* optimizer tolerance in x, default 1e-10 */
  double feas_tol;     /* constraint tolerance, default 1e-8 */
  int validation_grid; /* points for assumption checks, default 257 */
} pc_solver_options;

typedef struct pc_run_options {
  pc_solver_options solver;
  int has_grid;
  double grid_min;
  double grid_max;
  int grid_n;
  int oracle_steps;
  int jobs;
} pc_run_options;

typedef struct pc_dlc_params {
  double theta_low;
  double theta_high;
  double zeta;
  double m;
  double loss_low;
  double loss_high;
  double prior_high;
} pc_dlc_params;

typedef struct pc_thresholds {
  int has_p_bar;
  double p_bar;
  double p_star_norisk;
  double p_star_risk;
} pc_thresholds;

typedef struct pc_oracle_result {
  pc_menu menu;
  double profit;
  double x_grid_step;
  double certified_gap_bound;
  int certified;
  pc_residuals residuals;
  int active_ic_high;
  int active_ic_low;
  int active_ir_low;
  int active_ir_high;
} pc_oracle_result;

typedef double (*pc_fn_x_theta)(void* ctx, double x, double theta);
typedef double (*pc_fn_x)(void* ctx, double x);

/* Model description for pc_model_create. A NULL `utility` selects the
 * linear-in-type utility; a NULL `cost` selects the quadratic cost with
 * `zeta`. Slope callbacks may be NULL, in which case derivative-free
 * optimization is used. Callbacks must be pure and thread-safe, and `ctx`
 * pointers must outlive the model. */
typedef struct pc_model_desc {
  double theta_low;
  double theta_high;
  double prior_high;
  double x_min;
  double x_max;

  pc_fn_x_theta utility;
  pc_fn_x_theta utility_slope;
  void* utility_ctx;

  double zeta;
  pc_fn_x cost;
  pc_fn_x cost_slope;
  void* cost_ctx;

  int risk_kind; /* pc_risk_kind */
  double m;      /* PC_RISK_LINEAR_BREACH */
  double loss_low;
  double loss_high;
  pc_fn_x eta; /* PC_RISK_CUSTOM: no-breach probability */
  pc_fn_x eta_slope;
  void* risk_ctx;
} pc_model_desc;

/* Diagnostics. */
PC_API const char* pc_version(void);
PC_API const char* pc_status_name(pc_status status);
PC_API const char* pc_last_error(void);
PC_API int pc_last_error_line(void);
PC_API const char* pc_last_error_field(void);
PC_API void pc_string_free(char* s);

PC_API void pc_solver_options_default(pc_solver_options* out);

/* Configuration files. */
PC_API pc_status pc_config_parse_file(const char* path, pc_config** out);
PC_API pc_status pc_config_parse_string(const char* text, pc_config** out);
PC_API void pc_config_free(pc_config* config);
PC_API pc_status pc_config_model(const pc_config* config, pc_model** out);
PC_API pc_status pc_config_run_options(const pc_config* config,
                                       pc_run_options* out);
PC_API pc_status pc_parse_grid_spec(const char* text, double* p_min,
                                    double* p_max, int* n);

/* Models. */
PC_API pc_status pc_model_create(const pc_model_desc* desc, pc_model** out);
PC_API pc_status pc_model_create_dlc(const pc_dlc_params* params,
                                     int with_risk, pc_model** out);
PC_API void pc_model_free(pc_model* model);
PC_API pc_status pc_model_with_prior(const pc_model* model, double p,
                                     pc_model** out);
PC_API pc_status pc_model_without_risk(const pc_model* model, pc_model** out);
PC_API int pc_model_risk_kind(const pc_model* model);
PC_API double pc_model_prior(const pc_model* model);
/* `*valid` is 1 or 0; `summary` (optional) receives the report text. */
PC_API pc_status pc_model_validate(const pc_model* model, int grid_points,
                                   int* valid, char** summary);
PC_API pc_status pc_effective_utility(const pc_model* model, double x,
                                      pc_type type, double* out);
PC_API pc_status pc_effective_utility_slope(const pc_model* model, double x,
                                            pc_type type, double* out);

/* Solvers. `options` may be NULL for defaults. */
PC_API pc_status pc_solve_first_best(const pc_model* model,
                                     const pc_solver_options* options,
                                     pc_report* out);
PC_API pc_status pc_solve_second_best(const pc_model* model,
                                      const pc_solver_options* options,
                                      pc_report* out);
PC_API pc_status pc_report_format(const pc_report* report, const char* title,
                                  char** out);

PC_API pc_status pc_verify_menu(const pc_model* model, const pc_menu* menu,
                                pc_residuals* out);
PC_API int pc_residuals_feasible(const pc_residuals* residuals,
                                 double feas_tol);
PC_API pc_status pc_residuals_format(const pc_residuals* residuals,
                                     double feas_tol, char** out);
PC_API pc_status pc_menu_parse_file(const char* path, pc_menu* out);

/* Prior sweeps. Rows are ordered by (p, regime, risk). */
PC_API pc_status pc_linear_grid(double a, double b, int n, double* out);
PC_API pc_status pc_sweep_run(const pc_model* model, const double* grid,
                              size_t n, const pc_solver_options* options,
                              int jobs, pc_sweep** out);
PC_API void pc_sweep_free(pc_sweep* sweep);
PC_API size_t pc_sweep_row_count(const pc_sweep* sweep);
PC_API pc_status pc_sweep_row(const pc_sweep* sweep, size_t index, double* p,
                              int* regime, int* risk, pc_report* report);
PC_API pc_status pc_sweep_csv(const pc_sweep* sweep, char** out);
PC_API pc_status pc_sweep_write_csv(const pc_sweep* sweep, const char* path);

/* With/without-risk comparison. */
PC_API pc_status pc_compare(const pc_model* model,
                            const pc_solver_options* options,
                            pc_comparison** out);
PC_API void pc_comparison_free(pc_comparison* comparison);
PC_API pc_status pc_comparison_format(const pc_comparison* comparison,
                                      char** out);
PC_API pc_status pc_comparison_csv(const pc_comparison* comparison,
                                   char** out);
PC_API pc_status pc_comparison_thresholds(const pc_comparison* comparison,
                                          pc_thresholds* out);
PC_API pc_status pc_comparison_reports(const pc_comparison* comparison,
                                       pc_report* no_risk,
                                       pc_report* with_risk);
/* Number of ordering checks with a FAIL verdict. */
PC_API size_t pc_comparison_failures(const pc_comparison* comparison);

PC_API pc_status pc_thresholds_compute(const pc_model* model,
                                       const pc_solver_options* options,
                                       pc_thresholds* out);

/* Direct-load-control closed forms. Out-of-interval flags may be NULL. */
PC_API pc_status pc_dlc_second_best(const pc_dlc_params* params,
                                    int with_risk, pc_menu* out,
                                    int* low_out_of_interval,
                                    int* high_out_of_interval);
PC_API pc_status pc_dlc_first_best(const pc_dlc_params* params, int with_risk,
                                   pc_menu* out, int* low_out_of_interval,
                                   int* high_out_of_interval);
PC_API pc_status pc_dlc_critical_probabilities(const pc_dlc_params* params,
                                               pc_thresholds* out);

/* Brute-force solver over all four constraints. */
PC_API pc_status pc_oracle_solve(const pc_model* model, int x_steps, int jobs,
                                 pc_oracle_result* out);
PC_API pc_status pc_inner_price_optimum(const pc_model* model, double x_low,
                                        double x_high, double* t_low,
                                        double* t_high, double* profit);

#ifdef __cplusplus
}
#endif

#endif /* PRIVCONTRACT_PRIVCONTRACT_H_ */
