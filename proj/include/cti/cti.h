/*
 * cti — Ising model on Cayley trees: compatible boundary fields, free
 * energies, entropies, and edge-coloring censuses.
 *
 * C interface of the shared library. All functions return a cti_status;
 * results are written through out parameters. Objects handed out as opaque
 * pointers (fields, solve reports) are owned by the caller and released
 * with the matching _destroy call. Every function is thread safe: the
 * library keeps no global state.
 */

#ifndef CTI_H
#define CTI_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cti_status {
  CTI_OK = 0,
  CTI_E_CONVERGENCE = 1, /* a solver failed to converge */
  CTI_E_USAGE = 2,       /* invalid arguments */
  CTI_E_CAPACITY = 3,    /* request exceeds exact-arithmetic or enumeration limits */
  CTI_E_DOMAIN = 4,      /* input outside the mathematical domain of a formula */
} cti_status;

/* Optional diagnostic sink; pass NULL if the message is not needed. */
typedef struct cti_error {
  int code;
  char message[240];
} cti_error;

typedef struct cti_solver_config {
  double tolerance;   /* default 1e-12 */
  int max_iterations; /* default 10000 */
  int grid_cells;     /* default 2048 */
} cti_solver_config;

void cti_solver_config_default(cti_solver_config* cfg);

const char* cti_version(void);

/* ------------------------------------------------------------------ */
/* Tree geometry and edge census                                      */
/* ------------------------------------------------------------------ */

/* |W_n| and |V_n| for the order-k tree; full_root != 0 gives the root
 * k+1 neighbors, otherwise k (half tree). */
cti_status cti_sphere_size(int k, int full_root, int n, int64_t* out, cti_error* err);
cti_status cti_ball_size(int k, int full_root, int n, int64_t* out, cti_error* err);

/* Per-level edge-color counts for H_A with A = {1..j}; rows_out holds
 * 4*n_max entries ordered AA, AB, BA, BB per level 1..n_max. */
cti_status cti_census_recurrence(int k, int j, int n_max, int64_t* rows_out, cti_error* err);
cti_status cti_census_traversal(int k, int j, int n_max, int64_t* rows_out, cti_error* err);
cti_status cti_census_closed_form(int k, int j, int n_max, double* rows_out, cti_error* err);
/* Cumulative counts over L_n, same layout. */
cti_status cti_census_cumulative(int k, int j, int n_max, int64_t* rows_out, cti_error* err);

/* Characteristic roots and coefficients of the census recurrence;
 * lambda_out and a_out hold three (re, im) pairs each. */
cti_status cti_census_coefficients(int k, int j, double lambda_out[6], double a_out[6],
                                   cti_error* err);

/* Density limits at offset q: four per-level and four cumulative values
 * for even and for odd levels (identical unless j = k+1). */
cti_status cti_density_limits(int k, int j, int q, double per_level_even[4],
                              double per_level_odd[4], double cumulative_even[4],
                              double cumulative_odd[4], cti_error* err);

/* ------------------------------------------------------------------ */
/* Field equation solvers                                             */
/* ------------------------------------------------------------------ */

typedef struct cti_report cti_report;

/* Tags attached to reported solutions. */
enum {
  CTI_SOL_ZERO = 0,
  CTI_SOL_TRANSLATION_INVARIANT = 1,
  CTI_SOL_INVARIANT_PAIR = 2,
  CTI_SOL_OTHER = 3,
};

cti_status cti_solve_ti(int k, double J, double beta, const cti_solver_config* cfg,
                        cti_report** out, cti_error* err);
cti_status cti_solve_periodic(int k, double J, double beta, const cti_solver_config* cfg,
                              cti_report** out, cti_error* err);
/* Weakly periodic system for A = {1..j}, 1 <= j <= k. */
cti_status cti_solve_weakly_periodic(int k, int j, double J, double beta,
                                     const cti_solver_config* cfg, cti_report** out,
                                     cti_error* err);

int cti_report_solution_count(const cti_report* report);
int cti_report_solution_dim(const cti_report* report);
cti_status cti_report_solution(const cti_report* report, int index, double* out, int dim,
                               cti_error* err);
cti_status cti_report_solution_tag(const cti_report* report, int index, int* tag_out,
                                   cti_error* err);
double cti_report_residual_sup(const cti_report* report);
long cti_report_iterations(const cti_report* report);
/* Invariant-set solutions (k=4, j=1): count and 4-vectors. The returned
 * classification is the 1/3/5 weakly periodic state count, or -1. */
int cti_report_invariant_count(const cti_report* report);
cti_status cti_report_invariant_solution(const cti_report* report, int index, double out[4],
                                         cti_error* err);
int cti_report_classification(const cti_report* report);
void cti_report_destroy(cti_report* report);

/* Positive root of h = k f(h); CTI_E_DOMAIN when theta <= 1/k. */
cti_status cti_ti_positive_root(int k, double J, double beta, const cti_solver_config* cfg,
                                double* out, cti_error* err);
/* Closed form of the positive root for k = 2 (exp(2 beta J) > 3). */
cti_status cti_h_star_closed_k2(double J, double beta, double* out, cti_error* err);

/* Real roots of alpha^2 xi^3 - alpha xi^2 - 2 alpha^2 xi + alpha + 1 = 0
 * and their admissibility against the weakly periodic solutions (J = 1).
 * Arrays must hold 3 entries; *count_out reports how many are valid. */
cti_status cti_cubic_rrx_roots(double alpha, const cti_solver_config* cfg, double roots_out[3],
                               int admissible_out[3], int* count_out, cti_error* err);

cti_status cti_find_alpha_cr(const cti_solver_config* cfg, double* out, cti_error* err);

/* Zachary sequence t_0..t_n (seq_out holds n+1 values). */
cti_status cti_zachary_sequence(int k, double J, double beta, double t0, int n,
                                const cti_solver_config* cfg, double* seq_out, cti_error* err);

/* ------------------------------------------------------------------ */
/* Boundary fields                                                    */
/* ------------------------------------------------------------------ */

typedef struct cti_field cti_field;

cti_status cti_field_create_constant(int k, int full_root, double J, double beta, double h,
                                     cti_field** out, cti_error* err);
/* Translation-invariant family (root carries its compatibility value). */
cti_status cti_field_create_ti(int k, int full_root, double J, double beta, double h,
                               cti_field** out, cti_error* err);
/* G^(2)-periodic family: u on even spheres, v on odd ones. */
cti_status cti_field_create_periodic(int k, int full_root, double J, double beta, double u,
                                     double v, cti_field** out, cti_error* err);
/* Weakly periodic field for A = {1..j} with the four class values. */
cti_status cti_field_create_weakly_periodic(int k, int j, double J, double beta,
                                            const double h[4], cti_field** out, cti_error* err);
/* Zachary field from its level sequence (levels[0] = t_0, n_levels values). */
cti_status cti_field_create_zachary(int k, int full_root, double J, double beta,
                                    const double* levels, int n_levels, cti_field** out,
                                    cti_error* err);
/* Raw per-level field, levels taken verbatim including the root. */
cti_status cti_field_create_levels(int k, int full_root, double J, double beta,
                                   const double* levels, int n_levels, cti_field** out,
                                   cti_error* err);
/* Bleher-Ganikhodjaev field on the half tree; the turn pattern (entries
 * 1..k) repeats cyclically along the path down to `depth`. */
cti_status cti_field_create_bg(int k, double J, double beta, const int* turn_pattern,
                               int pattern_len, int depth, const cti_solver_config* cfg,
                               cti_field** out, cti_error* err);
/* Embedding of `inner` (order k0) into the order-k tree, zero elsewhere. */
cti_status cti_field_create_art(const cti_field* inner, int k, cti_field** out, cti_error* err);

void cti_field_destroy(cti_field* field);

/* Field value at the vertex addressed by a reduced word (1-based letters). */
cti_status cti_field_value(const cti_field* field, const uint8_t* letters, int length,
                           double* out, cti_error* err);

/* BG extras: on-path values h_{x_0..x_depth}, h*, and the terminal
 * self-consistency residual. */
cti_status cti_field_bg_path(const cti_field* field, double* on_path_out, int capacity,
                             int* depth_out, double* h_star_out, double* residual_out,
                             cti_error* err);

/* sup_{x in V_{n-1}} |h_x - sum_{y in S(x)} f(h_y)|. */
cti_status cti_check_compatibility(const cti_field* field, int n, double* residual_out,
                                   cti_error* err);

/* ------------------------------------------------------------------ */
/* Free energies and entropies                                        */
/* ------------------------------------------------------------------ */

cti_status cti_local_term_a(double J, double beta, double h, double* out, cti_error* err);
cti_status cti_free_energy_ti(double J, double beta, double h, double* out, cti_error* err);
cti_status cti_free_energy_k2_closed(double J, double beta, double* out, cti_error* err);
cti_status cti_free_energy_bg(int k, double J, double beta, const cti_solver_config* cfg,
                              double* out, cti_error* err);
cti_status cti_free_energy_wp_h(double J, double beta, double h1, double h2, double* out,
                                cti_error* err);
cti_status cti_free_energy_wp_xi(double J, double beta, double xi, double* out, cti_error* err);
/* J = 1 radical closed forms. */
cti_status cti_xi1_closed_form(double beta, double* out, cti_error* err);
cti_status cti_free_energy_wp_closed_form(double beta, double* out, cti_error* err);
cti_status cti_beta_of_h(double h, int k, double J, double* out, cti_error* err);
cti_status cti_entropy_zero(double J, double beta, double* out, cti_error* err);
cti_status cti_entropy_ti(int k, double J, double beta, double h, double* out, cti_error* err);
cti_status cti_entropy_k2_closed(double J, double beta, double* out, cti_error* err);

/* F_n = -(1/|V_n|) sum_{V_n} a(h_x) for n = 0..n_max; f_out holds n_max+1
 * values; *converged_out reports the 1e-9 stopping rule. */
cti_status cti_free_energy_limit(const cti_field* field, int n_max, double* f_out,
                                 int* converged_out, cti_error* err);

/* Sphere averages A_n, n = n0..n_max, and a monotonicity verdict. */
cti_status cti_an_monotonicity(const cti_field* field, int n0, int n_max, double* a_out,
                               int* monotone_out, cti_error* err);

/* ------------------------------------------------------------------ */
/* Exact oracles                                                      */
/* ------------------------------------------------------------------ */

cti_status cti_oracle_brute_force_log_z(const cti_field* field, int n, double* log_z_out,
                                        cti_error* err);
cti_status cti_oracle_product_log_z(const cti_field* field, int n,
                                    const cti_solver_config* cfg, double* log_z_out,
                                    cti_error* err);
cti_status cti_oracle_marginalization(const cti_field* field, int n, double* max_dev_out,
                                      cti_error* err);
cti_status cti_oracle_free_energy_direct(const cti_field* field, int n, int use_brute,
                                         const cti_solver_config* cfg, double* f_out,
                                         cti_error* err);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CTI_H */
