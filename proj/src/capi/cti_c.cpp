#include "cti/cti.h"

#include <cstdio>
#include <cstring>
#include <new>

#include "core/census.hpp"
#include "core/fields.hpp"
#include "core/oracle.hpp"
#include "core/thermo.hpp"
#include "core/tree.hpp"

struct cti_field {
  cti::FieldPtr impl;
};

struct cti_report {
  cti::SolveReport impl;
};

namespace {

void set_error(cti_error* err, int code, const char* message) {
  if (!err) return;
  err->code = code;
  std::snprintf(err->message, sizeof(err->message), "%s", message);
}

template <typename Fn>
cti_status guarded(cti_error* err, Fn&& fn) {
  try {
    fn();
    set_error(err, CTI_OK, "");
    return CTI_OK;
  } catch (const cti::Error& e) {
    auto code = static_cast<cti_status>(static_cast<int>(e.kind()));
    set_error(err, code, e.what());
    return code;
  } catch (const std::bad_alloc&) {
    set_error(err, CTI_E_CAPACITY, "out of memory");
    return CTI_E_CAPACITY;
  } catch (const std::exception& e) {
    set_error(err, CTI_E_USAGE, e.what());
    return CTI_E_USAGE;
  }
}

cti_status require(bool ok, cti_error* err, const char* message) {
  if (ok) return CTI_OK;
  set_error(err, CTI_E_USAGE, message);
  return CTI_E_USAGE;
}

cti::TreeGeometry make_geom(int k, int full_root) {
  return cti::TreeGeometry{k, full_root ? cti::RootDegree::Full : cti::RootDegree::Half};
}

cti::SolverConfig make_cfg(const cti_solver_config* cfg) {
  if (!cfg) return {};
  cti::SolverConfig out;
  out.tolerance = cfg->tolerance;
  out.max_iterations = cfg->max_iterations;
  out.grid_cells = cfg->grid_cells;
  return out;
}

cti_status make_report(cti::SolveReport&& report, cti_report** out, cti_error* err) {
  if (auto rc = require(out != nullptr, err, "null report sink"); rc != CTI_OK) return rc;
  *out = new cti_report{std::move(report)};
  set_error(err, CTI_OK, "");
  return CTI_OK;
}

cti_status make_field(cti::FieldPtr&& field, cti_field** out, cti_error* err) {
  if (auto rc = require(out != nullptr, err, "null field sink"); rc != CTI_OK) return rc;
  *out = new cti_field{std::move(field)};
  set_error(err, CTI_OK, "");
  return CTI_OK;
}

template <typename Rows>
void copy_rows(const Rows& rows, int64_t* out) {
  std::size_t i = 0;
  for (const auto& row : rows)
    for (int c = 0; c < 4; ++c) out[i++] = row.c[c];
}

}  // namespace

extern "C" {

void cti_solver_config_default(cti_solver_config* cfg) {
  if (!cfg) return;
  cti::SolverConfig defaults;
  cfg->tolerance = defaults.tolerance;
  cfg->max_iterations = defaults.max_iterations;
  cfg->grid_cells = defaults.grid_cells;
}

const char* cti_version(void) { return "0.1.0"; }

/* ------------------------- geometry / census ------------------------- */

cti_status cti_sphere_size(int k, int full_root, int n, int64_t* out, cti_error* err) {
  if (auto rc = require(out, err, "null out"); rc != CTI_OK) return rc;
  return guarded(err, [&] { *out = make_geom(k, full_root).sphere_size(n); });
}

cti_status cti_ball_size(int k, int full_root, int n, int64_t* out, cti_error* err) {
  if (auto rc = require(out, err, "null out"); rc != CTI_OK) return rc;
  return guarded(err, [&] { *out = make_geom(k, full_root).ball_size(n); });
}

namespace {

template <typename Rows>
void copy_rows(const Rows& rows, int64_t* out) {
  std::size_t i = 0;
  for (const auto& row : rows)
    for (int c = 0; c < 4; ++c) out[i++] = row.c[c];
}

}  // namespace

cti_status cti_census_recurrence(int k, int j, int n_max, int64_t* rows_out, cti_error* err) {
  if (auto rc = require(rows_out, err, "null rows"); rc != CTI_OK) return rc;
  return guarded(err, [&] { copy_rows(cti::census_recurrence(k, j, n_max), rows_out); });
}

cti_status cti_census_traversal(int k, int j, int n_max, int64_t* rows_out, cti_error* err) {
  if (auto rc = require(rows_out, err, "null rows"); rc != CTI_OK) return rc;
  return guarded(err, [&] { copy_rows(cti::census_traversal(k, j, n_max), rows_out); });
}

cti_status cti_census_closed_form(int k, int j, int n_max, double* rows_out, cti_error* err) {
  if (auto rc = require(rows_out, err, "null rows"); rc != CTI_OK) return rc;
  return guarded(err, [&] {
    for (int n = 1; n <= n_max; ++n) {
      auto row = cti::census_closed_form(k, j, n);
      for (int c = 0; c < 4; ++c) rows_out[4 * (n - 1) + c] = row[c];
    }
  });
}

cti_status cti_census_cumulative(int k, int j, int n_max, int64_t* rows_out, cti_error* err) {
  if (auto rc = require(rows_out, err, "null rows"); rc != CTI_OK) return rc;
  return guarded(err, [&] { copy_rows(cti::cumulative_counts(k, j, n_max), rows_out); });
}

cti_status cti_census_coefficients(int k, int j, double lambda_out[6], double a_out[6],
                                   cti_error* err) {
  if (auto rc = require(lambda_out && a_out, err, "null out"); rc != CTI_OK) return rc;
  return guarded(err, [&] {
    auto cf = cti::census_coefficients(k, j);
    for (int i = 0; i < 3; ++i) {
      lambda_out[2 * i] = cf.lambda[i].real();
      lambda_out[2 * i + 1] = cf.lambda[i].imag();
      a_out[2 * i] = cf.a[i].real();
      a_out[2 * i + 1] = cf.a[i].imag();
    }
  });
}

cti_status cti_density_limits(int k, int j, int q, double per_level_even[4],
                              double per_level_odd[4], double cumulative_even[4],
                              double cumulative_odd[4], cti_error* err) {
  if (auto rc = require(per_level_even && per_level_odd && cumulative_even && cumulative_odd,
                        err, "null out"); rc != CTI_OK)
    return rc;
  return guarded(err, [&] {
    auto lim = cti::density_limits(k, j, q);
    for (int c = 0; c < 4; ++c) {
      per_level_even[c] = lim.per_level_even[c];
      per_level_odd[c] = lim.per_level_odd[c];
      cumulative_even[c] = lim.cumulative_even[c];
      cumulative_odd[c] = lim.cumulative_odd[c];
    }
  });
}

/* ------------------------------ solvers ------------------------------ */

cti_status cti_solve_ti(int k, double J, double beta, const cti_solver_config* cfg,
                        cti_report** out, cti_error* err) {
  cti::SolveReport report;
  auto rc = guarded(err, [&] { report = cti::solve_ti(k, cti::Thermo{J, beta}, make_cfg(cfg)); });
  if (rc != CTI_OK) return rc;
  return make_report(std::move(report), out, err);
}

cti_status cti_solve_periodic(int k, double J, double beta, const cti_solver_config* cfg,
                              cti_report** out, cti_error* err) {
  cti::SolveReport report;
  auto rc =
      guarded(err, [&] { report = cti::solve_periodic(k, cti::Thermo{J, beta}, make_cfg(cfg)); });
  if (rc != CTI_OK) return rc;
  return make_report(std::move(report), out, err);
}

cti_status cti_solve_weakly_periodic(int k, int j, double J, double beta,
                                     const cti_solver_config* cfg, cti_report** out,
                                     cti_error* err) {
  cti::SolveReport report;
  auto rc = guarded(err, [&] {
    report = cti::solve_weakly_periodic(k, cti::SubgroupSpec::first_j(j), cti::Thermo{J, beta},
                                        make_cfg(cfg));
  });
  if (rc != CTI_OK) return rc;
  return make_report(std::move(report), out, err);
}

int cti_report_solution_count(const cti_report* report) {
  return report ? static_cast<int>(report->impl.solutions.size()) : 0;
}

int cti_report_solution_dim(const cti_report* report) { return report ? report->impl.dim : 0; }

cti_status cti_report_solution(const cti_report* report, int index, double* out, int dim,
                               cti_error* err) {
  if (auto rc = require(report && out, err, "null report or out"); rc != CTI_OK) return rc;
  if (auto rc = require(index >= 0 && index < cti_report_solution_count(report), err,
                        "solution index out of range"); rc != CTI_OK)
    return rc;
  if (auto rc = require(dim >= report->impl.dim, err, "solution buffer too small"); rc != CTI_OK)
    return rc;
  const auto& sol = report->impl.solutions[index];
  for (int i = 0; i < report->impl.dim; ++i) out[i] = sol[i];
  set_error(err, CTI_OK, "");
  return CTI_OK;
}

cti_status cti_report_solution_tag(const cti_report* report, int index, int* tag_out,
                                   cti_error* err) {
  if (auto rc = require(report && tag_out, err, "null report or out"); rc != CTI_OK) return rc;
  if (auto rc = require(index >= 0 && index < cti_report_solution_count(report), err,
                        "solution index out of range"); rc != CTI_OK)
    return rc;
  *tag_out = static_cast<int>(report->impl.tags[index]);
  set_error(err, CTI_OK, "");
  return CTI_OK;
}

double cti_report_residual_sup(const cti_report* report) {
  return report ? report->impl.residual_sup : 0.0;
}

long cti_report_iterations(const cti_report* report) {
  return report ? report->impl.iterations : 0;
}

int cti_report_invariant_count(const cti_report* report) {
  return report ? static_cast<int>(report->impl.invariant_solutions.size()) : 0;
}

cti_status cti_report_invariant_solution(const cti_report* report, int index, double out[4],
                                         cti_error* err) {
  if (auto rc = require(report && out, err, "null report or out"); rc != CTI_OK) return rc;
  if (auto rc = require(index >= 0 && index < cti_report_invariant_count(report), err,
                        "invariant index out of range"); rc != CTI_OK)
    return rc;
  for (int i = 0; i < 4; ++i) out[i] = report->impl.invariant_solutions[index][i];
  set_error(err, CTI_OK, "");
  return CTI_OK;
}

int cti_report_classification(const cti_report* report) {
  return report ? report->impl.classification_count : -1;
}

void cti_report_destroy(cti_report* report) { delete report; }

cti_status cti_ti_positive_root(int k, double J, double beta, const cti_solver_config* cfg,
                                double* out, cti_error* err) {
  if (auto rc = require(out, err, "null out"); rc != CTI_OK) return rc;
  return guarded(err,
                 [&] { *out = cti::ti_positive_root(k, cti::Thermo{J, beta}, make_cfg(cfg)); });
}

cti_status cti_h_star_closed_k2(double J, double beta, double* out, cti_error* err) {
  if (auto rc = require(out, err, "null out"); rc != CTI_OK) return rc;
  return guarded(err, [&] { *out = cti::h_star_closed_k2(cti::Thermo{J, beta}); });
}

cti_status cti_cubic_rrx_roots(double alpha, const cti_solver_config* cfg, double roots_out[3],
                               int admissible_out[3], int* count_out, cti_error* err) {
  if (auto rc = require(roots_out && admissible_out && count_out, err, "null out");
      rc != CTI_OK)
    return rc;
  return guarded(err, [&] {
    auto res = cti::cubic_rrx_roots(alpha, make_cfg(cfg));
    int n = static_cast<int>(res.roots.size());
    if (n > 3) n = 3;
    for (int i = 0; i < n; ++i) {
      roots_out[i] = res.roots[i];
      admissible_out[i] = res.admissible[i] ? 1 : 0;
    }
    *count_out = n;
  });
}

cti_status cti_find_alpha_cr(const cti_solver_config* cfg, double* out, cti_error* err) {
  if (auto rc = require(out, err, "null out"); rc != CTI_OK) return rc;
  return guarded(err, [&] { *out = cti::find_alpha_cr(make_cfg(cfg)); });
}

cti_status cti_zachary_sequence(int k, double J, double beta, double t0, int n,
                                const cti_solver_config* cfg, double* seq_out, cti_error* err) {
  if (auto rc = require(seq_out, err, "null out"); rc != CTI_OK) return rc;
  return guarded(err, [&] {
    auto seq = cti::zachary_sequence(t0, k, cti::Thermo{J, beta}, n, make_cfg(cfg));
    for (std::size_t i = 0; i < seq.size(); ++i) seq_out[i] = seq[i];
  });
}

/* ------------------------------ fields ------------------------------- */

namespace {

cti_status make_field(cti::FieldPtr&& field, cti_field** out, cti_error* err) {
  if (auto rc = require(out != nullptr, err, "null field sink"); rc != CTI_OK) return rc;
  *out = new cti_field{std::move(field)};
  set_error(err, CTI_OK, "");
  return CTI_OK;
}

}  // namespace

cti_status cti_field_create_constant(int k, int full_root, double J, double beta, double h,
                                     cti_field** out, cti_error* err) {
  cti::FieldPtr field;
  auto rc = guarded(err, [&] {
    field = cti::make_constant_field(make_geom(k, full_root), cti::Thermo{J, beta}, h);
  });
  if (rc != CTI_OK) return rc;
  return make_field(std::move(field), out, err);
}

cti_status cti_field_create_ti(int k, int full_root, double J, double beta, double h,
                               cti_field** out, cti_error* err) {
  cti::FieldPtr field;
  auto rc = guarded(err, [&] {
    field = cti::make_ti_field(make_geom(k, full_root), cti::Thermo{J, beta}, h);
  });
  if (rc != CTI_OK) return rc;
  return make_field(std::move(field), out, err);
}

cti_status cti_field_create_periodic(int k, int full_root, double J, double beta, double u,
                                     double v, cti_field** out, cti_error* err) {
  cti::FieldPtr field;
  auto rc = guarded(err, [&] {
    field = cti::make_periodic_field(make_geom(k, full_root), cti::Thermo{J, beta}, u, v);
  });
  if (rc != CTI_OK) return rc;
  return make_field(std::move(field), out, err);
}

cti_status cti_field_create_weakly_periodic(int k, int j, double J, double beta,
                                            const double h[4], cti_field** out, cti_error* err) {
  if (auto rc = require(h, err, "null class values"); rc != CTI_OK) return rc;
  cti::FieldPtr field;
  auto rc = guarded(err, [&] {
    field = cti::make_weakly_periodic_field(make_geom(k, 1), cti::Thermo{J, beta},
                                            cti::SubgroupSpec::first_j(j),
                                            {h[0], h[1], h[2], h[3]});
  });
  if (rc != CTI_OK) return rc;
  return make_field(std::move(field), out, err);
}

cti_status cti_field_create_zachary(int k, int full_root, double J, double beta,
                                    const double* levels, int n_levels, cti_field** out,
                                    cti_error* err) {
  if (auto rc = require(levels && n_levels > 0, err, "empty level sequence"); rc != CTI_OK)
    return rc;
  cti::FieldPtr field;
  auto rc = guarded(err, [&] {
    field = cti::make_zachary_field(make_geom(k, full_root), cti::Thermo{J, beta},
                                    std::vector<double>(levels, levels + n_levels));
  });
  if (rc != CTI_OK) return rc;
  return make_field(std::move(field), out, err);
}

cti_status cti_field_create_levels(int k, int full_root, double J, double beta,
                                   const double* levels, int n_levels, cti_field** out,
                                   cti_error* err) {
  if (auto rc = require(levels && n_levels > 0, err, "empty level sequence"); rc != CTI_OK)
    return rc;
  cti::FieldPtr field;
  auto rc = guarded(err, [&] {
    field = cti::make_level_field(make_geom(k, full_root), cti::Thermo{J, beta},
                                  std::vector<double>(levels, levels + n_levels));
  });
  if (rc != CTI_OK) return rc;
  return make_field(std::move(field), out, err);
}

cti_status cti_field_create_bg(int k, double J, double beta, const int* turn_pattern,
                               int pattern_len, int depth, const cti_solver_config* cfg,
                               cti_field** out, cti_error* err) {
  if (auto rc = require(turn_pattern && pattern_len > 0, err, "empty turn pattern");
      rc != CTI_OK)
    return rc;
  cti::FieldPtr field;
  auto rc = guarded(err, [&] {
    field = cti::make_bg_field(k, cti::Thermo{J, beta},
                               std::vector<int>(turn_pattern, turn_pattern + pattern_len), depth,
                               make_cfg(cfg));
  });
  if (rc != CTI_OK) return rc;
  return make_field(std::move(field), out, err);
}

cti_status cti_field_create_art(const cti_field* inner, int k, cti_field** out, cti_error* err) {
  if (auto rc = require(inner, err, "null inner field"); rc != CTI_OK) return rc;
  cti::FieldPtr field;
  auto rc = guarded(err, [&] { field = cti::make_art_field(inner->impl, k); });
  if (rc != CTI_OK) return rc;
  return make_field(std::move(field), out, err);
}

void cti_field_destroy(cti_field* field) { delete field; }

cti_status cti_field_value(const cti_field* field, const uint8_t* letters, int length,
                           double* out, cti_error* err) {
  if (auto rc = require(field && out && (letters || length == 0), err, "null arguments");
      rc != CTI_OK)
    return rc;
  return guarded(err, [&] {
    cti::Word w;
    w.letters.assign(letters, letters + length);
    if (!w.reduced()) throw cti::UsageError("word is not reduced");
    *out = field->impl->value(w);
  });
}

cti_status cti_field_bg_path(const cti_field* field, double* on_path_out, int capacity,
                             int* depth_out, double* h_star_out, double* residual_out,
                             cti_error* err) {
  if (auto rc = require(field && on_path_out && depth_out && h_star_out && residual_out, err,
                        "null arguments"); rc != CTI_OK)
    return rc;
  const auto* bg = dynamic_cast<const cti::BgField*>(field->impl.get());
  if (auto rc = require(bg != nullptr, err, "field is not a BG field"); rc != CTI_OK) return rc;
  const auto& vals = bg->on_path_values();
  if (auto rc = require(capacity >= static_cast<int>(vals.size()), err,
                        "on_path buffer too small"); rc != CTI_OK)
    return rc;
  for (std::size_t i = 0; i < vals.size(); ++i) on_path_out[i] = vals[i];
  *depth_out = static_cast<int>(vals.size()) - 1;
  *h_star_out = bg->h_star();
  *residual_out = bg->terminal_residual();
  set_error(err, CTI_OK, "");
  return CTI_OK;
}

cti_status cti_check_compatibility(const cti_field* field, int n, double* residual_out,
                                   cti_error* err) {
  if (auto rc = require(field && residual_out, err, "null arguments"); rc != CTI_OK) return rc;
  return guarded(err, [&] { *residual_out = cti::check_compatibility(*field->impl, n); });
}

/* -------------------------- thermodynamics --------------------------- */

cti_status cti_local_term_a(double J, double beta, double h, double* out, cti_error* err) {
  if (auto rc = require(out, err, "null out"); rc != CTI_OK) return rc;
  return guarded(err, [&] { *out = cti::local_term_a(h, cti::Thermo{J, beta}); });
}

cti_status cti_free_energy_ti(double J, double beta, double h, double* out, cti_error* err) {
  if (auto rc = require(out, err, "null out"); rc != CTI_OK) return rc;
  return guarded(err, [&] { *out = cti::free_energy_ti(cti::Thermo{J, beta}, h); });
}

cti_status cti_free_energy_k2_closed(double J, double beta, double* out, cti_error* err) {
  if (auto rc = require(out, err, "null out"); rc != CTI_OK) return rc;
  return guarded(err, [&] { *out = cti::free_energy_k2_closed(cti::Thermo{J, beta}); });
}

cti_status cti_free_energy_bg(int k, double J, double beta, const cti_solver_config* cfg,
                              double* out, cti_error* err) {
  if (auto rc = require(out, err, "null out"); rc != CTI_OK) return rc;
  return guarded(err,
                 [&] { *out = cti::free_energy_bg(cti::Thermo{J, beta}, k, make_cfg(cfg)); });
}

cti_status cti_free_energy_wp_h(double J, double beta, double h1, double h2, double* out,
                                cti_error* err) {
  if (auto rc = require(out, err, "null out"); rc != CTI_OK) return rc;
  return guarded(err, [&] { *out = cti::free_energy_wp_h(cti::Thermo{J, beta}, h1, h2); });
}

cti_status cti_free_energy_wp_xi(double J, double beta, double xi, double* out, cti_error* err) {
  if (auto rc = require(out, err, "null out"); rc != CTI_OK) return rc;
  return guarded(err, [&] { *out = cti::free_energy_wp_xi(cti::Thermo{J, beta}, xi); });
}

cti_status cti_xi1_closed_form(double beta, double* out, cti_error* err) {
  if (auto rc = require(out, err, "null out"); rc != CTI_OK) return rc;
  return guarded(err, [&] { *out = cti::xi1_closed_form(beta); });
}

cti_status cti_free_energy_wp_closed_form(double beta, double* out, cti_error* err) {
  if (auto rc = require(out, err, "null out"); rc != CTI_OK) return rc;
  return guarded(err, [&] { *out = cti::free_energy_wp_closed_form(beta); });
}

cti_status cti_beta_of_h(double h, int k, double J, double* out, cti_error* err) {
  if (auto rc = require(out, err, "null out"); rc != CTI_OK) return rc;
  return guarded(err, [&] { *out = cti::beta_of_h(h, k, J); });
}

cti_status cti_entropy_zero(double J, double beta, double* out, cti_error* err) {
  if (auto rc = require(out, err, "null out"); rc != CTI_OK) return rc;
  return guarded(err, [&] { *out = cti::entropy_zero(cti::Thermo{J, beta}); });
}

cti_status cti_entropy_ti(int k, double J, double beta, double h, double* out, cti_error* err) {
  if (auto rc = require(out, err, "null out"); rc != CTI_OK) return rc;
  return guarded(err, [&] { *out = cti::entropy_ti(k, cti::Thermo{J, beta}, h); });
}

cti_status cti_entropy_k2_closed(double J, double beta, double* out, cti_error* err) {
  if (auto rc = require(out, err, "null out"); rc != CTI_OK) return rc;
  return guarded(err, [&] { *out = cti::entropy_k2_closed(cti::Thermo{J, beta}); });
}

cti_status cti_free_energy_limit(const cti_field* field, int n_max, double* f_out,
                                 int* converged_out, cti_error* err) {
  if (auto rc = require(field && f_out && converged_out, err, "null arguments"); rc != CTI_OK)
    return rc;
  return guarded(err, [&] {
    auto lim = cti::free_energy_limit(*field->impl, n_max);
    for (std::size_t i = 0; i < lim.partial.size(); ++i) f_out[i] = lim.partial[i];
    *converged_out = lim.converged ? 1 : 0;
  });
}

cti_status cti_an_monotonicity(const cti_field* field, int n0, int n_max, double* a_out,
                               int* monotone_out, cti_error* err) {
  if (auto rc = require(field && a_out && monotone_out, err, "null arguments"); rc != CTI_OK)
    return rc;
  return guarded(err, [&] {
    auto rep = cti::an_monotonicity(*field->impl, n0, n_max);
    for (std::size_t i = 0; i < rep.sphere_averages.size(); ++i) a_out[i] = rep.sphere_averages[i];
    *monotone_out = rep.monotone ? 1 : 0;
  });
}

/* ------------------------------ oracles ------------------------------ */

cti_status cti_oracle_brute_force_log_z(const cti_field* field, int n, double* log_z_out,
                                        cti_error* err) {
  if (auto rc = require(field && log_z_out, err, "null arguments"); rc != CTI_OK) return rc;
  return guarded(err, [&] { *log_z_out = cti::brute_force_Z(*field->impl, n).log_value; });
}

cti_status cti_oracle_product_log_z(const cti_field* field, int n,
                                    const cti_solver_config* cfg, double* log_z_out,
                                    cti_error* err) {
  if (auto rc = require(field && log_z_out, err, "null arguments"); rc != CTI_OK) return rc;
  return guarded(err,
                 [&] { *log_z_out = cti::product_Z(*field->impl, n, make_cfg(cfg)).log_value; });
}

cti_status cti_oracle_marginalization(const cti_field* field, int n, double* max_dev_out,
                                      cti_error* err) {
  if (auto rc = require(field && max_dev_out, err, "null arguments"); rc != CTI_OK) return rc;
  return guarded(err, [&] { *max_dev_out = cti::marginalization_check(*field->impl, n); });
}

cti_status cti_oracle_free_energy_direct(const cti_field* field, int n, int use_brute,
                                         const cti_solver_config* cfg, double* f_out,
                                         cti_error* err) {
  if (auto rc = require(field && f_out, err, "null arguments"); rc != CTI_OK) return rc;
  return guarded(err, [&] {
    *f_out = cti::free_energy_direct(*field->impl, n, use_brute != 0, make_cfg(cfg));
  });
}

} /* extern "C" */
