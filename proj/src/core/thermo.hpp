#pragma once

#include <vector>

#include "core/fields.hpp"

namespace cti {

// a(x) = (1/2 beta) ln[4 cosh(h - beta J) cosh(h + beta J)]; even in h and J.
double local_term_a(double h, const Thermo& thermo);

// F_TI(beta, h) = -(1/2 beta) ln[4 cosh(beta J - h) cosh(beta J + h)].
double free_energy_ti(const Thermo& thermo, double h);

// Closed form of F(beta, h*) for k = 2; requires exp(2 beta J) > 3.
double free_energy_k2_closed(const Thermo& thermo);

// F_BG = F_TI(beta, h*); requires theta > 1/k.
double free_energy_bg(const Thermo& thermo, int k, const SolverConfig& cfg = {});

// Density-weighted free energy of the k=4, |A|=1 weakly periodic states,
// h-form (weights 4/5 and 1/5) and xi-form.
double free_energy_wp_h(const Thermo& thermo, double h1, double h2);
double free_energy_wp_xi(const Thermo& thermo, double xi);

// The paper's radical closed forms, specialized to J = 1. Complex
// intermediates are allowed; an imaginary residue above 1e-9 is an error.
double xi1_closed_form(double beta);
double free_energy_wp_closed_form(double beta);

// beta at which h > 0 solves the translation-invariant equation; h = 0
// returns the documented limit arctanh(1/k)/J.
double beta_of_h(double h, int k, double J);

// Entropies S = -dF/dT. The h != 0 form requires h to solve h = k f(h) at
// this beta (checked) because it embeds dh*/dbeta.
double entropy_zero(const Thermo& thermo);
double entropy_ti(int k, const Thermo& thermo, double h, const SolverConfig& cfg = {});
double entropy_k2_closed(const Thermo& thermo);

// ---------------------------------------------------------------------------
// Thermodynamic limits over a boundary field
// ---------------------------------------------------------------------------

struct FreeEnergyLimit {
  std::vector<double> partial;  // F_n, n = 0..n_max
  double value = 0.0;           // last partial
  bool converged = false;       // |F_n - F_{n-1}| < limit_tolerance reached
};

inline constexpr double kLimitTolerance = 1e-9;

// F_n = -(1/|V_n|) sum_{x in V_n} a(h_x), with the full sequence reported.
FreeEnergyLimit free_energy_limit(const BoundaryField& field, int n_max);

struct MonotonicityReport {
  int n0 = 1;
  std::vector<double> sphere_averages;  // A_n for n = n0..n_max
  bool monotone = false;
};

// Sphere averages A_n = (1/|W_n|) sum_{x in W_n} a(h_x) and a verdict on
// whether the sequence is monotone (either direction, with float slack).
MonotonicityReport an_monotonicity(const BoundaryField& field, int n0, int n_max);

// ---------------------------------------------------------------------------
// Curve emission
// ---------------------------------------------------------------------------

enum class CurveFamily { TiZero, TiStar, K2Closed, Wp };

struct CurvePoint {
  double param = 0.0;  // the grid value the row was produced from
  double beta = 0.0;
  double theta = 0.0;
  double alpha = 0.0;
  double F = 0.0;
  double S = 0.0;
  bool has_S = false;
  bool domain_ok = true;  // false: outside the family's domain, F/S not set
};

struct CurveSpec {
  CurveFamily family = CurveFamily::TiZero;
  int k = 2;
  double J = 1.0;
  enum class Param { Beta, FieldH } param = Param::Beta;
  std::vector<double> grid;
};

std::vector<CurvePoint> emit_curve(const CurveSpec& spec, const SolverConfig& cfg = {});

}  // namespace cti
