#include "core/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

namespace cti {

namespace {

// ln cosh x without overflow for large |x|
double ln_cosh(double x) {
  double ax = std::abs(x);
  return ax + std::log1p(std::exp(-2.0 * ax)) - std::numbers::ln2;
}

double ln4_cosh_pair(double h, double bJ) {
  return std::log(4.0) + ln_cosh(h - bJ) + ln_cosh(h + bJ);
}

double real_checked(std::complex<double> z, const char* what, double tol = 1e-9) {
  if (std::abs(z.imag()) > tol * std::max(1.0, std::abs(z.real())))
    throw ConvergenceError(std::string(what) + ": imaginary residue above tolerance");
  return z.real();
}

}  // namespace

double local_term_a(double h, const Thermo& thermo) {
  if (thermo.beta <= 0.0) throw UsageError("local_term_a: beta must be positive");
  return ln4_cosh_pair(h, thermo.beta * thermo.J) / (2.0 * thermo.beta);
}

double free_energy_ti(const Thermo& thermo, double h) { return -local_term_a(h, thermo); }

double free_energy_k2_closed(const Thermo& thermo) {
  double e2 = std::exp(2.0 * thermo.beta * thermo.J);
  if (e2 <= 3.0) throw DomainError("free_energy_k2_closed: requires exp(2 beta J) > 3");
  return -(std::log(e2 - 1.0) + 0.5 * std::log1p(1.0 / e2)) / thermo.beta;
}

double free_energy_bg(const Thermo& thermo, int k, const SolverConfig& cfg) {
  if (thermo.theta() <= 1.0 / k) throw DomainError("free_energy_bg: requires theta > 1/k");
  return free_energy_ti(thermo, ti_positive_root(k, thermo, cfg));
}

double free_energy_wp_h(const Thermo& thermo, double h1, double h2) {
  return -(0.8 * local_term_a(h1, thermo) + 0.2 * local_term_a(h2, thermo));
}

double free_energy_wp_xi(const Thermo& thermo, double xi) {
  double bJ = thermo.beta * thermo.J;
  double c2 = 2.0 * std::cosh(2.0 * bJ);
  double first = c2 + (xi * c2 - 4.0) / (c2 - xi);
  double second = c2 + ((xi * xi - 4.0) * xi * xi + 2.0);
  if (first <= 0.0 || second <= 0.0)
    throw DomainError("free_energy_wp_xi: log argument not positive at this xi");
  return -(4.0 * std::log(first) + std::log(second)) / (10.0 * thermo.beta);
}

namespace {

// Shared radical of the J = 1 closed forms.
std::complex<double> xi1_u(double beta) {
  double e2 = std::exp(2 * beta), e4 = std::exp(4 * beta), e6 = std::exp(6 * beta);
  double e8 = std::exp(8 * beta), e10 = std::exp(10 * beta);
  std::complex<double> rad(-96.0 - 39.0 * e4 + 54.0 * e6 + 69.0 * e8 - 12.0 * e10, 0.0);
  std::complex<double> base = -9.0 * e2 - 27.0 * e4 + 2.0 * e6 + 3.0 * std::sqrt(rad);
  return std::pow(base, 1.0 / 3.0);
}

}  // namespace

double xi1_closed_form(double beta) {
  if (beta <= 0.0) throw UsageError("xi1_closed_form: beta must be positive");
  double e2 = std::exp(2 * beta), e4 = std::exp(4 * beta);
  std::complex<double> u = xi1_u(beta);
  std::complex<double> xi =
      (e2 + std::cbrt(2.0) * (6.0 + e4) / u + u / std::cbrt(2.0)) / 3.0;
  return real_checked(xi, "xi1_closed_form");
}

double free_energy_wp_closed_form(double beta) {
  if (beta <= 0.0) throw UsageError("free_energy_wp_closed_form: beta must be positive");
  double e2 = std::exp(2 * beta), em2 = std::exp(-2 * beta), e4 = std::exp(4 * beta);
  double em4 = std::exp(-4 * beta);
  std::complex<double> u = xi1_u(beta);
  std::complex<double> v = std::pow(2.0, 4.0 / 3.0) * em4 * (6.0 + e4);
  std::complex<double> w = 2.0 * em2 + v / u + std::pow(2.0, 2.0 / 3.0) * em4 * u;
  std::complex<double> t = e4 * w / 6.0;  // equals xi_1
  std::complex<double> t2 = t * t;
  std::complex<double> num = std::pow(e2 - em2, 8.0) * (2.0 + em2 + e2 - 4.0 * t2 + t2 * t2);
  std::complex<double> den = std::pow(em2 + e2 - t, 4.0);
  std::complex<double> F = -std::log(num / den) / (10.0 * beta);
  return real_checked(F, "free_energy_wp_closed_form");
}

double beta_of_h(double h, int k, double J) {
  if (k < 2) throw UsageError("beta_of_h: k must be >= 2");
  if (J == 0.0) throw UsageError("beta_of_h: J must be nonzero");
  if (h < 0.0) throw DomainError("beta_of_h: defined for h >= 0");
  if (h == 0.0) return std::atanh(1.0 / k) / J;  // the bifurcation limit
  double num = std::expm1(2.0 * h * (1.0 + 1.0 / k));
  double den = std::exp(2.0 * h) - std::exp(2.0 * h / k);
  return std::log(num / den) / (2.0 * J);
}

double entropy_zero(const Thermo& thermo) {
  double bJ = thermo.beta * thermo.J;
  return std::numbers::ln2 + ln_cosh(bJ) - bJ * std::tanh(bJ);
}

double entropy_ti(int k, const Thermo& thermo, double h, const SolverConfig& cfg) {
  double theta = thermo.theta();
  if (std::abs(h - k * f_theta(h, theta)) > 1e-8)
    throw DomainError("entropy_ti: h does not solve h = k f(h) at this beta");
  if (std::abs(h) < 1e-12) return entropy_zero(thermo);
  (void)cfg;
  double bJ = thermo.beta * thermo.J;
  // h'(beta) from the closed beta(h); note the printed version of the
  // entropy formula carries a sign typo and an extra factor k, fixed here
  // (the finite-difference identity S = -dF/dT pins both).
  double hp = thermo.J * k * (std::cosh(2 * h) - std::cosh(2 * h / k)) /
              (std::sinh(2 * h) - k * std::sinh(2 * h / k));
  double den = std::cosh(2 * h) + std::cosh(2 * bJ);
  return 0.5 * std::log(2 * std::cosh(2 * h) + 2 * std::cosh(2 * bJ)) -
         thermo.beta * (thermo.J * std::sinh(2 * bJ) + hp * std::sinh(2 * h)) / den;
}

double entropy_k2_closed(const Thermo& thermo) {
  double bJ = thermo.beta * thermo.J;
  if (std::exp(2.0 * bJ) <= 3.0)
    throw DomainError("entropy_k2_closed: requires exp(2 beta J) > 3");
  return std::log(2 * std::sinh(bJ)) + 0.5 * std::log(2 * std::cosh(bJ)) -
         bJ * (3 * std::cosh(2 * bJ) + 1) / (2 * std::sinh(2 * bJ));
}

// ---------------------------------------------------------------------------
// Limits over fields
// ---------------------------------------------------------------------------

namespace {

double sphere_a_sum(const BoundaryField& field, int m) {
  if (auto profile = field.level_profile(m)) {
    double sum = 0.0;
    for (const auto& wv : *profile)
      sum += static_cast<double>(wv.count) * local_term_a(wv.h, field.thermo());
    return sum;
  }
  double sum = 0.0;
  for_each_word_at_level(field.geometry(), m,
                         [&](const Word& w) { sum += local_term_a(field.value(w), field.thermo()); });
  return sum;
}

}  // namespace

FreeEnergyLimit free_energy_limit(const BoundaryField& field, int n_max) {
  if (n_max < 1) throw UsageError("free_energy_limit: n_max must be >= 1");
  if (field.max_level() >= 0 && n_max > field.max_level())
    throw UsageError("free_energy_limit: field not evaluable on V_{n_max}");
  FreeEnergyLimit out;
  double acc = 0.0;
  std::int64_t vertices = 0;
  for (int n = 0; n <= n_max; ++n) {
    acc += sphere_a_sum(field, n);
    vertices += field.geometry().sphere_size(n);
    out.partial.push_back(-acc / static_cast<double>(vertices));
  }
  out.value = out.partial.back();
  std::size_t last = out.partial.size() - 1;
  out.converged = std::abs(out.partial[last] - out.partial[last - 1]) < kLimitTolerance;
  return out;
}

MonotonicityReport an_monotonicity(const BoundaryField& field, int n0, int n_max) {
  if (n0 < 0 || n_max < n0) throw UsageError("an_monotonicity: bad level range");
  if (field.max_level() >= 0 && n_max > field.max_level())
    throw UsageError("an_monotonicity: field not evaluable on W_{n_max}");
  MonotonicityReport out;
  out.n0 = n0;
  double scale = 0.0;
  for (int n = n0; n <= n_max; ++n) {
    double avg = sphere_a_sum(field, n) / static_cast<double>(field.geometry().sphere_size(n));
    out.sphere_averages.push_back(avg);
    scale = std::max(scale, std::abs(avg));
  }
  double eps = 1e-12 * std::max(1.0, scale);
  bool non_increasing = true, non_decreasing = true;
  for (std::size_t i = 1; i < out.sphere_averages.size(); ++i) {
    double d = out.sphere_averages[i] - out.sphere_averages[i - 1];
    if (d > eps) non_increasing = false;
    if (d < -eps) non_decreasing = false;
  }
  out.monotone = non_increasing || non_decreasing;
  return out;
}

// ---------------------------------------------------------------------------
// Curves
// ---------------------------------------------------------------------------

std::vector<CurvePoint> emit_curve(const CurveSpec& spec, const SolverConfig& cfg) {
  if (spec.family == CurveFamily::K2Closed && spec.k != 2)
    throw UsageError("emit_curve: k2-closed requires k = 2");
  if (spec.family == CurveFamily::Wp && spec.k != 4)
    throw UsageError("emit_curve: wp requires k = 4");
  if (spec.param == CurveSpec::Param::FieldH && spec.family != CurveFamily::TiStar)
    throw UsageError("emit_curve: the h-parametric grid applies to ti-star only");

  std::vector<CurvePoint> out;
  out.reserve(spec.grid.size());
  for (double g : spec.grid) {
    CurvePoint pt;
    pt.param = g;
    double beta;
    double h = 0.0;
    if (spec.param == CurveSpec::Param::FieldH) {
      if (g <= 0.0) { pt.domain_ok = false; out.push_back(pt); continue; }
      h = g;
      beta = beta_of_h(h, spec.k, spec.J);
    } else {
      beta = g;
    }
    if (beta <= 0.0) { pt.domain_ok = false; out.push_back(pt); continue; }
    Thermo thermo{spec.J, beta};
    pt.beta = beta;
    pt.theta = thermo.theta();
    pt.alpha = thermo.alpha();
    switch (spec.family) {
      case CurveFamily::TiZero:
        pt.F = free_energy_ti(thermo, 0.0);
        pt.S = entropy_zero(thermo);
        pt.has_S = true;
        break;
      case CurveFamily::TiStar: {
        if (spec.param == CurveSpec::Param::Beta) {
          if (pt.theta <= 1.0 / spec.k) { pt.domain_ok = false; break; }
          h = ti_positive_root(spec.k, thermo, cfg);
        }
        pt.F = free_energy_ti(thermo, h);
        pt.S = entropy_ti(spec.k, thermo, h, cfg);
        pt.has_S = true;
        break;
      }
      case CurveFamily::K2Closed: {
        if (std::exp(2.0 * beta * spec.J) <= 3.0) { pt.domain_ok = false; break; }
        pt.F = free_energy_k2_closed(thermo);
        pt.S = entropy_k2_closed(thermo);
        pt.has_S = true;
        break;
      }
      case CurveFamily::Wp: {
        auto pos = wp_invariant_positive_h1(thermo, cfg);
        if (pos.empty()) { pt.domain_ok = false; break; }
        // the branch with the larger h1 is the xi_1 state the figure plots
        double best = *std::max_element(pos.begin(), pos.end());
        pt.F = free_energy_wp_h(thermo, best, 4 * f_theta(best, pt.theta));
        break;
      }
    }
    out.push_back(pt);
  }
  return out;
}

}  // namespace cti
