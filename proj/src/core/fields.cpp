#include "core/fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "core/thermo.hpp"

namespace cti {

double Thermo::theta() const {
  if (beta <= 0.0) throw UsageError("thermo: beta must be positive");
  return std::tanh(beta * J);
}

double Thermo::alpha() const {
  if (beta <= 0.0) throw UsageError("thermo: beta must be positive");
  return std::exp(-2.0 * beta * J);
}

Thermo Thermo::from_alpha(double alpha, double J) {
  if (alpha <= 0.0) throw UsageError("thermo: alpha must be positive");
  if (J == 0.0) throw UsageError("thermo: J must be nonzero to invert alpha");
  return Thermo{J, -std::log(alpha) / (2.0 * J)};
}

double f_theta(double h, double theta) {
  if (std::abs(theta) >= 1.0) throw UsageError("f_theta: |theta| must be < 1");
  return std::atanh(theta * std::tanh(h));
}

double f_theta_inverse(double y, double theta) {
  if (theta == 0.0) throw DomainError("f_theta_inverse: theta = 0 has no inverse");
  double u = std::tanh(y) / theta;
  if (std::abs(u) >= 1.0)
    throw DomainError("f_theta_inverse: |tanh y| >= |theta|, step leaves the invariant interval");
  return std::atanh(u);
}

double f_theta_prime(double h, double theta) {
  double t = std::tanh(h);
  return theta * (1.0 - t * t) / (1.0 - theta * theta * t * t);
}

// ---------------------------------------------------------------------------
// 1-D bracketed root finding: uniform scan, bisection, one Newton polish.
// ---------------------------------------------------------------------------

namespace {

struct ScanResult {
  std::vector<double> roots;
  long iterations = 0;
};

ScanResult scan_roots(const std::function<double(double)>& g,
                      const std::function<double(double)>& dg, double lo, double hi, int cells,
                      const SolverConfig& cfg) {
  ScanResult out;
  if (cells < 2) cells = 2;
  std::vector<double> xs(cells + 1), vs(cells + 1);
  for (int i = 0; i <= cells; ++i) {
    xs[i] = lo + (hi - lo) * i / cells;
    vs[i] = g(xs[i]);
  }
  for (int i = 0; i <= cells; ++i)
    if (vs[i] == 0.0) out.roots.push_back(xs[i]);
  for (int i = 0; i < cells; ++i) {
    if (vs[i] == 0.0 || vs[i + 1] == 0.0 || vs[i] * vs[i + 1] > 0.0) continue;
    double a = xs[i], b = xs[i + 1], fa = vs[i];
    long it = 0;
    while (b - a > cfg.tolerance) {
      if (++it > cfg.max_iterations) {
        std::ostringstream msg;
        msg << "bisection did not reach tolerance in [" << a << ", " << b << "]";
        throw ConvergenceError(msg.str());
      }
      double m = 0.5 * (a + b), fm = g(m);
      if (fm == 0.0) { a = b = m; break; }
      if (fa * fm < 0.0) b = m;
      else { a = m; fa = fm; }
    }
    out.iterations += it;
    double r = 0.5 * (a + b);
    if (dg) {
      double d = dg(r);
      if (d != 0.0) {
        double polished = r - g(r) / d;
        if (std::abs(g(polished)) <= std::abs(g(r))) r = polished;
      }
    }
    out.roots.push_back(r);
  }
  std::sort(out.roots.begin(), out.roots.end());
  out.roots.erase(std::unique(out.roots.begin(), out.roots.end(),
                              [](double a, double b) { return std::abs(a - b) < 1e-9; }),
                  out.roots.end());
  return out;
}

}  // namespace

SolveReport solve_ti(int k, const Thermo& thermo, const SolverConfig& cfg) {
  if (k < 2) throw UsageError("solve_ti: k must be >= 2");
  double theta = thermo.theta();
  SolveReport report;
  report.dim = 1;
  if (theta == 0.0) {
    report.solutions = {{0.0}};
    report.tags = {SolutionTag::Zero};
    return report;
  }
  double bound = k * std::atanh(std::abs(theta));
  auto g = [&](double h) { return h - k * f_theta(h, theta); };
  auto dg = [&](double h) { return 1.0 - k * f_theta_prime(h, theta); };
  auto scan = scan_roots(g, dg, -bound, bound, cfg.grid_cells, cfg);
  report.grid_cells_used = cfg.grid_cells;
  report.iterations = scan.iterations;
  for (double r : scan.roots) {
    report.solutions.push_back({r});
    report.tags.push_back(std::abs(r) < 1e-12 ? SolutionTag::Zero
                                              : SolutionTag::TranslationInvariant);
    report.residual_sup = std::max(report.residual_sup, std::abs(g(r)));
  }
  return report;
}

double ti_positive_root(int k, const Thermo& thermo, const SolverConfig& cfg) {
  auto report = solve_ti(k, thermo, cfg);
  double best = 0.0;
  for (const auto& s : report.solutions) best = std::max(best, s[0]);
  if (best <= 1e-9)
    throw DomainError("ti_positive_root: no nonzero root (theta <= 1/k)");
  return best;
}

double h_star_closed_k2(const Thermo& thermo) {
  double e2 = std::exp(2.0 * thermo.beta * thermo.J);
  if (e2 <= 3.0)
    throw DomainError("h_star_closed_k2: requires exp(2 beta J) > 3");
  double inner = 0.5 * (e2 * e2 - 2.0 * e2 - 1.0 +
                        (e2 - 1.0) * std::sqrt((e2 + 1.0) * (e2 - 3.0)));
  return 0.5 * std::log(inner);
}

SolveReport solve_periodic(int k, const Thermo& thermo, const SolverConfig& cfg) {
  if (k < 2) throw UsageError("solve_periodic: k must be >= 2");
  double theta = thermo.theta();
  SolveReport report;
  report.dim = 2;
  if (theta == 0.0) {
    report.solutions = {{0.0, 0.0}};
    report.tags = {SolutionTag::Zero};
    return report;
  }
  // every solution of the pair system solves u = k f(k f(u)) and vice versa
  double bound = k * std::atanh(std::abs(theta));
  auto g = [&](double u) { return u - k * f_theta(k * f_theta(u, theta), theta); };
  auto dg = [&](double u) {
    double inner = k * f_theta(u, theta);
    return 1.0 - k * f_theta_prime(inner, theta) * k * f_theta_prime(u, theta);
  };
  auto scan = scan_roots(g, dg, -bound, bound, cfg.grid_cells, cfg);
  report.grid_cells_used = cfg.grid_cells;
  report.iterations = scan.iterations;
  for (double u : scan.roots) {
    double v = k * f_theta(u, theta);
    report.solutions.push_back({u, v});
    double res = std::max(std::abs(u - k * f_theta(v, theta)), std::abs(v - k * f_theta(u, theta)));
    report.residual_sup = std::max(report.residual_sup, res);
    if (std::abs(u) < 1e-12 && std::abs(v) < 1e-12) report.tags.push_back(SolutionTag::Zero);
    else if (std::abs(u - v) < 1e-9) report.tags.push_back(SolutionTag::TranslationInvariant);
    else report.tags.push_back(SolutionTag::Other);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Weakly periodic system
// ---------------------------------------------------------------------------

namespace {

using Vec4 = std::array<double, 4>;

Vec4 wp_map(const Vec4& h, int k, int j, double theta) {
  return {j * f_theta(h[2], theta) + (k - j) * f_theta(h[0], theta),
          (j - 1) * f_theta(h[2], theta) + (k + 1 - j) * f_theta(h[0], theta),
          (j - 1) * f_theta(h[1], theta) + (k + 1 - j) * f_theta(h[3], theta),
          j * f_theta(h[1], theta) + (k - j) * f_theta(h[3], theta)};
}

Vec4 wp_residual(const Vec4& h, int k, int j, double theta) {
  Vec4 m = wp_map(h, k, j, theta);
  return {h[0] - m[0], h[1] - m[1], h[2] - m[2], h[3] - m[3]};
}

double inf_norm(const Vec4& v) {
  return std::max(std::max(std::abs(v[0]), std::abs(v[1])),
                  std::max(std::abs(v[2]), std::abs(v[3])));
}

// 4x4 linear solve with partial pivoting; returns false if singular.
bool solve4(std::array<Vec4, 4> m, Vec4 rhs, Vec4& x) {
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    if (std::abs(m[piv][col]) < 1e-300) return false;
    std::swap(m[col], m[piv]);
    std::swap(rhs[col], rhs[piv]);
    for (int r = col + 1; r < 4; ++r) {
      double factor = m[r][col] / m[col][col];
      for (int c = col; c < 4; ++c) m[r][c] -= factor * m[col][c];
      rhs[r] -= factor * rhs[col];
    }
  }
  for (int r = 3; r >= 0; --r) {
    double acc = rhs[r];
    for (int c = r + 1; c < 4; ++c) acc -= m[r][c] * x[c];
    x[r] = acc / m[r][r];
  }
  return true;
}

// Damped Newton on the weakly periodic residual from one start.
bool wp_newton(Vec4 h, int k, int j, double theta, double bound, const SolverConfig& cfg,
               Vec4& out, long& iterations) {
  for (int it = 0; it < 200; ++it) {
    ++iterations;
    Vec4 r = wp_residual(h, k, j, theta);
    if (inf_norm(r) < cfg.tolerance) {
      out = h;
      return true;
    }
    std::array<Vec4, 4> jac{};  // I - dM
    double d0 = f_theta_prime(h[0], theta), d1 = f_theta_prime(h[1], theta);
    double d2 = f_theta_prime(h[2], theta), d3 = f_theta_prime(h[3], theta);
    jac[0] = {1.0 - (k - j) * d0, 0.0, -j * d2, 0.0};
    jac[1] = {-(k + 1 - j) * d0, 1.0, -(j - 1) * d2, 0.0};
    jac[2] = {0.0, -(j - 1) * d1, 1.0, -(k + 1 - j) * d3};
    jac[3] = {0.0, -j * d1, 0.0, 1.0 - (k - j) * d3};
    Vec4 step{};
    if (!solve4(jac, r, step)) return false;
    double scale = 1.0;
    double base = inf_norm(r);
    for (int damp = 0; damp < 30; ++damp) {
      Vec4 trial{h[0] - scale * step[0], h[1] - scale * step[1], h[2] - scale * step[2],
                 h[3] - scale * step[3]};
      if (inf_norm(wp_residual(trial, k, j, theta)) < base) {
        h = trial;
        break;
      }
      scale *= 0.5;
      if (damp == 29) return false;
    }
    if (inf_norm(h) > 2.0 * bound + 10.0) return false;
  }
  return false;
}

// Positive roots of the reduced invariant-set equation
// h1 = 3 f(h1) - f(4 f(h1)) at k=4, |A|=1.
std::vector<double> wp_invariant_positive_roots(double theta, const SolverConfig& cfg,
                                                long* iterations = nullptr) {
  double bound = 4.0 * std::atanh(std::abs(theta));
  auto phi = [&](double h1) { return 3 * f_theta(h1, theta) - f_theta(4 * f_theta(h1, theta), theta) - h1; };
  auto dphi = [&](double h1) {
    double inner = 4 * f_theta(h1, theta);
    return 3 * f_theta_prime(h1, theta) -
           f_theta_prime(inner, theta) * 4 * f_theta_prime(h1, theta) - 1.0;
  };
  auto scan = scan_roots(phi, dphi, 0.0, bound, cfg.grid_cells, cfg);
  if (iterations) *iterations += scan.iterations;
  std::vector<double> out;
  for (double r : scan.roots)
    if (r > 1e-9) out.push_back(r);
  return out;
}

}  // namespace

SolveReport solve_weakly_periodic(int k, const SubgroupSpec& a, const Thermo& thermo,
                                  const SolverConfig& cfg) {
  int j = a.size();
  if (k < 2) throw UsageError("solve_weakly_periodic: k must be >= 2");
  if (j < 1 || j > k)
    throw UsageError("solve_weakly_periodic: requires 1 <= |A| <= k "
                     "(|A| = k+1 degenerates to the periodic system)");
  double theta = thermo.theta();
  SolveReport report;
  report.dim = 4;
  if (theta == 0.0) {
    report.solutions = {{0.0, 0.0, 0.0, 0.0}};
    report.tags = {SolutionTag::Zero};
    if (k == 4 && j == 1) {
      report.invariant_solutions = {{0.0, 0.0, 0.0, 0.0}};
      report.classification_count = 1;
    }
    return report;
  }

  double bound = k * std::atanh(std::abs(theta));
  std::vector<double> axis;
  for (int i = -3; i <= 3; ++i) axis.push_back(bound * i / 3.0);

  std::vector<Vec4> found;
  for (double s0 : axis)
    for (double s1 : axis)
      for (double s2 : axis)
        for (double s3 : axis) {
          Vec4 sol{};
          if (!wp_newton({s0, s1, s2, s3}, k, j, theta, bound, cfg, sol, report.iterations))
            continue;
          bool dup = false;
          for (const auto& f : found)
            if (inf_norm({f[0] - sol[0], f[1] - sol[1], f[2] - sol[2], f[3] - sol[3]}) < 1e-7) {
              dup = true;
              break;
            }
          if (!dup) found.push_back(sol);
        }

  std::sort(found.begin(), found.end());
  for (const auto& s : found) {
    report.solutions.push_back({s[0], s[1], s[2], s[3]});
    report.residual_sup = std::max(report.residual_sup, inf_norm(wp_residual(s, k, j, theta)));
    if (inf_norm(s) < 1e-10) report.tags.push_back(SolutionTag::Zero);
    else if (std::abs(s[0] - s[1]) < 1e-8 && std::abs(s[1] - s[2]) < 1e-8 &&
             std::abs(s[2] - s[3]) < 1e-8)
      report.tags.push_back(SolutionTag::TranslationInvariant);
    else if (std::abs(s[0] + s[3]) < 1e-8 && std::abs(s[1] + s[2]) < 1e-8)
      report.tags.push_back(SolutionTag::InvariantPair);
    else report.tags.push_back(SolutionTag::Other);
  }

  if (k == 4 && j == 1) {
    auto pos = wp_invariant_positive_roots(theta, cfg, &report.iterations);
    report.invariant_solutions.push_back({0.0, 0.0, 0.0, 0.0});
    for (double h1 : pos) {
      double h2 = 4 * f_theta(h1, theta);
      report.invariant_solutions.push_back({h1, h2, -h2, -h1});
      report.invariant_solutions.push_back({-h1, -h2, h2, h1});
    }
    report.classification_count = 1 + 2 * static_cast<int>(pos.size());
  }
  return report;
}

std::vector<double> wp_invariant_positive_h1(const Thermo& thermo, const SolverConfig& cfg) {
  return wp_invariant_positive_roots(thermo.theta(), cfg);
}

CubicRoots cubic_rrx_roots(double alpha, const SolverConfig& cfg) {
  if (alpha <= 0.0) throw UsageError("cubic_rrx_roots: alpha must be positive");
  const double a3 = alpha * alpha, a2 = -alpha, a1 = -2 * alpha * alpha, a0 = alpha + 1.0;
  auto p = [&](double x) { return ((a3 * x + a2) * x + a1) * x + a0; };
  auto dp = [&](double x) { return (3 * a3 * x + 2 * a2) * x + a1; };

  double bound = 1.0 + std::max(std::abs(a2), std::max(std::abs(a1), std::abs(a0))) / a3;
  auto scan = scan_roots(p, dp, -bound, bound, std::max(cfg.grid_cells, 2048), cfg);
  CubicRoots out;
  out.roots = scan.roots;

  // tangent (double) roots have no sign change; probe the critical points
  double disc = a2 * a2 - 3 * a3 * a1;
  if (disc > 0.0) {
    for (double sign : {-1.0, 1.0}) {
      double xc = (-a2 + sign * std::sqrt(disc)) / (3 * a3);
      double scale = a3 * std::pow(std::max(1.0, std::abs(xc)), 3) + std::abs(a0);
      bool near_existing = false;
      for (double r : out.roots)
        if (std::abs(r - xc) < 1e-6 * std::max(1.0, std::abs(xc))) near_existing = true;
      if (!near_existing && std::abs(p(xc)) < 1e-9 * scale) out.roots.push_back(xc);
    }
    std::sort(out.roots.begin(), out.roots.end());
  }

  // Admissibility: the two free-energy routes must meet. The correspondence
  // with the invariant-set solutions is established numerically, not assumed.
  Thermo thermo = Thermo::from_alpha(alpha);
  double theta = thermo.theta();
  auto pos = wp_invariant_positive_roots(theta, cfg);
  out.admissible.assign(out.roots.size(), false);
  out.matched_h1.assign(out.roots.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 0; i < out.roots.size(); ++i) {
    double fxi = free_energy_wp_xi(thermo, out.roots[i]);
    for (double h1 : pos) {
      double h2 = 4 * f_theta(h1, theta);
      if (std::abs(free_energy_wp_h(thermo, h1, h2) - fxi) <= 1e-8) {
        out.admissible[i] = true;
        out.matched_h1[i] = h1;
        break;
      }
    }
  }
  return out;
}

double find_alpha_cr(const SolverConfig& cfg) {
  auto positive_pairs = [&](double alpha) {
    double theta = Thermo::from_alpha(alpha).theta();
    return wp_invariant_positive_roots(theta, cfg).size();
  };
  double lo = 0.05, hi = 0.30;
  if (positive_pairs(lo) < 2 || positive_pairs(hi) != 0)
    throw ConvergenceError("find_alpha_cr: bracket [0.05, 0.30] does not isolate the merge");
  while (hi - lo > 1e-9) {
    double mid = 0.5 * (lo + hi);
    if (positive_pairs(mid) >= 2) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> zachary_sequence(double t0, int k, const Thermo& thermo, int n_steps,
                                     const SolverConfig& cfg) {
  double theta = thermo.theta();
  if (theta <= 1.0 / k)
    throw DomainError("zachary_sequence: requires theta > 1/k");
  if (n_steps < 0) throw UsageError("zachary_sequence: negative step count");
  double hs = ti_positive_root(k, thermo, cfg);
  if (std::abs(t0) >= hs)
    throw DomainError("zachary_sequence: t0 must lie in (-h*, h*)");
  std::vector<double> t(n_steps + 1);
  t[0] = t0;
  for (int n = 0; n < n_steps; ++n) t[n + 1] = f_theta_inverse(t[n] / k, theta);
  return t;
}

// ---------------------------------------------------------------------------
// Boundary field implementations
// ---------------------------------------------------------------------------

namespace {

class ConstantField final : public BoundaryField {
 public:
  ConstantField(TreeGeometry g, Thermo t, double h) : BoundaryField(g, t), h_(h) {}
  double value(const Word&) const override { return h_; }
  std::string kind() const override { return "constant"; }
  std::optional<std::vector<WeightedValue>> level_profile(int m) const override {
    return std::vector<WeightedValue>{{h_, geom_.sphere_size(m)}};
  }

 private:
  double h_;
};

class TiField final : public BoundaryField {
 public:
  TiField(TreeGeometry g, Thermo t, double h)
      : BoundaryField(g, t), h_(h), root_(g.root_degree() * f_theta(h, t.theta())) {}
  double value(const Word& x) const override { return x.is_root() ? root_ : h_; }
  std::string kind() const override { return "ti"; }
  std::optional<std::vector<WeightedValue>> level_profile(int m) const override {
    if (m == 0) return std::vector<WeightedValue>{{root_, 1}};
    return std::vector<WeightedValue>{{h_, geom_.sphere_size(m)}};
  }

 private:
  double h_, root_;
};

class PeriodicField final : public BoundaryField {
 public:
  PeriodicField(TreeGeometry g, Thermo t, double u, double v)
      : BoundaryField(g, t), u_(u), v_(v), root_(g.root_degree() * f_theta(v, t.theta())) {}
  double value(const Word& x) const override {
    if (x.is_root()) return root_;
    return x.level() % 2 == 0 ? u_ : v_;
  }
  std::string kind() const override { return "periodic"; }
  std::optional<std::vector<WeightedValue>> level_profile(int m) const override {
    if (m == 0) return std::vector<WeightedValue>{{root_, 1}};
    return std::vector<WeightedValue>{{m % 2 == 0 ? u_ : v_, geom_.sphere_size(m)}};
  }

 private:
  double u_, v_, root_;
};

class LevelField final : public BoundaryField {
 public:
  // raw: levels[0] is the root value as given; zachary flavor replaces the
  // root by its compatibility value root_degree * f(t_1).
  LevelField(TreeGeometry g, Thermo t, std::vector<double> levels, bool zachary)
      : BoundaryField(g, t), levels_(std::move(levels)), zachary_(zachary) {
    if (levels_.empty()) throw UsageError("level field: empty sequence");
    root_ = zachary_ && levels_.size() > 1
                ? g.root_degree() * f_theta(levels_[1], t.theta())
                : levels_[0];
  }
  double value(const Word& x) const override {
    int m = x.level();
    if (m >= static_cast<int>(levels_.size()))
      throw UsageError("level field: vertex beyond the stored sequence");
    return m == 0 ? root_ : levels_[m];
  }
  std::string kind() const override { return zachary_ ? "zachary" : "levels"; }
  std::optional<std::vector<WeightedValue>> level_profile(int m) const override {
    if (m >= static_cast<int>(levels_.size()))
      throw UsageError("level field: level beyond the stored sequence");
    if (m == 0) return std::vector<WeightedValue>{{root_, 1}};
    return std::vector<WeightedValue>{{levels_[m], geom_.sphere_size(m)}};
  }
  int max_level() const override { return static_cast<int>(levels_.size()) - 1; }

 private:
  std::vector<double> levels_;
  bool zachary_;
  double root_;
};

class WeaklyPeriodicField final : public BoundaryField {
 public:
  WeaklyPeriodicField(TreeGeometry g, Thermo t, SubgroupSpec a, std::array<double, 4> h)
      : BoundaryField(g, t), a_(a), h_(h) {
    if (g.root != RootDegree::Full)
      throw UsageError("weakly periodic field: defined on the full tree");
    int j = a_.size();
    double theta = t.theta();
    root_ = j * f_theta(h_[2], theta) + (g.k + 1 - j) * f_theta(h_[0], theta);
  }
  double value(const Word& x) const override {
    if (x.is_root()) return root_;
    Parity child = classify_vertex(x, a_);
    Parity parent = a_.contains(x.letters.back())
                        ? (child == Parity::H0 ? Parity::H1 : Parity::H0)
                        : child;
    return h_[static_cast<int>(edge_color_of(child, parent))];
  }
  std::string kind() const override { return "weakly-periodic"; }
  std::optional<std::vector<WeightedValue>> level_profile(int m) const override {
    if (m == 0) return std::vector<WeightedValue>{{root_, 1}};
    auto rows = census_recurrence(geom_.k, a_.size(), m);
    const auto& row = rows.back();
    std::vector<WeightedValue> out;
    for (int c = 0; c < 4; ++c)
      if (row.c[c] > 0) out.push_back({h_[c], row.c[c]});
    return out;
  }

 private:
  SubgroupSpec a_;
  std::array<double, 4> h_;
  double root_;
};

class ArtField final : public BoundaryField {
 public:
  ArtField(FieldPtr inner, int k)
      : BoundaryField(TreeGeometry{k, RootDegree::Full}, inner->thermo()),
        inner_(std::move(inner)),
        k0_(inner_->geometry().k) {}
  double value(const Word& x) const override {
    for (auto letter : x.letters)
      if (letter > k0_ + 1) return 0.0;
    return inner_->value(x);
  }
  std::string kind() const override { return "art"; }
  std::optional<std::vector<WeightedValue>> level_profile(int m) const override {
    auto inner = inner_->level_profile(m);
    if (!inner) return std::nullopt;
    if (m > 0) {
      std::int64_t extra = geom_.sphere_size(m) - inner_->geometry().sphere_size(m);
      if (extra > 0) inner->push_back({0.0, extra});
    }
    return inner;
  }
  int max_level() const override { return inner_->max_level(); }

 private:
  FieldPtr inner_;
  int k0_;
};

class ExplicitField final : public BoundaryField {
 public:
  ExplicitField(TreeGeometry g, Thermo t, std::function<double(const Word&)> fn, int max_level)
      : BoundaryField(g, t), fn_(std::move(fn)), max_level_(max_level) {}
  double value(const Word& x) const override {
    if (max_level_ >= 0 && x.level() > max_level_)
      throw UsageError("explicit field: vertex beyond the declared depth");
    return fn_(x);
  }
  std::string kind() const override { return "explicit"; }
  int max_level() const override { return max_level_; }

 private:
  std::function<double(const Word&)> fn_;
  int max_level_;
};

}  // namespace

FieldPtr make_constant_field(const TreeGeometry& geom, const Thermo& thermo, double h) {
  return std::make_shared<ConstantField>(geom, thermo, h);
}

FieldPtr make_ti_field(const TreeGeometry& geom, const Thermo& thermo, double h) {
  return std::make_shared<TiField>(geom, thermo, h);
}

FieldPtr make_periodic_field(const TreeGeometry& geom, const Thermo& thermo, double u, double v) {
  return std::make_shared<PeriodicField>(geom, thermo, u, v);
}

FieldPtr make_level_field(const TreeGeometry& geom, const Thermo& thermo,
                          std::vector<double> levels) {
  return std::make_shared<LevelField>(geom, thermo, std::move(levels), /*zachary=*/false);
}

FieldPtr make_zachary_field(const TreeGeometry& geom, const Thermo& thermo,
                            std::vector<double> t_sequence) {
  return std::make_shared<LevelField>(geom, thermo, std::move(t_sequence), /*zachary=*/true);
}

FieldPtr make_weakly_periodic_field(const TreeGeometry& geom, const Thermo& thermo,
                                    const SubgroupSpec& a, const std::array<double, 4>& h) {
  return std::make_shared<WeaklyPeriodicField>(geom, thermo, a, h);
}

BgField::BgField(TreeGeometry geom, Thermo thermo, std::vector<std::uint8_t> path,
                 std::vector<double> on_path, double h_star, double terminal_residual,
                 long sweeps)
    : BoundaryField(geom, thermo),
      path_(std::move(path)),
      on_path_(std::move(on_path)),
      h_star_(h_star),
      terminal_residual_(terminal_residual),
      sweeps_(sweeps) {}

double BgField::value(const Word& x) const {
  int m = x.level();
  if (m > max_level()) throw UsageError("bg field: vertex beyond the solved depth");
  for (int i = 0; i < m; ++i) {
    if (x.letters[i] == path_[i]) continue;
    return x.letters[i] < path_[i] ? -h_star_ : h_star_;
  }
  return on_path_[m];
}

std::optional<std::vector<WeightedValue>> BgField::level_profile(int m) const {
  if (m > max_level()) throw UsageError("bg field: level beyond the solved depth");
  if (m == 0) return std::vector<WeightedValue>{{on_path_[0], 1}};
  // left counts satisfy l_m = k l_{m-1} + (position of the path child - 1)
  std::int64_t left = 0;
  int k = geom_.k;
  for (int i = 0; i < m; ++i) {
    int letter = path_[i];
    int prev = i == 0 ? 0 : path_[i - 1];
    int position = letter - (prev != 0 && letter > prev ? 1 : 0);
    left = detail::checked_mul(left, k, "bg profile") + (position - 1);
  }
  std::int64_t total = detail::checked_pow(k, m, "bg profile");
  std::int64_t right = total - 1 - left;
  std::vector<WeightedValue> out;
  if (left > 0) out.push_back({-h_star_, left});
  if (right > 0) out.push_back({h_star_, right});
  out.push_back({on_path_[m], 1});
  return out;
}

std::shared_ptr<const BgField> make_bg_field(int k, const Thermo& thermo,
                                             const std::vector<int>& turn_pattern, int depth,
                                             const SolverConfig& cfg) {
  if (k < 2) throw UsageError("bg: k must be >= 2");
  if (depth < 1) throw UsageError("bg: depth must be >= 1");
  if (turn_pattern.empty()) throw UsageError("bg: empty turn pattern");
  for (int c : turn_pattern)
    if (c < 1 || c > k) throw UsageError("bg: turn indices must lie in 1..k");
  double theta = thermo.theta();
  if (theta <= 1.0 / k) throw DomainError("bg: requires theta > 1/k");
  double hs = ti_positive_root(k, thermo, cfg);

  auto turn_at = [&](int m) { return turn_pattern[m % turn_pattern.size()]; };
  auto off_sum = [&](int c) {
    return (c - 1) * f_theta(-hs, theta) + (k - c) * f_theta(hs, theta);
  };

  // path letters: the c-th smallest successor letter at each step
  std::vector<std::uint8_t> path(depth);
  int prev = 0;  // 0 = root (half tree, successors 1..k)
  for (int m = 0; m < depth; ++m) {
    int c = turn_at(m);
    int letter = c;
    if (prev != 0 && letter >= prev) ++letter;
    path[m] = static_cast<std::uint8_t>(letter);
    prev = letter;
  }

  std::vector<double> v(depth + 1, hs), next(depth + 1);
  double change = 0.0;
  long sweeps = 0;
  for (;;) {
    if (++sweeps > cfg.max_iterations) {
      std::ostringstream msg;
      msg << "bg: backward iteration did not converge at depth " << depth
          << " (achieved residual " << change << ")";
      throw ConvergenceError(msg.str());
    }
    next[depth] = f_theta(v[depth], theta) + off_sum(turn_at(depth));
    for (int m = depth - 1; m >= 0; --m)
      next[m] = f_theta(next[m + 1], theta) + off_sum(turn_at(m));
    change = 0.0;
    for (int m = 0; m <= depth; ++m) change = std::max(change, std::abs(next[m] - v[m]));
    v = next;
    if (change < cfg.tolerance) break;
  }
  double terminal = std::abs(v[depth] - (f_theta(v[depth], theta) + off_sum(turn_at(depth))));
  return std::make_shared<BgField>(TreeGeometry{k, RootDegree::Half}, thermo, std::move(path),
                                   std::move(v), hs, terminal, sweeps);
}

FieldPtr make_art_field(const FieldPtr& inner, int k) {
  if (!inner) throw UsageError("art: missing inner field");
  if (inner->geometry().root != RootDegree::Full)
    throw UsageError("art: inner field must live on a full tree");
  if (k <= inner->geometry().k)
    throw UsageError("art: requires k >= k0 + 1");
  return std::make_shared<ArtField>(inner, k);
}

FieldPtr make_explicit_field(const TreeGeometry& geom, const Thermo& thermo,
                             std::function<double(const Word&)> fn, int max_level) {
  return std::make_shared<ExplicitField>(geom, thermo, std::move(fn), max_level);
}

double check_compatibility(const BoundaryField& field, int n) {
  if (n < 1) throw UsageError("check_compatibility: depth must be >= 1");
  if (field.max_level() >= 0 && n > field.max_level())
    throw UsageError("check_compatibility: field not evaluable on V_n");
  const TreeGeometry& geom = field.geometry();
  if (geom.ball_size_any(n) > 100'000'000)
    throw CapacityError("check_compatibility: ball exceeds the vertex guard");
  double theta = field.thermo().theta();

  double worst = 0.0;
  Word w;
  std::function<void(Word&)> visit = [&](Word& x) {
    if (x.level() >= n) return;
    int limit = x.is_root() ? geom.root_degree() : geom.k + 1;
    double sum = 0.0;
    for (int letter = 1; letter <= limit; ++letter) {
      if (!x.is_root() && letter == x.letters.back()) continue;
      x.letters.push_back(static_cast<std::uint8_t>(letter));
      sum += f_theta(field.value(x), theta);
      visit(x);
      x.letters.pop_back();
    }
    worst = std::max(worst, std::abs(field.value(x) - sum));
  };
  visit(w);
  return worst;
}

}  // namespace cti
