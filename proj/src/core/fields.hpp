#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "core/census.hpp"
#include "core/tree.hpp"

namespace cti {

// Coupling and inverse temperature; theta = tanh(beta J) is the natural
// recursion parameter, alpha = exp(-2 beta J) the low-temperature variable.
struct Thermo {
  double J = 1.0;
  double beta = 1.0;

  double theta() const;
  double alpha() const;
  static Thermo from_alpha(double alpha, double J = 1.0);  // beta = -ln(alpha)/(2J)
};

struct SolverConfig {
  double tolerance = 1e-12;
  int max_iterations = 10'000;
  int grid_cells = 2048;
};

// f(h, theta) = arctanh(theta tanh h), the single-edge recursion map.
double f_theta(double h, double theta);
// Inverse in h: arctanh(tanh(y)/theta). Throws DomainError when |tanh y| >= |theta|.
double f_theta_inverse(double y, double theta);
// d f / d h.
double f_theta_prime(double h, double theta);

enum class SolutionTag { Zero, TranslationInvariant, InvariantPair, Other };

struct SolveReport {
  int dim = 1;
  std::vector<std::vector<double>> solutions;  // sorted, each of size dim
  std::vector<SolutionTag> tags;
  double residual_sup = 0.0;
  long iterations = 0;
  int grid_cells_used = 0;
  // weakly periodic extras (k=4, |A|=1): solutions of the reduced system on
  // the invariant set h1=-h4, h2=-h3, and the 1/3/5 state count.
  std::vector<std::array<double, 4>> invariant_solutions;
  int classification_count = -1;
};

// All real roots of h = k f(h, theta) by bracketed bisection plus one Newton
// polish; exactly {0} for 0 <= theta <= 1/k, three roots above the threshold.
SolveReport solve_ti(int k, const Thermo& thermo, const SolverConfig& cfg = {});

// Positive translation-invariant root; throws ConvergenceError if absent.
double ti_positive_root(int k, const Thermo& thermo, const SolverConfig& cfg = {});

// Closed-form positive root for k=2 (requires exp(2 beta J) > 3).
double h_star_closed_k2(const Thermo& thermo);

// All solutions (u, v) of u = k f(v), v = k f(u).
SolveReport solve_periodic(int k, const Thermo& thermo, const SolverConfig& cfg = {});

// All solutions of the four-field weakly periodic system for H_A of index
// two, |A| = j <= k, via multi-start damped Newton.
SolveReport solve_weakly_periodic(int k, const SubgroupSpec& a, const Thermo& thermo,
                                  const SolverConfig& cfg = {});

struct CubicRoots {
  std::vector<double> roots;            // all real roots, ascending
  std::vector<bool> admissible;         // matches a weakly periodic solution
  std::vector<double> matched_h1;       // h1 of the matching solution (or NaN)
};

// Real roots of alpha^2 xi^3 - alpha xi^2 - 2 alpha^2 xi + alpha + 1 = 0,
// with the admissible subset identified by agreement of the two free-energy
// evaluation routes (J = 1).
CubicRoots cubic_rrx_roots(double alpha, const SolverConfig& cfg = {});

// Positive h1 roots of the reduced invariant-set system at k=4, |A|=1;
// each pairs with h2 = 4 f(h1), h3 = -h2, h4 = -h1.
std::vector<double> wp_invariant_positive_h1(const Thermo& thermo, const SolverConfig& cfg = {});

// Critical alpha where the two admissible roots merge (k=4, |A|=1, J=1).
double find_alpha_cr(const SolverConfig& cfg = {});

// The Zachary level sequence: t_{n+1} = f^{-1}(t_n / k). Requires
// theta > 1/k and |t0| < h*.
std::vector<double> zachary_sequence(double t0, int k, const Thermo& thermo, int n_steps,
                                     const SolverConfig& cfg = {});

// ---------------------------------------------------------------------------
// Boundary fields
// ---------------------------------------------------------------------------

struct WeightedValue {
  double h = 0.0;
  std::int64_t count = 0;
};

// A boundary field assigns a real h_x to every vertex of the working ball.
// Structured families expose an exact per-level profile so thermodynamic
// sums avoid walking the tree.
class BoundaryField {
 public:
  virtual ~BoundaryField() = default;

  const TreeGeometry& geometry() const { return geom_; }
  const Thermo& thermo() const { return thermo_; }

  virtual double value(const Word& x) const = 0;
  virtual std::string kind() const = 0;

  // Values with exact multiplicities covering W_m, or nullopt if the field
  // has no closed per-level structure.
  virtual std::optional<std::vector<WeightedValue>> level_profile(int m) const {
    (void)m;
    return std::nullopt;
  }

  // Highest level the field is defined on (-1 = unbounded).
  virtual int max_level() const { return -1; }

 protected:
  BoundaryField(TreeGeometry geom, Thermo thermo) : geom_(geom), thermo_(thermo) {}
  TreeGeometry geom_;
  Thermo thermo_;
};

using FieldPtr = std::shared_ptr<const BoundaryField>;

// Raw constant field (the root keeps the same value; such a field is only
// compatible at h = 0).
FieldPtr make_constant_field(const TreeGeometry& geom, const Thermo& thermo, double h);

// Translation-invariant family: h on every vertex except the root, which
// carries its compatibility value root_degree * f(h).
FieldPtr make_ti_field(const TreeGeometry& geom, const Thermo& thermo, double h);

// G^(2)-periodic family: u on even spheres, v on odd ones, root adjusted.
FieldPtr make_periodic_field(const TreeGeometry& geom, const Thermo& thermo, double u, double v);

// Level sequence t_0..t_N taken verbatim (root = t_0); used for hand-built
// profiles such as the oscillating monotonicity example.
FieldPtr make_level_field(const TreeGeometry& geom, const Thermo& thermo,
                          std::vector<double> levels);

// Zachary field: level m carries t_m, root carries its compatibility value.
FieldPtr make_zachary_field(const TreeGeometry& geom, const Thermo& thermo,
                            std::vector<double> t_sequence);

// Weakly periodic field for H_A; vertices carry h1..h4 by the (child,
// parent) classes, the root its compatibility value.
FieldPtr make_weakly_periodic_field(const TreeGeometry& geom, const Thermo& thermo,
                                    const SubgroupSpec& a, const std::array<double, 4>& h);

class BgField;  // forward

// Bleher-Ganikhodjaev field on the half tree along the path given by the
// cyclic turn pattern (entries in 1..k, 1 = leftmost successor). Off-path
// vertices carry -h* (left) or +h* (right); on-path values are solved by
// backward fixed-point sweeps to cfg.tolerance.
std::shared_ptr<const BgField> make_bg_field(int k, const Thermo& thermo,
                                             const std::vector<int>& turn_pattern, int depth,
                                             const SolverConfig& cfg = {});

class BgField : public BoundaryField {
 public:
  BgField(TreeGeometry geom, Thermo thermo, std::vector<std::uint8_t> path,
          std::vector<double> on_path, double h_star, double terminal_residual, long sweeps);

  double value(const Word& x) const override;
  std::string kind() const override { return "bg"; }
  std::optional<std::vector<WeightedValue>> level_profile(int m) const override;
  int max_level() const override { return static_cast<int>(on_path_.size()) - 1; }

  const std::vector<double>& on_path_values() const { return on_path_; }
  double h_star() const { return h_star_; }
  double terminal_residual() const { return terminal_residual_; }
  long sweeps() const { return sweeps_; }

 private:
  std::vector<std::uint8_t> path_;  // path letters, path_[m] leads W_m -> W_{m+1}
  std::vector<double> on_path_;     // values at x_0..x_N
  double h_star_;
  double terminal_residual_;
  long sweeps_;
};

// Embedding of a compatible field from the order-k0 tree into the order-k
// tree, zero outside the embedded vertices. Requires k >= k0 + 1.
FieldPtr make_art_field(const FieldPtr& inner, int k);

// Explicit per-word field for tests and one-off constructions.
FieldPtr make_explicit_field(const TreeGeometry& geom, const Thermo& thermo,
                             std::function<double(const Word&)> fn, int max_level);

// sup over x in V_{n-1} of |h_x - sum_{y in S(x)} f(h_y, theta)|.
double check_compatibility(const BoundaryField& field, int n);

}  // namespace cti
