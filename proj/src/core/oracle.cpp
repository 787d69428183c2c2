#include "core/oracle.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "core/thermo.hpp"

namespace cti {

namespace {

// BFS-indexed ball: vertex 0 is the root, levels contiguous.
struct BallIndex {
  std::vector<int> parent;       // parent index per vertex (-1 for root)
  std::vector<int> level_begin;  // size n+2, level m occupies [begin[m], begin[m+1])
  std::vector<double> h;         // declared field values
};

BallIndex build_ball(const BoundaryField& field, int n, int max_vertices) {
  const TreeGeometry& geom = field.geometry();
  if (geom.ball_size_any(n) > max_vertices) {
    std::ostringstream msg;
    msg << "oracle: |V_" << n << "| = " << geom.ball_size_any(n)
        << " exceeds the enumeration capacity of " << max_vertices;
    throw CapacityError(msg.str());
  }
  BallIndex ball;
  ball.level_begin.assign(n + 2, 0);
  std::vector<Word> frontier{Word{}};
  std::vector<int> frontier_idx{0};
  ball.parent.push_back(-1);
  ball.h.push_back(field.value(Word{}));
  ball.level_begin[1] = 1;
  for (int m = 1; m <= n; ++m) {
    std::vector<Word> next;
    std::vector<int> next_idx;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      const Word& w = frontier[i];
      int limit = w.is_root() ? geom.root_degree() : geom.k + 1;
      for (int letter = 1; letter <= limit; ++letter) {
        if (!w.is_root() && letter == w.letters.back()) continue;
        Word child = w;
        child.letters.push_back(static_cast<std::uint8_t>(letter));
        int idx = static_cast<int>(ball.parent.size());
        ball.parent.push_back(frontier_idx[i]);
        ball.h.push_back(field.value(child));
        next.push_back(std::move(child));
        next_idx.push_back(idx);
      }
    }
    frontier = std::move(next);
    frontier_idx = std::move(next_idx);
    ball.level_begin[m + 1] = static_cast<int>(ball.parent.size());
  }
  return ball;
}

ExactZ finish_z(double log_value, int n) {
  ExactZ out;
  out.log_value = log_value;
  out.n = n;
  if (log_value < 700.0) out.value = std::exp(log_value);
  return out;
}

}  // namespace

ExactZ brute_force_Z(const BoundaryField& field, int n) {
  if (n < 0) throw UsageError("brute_force_Z: negative level");
  BallIndex ball = build_ball(field, n, 24);
  int nv = static_cast<int>(ball.parent.size());
  int w_begin = ball.level_begin[n];
  double bJ = field.thermo().beta * field.thermo().J;

  // shift by the maximal attainable exponent to keep exp() tame
  double e_max = 0.0;
  for (int v = 1; v < nv; ++v) e_max += std::abs(bJ);
  for (int v = w_begin; v < nv; ++v) e_max += std::abs(ball.h[v]);

  double sum = 0.0, comp = 0.0;  // Kahan
  const std::uint32_t total = 1u << nv;
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    double energy = 0.0;
    for (int v = 1; v < nv; ++v) {
      int s = (mask >> v) & 1u ? 1 : -1;
      int sp = (mask >> ball.parent[v]) & 1u ? 1 : -1;
      energy += bJ * s * sp;
    }
    for (int v = w_begin; v < nv; ++v)
      energy += ball.h[v] * (((mask >> v) & 1u) ? 1.0 : -1.0);
    double term = std::exp(energy - e_max);
    double y = term - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return finish_z(std::log(sum) + e_max, n);
}

ExactZ product_Z(const BoundaryField& field, int n, const SolverConfig& cfg) {
  if (n < 1) throw UsageError("product_Z: depth must be >= 1");
  if (field.max_level() >= 0 && n > field.max_level())
    throw UsageError("product_Z: field not evaluable on V_n");
  const TreeGeometry& geom = field.geometry();
  if (geom.ball_size_any(n) > 100'000'000)
    throw CapacityError("product_Z: ball exceeds the vertex guard");
  const Thermo& thermo = field.thermo();
  double theta = thermo.theta();

  // push the W_n values inward; the telescoping identity is exact for the
  // induced interior fields
  double log_accum = 0.0;  // beta * sum over non-root vertices of a(h_induced)
  double declared_dev = 0.0;
  Word w;
  std::function<double(Word&)> induced = [&](Word& x) -> double {
    if (x.level() == n) {
      double val = field.value(x);
      log_accum += thermo.beta * local_term_a(val, thermo);
      return val;
    }
    int limit = x.is_root() ? geom.root_degree() : geom.k + 1;
    double sum = 0.0;
    for (int letter = 1; letter <= limit; ++letter) {
      if (!x.is_root() && letter == x.letters.back()) continue;
      x.letters.push_back(static_cast<std::uint8_t>(letter));
      sum += f_theta(induced(x), theta);
      x.letters.pop_back();
    }
    declared_dev = std::max(declared_dev, std::abs(sum - field.value(x)));
    if (!x.is_root()) log_accum += thermo.beta * local_term_a(sum, thermo);
    return sum;
  };
  double h_root = induced(w);
  double refuse_at = std::max(cfg.tolerance, 1e-12);
  if (declared_dev > refuse_at) {
    std::ostringstream msg;
    msg << "product_Z: field incompatible on V_" << n - 1 << " (residual " << declared_dev
        << " > " << refuse_at << "); the telescoping identity does not hold";
    throw DomainError(msg.str());
  }
  double log_z = std::log(2.0 * std::cosh(h_root)) + log_accum;
  return finish_z(log_z, n);
}

double marginalization_check(const BoundaryField& field, int n) {
  if (n < 1) throw UsageError("marginalization_check: depth must be >= 1");
  BallIndex ball = build_ball(field, n, 22);
  int nv = static_cast<int>(ball.parent.size());
  int inner_nv = ball.level_begin[n];        // |V_{n-1}|
  int w_begin = ball.level_begin[n];         // W_n starts here
  int w_inner_begin = ball.level_begin[n - 1];
  double bJ = field.thermo().beta * field.thermo().J;

  // marginal of mu_n over the W_n spins, indexed by the V_{n-1} configuration
  std::vector<double> marg(1u << inner_nv, 0.0);
  double z_n = 0.0;
  const std::uint32_t total = 1u << nv;
  const std::uint32_t inner_mask = (1u << inner_nv) - 1u;
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    double energy = 0.0;
    for (int v = 1; v < nv; ++v) {
      int s = (mask >> v) & 1u ? 1 : -1;
      int sp = (mask >> ball.parent[v]) & 1u ? 1 : -1;
      energy += bJ * s * sp;
    }
    for (int v = w_begin; v < nv; ++v)
      energy += ball.h[v] * (((mask >> v) & 1u) ? 1.0 : -1.0);
    double weight = std::exp(energy);
    z_n += weight;
    marg[mask & inner_mask] += weight;
  }

  // mu_{n-1} with the field's declared values on W_{n-1}
  std::vector<double> mu_prev(1u << inner_nv, 0.0);
  double z_prev = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << inner_nv); ++mask) {
    double energy = 0.0;
    for (int v = 1; v < inner_nv; ++v) {
      int s = (mask >> v) & 1u ? 1 : -1;
      int sp = (mask >> ball.parent[v]) & 1u ? 1 : -1;
      energy += bJ * s * sp;
    }
    for (int v = w_inner_begin; v < inner_nv; ++v)
      energy += ball.h[v] * (((mask >> v) & 1u) ? 1.0 : -1.0);
    double weight = std::exp(energy);
    z_prev += weight;
    mu_prev[mask] = weight;
  }

  double worst = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << inner_nv); ++mask)
    worst = std::max(worst, std::abs(marg[mask] / z_n - mu_prev[mask] / z_prev));
  return worst;
}

double free_energy_direct(const BoundaryField& field, int n, bool use_brute,
                          const SolverConfig& cfg) {
  ExactZ z = use_brute ? brute_force_Z(field, n) : product_Z(field, n, cfg);
  double vn = static_cast<double>(field.geometry().ball_size_any(n));
  return -z.log_value / (field.thermo().beta * vn);
}

}  // namespace cti
