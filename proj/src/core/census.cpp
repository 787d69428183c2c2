#include "core/census.hpp"

#include <cmath>
#include <string>

namespace cti {

namespace {

void validate_kj(int k, int j, bool allow_full) {
  if (k < 2) throw UsageError("census: k must be >= 2");
  int jmax = allow_full ? k + 1 : k;
  if (j < 1 || j > jmax)
    throw UsageError("census: j out of range [1, " + std::to_string(jmax) + "]");
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw CapacityError("census: exact integer overflow");
  return out;
}

std::int64_t cmul(std::int64_t a, std::int64_t b) { return detail::checked_mul(a, b, "census"); }

// Exact division that asserts the identity actually divides.
std::int64_t exact_div(std::int64_t num, std::int64_t den) {
  if (den == 0 || num % den != 0) throw Error(ErrorKind::Usage, "census: identity division failed");
  return num / den;
}

}  // namespace

std::vector<CensusRow> census_recurrence(int k, int j, int n_max) {
  validate_kj(k, j, /*allow_full=*/true);
  if (n_max < 1) throw UsageError("census: n_max must be >= 1");
  std::vector<CensusRow> rows;
  rows.reserve(n_max);
  std::int64_t aa = k - j + 1, ab = 0, ba = j, bb = 0;
  rows.push_back({1, {aa, ab, ba, bb}});
  for (int n = 2; n <= n_max; ++n) {
    std::int64_t aa2 = checked_add(cmul(k - j, aa), cmul(k - j + 1, ab));
    std::int64_t ab2 = checked_add(cmul(j - 1, ba), cmul(j, bb));
    std::int64_t ba2 = checked_add(cmul(j - 1, ab), cmul(j, aa));
    std::int64_t bb2 = checked_add(cmul(k - j, bb), cmul(k - j + 1, ba));
    aa = aa2; ab = ab2; ba = ba2; bb = bb2;
    rows.push_back({n, {aa, ab, ba, bb}});
  }
  return rows;
}

namespace {

std::vector<CensusRow> traversal_impl(int k, int j, int n_max, Parity root_class,
                                      std::int64_t max_vertices) {
  validate_kj(k, j, /*allow_full=*/true);
  TreeGeometry geom{k, RootDegree::Full};
  if (geom.ball_size(n_max) > max_vertices)
    throw CapacityError("census traversal: ball exceeds the vertex guard");
  SubgroupSpec a = SubgroupSpec::first_j(j);

  std::vector<CensusRow> rows(n_max);
  for (int n = 1; n <= n_max; ++n) rows[n - 1].n = n;

  // walk reduced words, classifying each child edge against its parent
  struct Frame { Parity cls; int last; };
  std::vector<Frame> stack;
  stack.push_back({root_class, 0});
  std::vector<int> cursor(static_cast<std::size_t>(n_max) + 1, 1);

  while (!stack.empty()) {
    int depth = static_cast<int>(stack.size()) - 1;
    if (depth == n_max) { stack.pop_back(); continue; }
    int& cur = cursor[depth];
    int letter = cur;
    if (stack.back().last != 0 && letter == stack.back().last) ++letter;
    if (letter > k + 1) {
      cur = 1;
      stack.pop_back();
      continue;
    }
    cur = letter + 1;
    Parity parent = stack.back().cls;
    Parity child = a.contains(letter) ? (parent == Parity::H0 ? Parity::H1 : Parity::H0) : parent;
    rows[depth].c[static_cast<int>(edge_color_of(child, parent))]++;
    stack.push_back({child, letter});
  }
  return rows;
}

}  // namespace

std::vector<CensusRow> census_traversal(int k, int j, int n_max, std::int64_t max_vertices) {
  return traversal_impl(k, j, n_max, Parity::H0, max_vertices);
}

std::vector<CensusRow> census_traversal_root_h1(int k, int j, int n_max,
                                                std::int64_t max_vertices) {
  return traversal_impl(k, j, n_max, Parity::H1, max_vertices);
}

namespace {

using cplx = std::complex<double>;

// 3x3 linear solve with partial pivoting, complex arithmetic.
std::array<cplx, 3> solve3(std::array<std::array<cplx, 3>, 3> m, std::array<cplx, 3> rhs) {
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    std::swap(m[col], m[piv]);
    std::swap(rhs[col], rhs[piv]);
    for (int r = col + 1; r < 3; ++r) {
      cplx factor = m[r][col] / m[col][col];
      for (int c = col; c < 3; ++c) m[r][c] -= factor * m[col][c];
      rhs[r] -= factor * rhs[col];
    }
  }
  std::array<cplx, 3> x{};
  for (int r = 2; r >= 0; --r) {
    cplx acc = rhs[r];
    for (int c = r + 1; c < 3; ++c) acc -= m[r][c] * x[c];
    x[r] = acc / m[r][r];
  }
  return x;
}

}  // namespace

ClosedFormCoeffs census_coefficients(int k, int j) {
  validate_kj(k, j, /*allow_full=*/false);
  ClosedFormCoeffs out;
  double kd = k, jd = j;
  out.lambda[0] = cplx(-1.0 / kd, 0.0);
  cplx disc = cplx((kd - 2 * jd) * (kd - 2 * jd) - 2 * (kd + 2 * jd) + 1.0, 0.0);
  cplx root = std::sqrt(disc);
  out.lambda[1] = (cplx(kd - 2 * jd + 1.0) + root) / (2.0 * kd);
  out.lambda[2] = (cplx(kd - 2 * jd + 1.0) - root) / (2.0 * kd);

  // initial values of the shifted sequence p_n
  cplx p1 = cplx(kd * (kd - jd + 1.0) / 2.0);
  cplx p2 = cplx((kd - 2 * jd) * (kd - jd + 1.0) / 2.0);
  cplx p3 = cplx((kd * kd - 4 * kd + 2 + 2 * jd * jd - 2 * jd) * (kd - jd + 1.0) / (2 * kd));

  std::array<std::array<cplx, 3>, 3> m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m[r][c] = std::pow(out.lambda[c], r + 1);
  out.a = solve3(m, {p1, p2, p3});
  return out;
}

namespace {

// alpha_m from the characteristic-root representation; valid for m >= 0
// (the linear recurrence extends uniquely backward).
cplx alpha_closed(const ClosedFormCoeffs& cf, int k, int j, int m) {
  double kd = k;
  cplx lead = cplx((kd - j + 1.0) / 2.0) * std::pow(cplx(kd), m - 1);
  cplx tail = cf.a[0] * std::pow(cplx(-1.0), m) / (kd * kd);
  tail += cf.a[1] / (kd * kd) * std::pow(kd * cf.lambda[1], m);
  tail += cf.a[2] / (kd * kd) * std::pow(kd * cf.lambda[2], m);
  return lead + tail;
}

double take_real(cplx z, double scale, double imag_tol, const char* what) {
  if (std::abs(z.imag()) > imag_tol * std::max(1.0, scale))
    throw Error(ErrorKind::Convergence,
                std::string(what) + ": imaginary residue above tolerance");
  return z.real();
}

}  // namespace

std::array<double, 4> census_closed_form(int k, int j, int n, double imag_tol) {
  if (j == k + 1)
    throw DomainError("census_closed_form: j=k+1 follows the alternating branch");
  validate_kj(k, j, /*allow_full=*/false);
  if (n < 1) throw UsageError("census_closed_form: n must be >= 1");
  ClosedFormCoeffs cf = census_coefficients(k, j);

  cplx am1 = alpha_closed(cf, k, j, n - 1);
  cplx a0 = alpha_closed(cf, k, j, n);
  cplx a1 = alpha_closed(cf, k, j, n + 1);
  cplx a2 = alpha_closed(cf, k, j, n + 2);

  double kd = k, jd = j;
  cplx beta_n = (a1 - (kd - jd) * a0) / (kd - jd + 1.0);
  cplx beta_n1 = (a2 - (kd - jd) * a1) / (kd - jd + 1.0);
  cplx gamma_n = (jd - 1.0) / (kd - jd + 1.0) * (a0 - (kd - jd) * am1) + jd * am1;
  cplx delta_n = (beta_n1 - (jd - 1.0) * gamma_n) / jd;

  double scale = std::abs(a0);
  return {take_real(a0, scale, imag_tol, "census_closed_form"),
          take_real(beta_n, scale, imag_tol, "census_closed_form"),
          take_real(gamma_n, scale, imag_tol, "census_closed_form"),
          take_real(delta_n, scale, imag_tol, "census_closed_form")};
}

std::vector<CumulativeRow> cumulative_counts(int k, int j, int n_max) {
  auto rows = census_recurrence(k, j, n_max);
  std::vector<CumulativeRow> out(rows.size());
  std::array<std::int64_t, 4> acc{};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (int c = 0; c < 4; ++c) acc[c] = checked_add(acc[c], rows[i].c[c]);
    out[i] = {rows[i].n, acc};
  }
  return out;
}

std::vector<CumulativeRow> cumulative_counts_identities(int k, int j, int n_max) {
  validate_kj(k, j, /*allow_full=*/false);
  // needs alpha/beta two levels past n_max
  auto rows = census_recurrence(k, j, n_max + 2);
  std::vector<std::int64_t> alpha(n_max + 3, 0), beta(n_max + 3, 0), acum(n_max + 3, 0);
  for (int n = 1; n <= n_max + 2; ++n) {
    alpha[n] = rows[n - 1].c[0];
    beta[n] = rows[n - 1].c[1];
    acum[n] = checked_add(acum[n - 1], alpha[n]);
  }

  std::vector<CumulativeRow> out(n_max);
  std::vector<std::int64_t> bcum(n_max + 2, 0), ccum(n_max + 1, 0);
  for (int n = 1; n <= n_max + 1; ++n)
    bcum[n] = exact_div(acum[n] - alpha[1] + alpha[n + 1] - cmul(k - j, acum[n]), k - j + 1);
  for (int n = 1; n <= n_max; ++n) {
    // The printed identity for C_n omits the level-one boundary term; the
    // summation of the gamma recurrence carries a constant +1.
    std::int64_t q = exact_div(acum[n] - cmul(k - j, acum[n - 1]), k - j + 1);
    ccum[n] = checked_add(checked_add(1, cmul(j - 1, q)), cmul(j, acum[n - 1]));
    std::int64_t dcum =
        exact_div(bcum[n] - beta[1] + beta[n + 1] - cmul(j - 1, ccum[n]), j);
    out[n - 1] = {n, {acum[n], bcum[n], ccum[n], dcum}};
  }
  return out;
}

DensityLimits density_limits(int k, int j, int q) {
  validate_kj(k, j, /*allow_full=*/true);
  if (q < 0) throw UsageError("density_limits: q must be >= 0");
  double kd = k, jd = j;
  double kq = std::pow(kd, q);
  DensityLimits out;
  if (j <= k) {
    double per_aa = (kd - 1) * (kd - jd + 1) / (2 * (kd + 1) * kq * kd);
    double per_ab = (kd - 1) * jd / (2 * (kd + 1) * kq * kd);
    double cum_aa = (kd - jd + 1) / (2 * (kd + 1) * kq);
    double cum_ab = jd / (2 * (kd + 1) * kq);
    out.per_level_even = out.per_level_odd = {per_aa, per_ab, per_ab, per_aa};
    out.cumulative_even = out.cumulative_odd = {cum_aa, cum_ab, cum_ab, cum_aa};
    return out;
  }
  // j = k+1: AA and BB vanish, AB/BA alternate with the parity of n.
  double per = (kd - 1) / (kd * kq);
  double cum_hi = kd / ((kd + 1) * kq);
  double cum_lo = 1.0 / ((kd + 1) * kq);
  auto at_parity = [&](int parity) {
    // per-level: AB carries the mass on even n, BA on odd n
    std::array<double, 4> pl{0, parity == 0 ? per : 0.0, parity == 1 ? per : 0.0, 0};
    std::array<double, 4> cm{0, parity == 0 ? cum_hi : cum_lo, parity == 0 ? cum_lo : cum_hi, 0};
    return std::pair{pl, cm};
  };
  auto [pe, ce] = at_parity((0 - q % 2 + 2) % 2);
  auto [po, co] = at_parity((1 - q % 2 + 2) % 2);
  out.per_level_even = pe;
  out.per_level_odd = po;
  out.cumulative_even = ce;
  out.cumulative_odd = co;
  return out;
}

}  // namespace cti
