#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "core/tree.hpp"

namespace cti {

// Exact per-level edge-color counts over W_n-to-parent edges, in the order
// AA, AB, BA, BB (child class first). The root class is H0.
struct CensusRow {
  int n = 0;
  std::array<std::int64_t, 4> c{};  // indexed by EdgeColor

  std::int64_t sum() const { return c[0] + c[1] + c[2] + c[3]; }
};

struct CumulativeRow {
  int n = 0;
  std::array<std::int64_t, 4> c{};  // cumulative AA, AB, BA, BB over L_n
};

// Characteristic roots and matching coefficients of the third-order linear
// recurrence behind the AA count.
struct ClosedFormCoeffs {
  std::array<std::complex<double>, 3> lambda{};  // lambda[0] = -1/k
  std::array<std::complex<double>, 3> a{};       // A1, A2, A3
};

// Rows 1..N by the exact recurrence. Requires 2 <= k, 1 <= j <= k+1.
std::vector<CensusRow> census_recurrence(int k, int j, int n_max);

// Rows 1..N by walking reduced words and classifying each (x, parent) edge.
std::vector<CensusRow> census_traversal(int k, int j, int n_max,
                                        std::int64_t max_vertices = 100'000'000);

// Same traversal with the root assigned to H1; used for the mirror-symmetry
// check (swaps the roles of the two classes).
std::vector<CensusRow> census_traversal_root_h1(int k, int j, int n_max,
                                                std::int64_t max_vertices = 100'000'000);

ClosedFormCoeffs census_coefficients(int k, int j);

// Floating row n from the characteristic-root closed form; 1 <= j <= k.
// The imaginary residue of every entry is checked against imag_tol.
std::array<double, 4> census_closed_form(int k, int j, int n, double imag_tol = 1e-9);

// Cumulative counts computed by direct summation; the identity route is
// exposed separately so the two can be compared.
std::vector<CumulativeRow> cumulative_counts(int k, int j, int n_max);
std::vector<CumulativeRow> cumulative_counts_identities(int k, int j, int n_max);

// Closed-form density limits of Proposition A; for j <= k the even/odd
// entries coincide, for j = k+1 the alternating limits are returned.
struct DensityLimits {
  std::array<double, 4> per_level_even{};
  std::array<double, 4> per_level_odd{};
  std::array<double, 4> cumulative_even{};
  std::array<double, 4> cumulative_odd{};
};

DensityLimits density_limits(int k, int j, int q);

}  // namespace cti
