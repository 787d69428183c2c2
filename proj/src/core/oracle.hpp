#pragma once

#include <optional>
#include <vector>

#include "core/fields.hpp"

namespace cti {

struct ExactZ {
  double log_value = 0.0;
  std::optional<double> value;  // present when exp(log_value) is representable
  int n = 0;
};

// Exact partition function by summing all 2^{|V_n|} spin configurations;
// boundary field applied on W_n only. Requires |V_n| <= 24.
ExactZ brute_force_Z(const BoundaryField& field, int n);

// Z_n via the telescoping product: Z_n = 2 cosh(h_root) prod_{V_{n-1}} b(x),
// with interior fields generated from the W_n values by the recursion.
// Refuses when the declared field is incompatible beyond cfg.tolerance.
ExactZ product_Z(const BoundaryField& field, int n, const SolverConfig& cfg = {});

// max_{sigma on V_{n-1}} | sum_{omega on W_n} mu_n - mu_{n-1} | with
// mu_{n-1} built from the field's declared values. Requires |V_n| <= 22.
double marginalization_check(const BoundaryField& field, int n);

// -ln(Z_n) / (beta |V_n|); the product route works at any depth, the brute
// force route is available under its capacity limit.
double free_energy_direct(const BoundaryField& field, int n, bool use_brute = false,
                          const SolverConfig& cfg = {});

}  // namespace cti
