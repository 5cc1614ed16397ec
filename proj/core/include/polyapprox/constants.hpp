#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace polyapprox {

// Random inscribed constant alpha(n, j), n >= 2, 1 <= j <= n.
double alpha(int n, int j);
double log_alpha(int n, int j);

// beta(n, j) = alpha(n, j) j V_j(D_n) / (2n|D_n|) |dD_n|^{-2/(n-1)}. Overflows to inf for large n; use log_beta.
double beta(int n, int j);
double log_beta(int n, int j);
// Separate closed form for beta(n, n).
double beta_nn_closed_form(int n);

// Limit of N^{2/(n-1)} E Delta_j(D_n, P_N) for uniform points: (j V_j(D_n) / 2) alpha(n, j).
double random_inscribed_limit(int n, int j);

struct Interval {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  bool exact() const { return lo == hi; }
  double mid() const { return 0.5 * (lo + hi); }
};

// Tiling numbers del_{n-1}, div_{n-1}, ldel_{n-1}, ldiv_{n-1} for ambient dimension n.
// Exact for n = 2, 3; for n >= 4 bands: del from the Mankiewicz-Schutt bounds, div in (0, del_hi],
// ldel and ldiv only known up to unspecified absolute constants, reported as (0, inf).
struct TilingNumbers {
  int n = 0;
  Interval del, div, ldel, ldiv;
  bool known = false;
};

TilingNumbers tiling_numbers(int n);

// W^(D_n) = sum_j j V_j(D_n), and the product form V_1(D_n) W(D_{n-1}).
double what_hat(int n);
double what_hat_product(int n);

// One record per (inequality, n); margin = rhs - lhs at the worst j, in the stated scale.
struct InequalityRecord {
  std::string name;
  int n = 0;
  int worst_j = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool log_scale = false;
  bool pass = false;
};

struct InequalityReport {
  int n_max = 0;
  std::vector<InequalityRecord> records;
  std::size_t failures() const;
  std::vector<std::string> failing_names() const;
};

constexpr double kInequalitySlack = 1e-12;

// Verifies the asymptotic-estimate inequalities for 2 <= n <= n_max (n_max <= 2000).
InequalityReport appendix_b_suite(int n_max);

}  // namespace polyapprox
