#pragma once

#include "polyapprox/linalg.hpp"

namespace polyapprox {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Vec x;
  double value = 0.0;
};

// maximize c.x subject to A x <= b, x free. Dense two-phase simplex with Bland's rule.
LpResult lp_maximize(const Vec& c, const Mat& A, const Vec& b);

struct ChebyshevBall {
  Vec center;
  double radius = 0.0;  // <= 0 when the set has empty interior
};

// Largest ball inside {x : A x <= b}; rows of A need not be normalized.
// `radius_cap` keeps the problem bounded for unbounded sets.
ChebyshevBall chebyshev_center(const Mat& A, const Vec& b, double radius_cap = 1e6);

}  // namespace polyapprox
