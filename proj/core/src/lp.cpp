#include "polyapprox/lp.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace polyapprox {

namespace {

constexpr double kEps = 1e-11;

struct Tableau {
  Mat t;                  // rows 0..m-1 constraints, row m objective; last column rhs
  std::vector<int> basis;  // basic column per constraint row
  int m = 0;
  int cols = 0;  // number of variable columns

  void pivot(int r, int c) {
    t.row(r) /= t(r, c);
    for (int i = 0; i <= m; ++i) {
      if (i == r) continue;
      const double f = t(i, c);
      if (f != 0.0) t.row(i) -= f * t.row(r);
    }
    basis[static_cast<std::size_t>(r)] = c;
  }

  // Returns false when unbounded. Columns >= allowed are never entered.
  bool run(int allowed) {
    for (int iter = 0; iter < 50000; ++iter) {
      int enter = -1;
      for (int j = 0; j < allowed; ++j)
        if (t(m, j) < -kEps) {
          enter = j;
          break;
        }
      if (enter < 0) return true;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        const double a = t(i, enter);
        if (a > kEps) {
          const double ratio = t(i, cols) / a;
          if (ratio < best - 1e-14 ||
              (std::abs(ratio - best) <= 1e-14 && leave >= 0 &&
               basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
            best = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
    return true;
  }
};

}  // namespace

// Solved through the dual  min b.y  s.t.  A^T y = c, y >= 0, whose tableau has only
// (n + 1) rows; the primal point is recovered from the optimal basis.
LpResult lp_maximize(const Vec& c, const Mat& A, const Vec& b) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  const int cols = m + n;
  Tableau tb;
  tb.m = n;
  tb.cols = cols;
  tb.t = Mat::Zero(n + 1, cols + 1);
  tb.basis.assign(static_cast<std::size_t>(n), -1);
  for (int r = 0; r < n; ++r) {
    const double sgn = c[r] < 0.0 ? -1.0 : 1.0;
    tb.t.block(r, 0, 1, m) = sgn * A.col(r).transpose();
    tb.t(r, m + r) = 1.0;
    tb.t(r, cols) = sgn * c[r];
    tb.basis[static_cast<std::size_t>(r)] = m + r;
  }
  LpResult res;
  for (int r = 0; r < n; ++r) tb.t.row(n) -= tb.t.row(r);
  for (int r = 0; r < n; ++r) tb.t(n, m + r) = 0.0;
  tb.run(cols);
  if (tb.t(n, cols) < -1e-9 * std::max(1.0, c.cwiseAbs().maxCoeff())) {
    // Dual infeasible: the primal is unbounded (or infeasible).
    res.status = LpStatus::Unbounded;
    return res;
  }
  for (int r = 0; r < n; ++r) {
    if (tb.basis[static_cast<std::size_t>(r)] < m) continue;
    int best = -1;
    double mag = 1e-9;
    for (int j = 0; j < m; ++j)
      if (std::abs(tb.t(r, j)) > mag) {
        mag = std::abs(tb.t(r, j));
        best = j;
      }
    if (best >= 0) tb.pivot(r, best);
  }
  tb.t.row(n).setZero();
  for (int j = 0; j < m; ++j) tb.t(n, j) = b[j];
  for (int r = 0; r < n; ++r) {
    const int bc = tb.basis[static_cast<std::size_t>(r)];
    const double f = tb.t(n, bc);
    if (f != 0.0) tb.t.row(n) -= f * tb.t.row(r);
  }
  if (!tb.run(m)) {
    // Dual unbounded below: the primal is infeasible.
    res.status = LpStatus::Infeasible;
    return res;
  }
  Mat AB(n, n);
  Vec bB(n);
  for (int r = 0; r < n; ++r) {
    const int bc = tb.basis[static_cast<std::size_t>(r)];
    if (bc >= m) {
      res.status = LpStatus::Unbounded;
      return res;
    }
    AB.row(r) = A.row(bc);
    bB[r] = b[bc];
  }
  res.x = AB.fullPivLu().solve(bB);
  res.status = LpStatus::Optimal;
  res.value = c.dot(res.x);
  return res;
}

ChebyshevBall chebyshev_center(const Mat& A, const Vec& b, double radius_cap) {
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  Mat a(m + 1, n + 1);
  Vec rhs(m + 1);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double nrm = A.row(i).norm();
    a.block(i, 0, 1, n) = A.row(i) / nrm;
    a(i, n) = 1.0;
    rhs[i] = b[i] / nrm;
  }
  a.row(m).setZero();
  a(m, n) = 1.0;
  rhs[m] = radius_cap;
  Vec c = Vec::Zero(n + 1);
  c[n] = 1.0;
  const LpResult r = lp_maximize(c, a, rhs);
  ChebyshevBall out;
  if (r.status != LpStatus::Optimal) {
    out.center = Vec::Zero(n);
    out.radius = -1.0;
    return out;
  }
  out.center = r.x.head(n);
  out.radius = r.x[n];
  return out;
}

}  // namespace polyapprox
