#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "polyapprox/errors.hpp"
#include "polyapprox/lp.hpp"
#include "polyapprox/polytope.hpp"

namespace polyapprox {

Mat Polytope::facet_matrix() const {
  Mat A(static_cast<Eigen::Index>(facets_.size()), n_);
  for (std::size_t i = 0; i < facets_.size(); ++i) A.row(static_cast<Eigen::Index>(i)) = facets_[i].normal.transpose();
  return A;
}

Vec Polytope::facet_offsets() const {
  Vec b(static_cast<Eigen::Index>(facets_.size()));
  for (std::size_t i = 0; i < facets_.size(); ++i) b[static_cast<Eigen::Index>(i)] = facets_[i].offset;
  return b;
}

std::vector<Halfspace> Polytope::halfspaces() const {
  std::vector<Halfspace> out;
  out.reserve(facets_.size());
  for (const auto& f : facets_) out.push_back({f.normal, f.offset});
  return out;
}

double Polytope::max_violation(const Vec& x) const {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& f : facets_) worst = std::max(worst, f.normal.dot(x) - f.offset);
  return worst;
}

bool Polytope::contains(const Vec& x, double tol) const {
  for (const auto& f : facets_)
    if (f.normal.dot(x) - f.offset > tol) return false;
  return true;
}

double Polytope::volume() const {
  if (empty()) return 0.0;
  if (n_ == 2) {
    double a = 0.0;
    for (const auto& f : facets_) {
      const Vec& p = vertices_[static_cast<std::size_t>(f.vertices[0])];
      const Vec& q = vertices_[static_cast<std::size_t>(f.vertices[1])];
      // Signed contribution from the origin; edge orientation fixed by the outward normal.
      const double cr = p[0] * q[1] - p[1] * q[0];
      const double sgn = (f.normal[0] * (q[1] - p[1]) - f.normal[1] * (q[0] - p[0])) > 0.0 ? 1.0 : -1.0;
      a += sgn * cr;
    }
    return std::abs(a) / 2.0;
  }
  double v = 0.0;
  const double fact = std::tgamma(static_cast<double>(n_) + 1.0);
  Mat d(n_, n_);
  for (const auto& s : tri_simplices_) {
    for (int i = 0; i < n_; ++i) d.col(i) = tri_points_[static_cast<std::size_t>(s[static_cast<std::size_t>(i)])] - interior_;
    v += std::abs(d.determinant());
  }
  return v / fact;
}

double Polytope::surface_area() const {
  if (empty()) return 0.0;
  double a = 0.0;
  const double fact = std::tgamma(static_cast<double>(n_));
  Mat d(n_, n_ - 1);
  for (const auto& s : tri_simplices_) {
    const Vec& p0 = tri_points_[static_cast<std::size_t>(s[0])];
    for (int i = 1; i < n_; ++i) d.col(i - 1) = tri_points_[static_cast<std::size_t>(s[static_cast<std::size_t>(i)])] - p0;
    a += std::sqrt(std::max((d.transpose() * d).determinant(), 0.0));
  }
  return a / fact;
}

double Polytope::support(const Vec& u) const {
  double h = -std::numeric_limits<double>::infinity();
  for (const auto& v : vertices_) h = std::max(h, v.dot(u));
  return h;
}

Vec Polytope::bbox_lo() const {
  Vec lo = vertices_[0];
  for (const auto& v : vertices_) lo = lo.cwiseMin(v);
  return lo;
}

Vec Polytope::bbox_hi() const {
  Vec hi = vertices_[0];
  for (const auto& v : vertices_) hi = hi.cwiseMax(v);
  return hi;
}

double Polytope::scale() const {
  double r = 0.0;
  for (const auto& v : vertices_) r = std::max(r, (v - interior_).norm());
  return r;
}

Points Polytope::ccw_polygon() const {
  Points out = vertices_;
  const Vec c = interior_;
  std::sort(out.begin(), out.end(), [&](const Vec& a, const Vec& b) {
    return std::atan2(a[1] - c[1], a[0] - c[0]) < std::atan2(b[1] - c[1], b[0] - c[0]);
  });
  return out;
}

Polytope Polytope::transformed(const Mat& linear, const Vec& shift) const {
  Points pts;
  pts.reserve(vertices_.size());
  for (const auto& v : vertices_) pts.push_back(linear * v + shift);
  return convex_hull(pts);
}

Polytope Polytope::scaled(double s) const { return transformed(s * Mat::Identity(n_, n_), Vec::Zero(n_)); }

Polytope Polytope::translated(const Vec& t) const { return transformed(Mat::Identity(n_, n_), t); }

Polytope halfspace_intersection(const std::vector<Halfspace>& halfspaces, const Polytope& bounding_box) {
  const int n = bounding_box.dim();
  std::vector<Halfspace> all;
  all.reserve(halfspaces.size() + bounding_box.facets().size());
  for (const auto& h : halfspaces) {
    if (h.normal.size() != n) fail(ErrorCode::DegenerateInput, "halfspace dimension mismatch");
    const double nrm = h.normal.norm();
    if (!(nrm > 0.0)) fail(ErrorCode::DegenerateInput, "zero halfspace normal");
    all.push_back({h.normal / nrm, h.offset / nrm});
  }
  for (const auto& f : bounding_box.facets()) all.push_back({f.normal, f.offset});

  Mat A(static_cast<Eigen::Index>(all.size()), n);
  Vec b(static_cast<Eigen::Index>(all.size()));
  for (std::size_t i = 0; i < all.size(); ++i) {
    A.row(static_cast<Eigen::Index>(i)) = all[i].normal.transpose();
    b[static_cast<Eigen::Index>(i)] = all[i].offset;
  }
  const double scale = std::max(bounding_box.scale(), 1e-300);
  const ChebyshevBall cb = chebyshev_center(A, b, 10.0 * scale);
  if (!(cb.radius > 1e-10 * scale)) fail(ErrorCode::EmptyIntersection, "halfspaces have no common interior point");

  Points dual;
  dual.reserve(all.size());
  for (const auto& h : all) {
    const double slack = h.offset - h.normal.dot(cb.center);
    dual.push_back(h.normal / slack);
  }
  const Polytope dual_hull = convex_hull(dual);
  Points primal;
  primal.reserve(dual_hull.facets().size());
  for (const auto& f : dual_hull.facets()) primal.push_back(cb.center + f.normal / f.offset);
  return convex_hull(primal);
}

Polytope intersect(const Polytope& p, const Polytope& q) {
  try {
    return halfspace_intersection(q.halfspaces(), p);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::EmptyIntersection || e.code() == ErrorCode::DegenerateInput) return Polytope{};
    throw;
  }
}

Polytope make_box(const Vec& lo, const Vec& hi) {
  const int n = static_cast<int>(lo.size());
  Points pts;
  for (long mask = 0; mask < (1L << n); ++mask) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = (mask >> i) & 1 ? hi[i] : lo[i];
    pts.push_back(v);
  }
  return convex_hull(pts);
}

Polytope make_cube(int n, double lo, double hi) { return make_box(Vec::Constant(n, lo), Vec::Constant(n, hi)); }

Polytope make_simplex(int n) {
  Points pts{Vec::Zero(n)};
  for (int i = 0; i < n; ++i) pts.push_back(Vec::Unit(n, i));
  return convex_hull(pts);
}

Polytope make_cross_polytope(int n, double r) {
  Points pts;
  for (int i = 0; i < n; ++i) {
    pts.push_back(r * Vec::Unit(n, i));
    pts.push_back(-r * Vec::Unit(n, i));
  }
  return convex_hull(pts);
}

Polytope make_regular_polygon(int N, double circumradius, double phase) {
  if (N < 3 || !(circumradius > 0.0)) fail(ErrorCode::DomainError, "regular polygon needs N >= 3 and R > 0");
  Points pts;
  for (int k = 0; k < N; ++k) {
    const double t = phase + 2.0 * std::numbers::pi * k / N;
    Vec v(2);
    v << circumradius * std::cos(t), circumradius * std::sin(t);
    pts.push_back(v);
  }
  return convex_hull(pts);
}

Polytope make_circumscribed_polygon(int N, double r, double phase) {
  if (N < 3 || !(r > 0.0)) fail(ErrorCode::DomainError, "circumscribed polygon needs N >= 3 and r > 0");
  return make_regular_polygon(N, r / std::cos(std::numbers::pi / N), phase + std::numbers::pi / N);
}

Polytope make_triangle_T(double h) {
  if (!(h > -1.0)) fail(ErrorCode::DomainError, "T(h) needs h > -1");
  return make_regular_polygon(3, 1.0 + h, std::numbers::pi / 2.0);
}

Polytope make_regular_simplex(int n) {
  // Standard simplex in R^{n+1} projected onto the hyperplane sum = 1, then scaled to unit circumradius.
  Mat E = Mat::Identity(n + 1, n + 1);
  Vec c = Vec::Constant(n + 1, 1.0 / (n + 1));
  Mat D(n + 1, n + 1);
  for (int i = 0; i <= n; ++i) D.col(i) = E.col(i) - c;
  Eigen::HouseholderQR<Mat> qr(D.leftCols(n));
  Mat Q = qr.householderQ() * Mat::Identity(n + 1, n);
  Points pts;
  for (int i = 0; i <= n; ++i) {
    Vec p = Q.transpose() * D.col(i);
    pts.push_back(p / p.norm());
  }
  return convex_hull(pts);
}

}  // namespace polyapprox
