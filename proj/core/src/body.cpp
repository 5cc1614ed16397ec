#include "polyapprox/body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "polyapprox/errors.hpp"
#include "polyapprox/lp.hpp"

namespace polyapprox {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string vec_str(const Vec& v) {
  std::ostringstream os;
  os.precision(17);
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

// Active-set refinement seeded by the Dykstra multipliers; accepts only KKT points.
bool polish_active_set(const Vec& x, const Mat& A, const Vec& b, const Vec& lambda, double tol, Vec& y) {
  std::vector<Eigen::Index> act;
  for (Eigen::Index i = 0; i < lambda.size(); ++i)
    if (lambda[i] > 0.0) act.push_back(i);
  const Eigen::Index m = A.rows();
  for (Eigen::Index iter = 0; iter < 2 * m + 2; ++iter) {
    if (act.empty()) return false;
    Mat As(static_cast<Eigen::Index>(act.size()), A.cols());
    Vec bs(static_cast<Eigen::Index>(act.size()));
    for (std::size_t k = 0; k < act.size(); ++k) {
      As.row(static_cast<Eigen::Index>(k)) = A.row(act[k]);
      bs[static_cast<Eigen::Index>(k)] = b[act[k]];
    }
    const Vec mu = (As * As.transpose()).completeOrthogonalDecomposition().solve(As * x - bs);
    Eigen::Index worst_mu = 0;
    if (mu.minCoeff(&worst_mu) < -1e-12) {
      act.erase(act.begin() + worst_mu);
      continue;
    }
    const Vec cand = x - As.transpose() * mu;
    if ((As * cand - bs).cwiseAbs().maxCoeff() > tol) return false;
    Eigen::Index worst = 0;
    if ((A * cand - b).maxCoeff(&worst) > tol) {
      act.push_back(worst);
      continue;
    }
    y = cand;
    return true;
  }
  return false;
}

// Dykstra specialised to halfspaces (increments are multiples of the normals), with an
// active-set polish once the multipliers have settled.
Vec dykstra_halfspaces(const Vec& x, const Mat& A, const Vec& b, double scale) {
  const Eigen::Index m = A.rows();
  Vec y = x;
  Vec lambda = Vec::Zero(m);
  const double tol = 1e-10 * std::max(1.0, scale);
  for (int sweep = 1; sweep <= 10000; ++sweep) {
    for (Eigen::Index i = 0; i < m; ++i) {
      const auto a = A.row(i);
      const double li = lambda[i];
      const double viol = a.dot(y) + li - b[i];  // a.(y + li a) - b with |a| = 1
      const double ln = std::max(0.0, viol);
      if (ln != li) y.noalias() -= (ln - li) * a.transpose();
      lambda[i] = ln;
    }
    if (sweep % 4 == 0 || sweep < 4) {
      Vec out;
      if (polish_active_set(x, A, b, lambda, tol, out)) return out;
    }
  }
  fail(ErrorCode::NonConvergence, "polytope projection did not converge within 10^4 sweeps");
}

// Nearest point of the axis-aligned ellipsoid with semi-axes a; Newton on the multiplier with bisection safeguard.
Vec project_to_ellipsoid(const Vec& x, const Vec& a) {
  if (x.cwiseQuotient(a).squaredNorm() <= 1.0) return x;
  const Eigen::Index n = a.size();
  const Vec a2 = a.cwiseProduct(a);
  auto g = [&](double t) { return (a.cwiseProduct(x).cwiseQuotient(a2 + Vec::Constant(n, t))).squaredNorm() - 1.0; };
  double lo = 0.0;
  double hi = a.cwiseProduct(x).norm();
  while (g(hi) > 0.0) hi *= 2.0;
  double t = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const Vec q = a.cwiseProduct(x).cwiseQuotient(a2 + Vec::Constant(n, t));
    const double gv = q.squaredNorm() - 1.0;
    if (gv > 0.0) lo = t; else hi = t;
    // Newton step: g'(t) = -2 sum q_i^2 / (a_i^2 + t)
    const double dg = -2.0 * (q.array().square() / (a2.array() + t)).sum();
    double tn = t - gv / dg;
    if (!(tn > lo && tn < hi)) tn = 0.5 * (lo + hi);
    if (std::abs(tn - t) <= 1e-16 * std::max(1.0, t)) {
      t = tn;
      break;
    }
    t = tn;
  }
  Vec y(n);
  for (Eigen::Index i = 0; i < n; ++i) y[i] = a2[i] * x[i] / (a2[i] + t);
  return y;
}

double polytope_radial_from(const Polytope& p, const Vec& c, const Vec& u) {
  double t = kInf;
  for (const auto& f : p.facets()) {
    const double au = f.normal.dot(u);
    if (au > 1e-15) t = std::min(t, (f.offset - f.normal.dot(c)) / au);
  }
  return std::max(t, 0.0);
}

}  // namespace

std::string_view to_string(BodyKind kind) noexcept {
  switch (kind) {
    case BodyKind::Ball: return "ball";
    case BodyKind::Ellipsoid: return "ellipsoid";
    case BodyKind::Cap: return "cap";
    case BodyKind::Polytope: return "polytope";
    case BodyKind::Intersection: return "intersection";
  }
  return "unknown";
}

double ConvexBody::radial(const Vec& u) const {
  if (!origin_interior()) fail(ErrorCode::OriginNotInterior, "radial function needs the origin in the interior");
  return radial_from(Vec::Zero(n_), u);
}

double ConvexBody::dist(const Vec& x) const {
  if (contains(x, 0.0)) return 0.0;
  return (x - nearest_point(x)).norm();
}

double ConvexBody::rdist(const Vec& x) const {
  const double r = x.norm();
  if (r == 0.0) {
    if (!origin_interior()) fail(ErrorCode::OriginNotInterior, "rdist needs the origin in the interior");
    return 0.0;
  }
  return std::max(0.0, r - radial(x / r));
}

Vec ConvexBody::bbox_lo() const {
  Vec lo(n_);
  for (int i = 0; i < n_; ++i) lo[i] = -support(-Vec::Unit(n_, i));
  return lo;
}

Vec ConvexBody::bbox_hi() const {
  Vec hi(n_);
  for (int i = 0; i < n_; ++i) hi[i] = support(Vec::Unit(n_, i));
  return hi;
}

double ConvexBody::axis_diameter() const { return (bbox_hi() - bbox_lo()).maxCoeff(); }

// ---------------------------------------------------------------- Ball

Ball::Ball(Vec center, double radius) : ConvexBody(static_cast<int>(center.size())), center_(std::move(center)), r_(radius) {
  if (!(r_ > 0.0)) fail(ErrorCode::DomainError, "ball radius must be positive");
}

std::string Ball::describe() const { return "ball(center=[" + vec_str(center_) + "], r=" + std::to_string(r_) + ")"; }

bool Ball::contains(const Vec& x, double tol) const { return (x - center_).norm() <= r_ + tol; }

double Ball::support(const Vec& u) const { return center_.dot(u) + r_ * u.norm(); }

Vec Ball::nearest_point(const Vec& x) const {
  const Vec d = x - center_;
  const double nd = d.norm();
  if (nd <= r_) return x;
  return center_ + d * (r_ / nd);
}

double Ball::radial_from(const Vec& c, const Vec& u) const {
  const Vec d = c - center_;
  const double uu = u.squaredNorm();
  const double du = d.dot(u);
  const double disc = du * du - uu * (d.squaredNorm() - r_ * r_);
  return std::max(0.0, (-du + std::sqrt(std::max(disc, 0.0))) / uu);
}

bool Ball::origin_interior() const { return center_.norm() < r_; }

// ----------------------------------------------------------- Ellipsoid

Ellipsoid::Ellipsoid(Vec semi_axes) : ConvexBody(static_cast<int>(semi_axes.size())), a_(std::move(semi_axes)) {
  if (!(a_.minCoeff() > 0.0)) fail(ErrorCode::DomainError, "ellipsoid semi-axes must be positive");
}

std::string Ellipsoid::describe() const { return "ellipsoid(axes=[" + vec_str(a_) + "])"; }

bool Ellipsoid::contains(const Vec& x, double tol) const {
  // Compare the gauge so the tolerance is roughly a length.
  const double g = std::sqrt(x.cwiseQuotient(a_).squaredNorm());
  return g <= 1.0 + tol / a_.minCoeff();
}

double Ellipsoid::support(const Vec& u) const { return u.cwiseProduct(a_).norm(); }

Vec Ellipsoid::nearest_point(const Vec& x) const { return project_to_ellipsoid(x, a_); }

double Ellipsoid::radial_from(const Vec& c, const Vec& u) const {
  const Vec ia2 = a_.cwiseProduct(a_).cwiseInverse();
  const double A = u.cwiseProduct(u).dot(ia2);
  const double B = 2.0 * c.cwiseProduct(u).dot(ia2);
  const double C = c.cwiseProduct(c).dot(ia2) - 1.0;
  const double disc = B * B - 4.0 * A * C;
  return std::max(0.0, (-B + std::sqrt(std::max(disc, 0.0))) / (2.0 * A));
}

Vec Ellipsoid::normal_at(const Vec& x) const {
  return x.cwiseQuotient(a_.cwiseProduct(a_)).normalized();
}

Vec Ellipsoid::principal_curvatures(const Vec& x) const {
  const int n = dim();
  const Vec mx = x.cwiseQuotient(a_.cwiseProduct(a_));
  const Vec nu = mx.normalized();
  Eigen::HouseholderQR<Mat> qr(nu);
  Mat Q = qr.householderQ();
  Mat T = Q.rightCols(n - 1);
  Mat M = a_.cwiseProduct(a_).cwiseInverse().asDiagonal();
  Mat S = T.transpose() * M * T / mx.norm();
  Eigen::SelfAdjointEigenSolver<Mat> es(S);
  return es.eigenvalues();
}

// ----------------------------------------------------------------- Cap

Cap::Cap(int n, double eps, Vec axis) : ConvexBody(n), eps_(eps), axis_(axis.normalized()) {
  if (!(eps > 0.0 && eps < 1.0)) fail(ErrorCode::DomainError, "cap height must lie in (0, 1)");
}

std::string Cap::describe() const { return "cap(eps=" + std::to_string(eps_) + ", axis=[" + vec_str(axis_) + "])"; }

bool Cap::contains(const Vec& x, double tol) const { return x.norm() <= 1.0 + tol && axis_.dot(x) >= eps_ - tol; }

double Cap::support(const Vec& u) const {
  const double nu = u.norm();
  const double au = axis_.dot(u);
  if (au >= eps_ * nu) return nu;
  const double perp = std::sqrt(std::max(0.0, nu * nu - au * au));
  return eps_ * au + std::sqrt(1.0 - eps_ * eps_) * perp;
}

Vec Cap::nearest_point(const Vec& x) const {
  if (contains(x, 0.0)) return x;
  const double nx = x.norm();
  const Vec pb = nx > 1.0 ? Vec(x / nx) : x;
  if (axis_.dot(pb) >= eps_) return pb;
  const double ax = axis_.dot(x);
  const Vec ph = ax < eps_ ? Vec(x + (eps_ - ax) * axis_) : x;
  if (ph.norm() <= 1.0) return ph;
  Vec perp = x - ax * axis_;
  if (perp.norm() < 1e-300) {
    // Any rim point is nearest; pick a deterministic one.
    const int i = axis_.cwiseAbs().minCoeff() == axis_.cwiseAbs()[0] ? 0 : 1;
    perp = Vec::Unit(dim(), i) - axis_[i] * axis_;
  }
  return eps_ * axis_ + std::sqrt(1.0 - eps_ * eps_) * perp.normalized();
}

double Cap::radial_from(const Vec& c, const Vec& u) const {
  const double uu = u.squaredNorm();
  const double cu = c.dot(u);
  const double disc = cu * cu - uu * (c.squaredNorm() - 1.0);
  double t = (-cu + std::sqrt(std::max(disc, 0.0))) / uu;
  const double au = axis_.dot(u);
  if (au < 0.0) t = std::min(t, (axis_.dot(c) - eps_) / (-au));
  return std::max(t, 0.0);
}

// ------------------------------------------------------------ Polytope

PolytopeBody::PolytopeBody(Polytope p) : ConvexBody(p.dim()), poly_(std::move(p)) {
  if (poly_.empty()) fail(ErrorCode::DegenerateInput, "empty polytope");
  const double viol = poly_.max_violation(Vec::Zero(dim()));
  origin_interior_ = viol < -1e-12 * std::max(1.0, poly_.scale());
  if (origin_interior_) r_in_ = -viol;
  for (const auto& v : poly_.vertices()) r_out_ = std::max(r_out_, v.norm());
}

std::string PolytopeBody::describe() const {
  return "polytope(n=" + std::to_string(dim()) + ", f0=" + std::to_string(poly_.f_vector()[0]) +
         ", facets=" + std::to_string(poly_.facets().size()) + ")";
}

bool PolytopeBody::contains(const Vec& x, double tol) const {
  const double r = x.norm();
  if (origin_interior_ && r < r_in_) return true;
  if (r > r_out_ + tol) return false;
  return poly_.contains(x, tol);
}

double PolytopeBody::support(const Vec& u) const { return poly_.support(u); }

Vec PolytopeBody::nearest_point(const Vec& x) const {
  if (contains(x, 0.0)) return x;
  return dykstra_halfspaces(x, poly_.facet_matrix(), poly_.facet_offsets(), poly_.scale());
}

double PolytopeBody::radial_from(const Vec& c, const Vec& u) const { return polytope_radial_from(poly_, c, u); }

// -------------------------------------------------------- Intersection

IntersectionBody::IntersectionBody(BodyPtr base, Polytope p)
    : ConvexBody(p.dim()), base_(std::move(base)), poly_(std::move(p)) {
  const int n = dim();
  if (base_->kind() == BodyKind::Ball) {
    const auto& b = static_cast<const Ball&>(*base_);
    center_ = b.center();
    axes_ = Vec::Constant(n, b.radius());
  } else if (base_->kind() == BodyKind::Ellipsoid) {
    center_ = Vec::Zero(n);
    axes_ = static_cast<const Ellipsoid&>(*base_).semi_axes();
  } else {
    fail(ErrorCode::UnsupportedBodyKind, "intersection base must be a ball or an ellipsoid");
  }
  unit_poly_ = poly_.transformed(Mat(axes_.cwiseInverse().asDiagonal()), -center_.cwiseQuotient(axes_));

  // Interior point: walk from the nearest point of P to the ball centre towards P's Chebyshev centre.
  const Vec y0 = polytope_nearest_point_exact(unit_poly_, Vec::Zero(n));
  const double d = y0.norm();
  if (!(d < 1.0 - 1e-9)) fail(ErrorCode::EmptyIntersection, "ball and polytope do not overlap");
  const ChebyshevBall cb = chebyshev_center(unit_poly_.facet_matrix(), unit_poly_.facet_offsets());
  const Vec z = cb.center;
  const double target = 0.5 * (1.0 + d);
  double lo = 0.0, hi = 1.0;
  if ((y0 + (z - y0)).norm() <= target) {
    lo = 1.0;
  } else {
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      if ((y0 + mid * (z - y0)).norm() <= target) lo = mid; else hi = mid;
    }
  }
  interior_ = from_unit(y0 + 0.5 * lo * (z - y0));

  for (int k = 0; k < n; ++k) {
    for (const auto& face : unit_poly_.faces(k)) {
      FaceFrame fr;
      fr.origin = unit_poly_.vertices()[static_cast<std::size_t>(face[0])];
      Mat d2(static_cast<Eigen::Index>(face.size()) - 1, n);
      for (std::size_t i = 1; i < face.size(); ++i)
        d2.row(static_cast<Eigen::Index>(i) - 1) = (unit_poly_.vertices()[static_cast<std::size_t>(face[i])] - fr.origin).transpose();
      fr.basis = k == 0 ? Mat(n, 0) : orthonormal_row_basis(d2);
      frames_.push_back(std::move(fr));
    }
  }
  frames_.push_back({Vec::Zero(n), Mat::Identity(n, n)});

  if (base_->kind() == BodyKind::Ellipsoid) {
    // Slices of the ellipsoid by the affine hull of every face of P, plus the whole space.
    const Vec D = axes_.cwiseProduct(axes_).cwiseInverse();
    auto add_slice = [&](const Vec& o, const Mat& Q) {
      EllipsoidSlice sl;
      sl.origin = o;
      sl.basis = Q;
      sl.whole_space = Q.cols() == n;
      const Mat M = Q.transpose() * D.asDiagonal() * Q;
      const Vec g = Q.transpose() * D.cwiseProduct(o);
      const Eigen::SelfAdjointEigenSolver<Mat> es(M);
      if (es.eigenvalues().minCoeff() > 0.0) {
        sl.t0 = -es.eigenvectors() * (es.eigenvectors().transpose() * g).cwiseQuotient(es.eigenvalues());
        const double r2 = 1.0 - o.dot(D.cwiseProduct(o)) - g.dot(sl.t0);
        if (r2 > 0.0) {
          sl.rotation = es.eigenvectors();
          sl.semi = (r2 / es.eigenvalues().array()).sqrt().matrix();
          sl.nonempty = true;
        }
      }
      slices_.push_back(std::move(sl));
    };
    for (int k = 1; k < n; ++k) {
      for (const auto& face : poly_.faces(k)) {
        const Vec& o = poly_.vertices()[static_cast<std::size_t>(face[0])];
        Mat d2(static_cast<Eigen::Index>(face.size()) - 1, n);
        for (std::size_t i = 1; i < face.size(); ++i)
          d2.row(static_cast<Eigen::Index>(i) - 1) = (poly_.vertices()[static_cast<std::size_t>(face[i])] - o).transpose();
        const Mat Q = orthonormal_row_basis(d2);
        add_slice(o, Q);
      }
    }
    add_slice(Vec::Zero(n), Mat::Identity(n, n));
  }
}

std::string IntersectionBody::describe() const { return "intersection(" + base_->describe() + ", " + PolytopeBody(poly_).describe() + ")"; }

Vec IntersectionBody::to_unit(const Vec& x) const { return (x - center_).cwiseQuotient(axes_); }
Vec IntersectionBody::from_unit(const Vec& y) const { return center_ + y.cwiseProduct(axes_); }

bool IntersectionBody::contains(const Vec& x, double tol) const { return base_->contains(x, tol) && poly_.contains(x, tol); }

double IntersectionBody::support(const Vec& u) const {
  const Vec w = u.cwiseProduct(axes_);
  const double wn = w.norm();
  double best = -kInf;
  for (const auto& fr : frames_) {
    const Mat& Q = fr.basis;
    const Vec cf = fr.origin - Q * (Q.transpose() * fr.origin);
    const double r2 = 1.0 - cf.squaredNorm();
    if (r2 < -1e-12) continue;
    const double rf = std::sqrt(std::max(r2, 0.0));
    Vec cand = cf;
    if (Q.cols() > 0) {
      Vec wf = Q * (Q.transpose() * w);
      if (wf.norm() <= 1e-12 * wn) {
        Vec g = Vec::LinSpaced(dim(), 1.0, static_cast<double>(dim())).normalized();
        wf = Q * (Q.transpose() * (w + 1e-7 * wn * g));
      }
      const double wfn = wf.norm();
      if (wfn > 0.0) cand = cf + rf * wf / wfn;
    }
    if (!unit_poly_.contains(cand, 1e-9)) continue;
    best = std::max(best, w.dot(cand));
  }
  return u.dot(center_) + best;
}

Vec IntersectionBody::nearest_point(const Vec& x) const {
  if (contains(x, 0.0)) return x;
  if (base_->kind() == BodyKind::Ellipsoid) {
    // The projection lies in the relative interior of some face F of P, either inside the ellipsoid
    // (then it is the projection onto aff F) or on its boundary (then onto the slice through aff F).
    Vec best_pt;
    double best = kInf;
    auto consider = [&](const Vec& cand) {
      if (!base_->contains(cand, 1e-9) || !poly_.contains(cand, 1e-9)) return;
      const double dd = (x - cand).squaredNorm();
      if (dd < best) {
        best = dd;
        best_pt = cand;
      }
    };
    for (const Vec& v : poly_.vertices()) consider(v);
    for (const auto& sl : slices_) {
      const Vec t = sl.basis.transpose() * (x - sl.origin);
      if (!sl.whole_space) consider(sl.origin + sl.basis * t);
      if (!sl.nonempty) continue;
      const Vec s = sl.rotation.transpose() * (t - sl.t0);
      consider(sl.origin + sl.basis * (sl.t0 + sl.rotation * project_to_ellipsoid(s, sl.semi)));
    }
    if (!std::isfinite(best)) fail(ErrorCode::NonConvergence, "no feasible projection candidate");
    return best_pt;
  }
  const Vec y = to_unit(x);
  Vec best_pt;
  double best = kInf;
  for (const auto& fr : frames_) {
    const Mat& Q = fr.basis;
    const Vec cf = fr.origin - Q * (Q.transpose() * fr.origin);
    const double r2 = 1.0 - cf.squaredNorm();
    if (r2 < -1e-12) continue;
    const double rf = std::sqrt(std::max(r2, 0.0));
    const Vec yf = fr.origin + Q * (Q.transpose() * (y - fr.origin));
    const Vec off = yf - cf;
    const double on = off.norm();
    const Vec cand = on <= rf ? yf : Vec(cf + off * (rf / on));
    if (!unit_poly_.contains(cand, 1e-9)) continue;
    const double dd = (y - cand).squaredNorm();
    if (dd < best) {
      best = dd;
      best_pt = cand;
    }
  }
  return from_unit(best_pt);
}

double IntersectionBody::radial_from(const Vec& c, const Vec& u) const {
  return std::min(base_->radial_from(c, u), polytope_radial_from(poly_, c, u));
}

bool IntersectionBody::origin_interior() const {
  return base_->origin_interior() && poly_.max_violation(Vec::Zero(dim())) < -1e-12;
}

// ------------------------------------------------------------ Helpers

BodyPtr make_ball(int n, double r) { return std::make_shared<Ball>(Vec::Zero(n), r); }
BodyPtr make_ball(Vec center, double r) { return std::make_shared<Ball>(std::move(center), r); }
BodyPtr make_ellipsoid(Vec semi_axes) { return std::make_shared<Ellipsoid>(std::move(semi_axes)); }

BodyPtr make_cap(int n, double eps, int sign) {
  if (n < 1) fail(ErrorCode::DomainError, "cap dimension must be positive");
  if (sign != 1 && sign != -1) fail(ErrorCode::DomainError, "cap sign must be +1 or -1");
  return std::make_shared<Cap>(n, eps, static_cast<double>(sign) * Vec::Unit(n, n - 1));
}

BodyPtr make_polytope_body(Polytope p) { return std::make_shared<PolytopeBody>(std::move(p)); }

BodyPtr scaled(const BodyPtr& k, double lambda) {
  if (!(lambda > 0.0)) fail(ErrorCode::DomainError, "scale factor must be positive");
  switch (k->kind()) {
    case BodyKind::Ball: {
      const auto& b = static_cast<const Ball&>(*k);
      return make_ball(lambda * b.center(), lambda * b.radius());
    }
    case BodyKind::Ellipsoid:
      return make_ellipsoid(lambda * static_cast<const Ellipsoid&>(*k).semi_axes());
    case BodyKind::Polytope:
      return make_polytope_body(static_cast<const PolytopeBody&>(*k).polytope().scaled(lambda));
    case BodyKind::Intersection: {
      const auto& ib = static_cast<const IntersectionBody&>(*k);
      return std::make_shared<IntersectionBody>(scaled(ib.base(), lambda), ib.polytope().scaled(lambda));
    }
    case BodyKind::Cap:
      break;
  }
  fail(ErrorCode::UnsupportedBodyKind, "scaling is not available for caps");
}

Vec dykstra(const Vec& x, const std::vector<Projector>& sets, int max_sweeps, double tol) {
  Vec y = x;
  std::vector<Vec> inc(sets.size(), Vec::Zero(x.size()));
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double change = 0.0;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      const Vec z = y + inc[i];
      const Vec yn = sets[i](z);
      inc[i] = z - yn;
      change += (yn - y).squaredNorm();
      y = yn;
    }
    if (std::sqrt(change) < 1e-3 * tol) {
      double worst = 0.0;
      for (const auto& s : sets) worst = std::max(worst, (s(y) - y).norm());
      if (worst <= tol) return y;
    }
  }
  fail(ErrorCode::NonConvergence, "Dykstra projection did not converge");
}

Vec polytope_nearest_point_exact(const Polytope& p, const Vec& x) {
  if (p.contains(x, 0.0)) return x;
  const int n = p.dim();
  Vec best_pt = p.vertices()[0];
  double best = (x - best_pt).squaredNorm();
  for (int k = 0; k < n; ++k) {
    for (const auto& face : p.faces(k)) {
      const Vec& o = p.vertices()[static_cast<std::size_t>(face[0])];
      Vec cand = o;
      if (k > 0) {
        Mat d(static_cast<Eigen::Index>(face.size()) - 1, n);
        for (std::size_t i = 1; i < face.size(); ++i)
          d.row(static_cast<Eigen::Index>(i) - 1) = (p.vertices()[static_cast<std::size_t>(face[i])] - o).transpose();
        const Mat Q = orthonormal_row_basis(d);
        cand = o + Q * (Q.transpose() * (x - o));
        if (!p.contains(cand, 1e-9)) continue;
      }
      const double dd = (x - cand).squaredNorm();
      if (dd < best) {
        best = dd;
        best_pt = cand;
      }
    }
  }
  return best_pt;
}

}  // namespace polyapprox
