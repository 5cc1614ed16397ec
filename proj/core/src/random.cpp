#include "polyapprox/random.hpp"

#include <cmath>

#include "polyapprox/errors.hpp"
#include "polyapprox/measures.hpp"
#include "polyapprox/parallel.hpp"

namespace polyapprox {

namespace {

constexpr double kBoundaryTol = 1e-9;

double binom(int n, int k) { return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)); }

// Elementary symmetric polynomials e_0..e_m of the given values.
std::vector<double> elementary(const Vec& kappa) {
  const int m = static_cast<int>(kappa.size());
  std::vector<double> e(m + 1, 0.0);
  e[0] = 1.0;
  for (int i = 0; i < m; ++i)
    for (int k = i + 1; k >= 1; --k) e[k] += kappa[i] * e[k - 1];
  return e;
}

void require_smooth(const ConvexBody& k) {
  if (k.kind() != BodyKind::Ball && k.kind() != BodyKind::Ellipsoid)
    fail(ErrorCode::UnsupportedBodyKind, "boundary densities need a ball or an ellipsoid");
}

Vec curvatures(const ConvexBody& k, const Vec& x) {
  const int n = k.dim();
  if (k.kind() == BodyKind::Ball) return Vec::Constant(n - 1, 1.0 / static_cast<const Ball&>(k).radius());
  return static_cast<const Ellipsoid&>(k).principal_curvatures(x);
}

// H_{n-1} without an eigen-solve.
double gauss_curvature(const ConvexBody& k, const Vec& x) {
  const int n = k.dim();
  if (k.kind() == BodyKind::Ball) return std::pow(static_cast<const Ball&>(k).radius(), -(n - 1));
  const Vec& a = static_cast<const Ellipsoid&>(k).semi_axes();
  const double pa = a.prod();
  return 1.0 / (pa * pa * std::pow(x.cwiseQuotient(a.cwiseProduct(a)).norm(), n + 1));
}

// Exponent of |x| in the unnormalized weight.
double radial_exponent(DensityKind kind, int n, double p) {
  const double s = (n - 1.0) / (n + 1.0);
  if (kind == DensityKind::PsiTildeJ) return (p - n) * s;
  if (kind == DensityKind::PsiWeighted) return p * s;
  return 0.0;
}

}  // namespace

Vec sample_sphere(int n, std::uint64_t seed, std::uint64_t index) {
  Stream s(seed, index);
  return s.unit_vector(n);
}

double curvature_H(const ConvexBody& k, const Vec& x, int order) {
  require_smooth(k);
  const int n = k.dim();
  if (order < 0 || order > n - 1) fail(ErrorCode::DomainError, "need 0 <= k <= n-1");
  double off;
  if (k.kind() == BodyKind::Ball) {
    const auto& b = static_cast<const Ball&>(k);
    off = std::abs((x - b.center()).norm() - b.radius()) / std::max(1.0, b.radius());
  } else {
    off = std::abs(x.cwiseQuotient(static_cast<const Ellipsoid&>(k).semi_axes()).norm() - 1.0);
  }
  if (off > kBoundaryTol) fail(ErrorCode::OffBoundary, "point is not on the boundary");
  if (order == 0) return 1.0;
  return elementary(curvatures(k, x))[order] / binom(n - 1, order);
}

std::string_view to_string(DensityKind k) noexcept {
  switch (k) {
    case DensityKind::Uniform: return "uniform";
    case DensityKind::PhiJ: return "phi_j";
    case DensityKind::PsiTildeJ: return "psi_tilde_j";
    case DensityKind::PsiWeighted: return "psi_weighted";
  }
  return "unknown";
}

BoundaryDensity::BoundaryDensity(BodyPtr body, DensityKind kind, double parameter, std::uint64_t seed)
    : body_(std::move(body)), kind_(kind), param_(parameter) {
  require_smooth(*body_);
  const int n = body_->dim();
  if (n < 2) fail(ErrorCode::UnsupportedDimension, "boundary densities need n >= 2");
  if (kind_ == DensityKind::PhiJ || kind_ == DensityKind::PsiTildeJ) {
    if (param_ != std::round(param_) || param_ < 1 || param_ > n) fail(ErrorCode::DomainError, "need 1 <= j <= n");
  }
  const double e = radial_exponent(kind_, n, param_);
  if (e != 0.0 && !body_->origin_interior())
    fail(ErrorCode::OriginNotInterior, "radially weighted densities need the origin in the interior");

  // Envelope: product of the maxima of each factor over the boundary.
  double jac_max, rmin, rmax, kmax, hmax;
  if (body_->kind() == BodyKind::Ball) {
    const auto& b = static_cast<const Ball&>(*body_);
    const double r = b.radius(), c = b.center().norm();
    jac_max = std::pow(r, n - 1);
    rmin = std::abs(r - c);
    rmax = r + c;
    kmax = 1.0 / r;
    hmax = std::pow(r, -(n - 1));
  } else {
    const Vec& a = static_cast<const Ellipsoid&>(*body_).semi_axes();
    const double amin = a.minCoeff(), amax = a.maxCoeff(), pa = a.prod();
    jac_max = pa / amin;
    rmin = amin;
    rmax = amax;
    kmax = amax / (amin * amin);
    hmax = std::pow(amax, n + 1) / (pa * pa);
  }
  double wmax = jac_max;
  if (kind_ != DensityKind::Uniform) wmax *= std::pow(hmax, 1.0 / (n + 1));
  if (kind_ == DensityKind::PhiJ) wmax *= std::pow(kmax, (n - param_) * (n - 1.0) / (n + 1.0));
  if (e > 0.0) wmax *= std::pow(rmax, e);
  if (e < 0.0) wmax *= std::pow(rmin, e);
  envelope_ = wmax * (1.0 + 1e-12);

  const double sphere = ball_surface_area(n);
  norm_ = mc_estimate(kNormalizationSamples, seed, [&](Stream& s) { return sphere * weight(s.unit_vector(n)); });
  accept_ = norm_.value / sphere / envelope_;
  if (accept_ < kStallRate) fail(ErrorCode::RejectionStall, "rejection acceptance rate below 1e-4");
}

Vec BoundaryDensity::map(const Vec& u) const {
  if (body_->kind() == BodyKind::Ball) {
    const auto& b = static_cast<const Ball&>(*body_);
    return b.center() + b.radius() * u;
  }
  return static_cast<const Ellipsoid&>(*body_).semi_axes().cwiseProduct(u);
}

double BoundaryDensity::jacobian(const Vec& u) const {
  const int n = body_->dim();
  if (body_->kind() == BodyKind::Ball) return std::pow(static_cast<const Ball&>(*body_).radius(), n - 1);
  const Vec& a = static_cast<const Ellipsoid&>(*body_).semi_axes();
  return a.prod() * u.cwiseQuotient(a).norm();
}

double BoundaryDensity::unnormalized(const Vec& x) const {
  const int n = body_->dim();
  if (kind_ == DensityKind::Uniform) return 1.0;
  double w = std::pow(gauss_curvature(*body_, x), 1.0 / (n + 1));
  if (kind_ == DensityKind::PhiJ) {
    const int k = n - static_cast<int>(param_);
    if (k > 0) w *= std::pow(elementary(curvatures(*body_, x))[k] / binom(n - 1, k), (n - 1.0) / (n + 1.0));
  }
  const double e = radial_exponent(kind_, n, param_);
  if (e != 0.0) w *= std::pow(x.norm(), e);
  return w;
}

Vec BoundaryDensity::sample(std::uint64_t seed, std::uint64_t index) const {
  Stream s(seed, index);
  return sample(s);
}

Vec BoundaryDensity::sample(Stream& s) const {
  const int n = body_->dim();
  if (kind_ == DensityKind::Uniform && body_->kind() == BodyKind::Ball) return map(s.unit_vector(n));
  const auto cap = static_cast<std::uint64_t>(100.0 / kStallRate);
  for (std::uint64_t t = 0; t < cap; ++t) {
    const Vec u = s.unit_vector(n);
    if (s.uniform() * envelope_ <= weight(u)) return map(u);
  }
  fail(ErrorCode::RejectionStall, "no acceptance in 1e6 proposals");
}

Vec BoundaryDensity::normal(const Vec& x) const {
  if (body_->kind() == BodyKind::Ball) {
    const auto& b = static_cast<const Ball&>(*body_);
    return (x - b.center()) / b.radius();
  }
  return static_cast<const Ellipsoid&>(*body_).normal_at(x);
}

Polytope random_inscribed(const BoundaryDensity& density, int N, std::uint64_t seed) {
  const int n = density.body()->dim();
  if (N < n + 1) fail(ErrorCode::BudgetTooSmall, "need N >= n+1 points");
  if (n > 8) fail(ErrorCode::UnsupportedDimension, "random hulls need n <= 8");
  Points pts;
  pts.reserve(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) pts.push_back(density.sample(seed, static_cast<std::uint64_t>(i)));
  return convex_hull(pts);
}

BodyPtr default_clip(const ConvexBody& k) {
  require_smooth(k);
  if (k.kind() == BodyKind::Ball) {
    const auto& b = static_cast<const Ball&>(k);
    return make_ball(b.center(), b.radius() + 1.0);
  }
  const Vec& a = static_cast<const Ellipsoid&>(k).semi_axes();
  return make_ball(Vec::Zero(k.dim()), a.maxCoeff() + 1.0);
}

BodyPtr circumscribed_from_points(const BoundaryDensity& density, const Points& touch, const BodyPtr& clip) {
  const int n = density.body()->dim();
  if (static_cast<int>(touch.size()) < n + 1) fail(ErrorCode::BudgetTooSmall, "need N >= n+1 halfspaces");
  std::vector<Halfspace> hs;
  hs.reserve(touch.size());
  for (const Vec& x : touch) {
    const Vec nu = density.normal(x);
    hs.push_back({nu, nu.dot(x)});
  }
  Polytope p = halfspace_intersection(hs, make_box(clip->bbox_lo(), clip->bbox_hi()));
  if (clip->kind() == BodyKind::Polytope) {
    p = intersect(p, static_cast<const PolytopeBody&>(*clip).polytope());
    return make_polytope_body(std::move(p));
  }
  bool inside = true;
  for (const Vec& v : p.vertices())
    if (!clip->contains(v, 1e-12)) {
      inside = false;
      break;
    }
  if (inside) return make_polytope_body(std::move(p));
  return std::make_shared<IntersectionBody>(clip, std::move(p));
}

BodyPtr random_circumscribed(const BoundaryDensity& density, int N, std::uint64_t seed, BodyPtr clip) {
  const int n = density.body()->dim();
  if (N < n + 1) fail(ErrorCode::BudgetTooSmall, "need N >= n+1 halfspaces");
  if (!clip) clip = default_clip(*density.body());
  Points pts;
  pts.reserve(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) pts.push_back(density.sample(seed, static_cast<std::uint64_t>(i)));
  return circumscribed_from_points(density, pts, clip);
}

void fit_extrapolation(HarnessResult& r) {
  const int m = static_cast<int>(r.rows.size());
  const double p = 2.0 / (r.dim - 1);
  if (m < 2) {
    r.limit = m ? r.rows[0].scaled_mean : 0.0;
    r.limit_se = m ? r.rows[0].std_error : 0.0;
    r.slope = 0.0;
    r.covariance = Mat::Zero(2, 2);
    return;
  }
  Mat X(m, 2);
  Vec y(m), w(m);
  for (int i = 0; i < m; ++i) {
    X(i, 0) = 1.0;
    X(i, 1) = std::pow(double(r.rows[i].N), -p);
    y[i] = r.rows[i].scaled_mean;
    const double se = r.rows[i].std_error;
    w[i] = se > 0.0 ? 1.0 / (se * se) : 1.0;
  }
  const Mat XtW = X.transpose() * w.asDiagonal();
  const Mat cov = (XtW * X).inverse();
  const Vec beta = cov * (XtW * y);
  r.limit = beta[0];
  r.slope = beta[1];
  r.covariance = cov;
  r.limit_se = std::sqrt(cov(0, 0));
}

HarnessResult expectation_harness(int dim, const Construction& construction, const Functional& functional,
                                  const std::vector<int>& N_list, int trials, std::uint64_t seed) {
  if (dim < 2) fail(ErrorCode::UnsupportedDimension, "need n >= 2");
  if (trials < 30) fail(ErrorCode::DomainError, "need at least 30 trials");
  if (N_list.empty()) fail(ErrorCode::DomainError, "empty N list");
  for (std::size_t i = 1; i < N_list.size(); ++i)
    if (N_list[i] <= N_list[i - 1]) fail(ErrorCode::DomainError, "N list must be increasing");

  HarnessResult out;
  out.dim = dim;
  const double p = 2.0 / (dim - 1);
  for (int N : N_list) {
    std::vector<double> vals(static_cast<std::size_t>(trials));
    parallel_for(vals.size(), [&](std::size_t t) {
      const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(N), t);
      vals[t] = functional(construction(N, s), derive_seed(s, 1));
    });
    double mean = 0.0;
    for (double v : vals) mean += v;
    mean /= trials;
    double ss = 0.0;
    for (double v : vals) ss += (v - mean) * (v - mean);
    const double se = std::sqrt(ss / (trials - 1) / trials);
    const double scale = std::pow(double(N), p);
    out.rows.push_back({N, trials, scale * mean, scale * se, mean});
  }
  fit_extrapolation(out);
  return out;
}

}  // namespace polyapprox
