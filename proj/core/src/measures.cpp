#include "polyapprox/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "polyapprox/errors.hpp"

namespace polyapprox {

namespace {

constexpr double kPi = std::numbers::pi;

long double lbv(long double n) { return 0.5L * n * std::log(std::numbers::pi_v<long double>) - std::lgamma(1.0L + 0.5L * n); }

long double lbinom(long double n, long double k) {
  return std::lgamma(n + 1.0L) - std::lgamma(k + 1.0L) - std::lgamma(n - k + 1.0L);
}

template <class F>
double gk(F&& f, double a, double b, double tol = 1e-12, unsigned depth = 12) {
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 31>::integrate(f, a, b, depth, tol);
}

Vec polar2(double t) {
  Vec u(2);
  u << std::cos(t), std::sin(t);
  return u;
}

Vec polar3(double phi, double theta) {
  Vec u(3);
  u << std::sin(phi) * std::cos(theta), std::sin(phi) * std::sin(theta), std::cos(phi);
  return u;
}

// Integral over S^2 of f, nested adaptive quadrature.
template <class F>
double sphere_integral(F&& f) {
  return gk([&](double phi) { return std::sin(phi) * gk([&](double th) { return f(polar3(phi, th)); }, 0.0, 2.0 * kPi, 1e-11, 8); },
            0.0, kPi, 1e-11, 8);
}

std::optional<double> cap_closed_form(const Cap& c, int j) {
  const int n = c.dim();
  const double e = c.eps();
  const double s = std::sqrt(1.0 - e * e);
  if (n == 2) {
    if (j == 1) return std::acos(e) + s;
    if (j == 2) return std::acos(e) - e * s;
  } else if (n == 3) {
    const double h = 1.0 - e;
    if (j == 1) return 2.0 * h + s * (kPi - std::acos(e));
    if (j == 2) return 0.5 * (2.0 * kPi * h + kPi * s * s);
    if (j == 3) return kPi * h * h * (3.0 - h) / 3.0;
  }
  return std::nullopt;
}

std::optional<double> ellipsoid_closed_form(const Ellipsoid& e, int j) {
  const int n = e.dim();
  const Vec& a = e.semi_axes();
  if (j == n) return ball_volume(n) * a.prod();
  if (n == 2 && j == 1) return kPi * circle_average([&](double t) { return e.support(polar2(t)); });
  if (n == 3 && j == 1) return sphere_integral([&](const Vec& u) { return e.support(u); }) / kPi;
  if (n == 3 && j == 2) {
    const double area = sphere_integral([&](const Vec& u) {
      // |x_phi x x_theta| / sin(phi) for x = diag(a) u
      return std::sqrt(a[1] * a[1] * a[2] * a[2] * u[0] * u[0] + a[0] * a[0] * a[2] * a[2] * u[1] * u[1] +
                       a[0] * a[0] * a[1] * a[1] * u[2] * u[2]);
    });
    return 0.5 * area;
  }
  return std::nullopt;
}

// Chebyshev-spaced radii, or the user's list, validated.
void check_radii(const std::vector<double>& radii, int n) {
  if (static_cast<int>(radii.size()) < n + 1) fail(ErrorCode::DomainError, "Steiner fit needs at least n+1 radii");
  for (double r : radii)
    if (!(r > 0.0) || !std::isfinite(r)) fail(ErrorCode::DomainError, "Steiner radii must be positive");
  std::vector<double> s = radii;
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) fail(ErrorCode::DomainError, "Steiner radii must be distinct");
}

// Least-squares fit of sum_j r^{n-j} |D_{n-j}| X_j = y(r) with X_0 = 1.
template <class Dist>
IntrinsicVolumeVector parallel_volume_fit(const ConvexBody& k, const std::vector<double>& radii, std::uint64_t samples,
                                          std::uint64_t seed, Dist&& dist) {
  const int n = k.dim();
  check_radii(radii, n);
  if (samples < 2) fail(ErrorCode::DomainError, "need at least two samples");
  const int m = static_cast<int>(radii.size());
  const double rmax = *std::max_element(radii.begin(), radii.end());
  const Vec lo = k.bbox_lo() - Vec::Constant(n, rmax * (1.0 + 1e-9));
  const Vec hi = k.bbox_hi() + Vec::Constant(n, rmax * (1.0 + 1e-9));
  const double box = (hi - lo).prod();

  const RunningVecMoments mom = mc_estimate_vec(samples, seed, m, [&](Stream& s, Vec& out) {
    const Vec x = s.uniform_in_box(lo, hi);
    const double d = dist(x);
    for (int i = 0; i < m; ++i) out[i] = d <= radii[static_cast<std::size_t>(i)] ? box : 0.0;
  });

  Mat X(m, n);
  Vec y(m);
  for (int i = 0; i < m; ++i) {
    const double r = radii[static_cast<std::size_t>(i)];
    for (int j = 1; j <= n; ++j) X(i, j - 1) = std::pow(r, n - j) * ball_volume(n - j);
    y[i] = mom.mean[i] - std::pow(r, n) * ball_volume(n);
  }
  // Conditioning of the column-equilibrated design.
  const Vec cn = X.colwise().norm().transpose();
  const Mat Xs = X * cn.cwiseInverse().asDiagonal();
  Eigen::JacobiSVD<Mat> svd(Xs);
  const Vec sv = svd.singularValues();
  const double cond = sv[0] / sv[sv.size() - 1];
  if (!(cond <= 1e8)) fail(ErrorCode::IllConditioned, "Steiner design condition number " + std::to_string(cond));

  const Mat A = Xs.colPivHouseholderQr().solve(Mat::Identity(m, m));
  const Mat As = cn.cwiseInverse().asDiagonal() * A;  // maps y to coefficients
  const Vec beta = As * y;
  const Mat cov = As * mom.mean_covariance() * As.transpose();

  IntrinsicVolumeVector out;
  out.values = Vec::Zero(n + 1);
  out.std_errors = Vec::Zero(n + 1);
  out.covariance = Mat::Zero(n + 1, n + 1);
  out.values[0] = 1.0;
  out.values.tail(n) = beta;
  out.covariance.bottomRightCorner(n, n) = cov;
  for (int j = 1; j <= n; ++j) out.std_errors[j] = std::sqrt(std::max(cov(j - 1, j - 1), 0.0));
  out.methods.assign(static_cast<std::size_t>(n + 1), VolumeMethod::SteinerFit);
  out.methods[0] = VolumeMethod::Exact;
  out.samples = samples;
  out.seed = seed;
  return out;
}

}  // namespace

// ---------------------------------------------------------------- ball formulas

double log_ball_volume(double n) {
  if (!(n >= 0.0)) fail(ErrorCode::DomainError, "ball dimension must be nonnegative");
  return static_cast<double>(lbv(n));
}

double ball_volume(double n) {
  if (!(n >= 0.0)) fail(ErrorCode::DomainError, "ball dimension must be nonnegative");
  return static_cast<double>(std::exp(lbv(n)));
}

double ball_intrinsic_volume(int n, int j) {
  if (n < 0 || j < 0 || j > n) fail(ErrorCode::DomainError, "need 0 <= j <= n");
  return static_cast<double>(std::exp(lbinom(n, j) + lbv(n) - lbv(n - j)));
}

double ball_volume_analytic(int n, double q) {
  if (n < 0 || !(q >= 0.0 && q <= n)) fail(ErrorCode::DomainError, "need 0 <= q <= n");
  const long double Q = q;
  const long double N = n;
  const long double l = 0.5L * Q * std::log(std::numbers::pi_v<long double>) + std::lgamma(N + 1.0L) -
                        std::lgamma(Q + 1.0L) - std::lgamma(N - Q + 1.0L) + std::lgamma(0.5L * (N - Q) + 1.0L) -
                        std::lgamma(0.5L * N + 1.0L);
  return static_cast<double>(std::exp(l));
}

double ball_surface_area(int n) { return n * ball_volume(n); }

double kubota_factor(int n, int j) {
  if (j < 0 || j > n) fail(ErrorCode::DomainError, "need 0 <= j <= n");
  return static_cast<double>(std::exp(lbinom(n, j) + lbv(n) - lbv(j) - lbv(n - j)));
}

std::string_view to_string(VolumeMethod m) noexcept {
  switch (m) {
    case VolumeMethod::Exact: return "exact";
    case VolumeMethod::Quadrature: return "quadrature";
    case VolumeMethod::ExternalAngle: return "external_angle";
    case VolumeMethod::Kubota: return "kubota";
    case VolumeMethod::SteinerFit: return "steiner_fit";
    case VolumeMethod::MonteCarlo: return "monte_carlo";
  }
  return "unknown";
}

// ------------------------------------------------------- intrinsic volumes

bool has_exact_intrinsic_volume(const Polytope& p, int j) {
  const int n = p.dim();
  return j == 0 || j == n || j == n - 1 || (n == 3 && j == 1);
}

double intrinsic_volume_exact(const Polytope& p, int j) {
  const int n = p.dim();
  if (p.empty()) return 0.0;
  if (j < 0 || j > n) fail(ErrorCode::DomainError, "need 0 <= j <= n");
  if (j == 0) return 1.0;
  if (j == n) return p.volume();
  if (j == n - 1) return 0.5 * p.surface_area();
  if (n == 3 && j == 1) {
    double s = 0.0;
    for (const auto& r : p.ridges()) {
      const Vec& na = p.facets()[static_cast<std::size_t>(r.facet_a)].normal;
      const Vec& nb = p.facets()[static_cast<std::size_t>(r.facet_b)].normal;
      const double c = na.dot(nb);
      const double sn = Eigen::Vector3d(na).cross(Eigen::Vector3d(nb)).norm();
      const double ext = std::atan2(sn, c);
      const Vec& a = p.vertices()[static_cast<std::size_t>(r.vertices.front())];
      const Vec& b = p.vertices()[static_cast<std::size_t>(r.vertices.back())];
      s += (a - b).norm() * ext;
    }
    return s / (2.0 * kPi);
  }
  fail(ErrorCode::UnsupportedDimension, "exact V_" + std::to_string(j) + " is only available for n <= 3");
}

IntrinsicVolumeVector intrinsic_volumes_exact(const Polytope& p) {
  const int n = p.dim();
  if (n > 3) fail(ErrorCode::UnsupportedDimension, "full exact intrinsic volume vector needs n <= 3");
  IntrinsicVolumeVector out;
  out.values = Vec::Zero(n + 1);
  out.std_errors = Vec::Zero(n + 1);
  out.covariance = Mat::Zero(n + 1, n + 1);
  for (int j = 0; j <= n; ++j) {
    out.values[j] = intrinsic_volume_exact(p, j);
    out.methods.push_back(n == 3 && j == 1 ? VolumeMethod::ExternalAngle : VolumeMethod::Exact);
  }
  return out;
}

EstimatorResult kubota_estimate(const Polytope& p, int j, std::uint64_t samples, std::uint64_t seed) {
  const int n = p.dim();
  if (j < 1 || j > n - 1) fail(ErrorCode::DomainError, "Kubota estimate needs 1 <= j <= n-1");
  if (j > kMaxHullDim) fail(ErrorCode::UnsupportedDimension, "projected hulls need j <= 8");
  const double factor = kubota_factor(n, j);
  const Points& V = p.vertices();
  return mc_estimate(samples, seed, [&](Stream& s) {
    if (j == 1) {
      const Vec u = s.unit_vector(n);
      double lo = V[0].dot(u), hi = lo;
      for (const auto& v : V) {
        const double t = v.dot(u);
        lo = std::min(lo, t);
        hi = std::max(hi, t);
      }
      return factor * (hi - lo);
    }
    Mat G(n, j);
    for (int c = 0; c < j; ++c) G.col(c) = s.normal_vector(n);
    const Mat Q = Eigen::HouseholderQR<Mat>(G).householderQ() * Mat::Identity(n, j);
    Points proj;
    proj.reserve(V.size());
    for (const auto& v : V) proj.push_back(Q.transpose() * v);
    return factor * convex_hull(proj).volume();
  });
}

EstimatorResult mean_width_estimate(const ConvexBody& k, std::uint64_t samples, std::uint64_t seed) {
  const int n = k.dim();
  const double factor = n * ball_volume(n) / ball_volume(n - 1);
  return mc_estimate(samples, seed, [&](Stream& s) {
    const Vec u = s.unit_vector(n);
    return factor * 0.5 * (k.support(u) + k.support(-u));
  });
}

std::vector<double> default_steiner_radii(const ConvexBody& k) {
  const int m = k.dim() + 3;
  const double d = k.axis_diameter();
  const double lo = 0.1 * d, hi = d;
  std::vector<double> r;
  for (int i = 0; i < m; ++i) r.push_back(0.5 * (lo + hi) + 0.5 * (hi - lo) * std::cos((2.0 * i + 1.0) * kPi / (2.0 * m)));
  std::sort(r.begin(), r.end());
  return r;
}

IntrinsicVolumeVector steiner_fit(const ConvexBody& k, const std::vector<double>& radii, std::uint64_t samples,
                                  std::uint64_t seed) {
  return parallel_volume_fit(k, radii, samples, seed, [&](const Vec& x) { return k.contains(x, 0.0) ? 0.0 : k.dist(x); });
}

IntrinsicVolumeVector radial_steiner_fit(const ConvexBody& k, const std::vector<double>& radii, std::uint64_t samples,
                                         std::uint64_t seed) {
  if (!k.origin_interior()) fail(ErrorCode::OriginNotInterior, "radial Steiner fit needs the origin in the interior");
  return parallel_volume_fit(k, radii, samples, seed, [&](const Vec& x) { return k.rdist(x); });
}

std::optional<double> intrinsic_volume_deterministic(const ConvexBody& k, int j) {
  const int n = k.dim();
  if (j < 0 || j > n) fail(ErrorCode::DomainError, "need 0 <= j <= n");
  if (j == 0) return 1.0;
  switch (k.kind()) {
    case BodyKind::Ball:
      return std::pow(static_cast<const Ball&>(k).radius(), j) * ball_intrinsic_volume(n, j);
    case BodyKind::Polytope: {
      const auto& p = static_cast<const PolytopeBody&>(k).polytope();
      if (has_exact_intrinsic_volume(p, j)) return intrinsic_volume_exact(p, j);
      return std::nullopt;
    }
    case BodyKind::Ellipsoid:
      return ellipsoid_closed_form(static_cast<const Ellipsoid&>(k), j);
    case BodyKind::Cap:
      if (auto v = cap_closed_form(static_cast<const Cap&>(k), j)) return v;
      break;
    case BodyKind::Intersection:
      break;
  }
  if (n == 2) {
    if (j == 1) return kPi * circle_average([&](double t) { return k.support(polar2(t)); }, 1e-12, support_kinks(k));
    const Vec c = k.interior_point();
    return kPi * circle_average(
                     [&](double t) {
                       const double r = k.radial_from(c, polar2(t));
                       return r * r;
                     },
                     1e-12, radial_kinks(k, c));
  }
  return std::nullopt;
}

EstimatorResult volume_estimate(const ConvexBody& k, std::uint64_t samples, std::uint64_t seed) {
  const int n = k.dim();
  const Vec c = k.interior_point();
  const double bv = ball_volume(n);
  return mc_estimate(samples, seed, [&](Stream& s) { return bv * std::pow(k.radial_from(c, s.unit_vector(n)), n); });
}

EstimatorResult intrinsic_volume(const ConvexBody& k, int j, const MeasureOptions& opt) {
  const int n = k.dim();
  if (j < 0 || j > n) fail(ErrorCode::DomainError, "need 0 <= j <= n");
  const bool is_poly = k.kind() == BodyKind::Polytope;
  auto steiner = [&]() {
    const IntrinsicVolumeVector v = steiner_fit(k, default_steiner_radii(k), opt.samples, opt.seed);
    return EstimatorResult{v.values[j], v.std_errors[j], opt.samples, opt.seed};
  };
  auto kubota = [&]() -> EstimatorResult {
    if (is_poly && j >= 1 && j <= n - 1) return kubota_estimate(static_cast<const PolytopeBody&>(k).polytope(), j, opt.samples, opt.seed);
    if (j == 1) return mean_width_estimate(k, opt.samples, opt.seed);
    fail(ErrorCode::UnsupportedBodyKind, "Kubota estimate needs a polytope or j = 1");
  };
  if (opt.method) {
    switch (*opt.method) {
      case VolumeMethod::Exact:
      case VolumeMethod::ExternalAngle:
      case VolumeMethod::Quadrature:
        if (auto v = intrinsic_volume_deterministic(k, j)) return EstimatorResult::exact(*v);
        fail(ErrorCode::UnsupportedBodyKind, "no deterministic V_" + std::to_string(j) + " for " + k.describe());
      case VolumeMethod::Kubota:
        return kubota();
      case VolumeMethod::SteinerFit:
        if (j == 0) return EstimatorResult::exact(1.0);
        return steiner();
      case VolumeMethod::MonteCarlo:
        if (j == 0) return EstimatorResult::exact(1.0);
        if (j == n) return volume_estimate(k, opt.samples, opt.seed);
        return kubota();
    }
  }
  if (auto v = intrinsic_volume_deterministic(k, j)) return EstimatorResult::exact(*v);
  if ((is_poly && j <= kMaxHullDim) || j == 1) return kubota();
  if (j == n) return volume_estimate(k, opt.samples, opt.seed);
  return steiner();
}

IntrinsicVolumeVector intrinsic_volumes(const ConvexBody& k, const MeasureOptions& opt) {
  const int n = k.dim();
  if (opt.method == VolumeMethod::SteinerFit) return steiner_fit(k, default_steiner_radii(k), opt.samples, opt.seed);
  IntrinsicVolumeVector out;
  out.values = Vec::Zero(n + 1);
  out.std_errors = Vec::Zero(n + 1);
  out.samples = opt.samples;
  out.seed = opt.seed;
  for (int j = 0; j <= n; ++j) {
    VolumeMethod m = VolumeMethod::Exact;
    EstimatorResult r;
    if (!opt.method) {
      if (auto v = intrinsic_volume_deterministic(k, j)) {
        r = EstimatorResult::exact(*v);
        const bool closed = k.kind() == BodyKind::Ball || k.kind() == BodyKind::Cap ||
                            (k.kind() == BodyKind::Ellipsoid && j == n) || k.kind() == BodyKind::Polytope;
        m = closed ? (n == 3 && j == 1 && k.kind() == BodyKind::Polytope ? VolumeMethod::ExternalAngle : VolumeMethod::Exact)
                   : VolumeMethod::Quadrature;
      } else {
        MeasureOptions o = opt;
        o.seed = derive_seed(opt.seed, static_cast<std::uint64_t>(j));
        r = intrinsic_volume(k, j, o);
        m = (j == n) ? VolumeMethod::MonteCarlo : VolumeMethod::Kubota;
        if (!(k.kind() == BodyKind::Polytope || j == 1 || j == n)) m = VolumeMethod::SteinerFit;
      }
    } else {
      r = intrinsic_volume(k, j, opt);
      m = *opt.method;
    }
    out.values[j] = r.value;
    out.std_errors[j] = r.std_error;
    out.methods.push_back(m);
  }
  out.covariance = out.std_errors.cwiseAbs2().asDiagonal();
  return out;
}

// ------------------------------------------------------------ dual volumes

double dual_normalization(int n, double q) {
  const double a = std::abs(q);
  return a <= n ? ball_volume_analytic(n, a) : ball_volume(n);
}

EstimatorResult dual_volume(const ConvexBody& k, double q, std::uint64_t samples, std::uint64_t seed) {
  if (!k.origin_interior()) fail(ErrorCode::OriginNotInterior, "dual volume needs the origin in the interior");
  const int n = k.dim();
  if (q == 0.0) return mc_estimate(samples, seed, [&](Stream& s) { return std::log(k.radial(s.unit_vector(n))); });
  const double c = dual_normalization(n, q);
  return mc_estimate(samples, seed, [&](Stream& s) { return c * std::pow(k.radial(s.unit_vector(n)), q); });
}

double dual_volume_quadrature(const ConvexBody& k, double q) {
  if (k.dim() != 2) fail(ErrorCode::UnsupportedDimension, "dual volume quadrature needs n = 2");
  if (!k.origin_interior()) fail(ErrorCode::OriginNotInterior, "dual volume needs the origin in the interior");
  const std::vector<double> breaks = radial_kinks(k, Vec::Zero(2));
  if (q == 0.0) return circle_average([&](double t) { return std::log(k.radial(polar2(t))); }, 1e-12, breaks);
  return dual_normalization(2, q) * circle_average([&](double t) { return std::pow(k.radial(polar2(t)), q); }, 1e-12, breaks);
}

EstimatorResult omega_q(const ConvexBody& k, double q, std::uint64_t samples, std::uint64_t seed) {
  const int n = k.dim();
  if (!k.origin_interior()) fail(ErrorCode::OriginNotInterior, "Omega_q needs the origin in the interior");
  const double e = (q - n) * (n - 1.0) / (n + 1.0);
  const double sphere = ball_surface_area(n);
  if (k.kind() == BodyKind::Ball) {
    const auto& b = static_cast<const Ball&>(k);
    const double r = b.radius();
    const double hk = std::pow(r, -(n - 1.0) / (n + 1.0));  // H_{n-1}^{1/(n+1)}
    const double jac = std::pow(r, n - 1);
    return mc_estimate(samples, seed, [&](Stream& s) {
      const Vec x = b.center() + r * s.unit_vector(n);
      return sphere * jac * hk * std::pow(x.norm(), e);
    });
  }
  if (k.kind() == BodyKind::Ellipsoid) {
    const Vec& a = static_cast<const Ellipsoid&>(k).semi_axes();
    const double pa = a.prod();
    return mc_estimate(samples, seed, [&](Stream& s) {
      const Vec u = s.unit_vector(n);
      const Vec x = a.cwiseProduct(u);
      const double g = x.cwiseQuotient(a.cwiseProduct(a)).norm();
      const double H = 1.0 / (pa * pa * std::pow(g, n + 1));  // Gauss-Kronecker curvature of a quadric
      const double jac = pa * u.cwiseQuotient(a).norm();      // surface element of u -> diag(a) u
      return sphere * jac * std::pow(H, 1.0 / (n + 1)) * std::pow(x.norm(), e);
    });
  }
  fail(ErrorCode::UnsupportedBodyKind, "Omega_q is implemented for balls and ellipsoids");
}

EstimatorResult l1_metric(const ConvexBody& k, const ConvexBody& l, std::uint64_t samples, std::uint64_t seed) {
  if (k.dim() != l.dim()) fail(ErrorCode::DomainError, "dimension mismatch");
  const int n = k.dim();
  return mc_estimate(samples, seed, [&](Stream& s) {
    const Vec u = s.unit_vector(n);
    return std::abs(k.support(u) - l.support(u));
  });
}

double l1_metric_quadrature(const ConvexBody& k, const ConvexBody& l) {
  if (k.dim() != 2 || l.dim() != 2) fail(ErrorCode::UnsupportedDimension, "l1 quadrature needs n = 2");
  std::vector<double> breaks = support_kinks(k);
  for (double b : support_kinks(l)) breaks.push_back(b);
  // Cancellation in h_K - h_L leaves rounding noise proportional to max |h|.
  double scale = 0.0;
  for (int i = 0; i < 64; ++i) {
    const Vec u = polar2(2.0 * kPi * i / 64);
    scale = std::max({scale, std::abs(k.support(u)), std::abs(l.support(u))});
  }
  return circle_average(
      [&](double t) {
        const Vec u = polar2(t);
        return std::abs(k.support(u) - l.support(u));
      },
      1e-12, breaks, kQuadratureNoise * scale);
}

namespace {

// Adaptive bisection on GK31; stops when the error estimate meets either the relative tolerance or the
// absolute floor abs_tol per unit length.
double adaptive_gk(const std::function<double(double)>& f, double a, double b, double v, double err, double tol,
                   double abs_tol, int depth) {
  if (err <= std::max(tol * std::abs(v), abs_tol * (b - a)) || depth == 0) return v;
  using boost::math::quadrature::gauss_kronrod;
  const double m = 0.5 * (a + b);
  double e1 = 0.0, e2 = 0.0;
  const double v1 = gauss_kronrod<double, 31>::integrate(f, a, m, 0, 0.0, &e1);
  const double v2 = gauss_kronrod<double, 31>::integrate(f, m, b, 0, 0.0, &e2);
  return adaptive_gk(f, a, m, v1, e1, tol, abs_tol, depth - 1) + adaptive_gk(f, m, b, v2, e2, tol, abs_tol, depth - 1);
}

}  // namespace

double circle_average(const std::function<double(double)>& f, double tol, const std::vector<double>& breaks,
                      double abs_tol) {
  constexpr int panels = 64;
  std::vector<double> cuts;
  cuts.reserve(panels + breaks.size() + 1);
  for (int i = 0; i <= panels; ++i) cuts.push_back(2.0 * kPi * i / panels);
  for (double b : breaks) {
    const double t = b - 2.0 * kPi * std::floor(b / (2.0 * kPi));
    if (t > 0.0 && t < 2.0 * kPi) cuts.push_back(t);
  }
  std::sort(cuts.begin(), cuts.end());
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    if (cuts[i + 1] - cuts[i] > 1e-13) {
      double err = 0.0;
      const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, cuts[i], cuts[i + 1], 0, 0.0, &err);
      s += adaptive_gk(f, cuts[i], cuts[i + 1], v, err, tol, abs_tol, 15);
    }
  return s / (2.0 * kPi);
}

namespace {

const Polytope* planar_polytope(const ConvexBody& k) {
  if (k.dim() != 2) return nullptr;
  if (k.kind() == BodyKind::Polytope) return &static_cast<const PolytopeBody&>(k).polytope();
  if (k.kind() == BodyKind::Intersection) return &static_cast<const IntersectionBody&>(k).polytope();
  return nullptr;
}

}  // namespace

std::vector<double> radial_kinks(const ConvexBody& k, const Vec& c) {
  std::vector<double> out;
  if (const Polytope* p = planar_polytope(k))
    for (const Vec& v : p->vertices()) out.push_back(std::atan2(v[1] - c[1], v[0] - c[0]));
  return out;
}

std::vector<double> support_kinks(const ConvexBody& k) {
  std::vector<double> out;
  if (const Polytope* p = planar_polytope(k))
    for (const auto& f : p->facets()) out.push_back(std::atan2(f.normal[1], f.normal[0]));
  return out;
}

}  // namespace polyapprox
