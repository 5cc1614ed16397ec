#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/ellint_2.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "polyapprox/body.hpp"
#include "polyapprox/errors.hpp"
#include "polyapprox/measures.hpp"
#include "polyapprox/parallel.hpp"

using namespace polyapprox;
using std::numbers::pi;
using mp = boost::multiprecision::cpp_bin_float_50;

namespace {

// Distance in standard errors; a 1e-12 relative floor covers estimators whose integrand is constant.
double within_sigma(double est, double se, double truth) {
  return std::abs(est - truth) / std::max(se + 1e-12 * std::abs(truth) / 3.0, 1e-300);
}

template <class F>
double quad(F f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-13);
}

mp mp_log_ball(int n) {
  const mp N = n;
  return N / 2 * log(boost::math::constants::pi<mp>()) - boost::math::lgamma(N / 2 + 1);
}

Polytope square(double s) { return make_cube(2, -s, s); }

}  // namespace

TEST(BallFormulas, Examples) {
  EXPECT_NEAR(ball_intrinsic_volume(2, 1), pi, 1e-14);
  for (int n = 1; n <= 12; ++n) {
    EXPECT_NEAR(ball_intrinsic_volume(n, n), ball_volume(n), 1e-13 * ball_volume(n));
    EXPECT_DOUBLE_EQ(ball_intrinsic_volume(n, 0), 1.0);
  }
  EXPECT_NEAR(ball_intrinsic_volume(3, 1), 4.0, 1e-14);
  EXPECT_NEAR(ball_volume(3), 4.0 * pi / 3.0, 1e-14);
}

TEST(BallFormulas, AgreeWithMultiprecisionUpTo1000) {
  for (int n : {2, 3, 7, 50, 200, 999, 1000}) {
    for (int j : {1, 2, n / 2, n - 1, n}) {
      if (j < 1 || j > n) continue;
      const mp exact = boost::math::lgamma(mp(n + 1)) - boost::math::lgamma(mp(j + 1)) - boost::math::lgamma(mp(n - j + 1)) +
                       mp_log_ball(n) - mp_log_ball(n - j);
      const double v = ball_intrinsic_volume(n, j);
      if (std::isnormal(v)) {
        EXPECT_NEAR(std::log(v), static_cast<double>(exact), 1e-12) << n << "," << j;
      }
    }
    EXPECT_NEAR(log_ball_volume(n), static_cast<double>(mp_log_ball(n)), 1e-12 * std::max(1.0, std::abs(log_ball_volume(n))));
  }
}

TEST(BallFormulas, AnalyticExtension) {
  for (int n = 1; n <= 9; ++n) {
    EXPECT_NEAR(ball_volume_analytic(n, n), ball_volume(n), 1e-13);
    EXPECT_NEAR(ball_volume_analytic(n, 0.0), 1.0, 1e-14);
    for (int j = 0; j <= n; ++j) EXPECT_NEAR(ball_volume_analytic(n, j), ball_intrinsic_volume(n, j), 1e-12 * ball_intrinsic_volume(n, j));
  }
  // n = 3, q = 1.5 against a 50-digit Gamma evaluation.
  const mp q = mp(3) / 2, n = 3;
  using boost::math::tgamma;
  const mp ref = pow(boost::math::constants::pi<mp>(), q / 2) * tgamma(n + 1) / (tgamma(q + 1) * tgamma(n - q + 1)) *
                 tgamma((n - q) / 2 + 1) / tgamma(n / 2 + 1);
  EXPECT_NEAR(ball_volume_analytic(3, 1.5), static_cast<double>(ref), 1e-14);
  EXPECT_THROW(ball_volume_analytic(3, 3.5), Error);
}

TEST(ExactIntrinsic, CubeHexagonTetrahedron) {
  const auto cube = intrinsic_volumes_exact(make_cube(3, 0.0, 1.0));
  const Vec ref = (Vec(4) << 1, 3, 3, 1).finished();
  for (int j = 0; j <= 3; ++j) EXPECT_NEAR(cube.values[j], ref[j], 1e-12);
  EXPECT_EQ(cube.methods[1], VolumeMethod::ExternalAngle);

  const auto hex = intrinsic_volumes_exact(make_regular_polygon(6, 1.0));
  EXPECT_NEAR(hex.values[2], 3.0 * std::sqrt(3.0) / 2.0, 1e-12);
  EXPECT_NEAR(hex.values[1], 3.0, 1e-12);

  EXPECT_NEAR(intrinsic_volume_exact(make_regular_simplex(3), 3), 8.0 * std::sqrt(3.0) / 27.0, 1e-12);
  EXPECT_THROW(intrinsic_volumes_exact(make_cube(4, 0.0, 1.0)), Error);
  EXPECT_NEAR(intrinsic_volume_exact(make_cube(4, 0.0, 1.0), 3), 4.0, 1e-12);  // half of 8 unit facets
}

TEST(ExactIntrinsic, BoxSteinerCoefficients) {
  Vec lo(3), hi(3);
  lo << 0, 0, 0;
  hi << 1.5, 0.5, 2.0;
  const auto v = intrinsic_volumes_exact(make_box(lo, hi));
  EXPECT_NEAR(v.values[1], 4.0, 1e-12);
  EXPECT_NEAR(v.values[2], 1.5 * 0.5 + 0.5 * 2.0 + 1.5 * 2.0, 1e-12);
  EXPECT_NEAR(v.values[3], 1.5, 1e-12);
}

TEST(Kubota, CubeAndPolygon) {
  const Polytope cube = make_cube(3, 0.0, 1.0);
  const auto k1 = kubota_estimate(cube, 1, 100000, 11);
  EXPECT_LT(within_sigma(k1.value, k1.std_error, 3.0), 3.0);
  const auto k2 = kubota_estimate(cube, 2, 20000, 12);
  EXPECT_LT(within_sigma(k2.value, k2.std_error, 3.0), 3.0);

  const Polytope tet = make_regular_simplex(3);
  const auto t2 = kubota_estimate(tet, 2, 20000, 13);
  EXPECT_LT(within_sigma(t2.value, t2.std_error, intrinsic_volume_exact(tet, 2)), 3.0);
  const auto t1 = kubota_estimate(tet, 1, 50000, 14);
  EXPECT_LT(within_sigma(t1.value, t1.std_error, intrinsic_volume_exact(tet, 1)), 3.0);

  const Polytope g = make_regular_polygon(100, 1.0);
  const auto p1 = kubota_estimate(g, 1, 50000, 15);
  EXPECT_LT(within_sigma(p1.value, p1.std_error, 100.0 * std::sin(pi / 100.0)), 3.0);
  EXPECT_THROW(kubota_estimate(cube, 3, 10, 1), Error);
}

TEST(Kubota, ReproducibleAcrossThreadCounts) {
  const Polytope cube = make_cube(3, 0.0, 1.0);
  set_max_threads(1);
  const auto a = kubota_estimate(cube, 2, 5000, 99);
  set_max_threads(4);
  const auto b = kubota_estimate(cube, 2, 5000, 99);
  set_max_threads(0);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.std_error, b.std_error);
}

TEST(SteinerFit, DiskCubeCap) {
  const auto disk = make_ball(2);
  const auto d = steiner_fit(*disk, default_steiner_radii(*disk), 100000, 21);
  EXPECT_EQ(d.values[0], 1.0);
  EXPECT_LT(within_sigma(d.values[1], d.std_errors[1], pi), 3.0);
  EXPECT_LT(within_sigma(d.values[2], d.std_errors[2], pi), 3.0);

  const auto cube = make_polytope_body(make_cube(3, 0.0, 1.0));
  const auto c = steiner_fit(*cube, default_steiner_radii(*cube), 100000, 22);
  const Vec ref = (Vec(4) << 1, 3, 3, 1).finished();
  for (int j = 1; j <= 3; ++j) EXPECT_LT(within_sigma(c.values[j], c.std_errors[j], ref[j]), 3.0) << j;

  const auto cap = make_cap(2, 0.1, 1);
  const auto l = steiner_fit(*cap, default_steiner_radii(*cap), 100000, 23);
  EXPECT_LT(within_sigma(l.values[1], l.std_errors[1], std::acos(0.1) + std::sqrt(0.99)), 3.0);
}

TEST(SteinerFit, RejectsBadDesigns) {
  const auto disk = make_ball(2);
  EXPECT_THROW(steiner_fit(*disk, {0.5, 1.0}, 100, 1), Error);
  EXPECT_THROW(steiner_fit(*disk, {0.5, 0.5, 1.0}, 100, 1), Error);
  try {
    steiner_fit(*disk, {1.0, 1.0 + 1e-9, 1.0 + 2e-9}, 100, 1);
    FAIL() << "expected IllConditioned";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IllConditioned);
  }
}

TEST(DualVolume, BallAndPolytope) {
  for (int n : {2, 3, 5}) {
    const auto b = make_ball(n);
    for (double q : {-1.0, 0.5, 1.0, 2.0, static_cast<double>(n), n + 2.0}) {
      const double expect = std::abs(q) <= n ? ball_volume_analytic(n, std::abs(q)) : ball_volume(n);
      EXPECT_NEAR(dual_volume(*b, q, 100, 1).value, expect, 1e-12);
    }
    EXPECT_NEAR(dual_volume(*b, 0.0, 100, 1).value, 0.0, 1e-15);
    for (int j = 0; j <= n; ++j) EXPECT_NEAR(dual_normalization(n, j), ball_intrinsic_volume(n, j), 1e-12);
  }
  Points pts;
  Stream s(5);
  for (int i = 0; i < 30; ++i) pts.push_back(s.unit_vector(3) * s.uniform(0.5, 1.5));
  const Polytope p = convex_hull(pts);
  const auto pb = make_polytope_body(p);
  ASSERT_TRUE(pb->origin_interior());
  const auto dv = dual_volume(*pb, 3.0, 100000, 31);
  EXPECT_LT(within_sigma(dv.value, dv.std_error, p.volume()), 3.0);
}

TEST(DualVolume, Scaling) {
  const auto k = make_polytope_body(square(1.0));
  const auto k2 = make_polytope_body(square(2.0));
  const auto a = dual_volume(*k, 1.5, 2000, 4);
  const auto b = dual_volume(*k2, 1.5, 2000, 4);
  EXPECT_NEAR(b.value, std::pow(2.0, 1.5) * a.value, 1e-12 * b.value);
  EXPECT_THROW(dual_volume(*make_cap(2, 0.2, 1), 1.0, 10, 1), Error);
}

TEST(DualVolume, SquareQuadratureAndRadialFit) {
  const auto k = make_polytope_body(square(1.0));
  const double v1 = 4.0 * std::log(1.0 + std::sqrt(2.0));  // pi * (4/pi) int_0^{pi/4} sec
  EXPECT_NEAR(dual_volume_quadrature(*k, 1.0), v1, 1e-10);
  EXPECT_NEAR(dual_volume_quadrature(*k, 2.0), 4.0, 1e-10);

  const auto fit = radial_steiner_fit(*k, default_steiner_radii(*k), 100000, 41);
  EXPECT_LT(within_sigma(fit.values[2], fit.std_errors[2], 4.0), 3.0);
  EXPECT_LT(within_sigma(fit.values[1], fit.std_errors[1], v1), 3.0);

  const auto disk = make_ball(2);
  const auto dfit = radial_steiner_fit(*disk, default_steiner_radii(*disk), 100000, 42);
  EXPECT_LT(within_sigma(dfit.values[1], dfit.std_errors[1], pi), 3.0);
  EXPECT_LT(within_sigma(dfit.values[2], dfit.std_errors[2], pi), 3.0);
}

TEST(Omega, BallEllipseScaling) {
  for (int n : {2, 3, 4}) {
    const auto b = make_ball(n);
    for (double q : {-1.0, 0.0, 1.0, 3.0}) EXPECT_NEAR(omega_q(*b, q, 100, 1).value, n * ball_volume(n), 1e-12);
    const double lam = 1.7;
    const auto bl = make_ball(n, lam);
    EXPECT_NEAR(omega_q(*bl, n, 100, 1).value, std::pow(lam, n * (n - 1.0) / (n + 1.0)) * n * ball_volume(n), 1e-12);
  }
  // Ellipse (2, 1): int kappa^{1/3} ds by quadrature.
  const double a = 2.0, b = 1.0;
  const double ref = quad([&](double t) {
    const double g = a * a * std::sin(t) * std::sin(t) + b * b * std::cos(t) * std::cos(t);
    const double kappa = a * b / std::pow(g, 1.5);
    return std::cbrt(kappa) * std::sqrt(g);
  }, 0.0, 2.0 * pi);
  Vec ax(2);
  ax << a, b;
  const auto e = make_ellipsoid(ax);
  const auto est = omega_q(*e, 2.0, 200000, 51);
  EXPECT_LT(within_sigma(est.value, est.std_error, ref), 3.0);
  EXPECT_NEAR(ref, std::cbrt(2.0) * 2.0 * pi, 1e-9);  // equi-affine invariance

  // Weighted q != n on the ellipse against the same 1-D quadrature.
  const double q = 1.0, ex = (q - 2.0) / 3.0;
  const double refq = quad([&](double t) {
    const double g = a * a * std::sin(t) * std::sin(t) + b * b * std::cos(t) * std::cos(t);
    const double r = std::hypot(a * std::cos(t), b * std::sin(t));
    return std::pow(r, ex) * std::cbrt(a * b / std::pow(g, 1.5)) * std::sqrt(g);
  }, 0.0, 2.0 * pi);
  const auto estq = omega_q(*e, q, 200000, 52);
  EXPECT_LT(within_sigma(estq.value, estq.std_error, refq), 3.0);
  EXPECT_THROW(omega_q(*make_polytope_body(square(1.0)), 2.0, 10, 1), Error);
}

TEST(L1Metric, Examples) {
  const auto d = make_ball(2);
  EXPECT_EQ(l1_metric(*d, *d, 1000, 1).value, 0.0);
  EXPECT_NEAR(l1_metric(*d, *make_ball(2, 1.3), 1000, 1).value, 0.3, 1e-12);
  const auto t = make_polytope_body(make_triangle_T(0.0));
  const double ref = (pi - 1.5 * std::sqrt(3.0)) / pi;
  EXPECT_NEAR(l1_metric_quadrature(*d, *t), ref, 1e-10);
  const auto mc = l1_metric(*d, *t, 100000, 61);
  EXPECT_LT(within_sigma(mc.value, mc.std_error, ref), 3.0);
}

TEST(CapMeasures, ClosedFormsAndLimits) {
  const auto c = make_cap(2, 0.1, 1);
  EXPECT_NEAR(*intrinsic_volume_deterministic(*c, 1), 2.4656, 1e-4);
  EXPECT_NEAR(*intrinsic_volume_deterministic(*make_cap(2, 1e-9, 1), 2), pi / 2.0, 1e-8);
  EXPECT_NEAR(*intrinsic_volume_deterministic(*make_cap(3, 1e-9, 1), 3), 2.0 * pi / 3.0, 1e-8);
  // Valuation sanity: V_1(L_e) + V_1(L_-e) -> pi + 2.
  const double s = *intrinsic_volume_deterministic(*make_cap(2, 1e-8, 1), 1) + *intrinsic_volume_deterministic(*make_cap(2, 1e-8, -1), 1);
  EXPECT_NEAR(s, pi + 2.0, 1e-7);
  EXPECT_THROW(make_cap(2, 0.0, 1), Error);
  EXPECT_THROW(make_cap(2, 1.0, 1), Error);

  // n = 3 cap: V_1 from the support function over the sphere, V_2 via a Steiner fit.
  for (double eps : {0.1, 0.5, 0.8}) {
    const auto c3 = make_cap(3, eps, 1);
    const double v1 = quad([&](double phi) {
      Vec u(3);
      u << std::sin(phi), 0.0, std::cos(phi);
      return 2.0 * c3->support(u) * std::sin(phi);
    }, 0.0, pi);
    EXPECT_NEAR(*intrinsic_volume_deterministic(*c3, 1), v1, 1e-10) << eps;
  }
  const auto c3 = make_cap(3, 0.1, 1);
  const auto fit = steiner_fit(*c3, default_steiner_radii(*c3), 200000, 71);
  for (int j = 1; j <= 3; ++j) EXPECT_LT(within_sigma(fit.values[j], fit.std_errors[j], *intrinsic_volume_deterministic(*c3, j)), 3.0) << j;
}

TEST(EllipsoidMeasures, PerimeterAndSurface) {
  Vec a2(2);
  a2 << 2.0, 1.0;
  const auto e2 = make_ellipsoid(a2);
  const double perim = 4.0 * 2.0 * boost::math::ellint_2(std::sqrt(1.0 - 0.25));
  EXPECT_NEAR(*intrinsic_volume_deterministic(*e2, 1), perim / 2.0, 1e-10);
  EXPECT_NEAR(*intrinsic_volume_deterministic(*e2, 2), 2.0 * pi, 1e-12);

  Vec a3(3);
  a3 << 1.0, 1.0, 2.0;  // prolate spheroid
  const auto e3 = make_ellipsoid(a3);
  const double ecc = std::sqrt(1.0 - 0.25);
  const double area = 2.0 * pi * (1.0 + 2.0 / ecc * std::asin(ecc));
  EXPECT_NEAR(*intrinsic_volume_deterministic(*e3, 2), area / 2.0, 1e-8);
  const auto mw = mean_width_estimate(*e3, 100000, 81);
  EXPECT_LT(within_sigma(mw.value, mw.std_error, *intrinsic_volume_deterministic(*e3, 1)), 3.0);
}

TEST(IntersectionMeasures, DiskSquare2D) {
  const double s = 0.8;
  const auto k = std::make_shared<IntersectionBody>(make_ball(2), square(s));
  const double c = std::sqrt(1.0 - s * s);
  const double area = 4.0 * quad([&](double x) { return std::min(s, std::sqrt(1.0 - x * x)); }, 0.0, c) +
                      4.0 * quad([&](double x) { return std::min(s, std::sqrt(1.0 - x * x)); }, c, s);
  const double half_perim = 0.5 * (8.0 * c + 2.0 * pi - 8.0 * std::acos(s));
  EXPECT_NEAR(*intrinsic_volume_deterministic(*k, 2), area, 1e-9);
  EXPECT_NEAR(*intrinsic_volume_deterministic(*k, 1), half_perim, 1e-9);
  const auto v = volume_estimate(*k, 50000, 91);
  EXPECT_LT(within_sigma(v.value, v.std_error, area), 3.0);
}

TEST(IntrinsicVolumes, DispatcherMethods) {
  const auto cube4 = make_polytope_body(make_cube(4, 0.0, 1.0));
  const auto v = intrinsic_volumes(*cube4, {20000, 5, std::nullopt});
  const std::vector<double> ref{1, 4, 6, 4, 1};
  for (int j = 0; j <= 4; ++j) {
    if (v.std_errors[j] == 0.0) EXPECT_NEAR(v.values[j], ref[static_cast<std::size_t>(j)], 1e-12) << j;
    else EXPECT_LT(within_sigma(v.values[j], v.std_errors[j], ref[static_cast<std::size_t>(j)]), 3.0) << j;
  }
  EXPECT_EQ(v.methods[2], VolumeMethod::Kubota);
  EXPECT_EQ(v.methods[4], VolumeMethod::Exact);
  MeasureOptions o{50000, 3, VolumeMethod::Kubota};
  const auto r = intrinsic_volume(*make_ball(3), 1, o);
  EXPECT_NEAR(r.value, 4.0, 1e-12);  // constant width
}

TEST(IntrinsicVolumes, IsoperimetricChainAndLogConcavity) {
  Stream s(123);
  for (int t = 0; t < 30; ++t) {
    Points pts;
    const int m = 5 + static_cast<int>(s.uniform() * 40);
    for (int i = 0; i < m; ++i) pts.push_back(s.normal_vector(3));
    const auto v = intrinsic_volumes_exact(convex_hull(pts));
    Vec r(4);
    for (int j = 0; j <= 3; ++j) r[j] = v.values[j] / ball_intrinsic_volume(3, j);
    EXPECT_LE(std::cbrt(r[3]), std::sqrt(r[2]) * (1 + 1e-12));
    EXPECT_LE(std::sqrt(r[2]), r[1] * (1 + 1e-12));
    for (int j = 1; j <= 2; ++j) EXPECT_GE(r[j] * r[j], r[j - 1] * r[j + 1] * (1 - 1e-12));
  }
}

TEST(IntrinsicVolumes, MonotoneOnNestedPairs) {
  const Polytope outer = make_cube(3, -1.0, 1.0);
  const Polytope inner = make_cross_polytope(3, 1.0);
  const auto a = intrinsic_volumes_exact(inner);
  const auto b = intrinsic_volumes_exact(outer);
  for (int j = 0; j <= 3; ++j) EXPECT_LE(a.values[j], b.values[j] + 1e-12);
}
