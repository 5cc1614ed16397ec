#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "polyapprox/body.hpp"
#include "polyapprox/deviations.hpp"
#include "polyapprox/errors.hpp"
#include "polyapprox/measures.hpp"
#include "polyapprox/parallel.hpp"
#include "polyapprox/random.hpp"

using namespace polyapprox;
using std::numbers::pi;

namespace {

template <class F>
double quad(F f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-13);
}

Vec vec(std::initializer_list<double> v) {
  Vec x(static_cast<Eigen::Index>(v.size()));
  int i = 0;
  for (double d : v) x[i++] = d;
  return x;
}

// Pearson statistic over the 2^n orthants.
double orthant_chi2(const BoundaryDensity& d, int samples, std::uint64_t seed) {
  const int n = d.body()->dim();
  std::vector<int> counts(1u << n, 0);
  for (int i = 0; i < samples; ++i) {
    const Vec x = d.sample(seed, static_cast<std::uint64_t>(i));
    unsigned k = 0;
    for (int c = 0; c < n; ++c) k |= (x[c] > 0 ? 1u : 0u) << c;
    ++counts[k];
  }
  const double expect = double(samples) / counts.size();
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - expect) * (c - expect) / expect;
  return chi2;
}

}  // namespace

TEST(Sphere, PlanarMeanIsZero) {
  const int m = 100000;
  double sc = 0.0, ss = 0.0;
  for (int i = 0; i < m; ++i) {
    const Vec u = sample_sphere(2, 5, static_cast<std::uint64_t>(i));
    EXPECT_NEAR(u.norm(), 1.0, 1e-14);
    sc += u[0];
    ss += u[1];
  }
  // Each coordinate has variance 1/2.
  const double se = std::sqrt(0.5 / m);
  EXPECT_LT(std::abs(sc / m), 3 * se);
  EXPECT_LT(std::abs(ss / m), 3 * se);
}

TEST(Boundary, OrthantChiSquared) {
  // 0.01 critical values of chi^2 with 7 and 3 degrees of freedom.
  EXPECT_LT(orthant_chi2(BoundaryDensity(make_ball(3), DensityKind::Uniform), 80000, 1), 18.475);
  EXPECT_LT(orthant_chi2(BoundaryDensity(make_ellipsoid(vec({2.0, 1.0, 0.5})), DensityKind::Uniform), 80000, 2), 18.475);
  EXPECT_LT(orthant_chi2(BoundaryDensity(make_ellipsoid(vec({2.0, 1.0})), DensityKind::PhiJ, 1), 40000, 3), 11.345);
}

TEST(Boundary, BallDensitiesReduceToUniform) {
  for (int n : {2, 3, 5}) {
    const double area = ball_surface_area(n);
    for (auto kind : {DensityKind::PsiTildeJ, DensityKind::PhiJ}) {
      for (int j = 1; j <= n; ++j) {
        BoundaryDensity d(make_ball(n), kind, j);
        EXPECT_NEAR(d(sample_sphere(n, 1)), 1.0 / area, 1e-12) << n << " " << j;
        EXPECT_NEAR(d.acceptance_rate(), 1.0, 1e-9);
      }
    }
  }
}

TEST(Boundary, EllipseCurvatureDensityMatchesQuadrature) {
  const double a = 2.0, b = 1.0;
  // j = 2 weights by kappa^{1/3} (affine arc length, uniform in the parameter); j = 1 by kappa^{2/3}.
  for (int j : {2, 1}) {
    BoundaryDensity d(make_ellipsoid(vec({a, b})), DensityKind::PhiJ, j);
    const double power = (3 - j) / 3.0;
    auto w = [&](double t) {
      const double g = a * a * std::sin(t) * std::sin(t) + b * b * std::cos(t) * std::cos(t);
      const double kappa = a * b / std::pow(g, 1.5);
      return std::pow(kappa, power) * std::sqrt(g);
    };
    const int bins = 12, m = 120000;
    std::vector<double> p(bins);
    double total = 0.0;
    for (int k = 0; k < bins; ++k) total += p[k] = quad(w, 2 * pi * k / bins, 2 * pi * (k + 1) / bins);
    EXPECT_LT(std::abs(total - d.normalization().value), 4 * d.normalization().std_error + 1e-12 * total) << j;
    std::vector<int> counts(bins, 0);
    for (int i = 0; i < m; ++i) {
      const Vec x = d.sample(9, static_cast<std::uint64_t>(i));
      double t = std::atan2(x[1] / b, x[0] / a);
      if (t < 0) t += 2 * pi;
      ++counts[std::min(bins - 1, static_cast<int>(t / (2 * pi) * bins))];
    }
    for (int k = 0; k < bins; ++k) {
      const double q = p[k] / total;
      const double se = std::sqrt(q * (1 - q) / m);
      EXPECT_LT(std::abs(counts[k] / double(m) - q), 3.5 * se) << j << " bin " << k;
    }
  }
}

TEST(Boundary, DensityIntegratesToOne) {
  const Vec a = vec({1.5, 1.0, 0.7});
  for (auto [kind, p] : {std::pair{DensityKind::Uniform, 0.0}, {DensityKind::PhiJ, 1.0}, {DensityKind::PsiTildeJ, 2.0},
                         {DensityKind::PsiWeighted, -1.0}}) {
    BoundaryDensity d(make_ellipsoid(a), kind, p, 4);
    const double sphere = ball_surface_area(3);
    const auto est = mc_estimate(200000, 77, [&](Stream& s) {
      const Vec u = s.unit_vector(3);
      return sphere * d(a.cwiseProduct(u)) * a.prod() * u.cwiseQuotient(a).norm();
    });
    const double se = std::hypot(est.std_error, d.normalization().std_error / d.normalization().value);
    EXPECT_LT(std::abs(est.value - 1.0), 3 * se + 1e-12) << to_string(kind);
  }
}

TEST(Boundary, PsiTildeNormalizerIsOmega) {
  const auto e = make_ellipsoid(vec({1.4, 0.8}));
  for (int j = 1; j <= 2; ++j) {
    BoundaryDensity d(e, DensityKind::PsiTildeJ, j, 3);
    const auto om = omega_q(*e, j, 200000, 99);
    EXPECT_LT(std::abs(d.normalization().value - om.value), 3 * std::hypot(d.normalization().std_error, om.std_error) + 1e-12);
  }
}

TEST(Boundary, Errors) {
  EXPECT_THROW(BoundaryDensity(make_polytope_body(make_cube(2, -1, 1)), DensityKind::Uniform), Error);
  EXPECT_THROW(BoundaryDensity(make_ball(3), DensityKind::PhiJ, 0), Error);
  EXPECT_THROW(BoundaryDensity(make_ball(vec({2.0, 0.0}), 1.0), DensityKind::PsiTildeJ, 1), Error);
  try {
    BoundaryDensity(make_ellipsoid(vec({1000.0, 0.01, 0.01})), DensityKind::PhiJ, 1);
    FAIL() << "expected a stall";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RejectionStall);
  }
}

TEST(Curvature, BallAndEllipse) {
  const auto ball = make_ball(4, 2.0);
  const Vec x = 2.0 * sample_sphere(4, 3);
  for (int k = 0; k <= 3; ++k) EXPECT_NEAR(curvature_H(*ball, x, k), std::pow(2.0, -k), 1e-12);
  const auto el = make_ellipsoid(vec({3.0, 2.0}));
  EXPECT_NEAR(curvature_H(*el, vec({3.0, 0.0}), 1), 3.0 / 4.0, 1e-12);
  EXPECT_NEAR(curvature_H(*el, vec({0.0, 2.0}), 1), 2.0 / 9.0, 1e-12);
  EXPECT_THROW(curvature_H(*el, vec({3.1, 0.0}), 1), Error);
  EXPECT_THROW(curvature_H(*el, vec({3.0, 0.0}), 2), Error);
}

TEST(Curvature, InvariantUnderAxisRotation) {
  // The quarter turn (x, y, z) -> (-y, x, z) maps axes (a, b, c) to (b, a, c).
  const auto e1 = make_ellipsoid(vec({2.0, 1.2, 0.6}));
  const auto e2 = make_ellipsoid(vec({1.2, 2.0, 0.6}));
  for (int i = 0; i < 20; ++i) {
    const Vec u = sample_sphere(3, 8, static_cast<std::uint64_t>(i));
    const Vec x = vec({2.0 * u[0], 1.2 * u[1], 0.6 * u[2]});
    const Vec y = vec({-x[1], x[0], x[2]});
    for (int k = 0; k <= 2; ++k) EXPECT_NEAR(curvature_H(*e1, x, k), curvature_H(*e2, y, k), 1e-10);
  }
}

TEST(Inscribed, SimplexAndContainment) {
  BoundaryDensity d(make_ball(3), DensityKind::Uniform);
  const Polytope s = random_inscribed(d, 4, 1);
  EXPECT_EQ(s.vertices().size(), 4u);
  EXPECT_THROW(random_inscribed(d, 3, 1), Error);
  const Polytope p = random_inscribed(d, 200, 2);
  for (const Vec& v : p.vertices()) EXPECT_NEAR(v.norm(), 1.0, 1e-9);
  EXPECT_TRUE(contains_body(*d.body(), *make_polytope_body(p)));

  BoundaryDensity e(make_ellipsoid(vec({1.5, 1.0, 0.8})), DensityKind::PsiTildeJ, 1);
  const Polytope q = random_inscribed(e, 150, 3);
  for (const Vec& v : q.vertices()) EXPECT_NEAR(v.cwiseQuotient(vec({1.5, 1.0, 0.8})).norm(), 1.0, 1e-9);
}

TEST(Circumscribed, EqualAnglesGiveRegularPolygon) {
  BoundaryDensity d(make_ball(2), DensityKind::Uniform);
  for (int N : {3, 5, 8}) {
    Points touch;
    for (int i = 0; i < N; ++i) touch.push_back(vec({std::cos(2 * pi * i / N), std::sin(2 * pi * i / N)}));
    const BodyPtr p = circumscribed_from_points(d, touch, default_clip(*d.body()));
    ASSERT_EQ(p->kind(), BodyKind::Polytope);
    EXPECT_NEAR(static_cast<const PolytopeBody&>(*p).polytope().volume(), N * std::tan(pi / N), 1e-10) << N;
  }
}

TEST(Circumscribed, ContainsBody) {
  for (int seed = 0; seed < 10; ++seed) {
    BoundaryDensity d(make_ellipsoid(vec({1.3, 0.9})), DensityKind::Uniform);
    const BodyPtr p = random_circumscribed(d, 6, static_cast<std::uint64_t>(seed));
    EXPECT_TRUE(contains_body(*p, *d.body())) << seed;
  }
  BoundaryDensity d3(make_ball(3), DensityKind::Uniform);
  const BodyPtr p3 = random_circumscribed(d3, 60, 5);
  EXPECT_TRUE(contains_body(*p3, *d3.body()));
}

TEST(Circumscribed, ClipIsActiveForFewFacets) {
  // Four tangent lines bunched on one side leave an unbounded cell that the clip closes off.
  BoundaryDensity d(make_ball(2), DensityKind::Uniform);
  Points touch;
  for (double t : {0.0, 0.3, 0.6, 0.9}) touch.push_back(vec({std::cos(t), std::sin(t)}));
  const BodyPtr p = circumscribed_from_points(d, touch, default_clip(*d.body()));
  EXPECT_EQ(p->kind(), BodyKind::Intersection);
  EXPECT_TRUE(contains_body(*p, *d.body()));
  EXPECT_TRUE(contains_body(*make_ball(2, 2.0), *p));
}

TEST(Harness, FitRecoversLine) {
  HarnessResult r;
  r.dim = 3;
  for (int N : {100, 200, 400}) r.rows.push_back({N, 50, 5.0 + 7.0 / N, 0.1, 0.0});
  fit_extrapolation(r);
  EXPECT_NEAR(r.limit, 5.0, 1e-10);
  EXPECT_NEAR(r.slope, 7.0, 1e-7);
  EXPECT_GT(r.limit_se, 0.0);
}

TEST(Harness, RateConsistencyAndDeterminism) {
  BoundaryDensity d(make_ball(2), DensityKind::Uniform);
  const BodyPtr disk = d.body();
  Construction build = [&](int N, std::uint64_t s) { return make_polytope_body(random_inscribed(d, N, s)); };
  Functional area_gap = [&](const BodyPtr& p, std::uint64_t) { return delta_j(disk, p, 2).value; };
  set_max_threads(1);
  const auto a = expectation_harness(2, build, area_gap, {50, 200}, 300, 42);
  set_max_threads(4);
  const auto b = expectation_harness(2, build, area_gap, {50, 200}, 300, 42);
  set_max_threads(0);
  ASSERT_EQ(a.rows.size(), 2u);
  for (int i = 0; i < 2; ++i) {
    EXPECT_EQ(a.rows[i].scaled_mean, b.rows[i].scaled_mean);
    EXPECT_EQ(a.rows[i].std_error, b.rows[i].std_error);
    EXPECT_GT(a.rows[i].std_error, 0.0);
  }
  EXPECT_LT(std::abs(a.rows[0].scaled_mean / a.rows[1].scaled_mean - 1.0), 0.10);
  EXPECT_THROW(expectation_harness(2, build, area_gap, {50}, 10, 1), Error);
  EXPECT_THROW(expectation_harness(2, build, area_gap, {50, 40}, 30, 1), Error);
}
