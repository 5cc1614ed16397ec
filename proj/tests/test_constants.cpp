#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "polyapprox/constants.hpp"
#include "polyapprox/deviations.hpp"
#include "polyapprox/errors.hpp"
#include "polyapprox/measures.hpp"

using namespace polyapprox;
using std::numbers::pi;
using mp = boost::multiprecision::cpp_bin_float_50;

namespace {

// alpha in 50-digit arithmetic straight from its definition.
mp mp_alpha(int n, int j) {
  const mp N = n, P = boost::math::constants::pi<mp>();
  auto ball = [&](mp k) { return pow(P, k / 2) / boost::math::tgamma(k / 2 + 1); };
  const mp e = mp(2) / (N - 1);
  return (1 - mp(2) / (N + 1)) * pow(N * ball(N) / ball(N - 1), e) * boost::math::tgamma(mp(j) + 1 + e) /
         boost::math::tgamma(mp(j) + 1);
}

}  // namespace

TEST(Alpha, ThreeDimensionalValues) {
  for (int j = 1; j <= 3; ++j) EXPECT_NEAR(alpha(3, j), 2.0 * (j + 1), 1e-12) << j;
}

TEST(Alpha, PlanarValues) {
  EXPECT_NEAR(alpha(2, 2), 4 * pi * pi, 1e-11);
  EXPECT_NEAR(alpha(2, 1), 2 * pi * pi, 1e-11);
  EXPECT_NEAR(random_inscribed_limit(2, 2), 4 * pi * pi * pi, 1e-10);
  EXPECT_NEAR(random_inscribed_limit(3, 1), 8.0, 1e-12);
  EXPECT_NEAR(random_inscribed_limit(3, 2), 12 * pi, 1e-11);
  EXPECT_NEAR(random_inscribed_limit(3, 3), 16 * pi, 1e-11);
}

TEST(Alpha, AgreesWithMultiprecision) {
  for (int n : {2, 5, 17, 60, 150})
    for (int j : {1, n / 2 + 1, n}) {
      const double ref = static_cast<double>(mp_alpha(n, j));
      EXPECT_NEAR(alpha(n, j) / ref, 1.0, 1e-13) << n << " " << j;
    }
}

TEST(Alpha, LargeDimensionBand) {
  const double a = alpha(200, 200);
  EXPECT_GE(a, 1.0);
  EXPECT_LE(a, 1.0 + 120 * std::log(200.0) / 200);
}

TEST(Alpha, IncreasingInJ) {
  for (int n : {2, 3, 10, 100})
    for (int j = 1; j < n; ++j) EXPECT_LT(alpha(n, j), alpha(n, j + 1));
}

TEST(Alpha, DomainErrors) {
  EXPECT_THROW(alpha(1, 1), Error);
  EXPECT_THROW(alpha(3, 0), Error);
  EXPECT_THROW(alpha(3, 4), Error);
}

TEST(Beta, ClosedFormForTopIndex) {
  for (int n = 3; n <= 10; ++n) EXPECT_NEAR(beta(n, n) / beta_nn_closed_form(n), 1.0, 1e-12) << n;
}

TEST(Beta, ReitznerConsistencyOnBall) {
  // Uniform density 1/|dD_n| in the curvature integral reproduces the ball limit.
  for (int n = 2; n <= 8; ++n)
    for (int j = 1; j <= n; ++j) {
      const double s = ball_surface_area(n);
      const double rhs = beta(n, j) * std::pow(s, 2.0 / (n - 1)) * s;
      EXPECT_NEAR(rhs / random_inscribed_limit(n, j), 1.0, 1e-12);
    }
}

TEST(Beta, InvertsToAlpha) {
  for (int n : {2, 4, 9, 30})
    for (int j = 1; j <= n; ++j) {
      const double back = beta(n, j) * 2 * n * ball_volume(n) * std::pow(ball_surface_area(n), 2.0 / (n - 1)) /
                          (j * ball_intrinsic_volume(n, j));
      EXPECT_NEAR(back / alpha(n, j), 1.0, 1e-12);
    }
}

TEST(Tiling, KnownValues) {
  const auto t2 = tiling_numbers(2);
  EXPECT_TRUE(t2.known);
  EXPECT_DOUBLE_EQ(t2.del.lo, 1.0 / 6);
  EXPECT_DOUBLE_EQ(t2.div.lo, 1.0 / 12);
  EXPECT_DOUBLE_EQ(t2.ldel.lo, 1.0 / 16);
  EXPECT_DOUBLE_EQ(t2.ldiv.lo, 1.0 / 16);
  const auto t3 = tiling_numbers(3);
  EXPECT_NEAR(t3.div.lo / t3.del.lo, 5.0 / 9, 1e-15);
  EXPECT_LT(t3.div.lo, t3.del.lo);
  EXPECT_NEAR(t3.ldel.lo, 1 / (6 * std::sqrt(3.0)) - 1 / (8 * pi), 1e-15);
}

TEST(Tiling, UnknownDimensionsAreBands) {
  for (int n : {4, 10, 100}) {
    const auto t = tiling_numbers(n);
    EXPECT_FALSE(t.known);
    EXPECT_LT(t.del.lo, t.del.hi);
    EXPECT_FALSE(t.div.exact());
    EXPECT_TRUE(std::isinf(t.ldel.hi));
    // Same band as the asymptotic n / (2 pi e) up to the stated factors.
    const double c = n / (2 * pi * std::numbers::e);
    EXPECT_GE(t.del.lo, c * (1 + std::log(n) / n - 2.0 / n));
    EXPECT_LE(t.del.hi, c * (1 + 25 * std::log(n) / n));
  }
}

TEST(WillsHat, Examples) {
  EXPECT_NEAR(what_hat(2), 3 * pi, 1e-12);
  EXPECT_NEAR(what_hat_product(2), pi * 3, 1e-12);
  EXPECT_NEAR(what_hat(3), 4 * (1 + pi + pi), 1e-12);
  for (int n = 2; n <= 50; ++n) EXPECT_NEAR(what_hat(n) / what_hat_product(n), 1.0, 1e-10) << n;
  for (int n = 2; n <= 50; ++n) EXPECT_NEAR(what_hat_product(n), ball_intrinsic_volume(n, 1) * wills_ball(n - 1), 1e-10 * what_hat(n));
}

TEST(InequalitySuite, CoversEveryInequalityAndDimension) {
  const auto rep = appendix_b_suite(60);
  std::set<std::string> names;
  for (const auto& r : rep.records) names.insert(r.name);
  for (const char* must : {"gamma_general.lower", "vol_Dn.upper", "vol_Dn_and_partial_Dn.lower", "partial_Dn.middle",
                           "gamma_small.upper", "increasing_est.identity", "increasing_est.upper", "j_n_estimate.upper",
                           "j_n_estimate.n_ge_10", "alpha_estimate.lower", "alpha_estimate.at_least_one",
                           "alpha_rel_est.upper", "beta_estimate.upper", "del_estim.upper", "del_estim.known.lower",
                           "del_div_ineq"})
    EXPECT_TRUE(names.count(must)) << must;
  for (int n = 2; n <= 60; ++n) {
    bool seen = false;
    for (const auto& r : rep.records) seen |= r.n == n && r.name == "alpha_estimate.upper";
    EXPECT_TRUE(seen) << n;
  }
  EXPECT_THROW(appendix_b_suite(1), Error);
  EXPECT_THROW(appendix_b_suite(2001), Error);
}

TEST(InequalitySuite, BoundaryCases) {
  const auto rep = appendix_b_suite(3);
  for (const auto& r : rep.records) {
    if (r.name == "gamma_small.upper" && r.n == 2) {
      EXPECT_NEAR(r.lhs, 2.0, 1e-13);
      EXPECT_TRUE(r.pass);
    }
    if (r.name == "partial_Dn.upper" && r.n == 2) {
      // (2e)^1 exceeds 1 + 8/2: the last link of the chain is false at n = 2.
      EXPECT_NEAR(r.lhs, pi * std::numbers::e * 2 * std::numbers::e, 1e-10);
      EXPECT_FALSE(r.pass);
    }
  }
}

TEST(InequalitySuite, BetaLowerBoundCheckedIndependently) {
  // beta(2,1) = 1/8 by hand; the printed lower bound evaluates to (1 + 7 ln 2) / (4 pi e).
  EXPECT_NEAR(beta(2, 1), 0.125, 1e-14);
  const double lower = (1 + 7 * std::log(2.0)) / (4 * pi * std::numbers::e);
  EXPECT_GT(lower, beta(2, 1));
  const auto rep = appendix_b_suite(2);
  bool found = false;
  for (const auto& r : rep.records)
    if (r.name == "beta_estimate.lower") found = !r.pass;
  EXPECT_TRUE(found);
}
