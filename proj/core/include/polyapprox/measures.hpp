#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "polyapprox/body.hpp"
#include "polyapprox/estimator.hpp"
#include "polyapprox/polytope.hpp"

namespace polyapprox {

// ---------------------------------------------------------------- ball formulas

double log_ball_volume(double n);
// |D_n| for real n >= 0.
double ball_volume(double n);
// V_j(D_n) = C(n,j) |D_n| / |D_{n-j}|.
double ball_intrinsic_volume(int n, int j);
// Analytic extension V_q(D_n) for real q in [0, n].
double ball_volume_analytic(int n, double q);
// Surface area |dD_n| = n |D_n|.
double ball_surface_area(int n);
// C(n,j) |D_n| / (|D_j| |D_{n-j}|).
double kubota_factor(int n, int j);

// ------------------------------------------------------- intrinsic volumes

enum class VolumeMethod { Exact, Quadrature, ExternalAngle, Kubota, SteinerFit, MonteCarlo };

std::string_view to_string(VolumeMethod m) noexcept;

struct IntrinsicVolumeVector {
  Vec values;      // V_0..V_n
  Vec std_errors;  // 0 for deterministic entries
  std::vector<VolumeMethod> methods;
  Mat covariance;  // joint covariance when a single fit produced the entries (else diagonal)
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;

  int dim() const { return static_cast<int>(values.size()) - 1; }
};

// Full vector for n <= 3; V_n, V_{n-1}, V_0 in any dimension.
IntrinsicVolumeVector intrinsic_volumes_exact(const Polytope& p);
double intrinsic_volume_exact(const Polytope& p, int j);
bool has_exact_intrinsic_volume(const Polytope& p, int j);

// Kubota's formula with Haar-random j-planes; projected hulls for j >= 2.
EstimatorResult kubota_estimate(const Polytope& p, int j, std::uint64_t samples, std::uint64_t seed);

// V_1 from the mean width, using antithetic direction pairs.
EstimatorResult mean_width_estimate(const ConvexBody& k, std::uint64_t samples, std::uint64_t seed);

// n+3 Chebyshev nodes on [0.1, 1] * axis diameter.
std::vector<double> default_steiner_radii(const ConvexBody& k);

// Fits the parallel-body volumes |K + r D_n| (V_0 fixed to 1).
IntrinsicVolumeVector steiner_fit(const ConvexBody& k, const std::vector<double>& radii, std::uint64_t samples,
                                  std::uint64_t seed);
// Dual analogue with the radial sum |K ~+ r D_n|; returns (V~_0, ..., V~_n).
IntrinsicVolumeVector radial_steiner_fit(const ConvexBody& k, const std::vector<double>& radii, std::uint64_t samples,
                                         std::uint64_t seed);

// Deterministic closed forms / quadrature for balls, ellipsoids, caps (n <= 3) and planar bodies.
std::optional<double> intrinsic_volume_deterministic(const ConvexBody& k, int j);

struct MeasureOptions {
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
  // Auto prefers exact, then quadrature, then Kubota/mean width, then Steiner fit.
  std::optional<VolumeMethod> method;
};

EstimatorResult intrinsic_volume(const ConvexBody& k, int j, const MeasureOptions& opt = {});
IntrinsicVolumeVector intrinsic_volumes(const ConvexBody& k, const MeasureOptions& opt = {});

// Volume from the radial function about an interior point.
EstimatorResult volume_estimate(const ConvexBody& k, std::uint64_t samples, std::uint64_t seed);

// ------------------------------------------------------------ dual volumes

// c_q = V_{|q|}(D_n) for |q| <= n, |D_n| otherwise.
double dual_normalization(int n, double q);

// V~_q(K) = c_q E rho^q; q = 0 gives the log functional V^_0 = E ln rho.
EstimatorResult dual_volume(const ConvexBody& k, double q, std::uint64_t samples, std::uint64_t seed);
// Adaptive quadrature of the same integral (n = 2 only).
double dual_volume_quadrature(const ConvexBody& k, double q);

// Weighted curvature integral Omega_q for balls and ellipsoids.
EstimatorResult omega_q(const ConvexBody& k, double q, std::uint64_t samples, std::uint64_t seed);

// delta_1(K, L) = E |h_K(u) - h_L(u)|.
EstimatorResult l1_metric(const ConvexBody& k, const ConvexBody& l, std::uint64_t samples, std::uint64_t seed);
// Same by quadrature over the circle (n = 2).
double l1_metric_quadrature(const ConvexBody& k, const ConvexBody& l);

// Uniform average over S^1 of f(angle), adaptive Gauss-Kronrod on 64 panels split further at `breaks`.
// Refinement stops at relative error tol or absolute error abs_tol per radian, whichever is looser.
double circle_average(const std::function<double(double)>& f, double tol = 1e-12, const std::vector<double>& breaks = {},
                      double abs_tol = 0.0);

// Relative rounding level assumed for integrands that are differences of O(scale) quantities.
constexpr double kQuadratureNoise = 1e-13;

// Angles where a planar body's radial function about c (resp. support function) has kinks; empty when smooth.
std::vector<double> radial_kinks(const ConvexBody& k, const Vec& c);
std::vector<double> support_kinks(const ConvexBody& k);

}  // namespace polyapprox
