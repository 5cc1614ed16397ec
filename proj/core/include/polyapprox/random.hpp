#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "polyapprox/body.hpp"
#include "polyapprox/estimator.hpp"
#include "polyapprox/polytope.hpp"
#include "polyapprox/rng.hpp"

namespace polyapprox {

// Uniform point on S^{n-1} from substream (seed, index).
Vec sample_sphere(int n, std::uint64_t seed, std::uint64_t index = 0);

// H_k(K, x): normalized k-th elementary symmetric function of the principal curvatures, H_0 = 1.
// Balls and ellipsoids only; throws OffBoundary unless x is on the boundary within 1e-9.
double curvature_H(const ConvexBody& k, const Vec& x, int order);

enum class DensityKind {
  Uniform,      // 1 / |dK|
  PhiJ,         // H_{n-j}^{(n-1)/(n+1)} H_{n-1}^{1/(n+1)}
  PsiTildeJ,    // |x|^{(j-n)(n-1)/(n+1)} H_{n-1}^{1/(n+1)} (normalizer Omega_j)
  PsiWeighted,  // psi^{(n-1)/(n+1)} H_{n-1}^{1/(n+1)} with psi(x) = |x|^q
};

std::string_view to_string(DensityKind k) noexcept;

// Probability density on the boundary of a ball or ellipsoid, sampled by rejection from the
// uniform-sphere parametrization with an analytic envelope.
class BoundaryDensity {
 public:
  static constexpr double kStallRate = 1e-4;
  static constexpr std::uint64_t kNormalizationSamples = 200000;

  // parameter is j for PhiJ / PsiTildeJ and q for PsiWeighted; ignored for Uniform.
  BoundaryDensity(BodyPtr body, DensityKind kind, double parameter = 0.0, std::uint64_t seed = 0);

  const BodyPtr& body() const { return body_; }
  DensityKind kind() const { return kind_; }
  double parameter() const { return param_; }
  // Integral of the unnormalized weight over dK, with its Monte Carlo error.
  const EstimatorResult& normalization() const { return norm_; }
  double acceptance_rate() const { return accept_; }

  double unnormalized(const Vec& x) const;
  double operator()(const Vec& x) const { return unnormalized(x) / norm_.value; }

  // Boundary point drawn from substream (seed, index).
  Vec sample(std::uint64_t seed, std::uint64_t index) const;
  Vec sample(Stream& s) const;
  // Outward unit normal at a boundary point.
  Vec normal(const Vec& x) const;

 private:
  Vec map(const Vec& u) const;       // sphere -> boundary
  double jacobian(const Vec& u) const;  // surface element of the map
  double weight(const Vec& u) const { return unnormalized(map(u)) * jacobian(u); }

  BodyPtr body_;
  DensityKind kind_;
  double param_;
  double envelope_ = 1.0;
  double accept_ = 1.0;
  EstimatorResult norm_;
};

// Hull of N boundary points drawn from the density. N >= n+1, n <= 8.
Polytope random_inscribed(const BoundaryDensity& density, int N, std::uint64_t seed);

// Intersection of supporting halfspaces at the given boundary points, clipped by `clip`.
// The result is a PolytopeBody when the clip is inactive, else an IntersectionBody.
BodyPtr circumscribed_from_points(const BoundaryDensity& density, const Points& touch, const BodyPtr& clip);
// N random touch points; clip defaults to the ball through K + D_n (see default_clip).
BodyPtr random_circumscribed(const BoundaryDensity& density, int N, std::uint64_t seed, BodyPtr clip = nullptr);
// K + D_n for balls; for ellipsoids the smallest centred ball containing K + D_n.
BodyPtr default_clip(const ConvexBody& k);

struct TrialSummary {
  int N = 0;
  int trials = 0;
  double scaled_mean = 0.0;  // N^{2/(n-1)} * mean
  double std_error = 0.0;    // of scaled_mean
  double raw_mean = 0.0;
};

struct HarnessResult {
  int dim = 0;
  std::vector<TrialSummary> rows;
  double limit = 0.0;  // a in a + b N^{-2/(n-1)}
  double limit_se = 0.0;
  double slope = 0.0;
  Mat covariance;  // of (a, b)
};

// construction(N, seed) builds one random body; functional(body, seed) evaluates it.
using Construction = std::function<BodyPtr(int, std::uint64_t)>;
using Functional = std::function<double(const BodyPtr&, std::uint64_t)>;

// Trials run in parallel on substreams derive_seed(seed, N, t); results do not depend on the thread count.
HarnessResult expectation_harness(int dim, const Construction& construction, const Functional& functional,
                                  const std::vector<int>& N_list, int trials, std::uint64_t seed);

// Weighted least squares of scaled means on N^{-2/(n-1)}.
void fit_extrapolation(HarnessResult& r);

}  // namespace polyapprox
