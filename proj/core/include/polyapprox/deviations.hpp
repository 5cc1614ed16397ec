#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polyapprox/body.hpp"
#include "polyapprox/estimator.hpp"
#include "polyapprox/measures.hpp"

namespace polyapprox {

// E Lambda^0 .. E Lambda^n of a nonnegative random variable.
class MomentSequence {
 public:
  // Throws InvalidMoments unless m_0 = 1, m_k >= 0 and m_k^2 <= m_{k-1} m_{k+1}.
  MomentSequence(std::vector<double> moments, std::string label);

  static MomentSequence constant(int n, double r);
  // Weibull(shape, scale): m_k = scale^k Gamma(1 + k / shape).
  static MomentSequence weibull(int n, double shape, double scale);
  // Sigma = Weibull(2, sqrt(1/pi)); m_k = 1 / |D_k|.
  static MomentSequence sigma(int n);

  int order() const { return static_cast<int>(m_.size()) - 1; }
  double operator[](int k) const { return m_[static_cast<std::size_t>(k)]; }
  const std::vector<double>& moments() const { return m_; }
  const std::string& label() const { return label_; }

 private:
  std::vector<double> m_;
  std::string label_;
};

enum class DeviationKind { Delta, DeltaSigma, DeltaLambda, L1, DualDelta, DualLog, DualSigma, DualLambda };

std::string_view to_string(DeviationKind k) noexcept;

struct DeviationReport {
  DeviationKind kind = DeviationKind::Delta;
  double index = 0.0;  // j or q
  double value = 0.0;
  double std_error = 0.0;
  std::vector<double> components;  // per-j breakdown for the sum kinds
  std::vector<double> component_errors;
  std::optional<EstimatorResult> cross_check;  // second evaluation route where one exists
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

struct DeviationOptions {
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
  std::optional<VolumeMethod> method;  // per-operand V_j method; empty = auto
};

// Containment outer ⊇ inner: vertex check for polytopes, exact tests for balls, else support
// dominance over 10^4 directions (tolerance 1e-9).
bool contains_body(const ConvexBody& outer, const ConvexBody& inner);

// K ∩ L, or nullptr when the intersection has empty interior.
BodyPtr intersect(const BodyPtr& k, const BodyPtr& l);

DeviationReport delta_j(const BodyPtr& k, const BodyPtr& l, int j, const DeviationOptions& opt = {});
DeviationReport delta_sigma(const BodyPtr& k, const BodyPtr& l, const DeviationOptions& opt = {});
DeviationReport delta_lambda(const BodyPtr& k, const BodyPtr& l, const MomentSequence& m, const DeviationOptions& opt = {});

struct WillsResult {
  EstimatorResult sum;       // sum_j V_j
  EstimatorResult integral;  // int exp(-pi dist(x,K)^2) dx
  std::vector<double> intrinsic;
};

WillsResult wills(const ConvexBody& k, const DeviationOptions& opt = {});
// W_Lambda(K) = sum_j V_j(K) |D_{n-j}| m_{n-j}.
EstimatorResult stochastic_wills(const ConvexBody& k, const MomentSequence& m, const DeviationOptions& opt = {});
// Closed form for the unit ball.
double stochastic_wills_ball(int n, const MomentSequence& m);
double wills_ball(int n);

// Dual deviations. Route (a): c_q E|rho_K^q - rho_L^q| (E|ln rho_K/rho_L| for q = 0).
// Route (b), reported in cross_check: |q| c_q / (n|D_n|) int_{K△L} |x|^{q-n} dx by box sampling.
DeviationReport dual_delta(const ConvexBody& k, const ConvexBody& l, double q, const DeviationOptions& opt = {});
double dual_delta_quadrature(const ConvexBody& k, const ConvexBody& l, double q);

struct DualWillsResult {
  EstimatorResult sum;
  EstimatorResult integral;  // int exp(-pi rdist(x,K)^2) dx
};

DualWillsResult dual_wills(const ConvexBody& k, const DeviationOptions& opt = {});
DeviationReport dual_delta_sigma(const ConvexBody& k, const ConvexBody& l, const DeviationOptions& opt = {});
DeviationReport dual_delta_lambda(const ConvexBody& k, const ConvexBody& l, const MomentSequence& m,
                                  const DeviationOptions& opt = {});

struct Delta1Comparison {
  double delta1 = 0.0;
  double delta1_se = 0.0;
  double width_term = 0.0;  // V_1(D_n) delta_1
  double width_term_se = 0.0;
  double gap = 0.0;
  double gap_se = 0.0;
  bool union_convex = false;
};

// Paired-direction estimate of Delta_1 and V_1(D_n) delta_1.
Delta1Comparison delta1_comparison(const BodyPtr& k, const BodyPtr& l, std::uint64_t samples, std::uint64_t seed);
// Midpoint test on sampled pairs from K and L.
bool union_is_convex(const ConvexBody& k, const ConvexBody& l, std::uint64_t pairs, std::uint64_t seed);

struct TriangleViolation {
  double lhs = 0.0;  // Delta_j(D_n, L_e) + Delta_j(D_n, L_-e)
  double lhs_se = 0.0;
  double rhs = 0.0;  // Delta_j(L_e, L_-e)
  double rhs_se = 0.0;
  bool violated = false;  // lhs < rhs with a 3 sigma margin
};

TriangleViolation triangle_violation(int n, int j, double eps, const DeviationOptions& opt = {});

struct Figure1Row {
  double h = 0.0;
  double pi_delta1 = 0.0;  // closed form
  double delta1 = 0.0;     // closed form Delta_1
  double pi_delta1_mc = 0.0;
  double pi_delta1_se = 0.0;
  double delta1_mc = 0.0;
  double delta1_se = 0.0;
};

double figure1_pi_delta1(double h);
double figure1_Delta1(double h);
// Monte Carlo columns are skipped when samples == 0.
std::vector<Figure1Row> figure1_curves(const std::vector<double>& h_grid, std::uint64_t samples, std::uint64_t seed);

}  // namespace polyapprox
