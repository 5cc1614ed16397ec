#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "polyapprox/body.hpp"
#include "polyapprox/estimator.hpp"
#include "polyapprox/measures.hpp"
#include "polyapprox/polytope.hpp"

namespace polyapprox {

struct OptimizerConfig {
  int restarts = 8;
  int steps = 3000;          // annealing proposals per restart
  double step = 0.5;         // initial proposal scale (radians on the boundary parametrization)
  double cooling = 0.998;    // geometric, per proposal
  double tolerance = 1e-13;  // relative objective change that stops the local polish
  std::uint64_t seed = 0;
  std::uint64_t samples = 20000;         // per evaluation when the objective is Monte Carlo
  std::uint64_t final_samples = 400000;  // fresh re-evaluation of the winner
  bool check_sandwich = false;           // verify the isoperimetric chain on accepted inscribed candidates
};

enum class ApproxMode { Inscribed, Circumscribed };

std::string_view to_string(ApproxMode m) noexcept;

struct BestApproxResult {
  Polytope polytope;
  double value = 0.0;
  double std_error = 0.0;
  std::vector<double> history;  // best value reached by each restart
  int N = 0;
  ApproxMode mode = ApproxMode::Inscribed;
  bool sandwich_ok = true;  // only meaningful with check_sandwich
  std::uint64_t evaluations = 0;
};

// Deviation between the fixed body and a candidate; (candidate, samples, seed) -> estimate.
using Objective = std::function<EstimatorResult(const BodyPtr&, std::uint64_t, std::uint64_t)>;

// Delta_j(K, .) with the auto method (exact wherever available).
Objective delta_objective(const BodyPtr& k, int j, std::optional<VolumeMethod> method = std::nullopt);
// Dual deviation Delta~_q(K, .); quadrature in the plane, Monte Carlo otherwise.
Objective dual_delta_objective(const BodyPtr& k, double q);

// Best polytope with at most N vertices on the boundary of K.
BestApproxResult best_inscribed(const BodyPtr& k, int N, const Objective& objective, const OptimizerConfig& cfg = {});
// Best polytope with at most N facets supporting K.
BestApproxResult best_circumscribed(const BodyPtr& k, int N, const Objective& objective,
                                    const OptimizerConfig& cfg = {});

// Exact Delta_2(D_2, regular N-gon).
double oracle_2d(int N, ApproxMode mode);

struct SimultaneousRatio {
  double ratio = 0.0;  // max_j Delta_j(D_n, P) / V_j(D_n)
  int argmax_j = 0;
  std::vector<double> per_j;
};

// P is compared with the unit ball of its dimension; P = D_n gives 0.
SimultaneousRatio simultaneous_ratio(const BodyPtr& p);

// 1 - (1 - d_1)^j <= d_j <= 1 - (1 - d_n)^{j/n} with d_j = Delta_j(D_n, P) / V_j(D_n), P inscribed.
bool isoperimetric_sandwich(const Polytope& p, double slack = 1e-12);

}  // namespace polyapprox
