#include "polyapprox/optimize.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "polyapprox/deviations.hpp"
#include "polyapprox/errors.hpp"
#include "polyapprox/parallel.hpp"
#include "polyapprox/rng.hpp"

namespace polyapprox {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

// Boundary parametrization shared by both modes: one angle per point in the plane,
// an unnormalized direction vector per point otherwise.
class Search {
 public:
  Search(const BodyPtr& k, int N, ApproxMode mode, const Objective& obj, const OptimizerConfig& cfg)
      : k_(k), n_(k->dim()), N_(N), mode_(mode), obj_(obj), cfg_(cfg), center_(k->interior_point()) {
    block_ = n_ == 2 ? 1 : n_;
    const Vec half = 0.5 * (k->bbox_hi() - k->bbox_lo());
    const Vec mid = 0.5 * (k->bbox_hi() + k->bbox_lo());
    box_lo_ = mid - 8.0 * half;
    box_hi_ = mid + 8.0 * half;
  }

  int size() const { return N_ * block_; }
  int block() const { return block_; }

  std::vector<Vec> directions(const Vec& x) const {
    std::vector<Vec> u;
    u.reserve(static_cast<std::size_t>(N_));
    for (int i = 0; i < N_; ++i) {
      if (n_ == 2) {
        Vec d(2);
        d << std::cos(x[i]), std::sin(x[i]);
        u.push_back(d);
      } else {
        const Vec d = x.segment(i * n_, n_);
        const double r = d.norm();
        if (!(r > 1e-12)) fail(ErrorCode::DegenerateInput, "zero direction");
        u.push_back(d / r);
      }
    }
    return u;
  }

  Polytope build(const Vec& x) const {
    const auto u = directions(x);
    if (mode_ == ApproxMode::Inscribed) {
      Points pts;
      pts.reserve(u.size());
      for (const Vec& d : u) pts.push_back(center_ + k_->radial_from(center_, d) * d);
      return convex_hull(pts);
    }
    std::vector<Halfspace> hs;
    hs.reserve(u.size());
    for (const Vec& d : u) hs.push_back({d, k_->support(d)});
    Polytope p = halfspace_intersection(hs, make_box(box_lo_, box_hi_));
    if (p.empty()) fail(ErrorCode::DegenerateInput, "empty cell");
    // Cells that reach the search box are unbounded.
    for (const Vec& v : p.vertices())
      if (((v - box_lo_).minCoeff() < 1e-9) || ((box_hi_ - v).minCoeff() < 1e-9))
        fail(ErrorCode::DegenerateInput, "unbounded cell");
    return p;
  }

  double value(const Vec& x, std::uint64_t seed) const {
    ++evals_;
    try {
      const Polytope p = build(x);
      const double v = obj_(make_polytope_body(p), cfg_.samples, seed).value;
      if (cfg_.check_sandwich && mode_ == ApproxMode::Inscribed && unit_ball_) sandwich_ok_ &= isoperimetric_sandwich(p, 1e-9);
      return std::isfinite(v) ? v : kInf;
    } catch (const Error&) {
      return kInf;
    }
  }

  Vec random_start(Stream& s) const {
    Vec x(size());
    for (int i = 0; i < size(); ++i) x[i] = n_ == 2 ? 2 * kPi * s.uniform() : s.normal();
    return x;
  }

  void perturb(Vec& x, int i, double scale, Stream& s) const {
    for (int c = 0; c < block_; ++c) x[i * block_ + c] += scale * s.normal();
  }

  // BFGS with central-difference gradients and Armijo backtracking.
  double polish(Vec& x, double f, std::uint64_t seed) const {
    const int m = size();
    const double h = 1e-6;
    auto grad = [&](const Vec& p) {
      Vec g(m);
      Vec q = p;
      for (int i = 0; i < m; ++i) {
        q[i] = p[i] + h;
        const double fp = value(q, seed);
        q[i] = p[i] - h;
        const double fm = value(q, seed);
        q[i] = p[i];
        g[i] = (std::isfinite(fp) && std::isfinite(fm)) ? (fp - fm) / (2 * h) : 0.0;
      }
      return g;
    };
    Mat H = Mat::Identity(m, m);
    Vec g = grad(x);
    for (int it = 0; it < 300; ++it) {
      Vec d = -H * g;
      if (g.dot(d) >= 0.0) {
        H.setIdentity();
        d = -g;
      }
      const double slope = g.dot(d);
      if (!(slope < 0.0)) break;
      double a = 1.0, fn = kInf;
      Vec xn;
      for (int ls = 0; ls < 60; ++ls, a *= 0.5) {
        xn = x + a * d;
        fn = value(xn, seed);
        if (fn <= f + 1e-4 * a * slope) break;
      }
      if (!(fn < f)) break;
      const Vec gn = grad(xn);
      const Vec s = xn - x, y = gn - g;
      const double sy = s.dot(y);
      const double change = f - fn;
      x = xn;
      f = fn;
      g = gn;
      if (sy > 1e-18) {
        const Vec Hy = H * y;
        H += ((sy + y.dot(Hy)) / (sy * sy)) * (s * s.transpose()) - (Hy * s.transpose() + s * Hy.transpose()) / sy;
      }
      if (change <= cfg_.tolerance * std::max(std::abs(f), 1e-300)) break;
    }
    return f;
  }

  void set_unit_ball(bool b) { unit_ball_ = b; }
  bool sandwich_ok() const { return sandwich_ok_; }
  std::uint64_t evaluations() const { return evals_; }

 private:
  BodyPtr k_;
  int n_, N_, block_;
  ApproxMode mode_;
  const Objective& obj_;
  const OptimizerConfig& cfg_;
  Vec center_, box_lo_, box_hi_;
  bool unit_ball_ = false;
  mutable bool sandwich_ok_ = true;
  mutable std::uint64_t evals_ = 0;
};

struct RestartOutcome {
  Vec x;
  double value = kInf;
  bool sandwich_ok = true;
  std::uint64_t evals = 0;
};

BestApproxResult optimize(const BodyPtr& k, int N, ApproxMode mode, const Objective& obj, const OptimizerConfig& cfg) {
  const int n = k->dim();
  if (N < n + 1) fail(ErrorCode::BudgetTooSmall, "need N >= n+1");
  if (n > 4) fail(ErrorCode::UnsupportedDimension, "optimizer supports n <= 4");
  if (cfg.restarts < 1 || cfg.steps < 0 || !(cfg.cooling > 0.0 && cfg.cooling < 1.0))
    fail(ErrorCode::DomainError, "invalid optimizer configuration");
  bool unit_ball = false;
  if (k->kind() == BodyKind::Ball) {
    const auto& b = static_cast<const Ball&>(*k);
    unit_ball = b.radius() == 1.0 && b.center().isZero();
  }

  std::vector<RestartOutcome> outs(static_cast<std::size_t>(cfg.restarts));
  parallel_for(outs.size(), [&](std::size_t r) {
    Search search(k, N, mode, obj, cfg);
    search.set_unit_ball(unit_ball);
    Stream s(cfg.seed, r);
    const std::uint64_t chain_seed = derive_seed(cfg.seed, r, 1);
    Vec x = search.random_start(s);
    double f = search.value(x, chain_seed);
    for (int t = 0; t < 1000 && !std::isfinite(f); ++t) {
      x = search.random_start(s);
      f = search.value(x, chain_seed);
    }
    if (!std::isfinite(f)) fail(ErrorCode::NonConvergence, "no feasible starting configuration");
    Vec best = x;
    double fbest = f;
    const double T0 = 0.05 * std::max(std::abs(f), 1e-12);
    double T = T0;
    for (int t = 0; t < cfg.steps; ++t) {
      Vec y = x;
      const int i = std::min(N - 1, static_cast<int>(s.uniform() * N));
      search.perturb(y, i, cfg.step * std::sqrt(T / T0), s);
      const double fy = search.value(y, chain_seed);
      if (fy <= f || s.uniform() < std::exp(-(fy - f) / T)) {
        x = std::move(y);
        f = fy;
        if (f < fbest) {
          fbest = f;
          best = x;
        }
      }
      T *= cfg.cooling;
    }
    fbest = search.polish(best, fbest, chain_seed);
    outs[r] = {best, fbest, search.sandwich_ok(), search.evaluations()};
  });

  std::size_t win = 0;
  for (std::size_t r = 1; r < outs.size(); ++r)
    if (outs[r].value < outs[win].value) win = r;

  Search search(k, N, mode, obj, cfg);
  BestApproxResult res;
  res.polytope = search.build(outs[win].x);
  const EstimatorResult fin = obj(make_polytope_body(res.polytope), cfg.final_samples, derive_seed(cfg.seed, 0xf1a1));
  res.value = fin.value;
  res.std_error = fin.std_error;
  res.N = N;
  res.mode = mode;
  for (const auto& o : outs) {
    res.history.push_back(o.value);
    res.sandwich_ok &= o.sandwich_ok;
    res.evaluations += o.evals;
  }
  return res;
}

}  // namespace

std::string_view to_string(ApproxMode m) noexcept {
  return m == ApproxMode::Inscribed ? "inscribed" : "circumscribed";
}

Objective delta_objective(const BodyPtr& k, int j, std::optional<VolumeMethod> method) {
  return [k, j, method](const BodyPtr& p, std::uint64_t samples, std::uint64_t seed) {
    const DeviationReport r = delta_j(k, p, j, {samples, seed, method});
    return EstimatorResult{r.value, r.std_error, samples, seed};
  };
}

Objective dual_delta_objective(const BodyPtr& k, double q) {
  return [k, q](const BodyPtr& p, std::uint64_t samples, std::uint64_t seed) {
    if (k->dim() == 2) return EstimatorResult::exact(dual_delta_quadrature(*k, *p, q));
    const DeviationReport r = dual_delta(*k, *p, q, {samples, seed, std::nullopt});
    return EstimatorResult{r.value, r.std_error, samples, seed};
  };
}

BestApproxResult best_inscribed(const BodyPtr& k, int N, const Objective& objective, const OptimizerConfig& cfg) {
  return optimize(k, N, ApproxMode::Inscribed, objective, cfg);
}

BestApproxResult best_circumscribed(const BodyPtr& k, int N, const Objective& objective, const OptimizerConfig& cfg) {
  if (k->kind() == BodyKind::Cap) fail(ErrorCode::UnsupportedBodyKind, "circumscribed search needs a ball, ellipsoid or polytope");
  return optimize(k, N, ApproxMode::Circumscribed, objective, cfg);
}

double oracle_2d(int N, ApproxMode mode) {
  if (N < 3) fail(ErrorCode::BudgetTooSmall, "need N >= 3");
  if (mode == ApproxMode::Inscribed) return kPi - 0.5 * N * std::sin(2 * kPi / N);
  return N * std::tan(kPi / N) - kPi;
}

SimultaneousRatio simultaneous_ratio(const BodyPtr& p) {
  const int n = p->dim();
  const BodyPtr ball = make_ball(n);
  SimultaneousRatio out;
  for (int j = 1; j <= n; ++j) {
    const double r = delta_j(ball, p, j).value / ball_intrinsic_volume(n, j);
    out.per_j.push_back(r);
    if (j == 1 || r > out.ratio) {
      out.ratio = r;
      out.argmax_j = j;
    }
  }
  return out;
}

bool isoperimetric_sandwich(const Polytope& p, double slack) {
  const int n = p.dim();
  std::vector<double> d(static_cast<std::size_t>(n) + 1, 0.0);
  for (int j = 1; j <= n; ++j) {
    const double vp = has_exact_intrinsic_volume(p, j) ? intrinsic_volume_exact(p, j)
                                                        : intrinsic_volume(*make_polytope_body(p), j).value;
    d[j] = 1.0 - vp / ball_intrinsic_volume(n, j);
  }
  for (int j = 1; j <= n; ++j) {
    const double lo = 1.0 - std::pow(1.0 - d[1], j);
    const double hi = 1.0 - std::pow(1.0 - d[n], double(j) / n);
    if (d[j] < lo - slack || d[j] > hi + slack) return false;
  }
  return true;
}

}  // namespace polyapprox
