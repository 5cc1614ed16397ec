#include "polyapprox/deviations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "polyapprox/errors.hpp"

namespace polyapprox {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kContainTol = 1e-9;
constexpr std::uint64_t kDominanceDirections = 10000;
constexpr std::uint64_t kDominanceSeed = 0x5eed0fd1ec7104ULL;

void check_same_dim(const ConvexBody& a, const ConvexBody& b) {
  if (a.dim() != b.dim()) fail(ErrorCode::DomainError, "bodies have different dimensions");
}

bool support_dominates(const ConvexBody& outer, const ConvexBody& inner) {
  const int n = outer.dim();
  for (int i = 0; i < n; ++i)
    for (double s : {1.0, -1.0}) {
      const Vec u = s * Vec::Unit(n, i);
      if (inner.support(u) > outer.support(u) + kContainTol) return false;
    }
  for (std::uint64_t i = 0; i < kDominanceDirections; ++i) {
    Stream st(kDominanceSeed, i);
    const Vec u = st.unit_vector(n);
    if (inner.support(u) > outer.support(u) + kContainTol) return false;
  }
  return true;
}

// K = base ∩ poly with either part optional.
struct Decomposition {
  BodyPtr base;
  std::optional<Polytope> poly;
};

Decomposition decompose(const BodyPtr& k) {
  const int n = k->dim();
  switch (k->kind()) {
    case BodyKind::Ball:
    case BodyKind::Ellipsoid:
      return {k, std::nullopt};
    case BodyKind::Polytope:
      return {nullptr, static_cast<const PolytopeBody&>(*k).polytope()};
    case BodyKind::Intersection: {
      const auto& ib = static_cast<const IntersectionBody&>(*k);
      return {ib.base(), ib.polytope()};
    }
    case BodyKind::Cap: {
      const auto& c = static_cast<const Cap&>(*k);
      const Polytope slab = halfspace_intersection({{-c.axis(), -c.eps()}}, make_cube(n, -1.5, 1.5));
      return {make_ball(n), slab};
    }
  }
  fail(ErrorCode::UnsupportedBodyKind, "unknown body kind");
}

bool same_base(const ConvexBody& a, const ConvexBody& b) {
  if (a.kind() != b.kind()) return false;
  if (a.kind() == BodyKind::Ball) {
    const auto& x = static_cast<const Ball&>(a);
    const auto& y = static_cast<const Ball&>(b);
    return x.radius() == y.radius() && x.center() == y.center();
  }
  if (a.kind() == BodyKind::Ellipsoid)
    return static_cast<const Ellipsoid&>(a).semi_axes() == static_cast<const Ellipsoid&>(b).semi_axes();
  return false;
}

// Vector of V_0..V_n with covariance for one operand.
IntrinsicVolumeVector volumes_of(const ConvexBody& b, const DeviationOptions& opt, std::uint64_t tag) {
  MeasureOptions mo{opt.samples, derive_seed(opt.seed, tag), opt.method};
  return intrinsic_volumes(b, mo);
}

struct DeltaVector {
  Vec value;  // Delta_0 .. Delta_n
  Mat cov;
};

DeltaVector delta_vector(const BodyPtr& k, const BodyPtr& l, const DeviationOptions& opt) {
  check_same_dim(*k, *l);
  const int n = k->dim();
  if (k.get() == l.get()) return {Vec::Zero(n + 1), Mat::Zero(n + 1, n + 1)};
  const IntrinsicVolumeVector a = volumes_of(*k, opt, 0);
  const IntrinsicVolumeVector b = volumes_of(*l, opt, 1);
  if (contains_body(*k, *l)) return {a.values - b.values, a.covariance + b.covariance};
  if (contains_body(*l, *k)) return {b.values - a.values, a.covariance + b.covariance};
  const BodyPtr i = intersect(k, l);
  if (!i) return {a.values + b.values, a.covariance + b.covariance};
  const IntrinsicVolumeVector c = volumes_of(*i, opt, 2);
  return {a.values + b.values - 2.0 * c.values, a.covariance + b.covariance + 4.0 * c.covariance};
}

double gaussian_box_margin() { return 3.0; }  // exp(-9 pi) ~ 5e-13

}  // namespace

// ------------------------------------------------------------ moments

MomentSequence::MomentSequence(std::vector<double> moments, std::string label) : m_(std::move(moments)), label_(std::move(label)) {
  if (m_.empty() || std::abs(m_[0] - 1.0) > 1e-12) fail(ErrorCode::InvalidMoments, "m_0 must equal 1");
  for (double m : m_)
    if (!(m >= 0.0) || !std::isfinite(m)) fail(ErrorCode::InvalidMoments, "moments must be finite and nonnegative");
  for (std::size_t k = 1; k + 1 < m_.size(); ++k) {
    const double lhs = m_[k] * m_[k];
    const double rhs = m_[k - 1] * m_[k + 1];
    if (lhs > rhs * (1.0 + 1e-12) + 1e-300)
      fail(ErrorCode::InvalidMoments, "moments violate log-convexity at k = " + std::to_string(k));
  }
}

MomentSequence MomentSequence::constant(int n, double r) {
  if (!(r >= 0.0)) fail(ErrorCode::InvalidMoments, "constant radius must be nonnegative");
  std::vector<double> m;
  for (int k = 0; k <= n; ++k) m.push_back(std::pow(r, k));
  return {m, "constant " + std::to_string(r)};
}

MomentSequence MomentSequence::weibull(int n, double shape, double scale) {
  if (!(shape > 0.0 && scale > 0.0)) fail(ErrorCode::InvalidMoments, "Weibull parameters must be positive");
  std::vector<double> m;
  for (int k = 0; k <= n; ++k) m.push_back(std::exp(k * std::log(scale) + std::lgamma(1.0 + k / shape)));
  return {m, "Weibull(" + std::to_string(shape) + ", " + std::to_string(scale) + ")"};
}

MomentSequence MomentSequence::sigma(int n) {
  std::vector<double> m;
  for (int k = 0; k <= n; ++k) m.push_back(1.0 / ball_volume(k));
  return {m, "Weibull(2, sqrt(1/pi))"};
}

std::string_view to_string(DeviationKind k) noexcept {
  switch (k) {
    case DeviationKind::Delta: return "delta";
    case DeviationKind::DeltaSigma: return "delta_sigma";
    case DeviationKind::DeltaLambda: return "delta_lambda";
    case DeviationKind::L1: return "l1";
    case DeviationKind::DualDelta: return "dual_delta";
    case DeviationKind::DualLog: return "dual_log";
    case DeviationKind::DualSigma: return "dual_sigma";
    case DeviationKind::DualLambda: return "dual_lambda";
  }
  return "unknown";
}

// ------------------------------------------------------ containment, intersection

bool contains_body(const ConvexBody& outer, const ConvexBody& inner) {
  check_same_dim(outer, inner);
  if (&outer == &inner) return true;
  if (inner.kind() == BodyKind::Polytope) {
    for (const auto& v : static_cast<const PolytopeBody&>(inner).polytope().vertices())
      if (!outer.contains(v, kContainTol)) return false;
    return true;
  }
  if (inner.kind() == BodyKind::Ball) {
    const auto& b = static_cast<const Ball&>(inner);
    if (outer.kind() == BodyKind::Ball) {
      const auto& o = static_cast<const Ball&>(outer);
      return (b.center() - o.center()).norm() + b.radius() <= o.radius() + kContainTol;
    }
    if (outer.kind() == BodyKind::Polytope) {
      for (const auto& f : static_cast<const PolytopeBody&>(outer).polytope().facets())
        if (f.normal.dot(b.center()) + b.radius() > f.offset + kContainTol) return false;
      return true;
    }
  }
  return support_dominates(outer, inner);
}

BodyPtr intersect(const BodyPtr& k, const BodyPtr& l) {
  check_same_dim(*k, *l);
  if (contains_body(*k, *l)) return l;
  if (contains_body(*l, *k)) return k;
  const Decomposition a = decompose(k);
  const Decomposition b = decompose(l);
  std::optional<Polytope> poly;
  if (a.poly && b.poly) {
    Polytope p = intersect(*a.poly, *b.poly);
    if (p.empty()) return nullptr;
    poly = std::move(p);
  } else {
    poly = a.poly ? a.poly : b.poly;
  }
  BodyPtr base;
  if (a.base && b.base) {
    if (same_base(*a.base, *b.base) || contains_body(*b.base, *a.base)) base = a.base;
    else if (contains_body(*a.base, *b.base)) base = b.base;
    else fail(ErrorCode::UnsupportedBodyKind, "intersection of two curved bodies in general position is not supported");
  } else {
    base = a.base ? a.base : b.base;
  }
  if (!base) return make_polytope_body(std::move(*poly));
  if (!poly) return base;
  try {
    return std::make_shared<IntersectionBody>(base, std::move(*poly));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::EmptyIntersection) return nullptr;
    throw;
  }
}

// ------------------------------------------------------ primal deviations

DeviationReport delta_j(const BodyPtr& k, const BodyPtr& l, int j, const DeviationOptions& opt) {
  check_same_dim(*k, *l);
  const int n = k->dim();
  if (j < 1 || j > n) fail(ErrorCode::DomainError, "need 1 <= j <= n");
  DeviationReport r;
  r.kind = DeviationKind::Delta;
  r.index = j;
  r.samples = opt.samples;
  r.seed = opt.seed;
  if (k.get() == l.get()) return r;
  auto vj = [&](const ConvexBody& b, std::uint64_t tag) {
    MeasureOptions mo{opt.samples, derive_seed(opt.seed, tag), opt.method};
    return intrinsic_volume(b, j, mo);
  };
  const EstimatorResult a = vj(*k, 0);
  const EstimatorResult b = vj(*l, 1);
  if (contains_body(*k, *l)) {
    r.value = a.value - b.value;
    r.std_error = std::hypot(a.std_error, b.std_error);
  } else if (contains_body(*l, *k)) {
    r.value = b.value - a.value;
    r.std_error = std::hypot(a.std_error, b.std_error);
  } else {
    const BodyPtr i = intersect(k, l);
    const EstimatorResult c = i ? vj(*i, 2) : EstimatorResult::exact(0.0);
    r.value = a.value + b.value - 2.0 * c.value;
    r.std_error = std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error + 4.0 * c.std_error * c.std_error);
  }
  return r;
}

DeviationReport delta_sigma(const BodyPtr& k, const BodyPtr& l, const DeviationOptions& opt) {
  const DeltaVector d = delta_vector(k, l, opt);
  const int n = k->dim();
  DeviationReport r;
  r.kind = DeviationKind::DeltaSigma;
  r.samples = opt.samples;
  r.seed = opt.seed;
  Vec w = Vec::Ones(n + 1);
  w[0] = 0.0;
  r.value = w.dot(d.value);
  r.std_error = std::sqrt(std::max(0.0, w.dot(d.cov * w)));
  for (int j = 1; j <= n; ++j) {
    r.components.push_back(d.value[j]);
    r.component_errors.push_back(std::sqrt(std::max(0.0, d.cov(j, j))));
  }
  return r;
}

DeviationReport delta_lambda(const BodyPtr& k, const BodyPtr& l, const MomentSequence& m, const DeviationOptions& opt) {
  const int n = k->dim();
  if (m.order() < n) fail(ErrorCode::InvalidMoments, "need moments through order n");
  const DeltaVector d = delta_vector(k, l, opt);
  DeviationReport r;
  r.kind = DeviationKind::DeltaLambda;
  r.samples = opt.samples;
  r.seed = opt.seed;
  Vec w = Vec::Zero(n + 1);
  for (int j = 1; j <= n; ++j) w[j] = ball_volume(n - j) * m[n - j];
  r.value = w.dot(d.value);
  r.std_error = std::sqrt(std::max(0.0, w.dot(d.cov * w)));
  for (int j = 1; j <= n; ++j) {
    r.components.push_back(w[j] * d.value[j]);
    r.component_errors.push_back(w[j] * std::sqrt(std::max(0.0, d.cov(j, j))));
  }
  return r;
}

WillsResult wills(const ConvexBody& k, const DeviationOptions& opt) {
  const int n = k.dim();
  WillsResult out;
  const IntrinsicVolumeVector v = volumes_of(k, opt, 0);
  out.intrinsic.assign(v.values.data(), v.values.data() + v.values.size());
  const Vec one = Vec::Ones(n + 1);
  out.sum = {v.values.sum(), std::sqrt(std::max(0.0, one.dot(v.covariance * one))), v.samples, v.seed};

  const double R = gaussian_box_margin();
  const Vec lo = k.bbox_lo() - Vec::Constant(n, R);
  const Vec hi = k.bbox_hi() + Vec::Constant(n, R);
  const double box = (hi - lo).prod();
  out.integral = mc_estimate(opt.samples, derive_seed(opt.seed, 1), [&](Stream& s) {
    const Vec x = s.uniform_in_box(lo, hi);
    if (k.contains(x, 0.0)) return box;
    const double d = k.dist(x);
    return box * std::exp(-kPi * d * d);
  });
  return out;
}

EstimatorResult stochastic_wills(const ConvexBody& k, const MomentSequence& m, const DeviationOptions& opt) {
  const int n = k.dim();
  if (m.order() < n) fail(ErrorCode::InvalidMoments, "need moments through order n");
  const IntrinsicVolumeVector v = volumes_of(k, opt, 0);
  Vec w(n + 1);
  for (int j = 0; j <= n; ++j) w[j] = ball_volume(n - j) * m[n - j];
  return {w.dot(v.values), std::sqrt(std::max(0.0, w.dot(v.covariance * w))), v.samples, v.seed};
}

double stochastic_wills_ball(int n, const MomentSequence& m) {
  if (m.order() < n) fail(ErrorCode::InvalidMoments, "need moments through order n");
  double s = 0.0;
  for (int j = 0; j <= n; ++j) s += ball_intrinsic_volume(n, j) * ball_volume(n - j) * m[n - j];
  return s;
}

double wills_ball(int n) {
  double s = 0.0;
  for (int j = 0; j <= n; ++j) s += ball_intrinsic_volume(n, j);
  return s;
}

// ------------------------------------------------------ dual deviations

DeviationReport dual_delta(const ConvexBody& k, const ConvexBody& l, double q, const DeviationOptions& opt) {
  check_same_dim(k, l);
  if (!k.origin_interior() || !l.origin_interior())
    fail(ErrorCode::OriginNotInterior, "dual deviations need the origin in both interiors");
  const int n = k.dim();
  const double c = dual_normalization(n, q);
  DeviationReport r;
  r.kind = q == 0.0 ? DeviationKind::DualLog : DeviationKind::DualDelta;
  r.index = q;
  r.samples = opt.samples;
  r.seed = opt.seed;
  const EstimatorResult a = mc_estimate(opt.samples, derive_seed(opt.seed, 0), [&](Stream& s) {
    const Vec u = s.unit_vector(n);
    const double rk = k.radial(u), rl = l.radial(u);
    if (q == 0.0) return std::abs(std::log(rk / rl));
    return c * std::abs(std::pow(rk, q) - std::pow(rl, q));
  });
  r.value = a.value;
  r.std_error = a.std_error;

  const double factor = (q == 0.0 ? 1.0 : std::abs(q) * c) / (n * ball_volume(n));
  const Vec lo = k.bbox_lo().cwiseMin(l.bbox_lo()) - Vec::Constant(n, 1e-6);
  const Vec hi = k.bbox_hi().cwiseMax(l.bbox_hi()) + Vec::Constant(n, 1e-6);
  const double box = (hi - lo).prod();
  r.cross_check = mc_estimate(opt.samples, derive_seed(opt.seed, 1), [&](Stream& s) {
    const Vec x = s.uniform_in_box(lo, hi);
    if (k.contains(x, 0.0) == l.contains(x, 0.0)) return 0.0;
    return box * factor * std::pow(x.norm(), q - n);
  });
  return r;
}

double dual_delta_quadrature(const ConvexBody& k, const ConvexBody& l, double q) {
  check_same_dim(k, l);
  if (k.dim() != 2) fail(ErrorCode::UnsupportedDimension, "dual deviation quadrature needs n = 2");
  const double c = dual_normalization(2, q);
  std::vector<double> breaks = radial_kinks(k, Vec::Zero(2));
  for (double b : radial_kinks(l, Vec::Zero(2))) breaks.push_back(b);
  // Cancellation between the two radial terms leaves rounding noise proportional to their size.
  double scale = 0.0;
  for (int i = 0; i < 64; ++i) {
    Vec u(2);
    u << std::cos(2.0 * kPi * i / 64), std::sin(2.0 * kPi * i / 64);
    const double rk = k.radial(u), rl = l.radial(u);
    scale = std::max(scale, q == 0.0 ? 1.0 : std::abs(c) * std::max(std::pow(rk, q), std::pow(rl, q)));
  }
  return circle_average(
      [&](double t) {
        Vec u(2);
        u << std::cos(t), std::sin(t);
        const double rk = k.radial(u), rl = l.radial(u);
        if (q == 0.0) return std::abs(std::log(rk / rl));
        return c * std::abs(std::pow(rk, q) - std::pow(rl, q));
      },
      1e-12, breaks, kQuadratureNoise * scale);
}

DualWillsResult dual_wills(const ConvexBody& k, const DeviationOptions& opt) {
  if (!k.origin_interior()) fail(ErrorCode::OriginNotInterior, "dual Wills needs the origin in the interior");
  const int n = k.dim();
  Vec c(n + 1);
  for (int j = 0; j <= n; ++j) c[j] = dual_normalization(n, j);
  DualWillsResult out;
  out.sum = mc_estimate(opt.samples, derive_seed(opt.seed, 0), [&](Stream& s) {
    const double rho = k.radial(s.unit_vector(n));
    double acc = 0.0, p = 1.0;
    for (int j = 0; j <= n; ++j, p *= rho) acc += c[j] * p;
    return acc;
  });
  const double R = gaussian_box_margin();
  const Vec lo = k.bbox_lo() - Vec::Constant(n, R);
  const Vec hi = k.bbox_hi() + Vec::Constant(n, R);
  const double box = (hi - lo).prod();
  out.integral = mc_estimate(opt.samples, derive_seed(opt.seed, 1), [&](Stream& s) {
    const double d = k.rdist(s.uniform_in_box(lo, hi));
    return box * std::exp(-kPi * d * d);
  });
  return out;
}

namespace {

DeviationReport dual_weighted_sum(const ConvexBody& k, const ConvexBody& l, const Vec& weight, DeviationKind kind,
                                  const DeviationOptions& opt) {
  check_same_dim(k, l);
  if (!k.origin_interior() || !l.origin_interior())
    fail(ErrorCode::OriginNotInterior, "dual deviations need the origin in both interiors");
  const int n = k.dim();
  Vec c(n + 1);
  for (int j = 0; j <= n; ++j) c[j] = dual_normalization(n, j) * weight[j];
  const RunningVecMoments m = mc_estimate_vec(opt.samples, opt.seed, n, [&](Stream& s, Vec& out) {
    const Vec u = s.unit_vector(n);
    const double rk = k.radial(u), rl = l.radial(u);
    for (int j = 1; j <= n; ++j) out[j - 1] = c[j] * std::abs(std::pow(rk, j) - std::pow(rl, j));
  });
  const Mat cov = m.mean_covariance();
  DeviationReport r;
  r.kind = kind;
  r.samples = opt.samples;
  r.seed = opt.seed;
  r.value = m.mean.sum();
  r.std_error = std::sqrt(std::max(0.0, cov.sum()));
  for (int j = 0; j < n; ++j) {
    r.components.push_back(m.mean[j]);
    r.component_errors.push_back(std::sqrt(std::max(0.0, cov(j, j))));
  }
  return r;
}

}  // namespace

DeviationReport dual_delta_sigma(const ConvexBody& k, const ConvexBody& l, const DeviationOptions& opt) {
  return dual_weighted_sum(k, l, Vec::Ones(k.dim() + 1), DeviationKind::DualSigma, opt);
}

DeviationReport dual_delta_lambda(const ConvexBody& k, const ConvexBody& l, const MomentSequence& m,
                                  const DeviationOptions& opt) {
  const int n = k.dim();
  if (m.order() < n) fail(ErrorCode::InvalidMoments, "need moments through order n");
  Vec w(n + 1);
  for (int j = 0; j <= n; ++j) w[j] = ball_volume(n - j) * m[n - j];
  return dual_weighted_sum(k, l, w, DeviationKind::DualLambda, opt);
}

// ------------------------------------------------------ width comparison

bool union_is_convex(const ConvexBody& k, const ConvexBody& l, std::uint64_t pairs, std::uint64_t seed) {
  check_same_dim(k, l);
  const int n = k.dim();
  auto sample_in = [n](const ConvexBody& b, Stream& s) -> std::optional<Vec> {
    const Vec lo = b.bbox_lo(), hi = b.bbox_hi();
    for (int t = 0; t < 10000; ++t) {
      const Vec x = s.uniform_in_box(lo, hi);
      if (b.contains(x, 0.0)) return x;
    }
    (void)n;
    return std::nullopt;
  };
  for (std::uint64_t i = 0; i < pairs; ++i) {
    Stream s(seed, i);
    const auto x = sample_in(k, s);
    const auto y = sample_in(l, s);
    if (!x || !y) continue;
    const Vec z = 0.5 * (*x + *y);
    if (!k.contains(z, kContainTol) && !l.contains(z, kContainTol)) return false;
  }
  return true;
}

Delta1Comparison delta1_comparison(const BodyPtr& k, const BodyPtr& l, std::uint64_t samples, std::uint64_t seed) {
  check_same_dim(*k, *l);
  const int n = k->dim();
  const double v1 = ball_intrinsic_volume(n, 1);
  const BodyPtr i = intersect(k, l);
  const RunningVecMoments m = mc_estimate_vec(samples, seed, 3, [&](Stream& s, Vec& out) {
    const Vec u = s.unit_vector(n);
    double d = 0.0, w = 0.0;
    for (double sg : {1.0, -1.0}) {
      const Vec v = sg * u;
      const double hk = k->support(v), hl = l->support(v);
      const double hi = i ? i->support(v) : 0.0;
      d += hk + hl - 2.0 * hi;
      w += std::abs(hk - hl);
    }
    out[0] = 0.5 * v1 * d;
    out[1] = 0.5 * v1 * w;
    out[2] = out[0] - out[1];
  });
  const Mat cov = m.mean_covariance();
  Delta1Comparison r;
  r.delta1 = m.mean[0];
  r.delta1_se = std::sqrt(std::max(0.0, cov(0, 0)));
  r.width_term = m.mean[1];
  r.width_term_se = std::sqrt(std::max(0.0, cov(1, 1)));
  r.gap = m.mean[2];
  r.gap_se = std::sqrt(std::max(0.0, cov(2, 2)));
  r.union_convex = union_is_convex(*k, *l, 2000, derive_seed(seed, 1));
  return r;
}

// ------------------------------------------------------ counterexample

TriangleViolation triangle_violation(int n, int j, double eps, const DeviationOptions& opt) {
  if (j < 1 || j > n - 1) fail(ErrorCode::DomainError, "need 1 <= j <= n-1");
  if (!(eps > 0.0 && eps < 1.0)) fail(ErrorCode::DomainError, "need eps in (0, 1)");
  const BodyPtr d = make_ball(n);
  const BodyPtr lp = make_cap(n, eps, 1);
  const BodyPtr lm = make_cap(n, eps, -1);
  auto sub = [&](std::uint64_t tag) {
    DeviationOptions o = opt;
    o.seed = derive_seed(opt.seed, tag);
    return o;
  };
  const DeviationReport a = delta_j(d, lp, j, sub(0));
  const DeviationReport b = delta_j(d, lm, j, sub(1));
  const DeviationReport c = delta_j(lp, lm, j, sub(2));
  TriangleViolation t;
  t.lhs = a.value + b.value;
  t.lhs_se = std::hypot(a.std_error, b.std_error);
  t.rhs = c.value;
  t.rhs_se = c.std_error;
  t.violated = t.rhs - t.lhs > 3.0 * std::hypot(t.lhs_se, t.rhs_se);
  return t;
}

// ------------------------------------------------------ disk vs triangle

double figure1_pi_delta1(double h) {
  if (!(h > -1.0)) fail(ErrorCode::DomainError, "need h > -1");
  const double t = 1.5 * std::sqrt(3.0) * (1.0 + h);
  if (h <= 0.0) return kPi - t;
  if (h >= 1.0) return t - kPi;
  return -2.0 * kPi - t + 6.0 * std::sqrt(2.0 * h + h * h) + 6.0 * std::asin(1.0 / (1.0 + h));
}

double figure1_Delta1(double h) {
  if (!(h > -1.0)) fail(ErrorCode::DomainError, "need h > -1");
  const double t = 1.5 * std::sqrt(3.0) * (1.0 + h);
  if (h <= 0.0) return kPi - t;
  if (h >= 1.0) return t - kPi;
  const double s = std::sqrt(std::max(0.0, 9.0 - 6.0 * h - 3.0 * h * h));
  return kPi + t - std::sqrt(3.0) * s - 6.0 * std::acos((1.0 + h + s) / 4.0);
}

std::vector<Figure1Row> figure1_curves(const std::vector<double>& h_grid, std::uint64_t samples, std::uint64_t seed) {
  std::vector<Figure1Row> rows;
  const BodyPtr disk = make_ball(2);
  for (std::size_t i = 0; i < h_grid.size(); ++i) {
    const double h = h_grid[i];
    Figure1Row r;
    r.h = h;
    r.pi_delta1 = figure1_pi_delta1(h);
    r.delta1 = figure1_Delta1(h);
    if (samples > 0) {
      const BodyPtr tri = make_polytope_body(make_triangle_T(h));
      const EstimatorResult l1 = l1_metric(*disk, *tri, samples, derive_seed(seed, i, 0));
      r.pi_delta1_mc = kPi * l1.value;
      r.pi_delta1_se = kPi * l1.std_error;
      const DeviationReport d = delta_j(disk, tri, 1, {samples, derive_seed(seed, i, 1), VolumeMethod::MonteCarlo});
      r.delta1_mc = d.value;
      r.delta1_se = d.std_error;
    }
    rows.push_back(r);
  }
  return rows;
}

}  // namespace polyapprox
