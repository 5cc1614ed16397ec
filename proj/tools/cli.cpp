#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>

#include "polyapprox/constants.hpp"
#include "polyapprox/errors.hpp"
#include "polyapprox/measures.hpp"
#include "polyapprox/optimize.hpp"
#include "polyapprox/parallel.hpp"
#include "polyapprox/properties.hpp"
#include "polyapprox/random.hpp"
#include "polyapprox/rng.hpp"

namespace polyapprox::cli {

const char* const kBodyGrammar = R"(Body descriptors (dimension from --dim):
  ball[:r]                          centred ball of radius r (default 1)
  ball-at:c1,...,cn:r               ball with centre c
  ellipsoid:a1,...,an               centred ellipsoid with the given semi-axes
  cube[:a]                          [0,a]^n (default a = 1)
  box:lo:hi                         [lo,hi]^n
  simplex                           conv{0, e_1, ..., e_n}
  regular-simplex                   regular simplex inscribed in the unit sphere
  cross-polytope[:r]                conv{+-r e_i}
  regular-polygon:N[:inscribed|circumscribed][:phase]
                                    regular N-gon inscribed in / circumscribed about the unit disk (n = 2)
  triangle:h                        triangle T_h of the disk-triangle family (n = 2)
  cap:eps[:sign]                    unit ball intersected with {sign x_n >= eps} (sign +1 or -1)
  random-polytope:M[:seed]          hull of M uniform points on the unit sphere
  ball-polytope:r:M[:seed]          ball of radius r intersected with a random polytope of M vertices
  polytope:PATH                     polytope JSON file {"n", "vertices", ...}
Moment descriptors (--moments): sigma | constant:r | weibull:shape:scale)";

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

double to_double(const std::string& s, const std::string& what) {
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v))
    fail(ErrorCode::DomainError, "bad number '" + s + "' in " + what);
  return v;
}

long long to_int(const std::string& s, const std::string& what) {
  long long v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) fail(ErrorCode::DomainError, "bad integer '" + s + "' in " + what);
  return v;
}

Vec to_vec(const std::string& s, int dim, const std::string& what) {
  const auto parts = split(s, ',');
  if (static_cast<int>(parts.size()) != dim)
    fail(ErrorCode::DomainError, what + " needs " + std::to_string(dim) + " comma-separated values");
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v[i] = to_double(parts[static_cast<std::size_t>(i)], what);
  return v;
}

void need_args(const std::vector<std::string>& p, std::size_t lo, std::size_t hi, const std::string& desc) {
  if (p.size() < lo || p.size() > hi) fail(ErrorCode::DomainError, "malformed body descriptor '" + desc + "'");
}

Polytope random_sphere_polytope(int dim, int m, std::uint64_t seed) {
  if (m < dim + 1) fail(ErrorCode::BudgetTooSmall, "random polytope needs at least n+1 points");
  Points pts;
  for (int i = 0; i < m; ++i) pts.push_back(sample_sphere(dim, seed, static_cast<std::uint64_t>(i)));
  return convex_hull(pts);
}

bool is_unit_ball(const BodyPtr& k) {
  if (k->kind() != BodyKind::Ball) return false;
  const auto& b = static_cast<const Ball&>(*k);
  return b.radius() == 1.0 && b.center().isZero();
}

// Dual deviation for the harness functional: quadrature in the plane.
double dual_functional(const BodyPtr& k, const BodyPtr& p, double q, std::uint64_t samples, std::uint64_t seed) {
  if (k->dim() == 2) return dual_delta_quadrature(*k, *p, q);
  return dual_delta(*k, *p, q, {samples, seed, std::nullopt}).value;
}

// ------------------------------------------------------------------ commands

Output cmd_constants(const RunConfig& c) {
  Output o;
  if (c.suite) {
    const InequalityReport rep = appendix_b_suite(c.nmax);
    for (const auto& r : rep.records) o.records.push_back(r);
    return o;
  }
  const int n = c.dim;
  if (n < 2) fail(ErrorCode::UnsupportedDimension, "constants need n >= 2");
  std::vector<int> js;
  if (c.j) js = {*c.j};
  else for (int j = 1; j <= n; ++j) js.push_back(j);
  for (int j : js) {
    if (j < 1 || j > n) fail(ErrorCode::DomainError, "j must lie in 1..n");
    o.records.push_back({{"n", n},
                         {"j", j},
                         {"alpha", alpha(n, j)},
                         {"log_alpha", log_alpha(n, j)},
                         {"beta", beta(n, j)},
                         {"log_beta", log_beta(n, j)},
                         {"random_inscribed_limit", random_inscribed_limit(n, j)}});
  }
  Json extra = {{"n", n},
                {"tiling", tiling_numbers(n)},
                {"what_hat", what_hat(n)},
                {"what_hat_product", what_hat_product(n)},
                {"beta_nn_closed_form", beta_nn_closed_form(n)}};
  o.records.push_back(std::move(extra));
  return o;
}

std::optional<VolumeMethod> parse_method(const std::string& m) {
  if (m.empty() || m == "auto") return std::nullopt;
  for (VolumeMethod v : {VolumeMethod::Exact, VolumeMethod::Quadrature, VolumeMethod::ExternalAngle, VolumeMethod::Kubota,
                         VolumeMethod::SteinerFit, VolumeMethod::MonteCarlo})
    if (m == to_string(v)) return v;
  fail(ErrorCode::DomainError, "unknown method '" + m + "'");
}

Output cmd_estimate(const RunConfig& c) {
  const BodyPtr k = parse_body(c.body, c.dim);
  Output o;
  if (c.q) {
    Json r = {{"quantity", "dual_volume"}, {"q", *c.q}, {"estimate", dual_volume(*k, *c.q, c.samples, c.seed)}};
    if (k->dim() == 2) r["quadrature"] = dual_volume_quadrature(*k, *c.q);
    o.records.push_back(std::move(r));
    return o;
  }
  const MeasureOptions opt{c.samples, c.seed, parse_method(c.method)};
  if (c.j) {
    if (*c.j < 0 || *c.j > k->dim()) fail(ErrorCode::DomainError, "j must lie in 0..n");
    o.records.push_back({{"quantity", "intrinsic_volume"}, {"j", *c.j}, {"estimate", intrinsic_volume(*k, *c.j, opt)}});
  } else {
    o.records.push_back({{"quantity", "intrinsic_volumes"}, {"estimate", intrinsic_volumes(*k, opt)}});
  }
  return o;
}

Output cmd_deviation(const RunConfig& c) {
  const BodyPtr k = parse_body(c.body, c.dim);
  const DeviationOptions opt{c.samples, c.seed, parse_method(c.method)};
  Output o;
  if (c.kind == "wills") {
    const WillsResult w = wills(*k, opt);
    o.records.push_back({{"kind", "wills"}, {"sum", w.sum}, {"integral", w.integral}, {"intrinsic", w.intrinsic}});
    return o;
  }
  if (c.kind == "dual-wills") {
    const DualWillsResult w = dual_wills(*k, opt);
    o.records.push_back({{"kind", "dual_wills"}, {"sum", w.sum}, {"integral", w.integral}});
    return o;
  }
  if (c.other.empty()) fail(ErrorCode::DomainError, "--other is required for deviation kind " + c.kind);
  const BodyPtr l = parse_body(c.other, c.dim);
  if (c.kind == "delta") {
    if (!c.j) fail(ErrorCode::DomainError, "--j is required for kind delta");
    o.records.push_back(delta_j(k, l, *c.j, opt));
  } else if (c.kind == "delta-sigma") {
    o.records.push_back(delta_sigma(k, l, opt));
  } else if (c.kind == "delta-lambda") {
    o.records.push_back(delta_lambda(k, l, parse_moments(c.moments, c.dim), opt));
  } else if (c.kind == "l1") {
    DeviationReport r;
    r.kind = DeviationKind::L1;
    const EstimatorResult e = l1_metric(*k, *l, c.samples, c.seed);
    r.value = e.value;
    r.std_error = e.std_error;
    r.samples = e.samples;
    r.seed = e.seed;
    Json j = r;
    if (c.dim == 2) j["quadrature"] = l1_metric_quadrature(*k, *l);
    o.records.push_back(std::move(j));
  } else if (c.kind == "dual") {
    if (!c.q) fail(ErrorCode::DomainError, "--q is required for kind dual");
    Json j = dual_delta(*k, *l, *c.q, opt);
    if (c.dim == 2) j["quadrature"] = dual_delta_quadrature(*k, *l, *c.q);
    o.records.push_back(std::move(j));
  } else if (c.kind == "dual-sigma") {
    o.records.push_back(dual_delta_sigma(*k, *l, opt));
  } else if (c.kind == "dual-lambda") {
    o.records.push_back(dual_delta_lambda(*k, *l, parse_moments(c.moments, c.dim), opt));
  } else if (c.kind == "delta1-compare") {
    o.records.push_back(delta1_comparison(k, l, c.samples, c.seed));
  } else {
    fail(ErrorCode::DomainError, "unknown deviation kind '" + c.kind + "'");
  }
  return o;
}

BoundaryDensity make_density(const BodyPtr& k, const RunConfig& c) {
  const int j = c.j.value_or(k->dim());
  const auto parts = split(c.density, ':');
  const std::string& name = parts[0];
  if (name == "uniform" && parts.size() == 1) return BoundaryDensity(k, DensityKind::Uniform, 0.0, derive_seed(c.seed, 17));
  if (name == "phi" && parts.size() == 1) return BoundaryDensity(k, DensityKind::PhiJ, j, derive_seed(c.seed, 17));
  if (name == "psi-tilde" && parts.size() == 1) return BoundaryDensity(k, DensityKind::PsiTildeJ, j, derive_seed(c.seed, 17));
  if (name == "psi" && parts.size() == 2)
    return BoundaryDensity(k, DensityKind::PsiWeighted, to_double(parts[1], "density"), derive_seed(c.seed, 17));
  fail(ErrorCode::DomainError, "unknown density '" + c.density + "' (uniform | phi | psi-tilde | psi:q)");
}

Output cmd_random_limit(const RunConfig& c) {
  const BodyPtr k = parse_body(c.body, c.dim);
  const int n = k->dim();
  const int j = c.j.value_or(n);
  if (j < 1 || j > n) fail(ErrorCode::DomainError, "j must lie in 1..n");
  if (c.mode != "inscribed" && c.mode != "circumscribed") fail(ErrorCode::DomainError, "--mode is inscribed or circumscribed");
  const bool inscribed = c.mode == "inscribed";
  const BoundaryDensity density = make_density(k, c);
  const std::vector<int> Ns = c.N.empty() ? std::vector<int>{50, 100, 200} : c.N;
  const Construction build = [&](int N, std::uint64_t s) -> BodyPtr {
    if (inscribed) return make_polytope_body(random_inscribed(density, N, s));
    return random_circumscribed(density, N, s);
  };
  const std::optional<double> q = c.q;
  const std::uint64_t samples = c.samples;
  const Functional functional = [k, j, q, samples](const BodyPtr& p, std::uint64_t s) {
    if (q) return dual_functional(k, p, *q, samples, s);
    return delta_j(k, p, j, {samples, s, std::nullopt}).value;
  };
  const HarnessResult h = expectation_harness(n, build, functional, Ns, c.trials, c.seed);
  Output o;
  if (c.format == "csv") {
    o.csv = harness_csv(h);
    return o;
  }
  Json r = {{"harness", h}, {"density", std::string(to_string(density.kind()))}, {"mode", c.mode}, {"j", j}};
  if (!q && inscribed && is_unit_ball(k) && density.kind() == DensityKind::Uniform) {
    const double theory = random_inscribed_limit(n, j);
    r["theory"] = theory;
    r["relative_error"] = std::abs(h.limit - theory) / theory;
  }
  if (!q && n == 2 && j == 2 && is_unit_ball(k)) {
    // Best-approximation limits N^2 Delta_2 -> 2 pi^3 / 3 (inscribed) and pi^3 / 3 (circumscribed).
    const double best = inscribed ? 2.0 * kPi * kPi * kPi / 3.0 : kPi * kPi * kPi / 3.0;
    r["best_limit"] = best;
    r["ratio_to_best"] = h.limit / best;
  }
  o.records.push_back(std::move(r));
  return o;
}

Output cmd_optimize(const RunConfig& c) {
  const BodyPtr k = parse_body(c.body, c.dim);
  const int n = k->dim();
  if (c.N.size() != 1) fail(ErrorCode::DomainError, "optimize takes exactly one --N");
  const int N = c.N.front();
  const int j = c.j.value_or(n);
  if (!c.q && (j < 1 || j > n)) fail(ErrorCode::DomainError, "j must lie in 1..n");
  OptimizerConfig oc;
  oc.restarts = c.restarts;
  oc.steps = c.steps;
  oc.seed = c.seed;
  oc.samples = c.samples;
  oc.final_samples = 20 * c.samples;
  const Objective obj = c.q ? dual_delta_objective(k, *c.q) : delta_objective(k, j);
  BestApproxResult res;
  if (c.mode == "inscribed") res = best_inscribed(k, N, obj, oc);
  else if (c.mode == "circumscribed") res = best_circumscribed(k, N, obj, oc);
  else fail(ErrorCode::DomainError, "--mode is inscribed or circumscribed");
  Json r = res;
  r["objective"] = c.q ? Json{{"kind", "dual_delta"}, {"q", *c.q}} : Json{{"kind", "delta"}, {"j", j}};
  if (!c.q && n == 2 && j == 2 && is_unit_ball(k)) {
    const double oracle = oracle_2d(N, res.mode);
    r["oracle"] = oracle;
    r["relative_error"] = std::abs(res.value - oracle) / oracle;
  }
  if (res.mode == ApproxMode::Inscribed && is_unit_ball(k)) {
    const SimultaneousRatio s = simultaneous_ratio(make_polytope_body(res.polytope));
    r["simultaneous_ratio"] = {{"ratio", s.ratio}, {"argmax_j", s.argmax_j}, {"per_j", s.per_j}};
  }
  Output o;
  o.records.push_back(std::move(r));
  return o;
}

Output cmd_counterexample(const RunConfig& c) {
  const int j = c.j.value_or(1);
  Json r = triangle_violation(c.dim, j, c.eps, {c.samples, c.seed, std::nullopt});
  r["n"] = c.dim;
  r["j"] = j;
  r["eps"] = c.eps;
  Output o;
  o.records.push_back(std::move(r));
  return o;
}

Output cmd_figure1(const RunConfig& c) {
  if (!(c.h_step > 0.0) || !(c.h_max >= c.h_min)) fail(ErrorCode::DomainError, "bad h grid");
  const auto count = static_cast<long long>(std::llround((c.h_max - c.h_min) / c.h_step)) + 1;
  if (count > 1000000) fail(ErrorCode::DomainError, "h grid too fine");
  std::vector<double> grid;
  // Grid points snapped to 12 decimals so that -0.9 + 90 * 0.01 is exactly 0.
  for (long long i = 0; i < count; ++i)
    grid.push_back(std::round((c.h_min + static_cast<double>(i) * c.h_step) * 1e12) / 1e12);
  const auto rows = figure1_curves(grid, c.samples, c.seed);
  Output o;
  if (c.format == "csv") {
    std::ostringstream os;
    const auto f = format_double;
    os << "h,pi_delta1,Delta1";
    if (c.samples > 0) os << ",pi_delta1_mc,pi_delta1_se,Delta1_mc,Delta1_se";
    os << '\n';
    for (const auto& r : rows) {
      os << f(r.h) << ',' << f(r.pi_delta1) << ',' << f(r.delta1);
      if (c.samples > 0)
        os << ',' << f(r.pi_delta1_mc) << ',' << f(r.pi_delta1_se) << ',' << f(r.delta1_mc) << ',' << f(r.delta1_se);
      os << '\n';
    }
    o.csv = os.str();
    return o;
  }
  for (const auto& r : rows) o.records.push_back(r);
  return o;
}

Output cmd_verify(const RunConfig& c) {
  Output o;
  const InequalityReport rep = appendix_b_suite(c.nmax);
  Json failing = Json::array();
  for (const auto& r : rep.records)
    if (!r.pass) failing.push_back(r);
  o.records.push_back({{"section", "inequalities"},
                       {"n_max", c.nmax},
                       {"records", rep.records.size()},
                       {"failures", rep.failures()},
                       {"failing_names", rep.failing_names()},
                       {"failing", std::move(failing)}});
  const auto corpus = property_corpus(c.corpus, c.seed);
  const PropertyReport props = check_properties(corpus, c.samples, derive_seed(c.seed, 1));
  Json per = Json::object();
  for (const auto& name : props.properties()) per[name] = {{"checks", 0}, {"failures", 0}};
  Json bad = Json::array();
  for (const auto& chk : props.checks) {
    per[chk.property]["checks"] = per[chk.property]["checks"].get<int>() + 1;
    if (!chk.pass) {
      per[chk.property]["failures"] = per[chk.property]["failures"].get<int>() + 1;
      bad.push_back({{"body", chk.body}, {"property", chk.property}, {"margin", chk.margin}, {"detail", chk.detail}});
    }
  }
  o.records.push_back({{"section", "properties"},
                       {"bodies", corpus.size()},
                       {"checks", props.checks.size()},
                       {"failures", props.failures()},
                       {"per_property", std::move(per)},
                       {"failing", std::move(bad)}});
  return o;
}

bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonConvergence:
    case ErrorCode::IllConditioned:
    case ErrorCode::RejectionStall: return false;
    default: return true;
  }
}

void emit(const RunConfig& cfg, const Output& o, std::ostream& os) {
  if (cfg.format == "csv") {
    os << o.csv;
    return;
  }
  const Json config = cfg;
  for (const Json& r : o.records) {
    const Json line = {{"command", cfg.command}, {"config", config}, {"seed", cfg.seed}, {"result", r}};
    os << line.dump() << '\n';
  }
}

}  // namespace

void to_json(Json& j, const RunConfig& c) {
  j = {{"command", c.command}, {"dim", c.dim},       {"kind", c.kind},         {"body", c.body},
       {"other", c.other},     {"N", c.N},           {"trials", c.trials},     {"samples", c.samples},
       {"seed", c.seed},       {"format", c.format}, {"out", c.out},           {"eps", c.eps},
       {"nmax", c.nmax},       {"suite", c.suite},   {"mode", c.mode},         {"density", c.density},
       {"moments", c.moments}, {"method", c.method}, {"restarts", c.restarts}, {"steps", c.steps},
       {"h_min", c.h_min},     {"h_max", c.h_max},   {"h_step", c.h_step},     {"corpus", c.corpus}};
  j["j"] = c.j ? Json(*c.j) : Json(nullptr);
  j["q"] = c.q ? Json(*c.q) : Json(nullptr);
}

void from_json(const Json& j, RunConfig& c) {
  RunConfig d;
  auto get = [&j](const char* key, auto& field) {
    if (j.contains(key)) j.at(key).get_to(field);
  };
  get("command", d.command);
  get("dim", d.dim);
  if (j.contains("j") && !j.at("j").is_null()) d.j = j.at("j").get<int>();
  if (j.contains("q") && !j.at("q").is_null()) d.q = j.at("q").get<double>();
  get("kind", d.kind);
  get("body", d.body);
  get("other", d.other);
  get("N", d.N);
  get("trials", d.trials);
  get("samples", d.samples);
  get("seed", d.seed);
  get("format", d.format);
  get("out", d.out);
  get("eps", d.eps);
  get("nmax", d.nmax);
  get("suite", d.suite);
  get("mode", d.mode);
  get("density", d.density);
  get("moments", d.moments);
  get("method", d.method);
  get("restarts", d.restarts);
  get("steps", d.steps);
  get("h_min", d.h_min);
  get("h_max", d.h_max);
  get("h_step", d.h_step);
  get("corpus", d.corpus);
  c = std::move(d);
}

BodyPtr parse_body(const std::string& desc, int dim) {
  if (dim < 1 || dim > kMaxHullDim) fail(ErrorCode::UnsupportedDimension, "--dim must lie in 1..8");
  const auto p = split(desc, ':');
  const std::string& kind = p[0];
  auto planar = [&] {
    if (dim != 2) fail(ErrorCode::UnsupportedDimension, kind + " is planar; use --dim 2");
  };
  if (kind == "ball") {
    need_args(p, 1, 2, desc);
    return make_ball(dim, p.size() == 2 ? to_double(p[1], desc) : 1.0);
  }
  if (kind == "ball-at") {
    need_args(p, 3, 3, desc);
    return make_ball(to_vec(p[1], dim, desc), to_double(p[2], desc));
  }
  if (kind == "ellipsoid") {
    need_args(p, 2, 2, desc);
    return make_ellipsoid(to_vec(p[1], dim, desc));
  }
  if (kind == "cube") {
    need_args(p, 1, 2, desc);
    return make_polytope_body(make_cube(dim, 0.0, p.size() == 2 ? to_double(p[1], desc) : 1.0));
  }
  if (kind == "box") {
    need_args(p, 3, 3, desc);
    return make_polytope_body(make_cube(dim, to_double(p[1], desc), to_double(p[2], desc)));
  }
  if (kind == "simplex") {
    need_args(p, 1, 1, desc);
    return make_polytope_body(make_simplex(dim));
  }
  if (kind == "regular-simplex") {
    need_args(p, 1, 1, desc);
    return make_polytope_body(make_regular_simplex(dim));
  }
  if (kind == "cross-polytope") {
    need_args(p, 1, 2, desc);
    return make_polytope_body(make_cross_polytope(dim, p.size() == 2 ? to_double(p[1], desc) : 1.0));
  }
  if (kind == "regular-polygon") {
    planar();
    need_args(p, 2, 4, desc);
    const auto N = to_int(p[1], desc);
    if (N < 3 || N > 1000000) fail(ErrorCode::BudgetTooSmall, "polygon needs 3 <= N <= 10^6");
    const std::string mode = p.size() >= 3 ? p[2] : "inscribed";
    const double phase = p.size() == 4 ? to_double(p[3], desc) : 0.0;
    if (mode == "inscribed") return make_polytope_body(make_regular_polygon(static_cast<int>(N), 1.0, phase));
    if (mode == "circumscribed") return make_polytope_body(make_circumscribed_polygon(static_cast<int>(N), 1.0, phase));
    fail(ErrorCode::DomainError, "polygon mode is inscribed or circumscribed");
  }
  if (kind == "triangle") {
    planar();
    need_args(p, 2, 2, desc);
    return make_polytope_body(make_triangle_T(to_double(p[1], desc)));
  }
  if (kind == "cap") {
    need_args(p, 2, 3, desc);
    const auto sign = p.size() == 3 ? to_int(p[2], desc) : 1;
    return make_cap(dim, to_double(p[1], desc), static_cast<int>(sign));
  }
  if (kind == "random-polytope") {
    need_args(p, 2, 3, desc);
    const auto seed = p.size() == 3 ? to_int(p[2], desc) : 0;
    return make_polytope_body(random_sphere_polytope(dim, static_cast<int>(to_int(p[1], desc)), static_cast<std::uint64_t>(seed)));
  }
  if (kind == "ball-polytope") {
    need_args(p, 3, 4, desc);
    const auto seed = p.size() == 4 ? to_int(p[3], desc) : 0;
    return std::make_shared<IntersectionBody>(
        make_ball(dim, to_double(p[1], desc)),
        random_sphere_polytope(dim, static_cast<int>(to_int(p[2], desc)), static_cast<std::uint64_t>(seed)));
  }
  if (kind == "polytope") {
    if (p.size() < 2) fail(ErrorCode::DomainError, "polytope descriptor needs a path");
    const std::string path = desc.substr(std::string("polytope:").size());
    std::ifstream in(path);
    if (!in) fail(ErrorCode::DomainError, "cannot open '" + path + "'");
    Json j;
    try {
      in >> j;
    } catch (const Json::exception& e) {
      fail(ErrorCode::DomainError, std::string("invalid JSON in '") + path + "': " + e.what());
    }
    Polytope poly = j.get<Polytope>();
    if (poly.dim() != dim) fail(ErrorCode::DomainError, "polytope file dimension differs from --dim");
    return make_polytope_body(std::move(poly));
  }
  fail(ErrorCode::DomainError, "unknown body kind '" + kind + "'");
}

MomentSequence parse_moments(const std::string& desc, int dim) {
  const auto p = split(desc, ':');
  if (p[0] == "sigma" && p.size() == 1) return MomentSequence::sigma(dim);
  if (p[0] == "constant" && p.size() == 2) return MomentSequence::constant(dim, to_double(p[1], desc));
  if (p[0] == "weibull" && p.size() == 3) return MomentSequence::weibull(dim, to_double(p[1], desc), to_double(p[2], desc));
  fail(ErrorCode::DomainError, "unknown moment descriptor '" + desc + "'");
}

Output execute(const RunConfig& c) {
  if (c.format != "json" && c.format != "csv") fail(ErrorCode::DomainError, "format is json or csv");
  if (c.format == "csv" && c.command != "figure1" && c.command != "random-limit")
    fail(ErrorCode::DomainError, "CSV output is available for figure1 and random-limit only");
  if (c.command == "constants") return cmd_constants(c);
  if (c.command == "estimate") return cmd_estimate(c);
  if (c.command == "deviation") return cmd_deviation(c);
  if (c.command == "random-limit") return cmd_random_limit(c);
  if (c.command == "optimize") return cmd_optimize(c);
  if (c.command == "counterexample") return cmd_counterexample(c);
  if (c.command == "figure1") return cmd_figure1(c);
  if (c.command == "verify") return cmd_verify(c);
  fail(ErrorCode::DomainError, "unknown command '" + c.command + "'");
}

namespace {

struct Flags {
  std::optional<int> dim, j, trials, nmax, restarts, steps, corpus;
  std::optional<double> q, eps, h_min, h_max, h_step;
  std::optional<std::string> kind, body, other, mode, density, moments, method, out;
  std::vector<int> N;
  std::optional<std::uint64_t> samples, seed;
  std::optional<unsigned> threads;
  bool json = false, csv = false, suite = false;
  std::string replay_file;
};

void add_flags(CLI::App* s, Flags& f, const std::vector<std::string>& which) {
  auto has = [&which](const char* name) { return std::find(which.begin(), which.end(), name) != which.end(); };
  if (has("dim")) s->add_option("--dim", f.dim, "Ambient dimension n")->check(CLI::Range(1, 8));
  if (has("j")) s->add_option("--j", f.j, "Intrinsic-volume index j");
  if (has("q")) s->add_option("--q", f.q, "Dual-volume index q");
  if (has("kind")) s->add_option("--kind", f.kind, "delta | delta-sigma | delta-lambda | l1 | dual | dual-sigma | dual-lambda | delta1-compare | wills | dual-wills");
  if (has("body")) s->add_option("--body", f.body, "Body descriptor (see --help)");
  if (has("other")) s->add_option("--other", f.other, "Second body descriptor");
  if (has("N")) s->add_option("--N", f.N, "Budget(s), comma separated")->delimiter(',');
  if (has("trials")) s->add_option("--trials", f.trials, "Trials per N")->check(CLI::PositiveNumber);
  if (has("samples")) s->add_option("--samples", f.samples, "Monte Carlo samples");
  if (has("eps")) s->add_option("--eps", f.eps, "Cap offset epsilon");
  if (has("nmax")) s->add_option("--nmax", f.nmax, "Largest n of the inequality suite")->check(CLI::Range(2, 2000));
  if (has("suite")) s->add_flag("--suite", f.suite, "Run the inequality suite");
  if (has("mode")) s->add_option("--mode", f.mode, "inscribed | circumscribed");
  if (has("density")) s->add_option("--density", f.density, "uniform | phi | psi-tilde | psi:q");
  if (has("moments")) s->add_option("--moments", f.moments, "Moment descriptor");
  if (has("method")) s->add_option("--method", f.method, "auto | exact | quadrature | external_angle | kubota | steiner_fit | monte_carlo");
  if (has("restarts")) s->add_option("--restarts", f.restarts, "Annealing restarts")->check(CLI::PositiveNumber);
  if (has("steps")) s->add_option("--steps", f.steps, "Annealing steps per restart")->check(CLI::NonNegativeNumber);
  if (has("h")) {
    s->add_option("--hmin", f.h_min, "Grid start");
    s->add_option("--hmax", f.h_max, "Grid end");
    s->add_option("--hstep", f.h_step, "Grid step");
  }
  if (has("corpus")) s->add_option("--corpus", f.corpus, "Property corpus size")->check(CLI::PositiveNumber);
  if (has("csv")) {
    auto* j = s->add_flag("--json", f.json, "JSON lines output (default)");
    auto* c = s->add_flag("--csv", f.csv, "CSV output");
    j->excludes(c);
  } else {
    s->add_flag("--json", f.json, "JSON lines output (default)");
  }
  s->add_option("--seed", f.seed, "Base seed (default: POLYAPPROX_SEED, else entropy)");
  s->add_option("--threads", f.threads, "Worker cap; results do not depend on it")->check(CLI::PositiveNumber);
  s->add_option("--out", f.out, "Write records to this file instead of stdout");
}

RunConfig to_config(const std::string& command, const Flags& f) {
  RunConfig c;
  c.command = command;
  // Per-command sample defaults.
  if (command == "figure1") c.samples = 0;
  if (command == "verify" || command == "optimize") c.samples = 20000;
  if (f.dim) c.dim = *f.dim;
  c.j = f.j;
  c.q = f.q;
  if (f.kind) c.kind = *f.kind;
  if (f.body) c.body = *f.body;
  if (f.other) c.other = *f.other;
  c.N = f.N;
  if (f.trials) c.trials = *f.trials;
  if (f.samples) c.samples = *f.samples;
  if (f.eps) c.eps = *f.eps;
  if (f.nmax) c.nmax = *f.nmax;
  c.suite = f.suite;
  if (f.mode) c.mode = *f.mode;
  if (f.density) c.density = *f.density;
  if (f.moments) c.moments = *f.moments;
  if (f.method) c.method = *f.method;
  if (f.restarts) c.restarts = *f.restarts;
  if (f.steps) c.steps = *f.steps;
  if (f.h_min) c.h_min = *f.h_min;
  if (f.h_max) c.h_max = *f.h_max;
  if (f.h_step) c.h_step = *f.h_step;
  if (f.corpus) c.corpus = *f.corpus;
  if (f.csv) c.format = "csv";
  if (f.out) c.out = *f.out;
  return c;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err, const char* env_seed) {
  CLI::App app{"Deviations between convex bodies and approximating polytopes"};
  app.footer(kBodyGrammar);
  app.require_subcommand(1);
  Flags f;
  const std::vector<std::pair<std::string, std::vector<std::string>>> commands = {
      {"constants", {"dim", "j", "suite", "nmax"}},
      {"estimate", {"dim", "j", "q", "body", "samples", "method"}},
      {"deviation", {"dim", "j", "q", "kind", "body", "other", "samples", "moments", "method"}},
      {"random-limit", {"dim", "j", "q", "body", "N", "trials", "samples", "mode", "density", "csv"}},
      {"optimize", {"dim", "j", "q", "body", "N", "samples", "mode", "restarts", "steps"}},
      {"counterexample", {"dim", "j", "eps", "samples"}},
      {"figure1", {"samples", "h", "csv"}},
      {"verify", {"nmax", "corpus", "samples"}},
  };
  const std::map<std::string, std::string> descriptions = {
      {"constants", "Random-approximation constants, tiling numbers and the inequality suite"},
      {"estimate", "Intrinsic volumes V_j or dual volumes of a body"},
      {"deviation", "Deviation between two bodies"},
      {"random-limit", "Scaled expectation of random polytope deviations with extrapolation"},
      {"optimize", "Best inscribed or circumscribed polytope with N vertices / facets"},
      {"counterexample", "Triangle-inequality violation with opposite caps"},
      {"figure1", "Disk-triangle curves h -> (pi delta_1, Delta_1)"},
      {"verify", "Inequality suite plus the property corpus"},
  };
  for (const auto& [name, which] : commands) add_flags(app.add_subcommand(name, descriptions.at(name)), f, which);
  auto* replay = app.add_subcommand("replay", "Re-run the configuration embedded in an emitted record or RunConfig file");
  replay->add_option("file", f.replay_file, "Record or RunConfig JSON")->required();
  replay->add_option("--threads", f.threads, "Worker cap; results do not depend on it")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    err << "error: " << e.what() << '\n';
    return 2;
  }

  RunConfig cfg;
  try {
    if (replay->parsed()) {
      std::ifstream in(f.replay_file);
      if (!in) fail(ErrorCode::DomainError, "cannot open '" + f.replay_file + "'");
      std::string first;
      std::getline(in, first);
      Json j;
      try {
        j = Json::parse(first);
      } catch (const Json::exception& e) {
        fail(ErrorCode::DomainError, std::string("invalid JSON: ") + e.what());
      }
      cfg = (j.contains("config") ? j.at("config") : j).get<RunConfig>();
    } else {
      const CLI::App* sub = app.get_subcommands().front();
      cfg = to_config(sub->get_name(), f);
      if (f.seed) {
        cfg.seed = *f.seed;
      } else if (env_seed != nullptr && *env_seed != '\0') {
        std::uint64_t s = 0;
        const std::string v(env_seed);
        const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), s);
        if (ec != std::errc() || p != v.data() + v.size()) fail(ErrorCode::DomainError, "POLYAPPROX_SEED is not an unsigned integer");
        cfg.seed = s;
      } else {
        cfg.seed = entropy_seed();
        err << "seed: " << cfg.seed << '\n';
      }
    }
    if (f.threads) set_max_threads(*f.threads);
    const Output o = execute(cfg);
    if (cfg.out.empty()) {
      emit(cfg, o, out);
    } else {
      std::ofstream file(cfg.out, std::ios::binary);
      if (!file) fail(ErrorCode::DomainError, "cannot write '" + cfg.out + "'");
      emit(cfg, o, file);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_input_error(e.code()) ? 2 : 3;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}

}  // namespace polyapprox::cli
