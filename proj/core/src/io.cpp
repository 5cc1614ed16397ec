#include "polyapprox/io.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

#include "polyapprox/errors.hpp"

namespace polyapprox {

namespace {

bool lex_before(const Vec& a, const Vec& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

// Non-finite values become null so every record stays valid JSON.
Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace

Json vec_to_json(const Vec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(number(v[i]));
  return a;
}

Vec vec_from_json(const Json& j) {
  if (!j.is_array()) fail(ErrorCode::DegenerateInput, "expected a numeric array");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) fail(ErrorCode::DegenerateInput, "expected a numeric array");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

void to_json(Json& j, const Polytope& p) {
  Points vs = p.vertices();
  std::sort(vs.begin(), vs.end(), lex_before);
  std::vector<Halfspace> hs = p.halfspaces();
  std::sort(hs.begin(), hs.end(), [](const Halfspace& a, const Halfspace& b) {
    if (a.normal != b.normal) return lex_before(a.normal, b.normal);
    return a.offset < b.offset;
  });
  j = Json::object();
  j["n"] = p.dim();
  Json verts = Json::array();
  for (const Vec& v : vs) verts.push_back(vec_to_json(v));
  j["vertices"] = std::move(verts);
  Json facets = Json::array();
  for (const Halfspace& h : hs) facets.push_back({{"normal", vec_to_json(h.normal)}, {"offset", number(h.offset)}});
  j["facets"] = std::move(facets);
}

void from_json(const Json& j, Polytope& p) {
  if (!j.is_object() || !j.contains("vertices")) fail(ErrorCode::DegenerateInput, "polytope JSON needs \"vertices\"");
  Points pts;
  for (const Json& v : j.at("vertices")) pts.push_back(vec_from_json(v));
  if (pts.empty()) fail(ErrorCode::DegenerateInput, "polytope JSON has no vertices");
  if (j.contains("n") && j.at("n").get<int>() != pts.front().size())
    fail(ErrorCode::DegenerateInput, "polytope JSON dimension mismatch");
  p = convex_hull(pts);
}

void to_json(Json& j, const EstimatorResult& r) {
  j = {{"value", number(r.value)}, {"std_error", number(r.std_error)}, {"samples", r.samples}, {"seed", r.seed}};
}

void from_json(const Json& j, EstimatorResult& r) {
  r.value = j.at("value").get<double>();
  r.std_error = j.at("std_error").get<double>();
  r.samples = j.at("samples").get<std::uint64_t>();
  r.seed = j.at("seed").get<std::uint64_t>();
}

void to_json(Json& j, const DeviationReport& r) {
  j = {{"kind", std::string(to_string(r.kind))},
       {"index", number(r.index)},
       {"value", number(r.value)},
       {"std_error", number(r.std_error)},
       {"samples", r.samples},
       {"seed", r.seed}};
  if (!r.components.empty()) {
    Json c = Json::array(), e = Json::array();
    for (double x : r.components) c.push_back(number(x));
    for (double x : r.component_errors) e.push_back(number(x));
    j["components"] = std::move(c);
    j["component_errors"] = std::move(e);
  }
  if (r.cross_check) j["cross_check"] = *r.cross_check;
}

void to_json(Json& j, const IntrinsicVolumeVector& v) {
  Json methods = Json::array();
  for (VolumeMethod m : v.methods) methods.push_back(std::string(to_string(m)));
  j = {{"values", vec_to_json(v.values)},
       {"std_errors", vec_to_json(v.std_errors)},
       {"methods", std::move(methods)},
       {"samples", v.samples},
       {"seed", v.seed}};
}

void to_json(Json& j, const InequalityRecord& r) {
  j = {{"name", r.name},         {"n", r.n},
       {"worst_j", r.worst_j},   {"lhs", number(r.lhs)},
       {"rhs", number(r.rhs)},   {"margin", number(r.margin)},
       {"log_scale", r.log_scale}, {"pass", r.pass}};
}

void to_json(Json& j, const TilingNumbers& t) {
  auto iv = [](const Interval& i) { return Json::array({number(i.lo), number(i.hi)}); };
  j = {{"n", t.n}, {"known", t.known}, {"del", iv(t.del)}, {"div", iv(t.div)}, {"ldel", iv(t.ldel)}, {"ldiv", iv(t.ldiv)}};
}

void to_json(Json& j, const HarnessResult& r) {
  Json rows = Json::array();
  for (const TrialSummary& s : r.rows)
    rows.push_back({{"N", s.N},
                    {"trials", s.trials},
                    {"scaled_mean", number(s.scaled_mean)},
                    {"std_error", number(s.std_error)},
                    {"raw_mean", number(s.raw_mean)}});
  Json cov = Json::array();
  for (Eigen::Index i = 0; i < r.covariance.rows(); ++i) cov.push_back(vec_to_json(r.covariance.row(i).transpose()));
  j = {{"dim", r.dim},
       {"rows", std::move(rows)},
       {"limit", number(r.limit)},
       {"limit_se", number(r.limit_se)},
       {"slope", number(r.slope)},
       {"covariance", std::move(cov)}};
}

void to_json(Json& j, const BestApproxResult& r) {
  Json hist = Json::array();
  for (double h : r.history) hist.push_back(number(h));
  j = {{"mode", std::string(to_string(r.mode))},
       {"N", r.N},
       {"value", number(r.value)},
       {"std_error", number(r.std_error)},
       {"history", std::move(hist)},
       {"evaluations", r.evaluations},
       {"sandwich_ok", r.sandwich_ok},
       {"polytope", r.polytope}};
}

void to_json(Json& j, const TriangleViolation& t) {
  j = {{"lhs", number(t.lhs)},
       {"lhs_se", number(t.lhs_se)},
       {"rhs", number(t.rhs)},
       {"rhs_se", number(t.rhs_se)},
       {"violated", t.violated}};
}

void to_json(Json& j, const Delta1Comparison& c) {
  j = {{"delta1", number(c.delta1)},         {"delta1_se", number(c.delta1_se)},
       {"width_term", number(c.width_term)}, {"width_term_se", number(c.width_term_se)},
       {"gap", number(c.gap)},               {"gap_se", number(c.gap_se)},
       {"union_convex", c.union_convex}};
}

void to_json(Json& j, const Figure1Row& r) {
  j = {{"h", number(r.h)},
       {"pi_delta1", number(r.pi_delta1)},
       {"Delta1", number(r.delta1)},
       {"pi_delta1_mc", number(r.pi_delta1_mc)},
       {"pi_delta1_se", number(r.pi_delta1_se)},
       {"Delta1_mc", number(r.delta1_mc)},
       {"Delta1_se", number(r.delta1_se)}};
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string harness_csv(const HarnessResult& r) {
  std::ostringstream os;
  os << "N,trials,scaled_mean,std_error\n";
  for (const TrialSummary& s : r.rows)
    os << s.N << ',' << s.trials << ',' << format_double(s.scaled_mean) << ',' << format_double(s.std_error) << '\n';
  return os.str();
}

}  // namespace polyapprox
