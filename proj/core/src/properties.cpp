#include "polyapprox/properties.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

#include "polyapprox/deviations.hpp"
#include "polyapprox/errors.hpp"
#include "polyapprox/measures.hpp"
#include "polyapprox/rng.hpp"

namespace polyapprox {

namespace {

constexpr double kSigmas = 3.0;
constexpr double kAbsSlack = 1e-9;
constexpr double kInfinity = std::numeric_limits<double>::infinity();

Polytope random_polytope(int n, Stream& s, double r_lo, double r_hi, int count) {
  Points pts;
  for (int i = 0; i < count; ++i) pts.push_back((r_lo + (r_hi - r_lo) * s.uniform()) * s.unit_vector(n));
  return convex_hull(pts);
}

Polytope inscribed_polytope(const ConvexBody& k, Stream& s, int count) {
  const Vec c = k.interior_point();
  Points pts;
  for (int i = 0; i < count; ++i) {
    const Vec u = s.unit_vector(k.dim());
    pts.push_back(c + (0.5 + 0.45 * s.uniform()) * k.radial_from(c, u) * u);
  }
  return convex_hull(pts);
}

BodyPtr corpus_body(int kind, int n, Stream& s, std::string& label) {
  std::ostringstream os;
  switch (kind) {
    case 0: {
      const int m = n + 3 + static_cast<int>(s.uniform() * 10);
      os << "polytope(n=" << n << ",points=" << m << ")";
      label = os.str();
      return make_polytope_body(random_polytope(n, s, 0.6, 1.4, m));
    }
    case 1: {
      const double r = 0.5 + s.uniform();
      const Vec c = 0.2 * s.uniform() * s.unit_vector(n);
      os << "ball(n=" << n << ",r=" << r << ")";
      label = os.str();
      return make_ball(c, r);
    }
    case 2: {
      Vec a(n);
      for (int i = 0; i < n; ++i) a[i] = 0.5 + s.uniform();
      os << "ellipsoid(n=" << n << ")";
      label = os.str();
      return make_ellipsoid(a);
    }
    case 3: {
      const double eps = -0.5 + s.uniform();
      const int sign = s.uniform() < 0.5 ? -1 : 1;
      os << "cap(n=" << n << ",eps=" << eps << ",sign=" << sign << ")";
      label = os.str();
      return make_cap(n, eps, sign);
    }
    default: {
      const double r = 0.7 + 0.3 * s.uniform();
      os << "ball-cap-polytope(n=" << n << ",r=" << r << ")";
      label = os.str();
      return std::make_shared<IntersectionBody>(make_ball(n, r), random_polytope(n, s, 0.75, 1.2, n + 6));
    }
  }
}

double se_pair(double a, double b) { return std::hypot(a, b); }

void add(PropertyReport& rep, const std::string& body, const std::string& property, double margin,
         const std::string& detail) {
  rep.checks.push_back({body, property, margin >= 0.0, margin, detail});
}

using Deviation = std::function<DeviationReport(const BodyPtr&, const BodyPtr&, const DeviationOptions&)>;

struct NamedDeviation {
  std::string name;
  Deviation fn;
  bool needs_origin = false;
};

std::vector<NamedDeviation> deviation_kinds(int n) {
  std::vector<NamedDeviation> out;
  for (int j = 1; j <= n; ++j)
    out.push_back({"Delta_" + std::to_string(j), [j](const BodyPtr& a, const BodyPtr& b, const DeviationOptions& o) {
                     return delta_j(a, b, j, o);
                   }});
  out.push_back({"Delta_Sigma", [](const BodyPtr& a, const BodyPtr& b, const DeviationOptions& o) {
                   return delta_sigma(a, b, o);
                 }});
  out.push_back({"delta_1", [](const BodyPtr& a, const BodyPtr& b, const DeviationOptions& o) {
                   const EstimatorResult e = l1_metric(*a, *b, o.samples, o.seed);
                   DeviationReport r;
                   r.kind = DeviationKind::L1;
                   r.value = e.value;
                   r.std_error = e.std_error;
                   return r;
                 }});
  out.push_back({"dual_Delta_1",
                 [](const BodyPtr& a, const BodyPtr& b, const DeviationOptions& o) { return dual_delta(*a, *b, 1.0, o); },
                 true});
  return out;
}

void check_volumes(PropertyReport& rep, const CorpusEntry& e, std::uint64_t samples, std::uint64_t seed) {
  const int n = e.body->dim();
  const IntrinsicVolumeVector v = intrinsic_volumes(*e.body, {samples, seed, std::nullopt});
  std::vector<double> r(n + 1), se(n + 1);
  for (int j = 0; j <= n; ++j) {
    const double b = ball_intrinsic_volume(n, j);
    r[j] = v.values[j] / b;
    se[j] = v.std_errors[j] / b;
  }
  // (r_n)^{1/n} <= (r_j)^{1/j} <= r_1, errors by the delta method.
  auto root = [&](int j) { return std::pow(r[j], 1.0 / j); };
  auto root_se = [&](int j) { return r[j] > 0 ? root(j) * se[j] / (j * r[j]) : se[j]; };
  double chain = kInfinity;
  for (int j = 1; j <= n; ++j) {
    chain = std::min(chain, root(j) - root(n) + kSigmas * se_pair(root_se(j), root_se(n)) + kAbsSlack);
    chain = std::min(chain, r[1] - root(j) + kSigmas * se_pair(se[1], root_se(j)) + kAbsSlack);
  }
  add(rep, e.label, "isoperimetric_chain", chain, "");
  double lc = kInfinity;
  for (int j = 1; j < n; ++j) {
    const double lhs = r[j] * r[j], rhs = r[j - 1] * r[j + 1];
    const double s = se_pair(2 * r[j] * se[j], se_pair(r[j - 1] * se[j + 1], r[j + 1] * se[j - 1]));
    lc = std::min(lc, lhs - rhs + kSigmas * s + kAbsSlack);
  }
  add(rep, e.label, "log_concavity", lc, "");
}

}  // namespace


std::vector<CorpusEntry> property_corpus(int count, std::uint64_t seed) {
  if (count < 1) fail(ErrorCode::DomainError, "corpus size must be positive");
  std::vector<CorpusEntry> out;
  for (int i = 0; i < count; ++i) {
    const int kind = i % 5;
    const int n = kind == 0 ? 2 + (i / 5) % 3 : 2 + (i / 5) % 2;
    for (std::uint64_t attempt = 0;; ++attempt) {
      if (attempt > 100) fail(ErrorCode::NonConvergence, "could not draw a corpus body");
      Stream s(derive_seed(seed, static_cast<std::uint64_t>(i)), attempt);
      try {
        CorpusEntry e;
        e.body = corpus_body(kind, n, s, e.label);
        e.partner = make_polytope_body(random_polytope(n, s, 0.5, 1.3, n + 5).translated(0.15 * s.unit_vector(n)));
        e.nested = make_polytope_body(inscribed_polytope(*e.body, s, n + 6));
        out.push_back(std::move(e));
        break;
      } catch (const Error&) {
      }
    }
  }
  return out;
}

bool f_vector_ok(const Polytope& p, std::string* detail) {
  const int n = p.dim();
  const auto& f = p.f_vector();
  std::ostringstream os;
  bool ok = true;
  long long euler = 0;
  for (int k = 0; k < n; ++k) euler += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(f[k]);
  const long long expected = n % 2 == 0 ? 0 : 2;
  if (euler != expected) {
    ok = false;
    os << "euler=" << euler << " expected " << expected << "; ";
  }
  if (n >= 3) {
    if (2 * f[1] < static_cast<std::size_t>(n) * f[0]) {
      ok = false;
      os << "f1 < n f0 / 2; ";
    }
    if (2 * f[n - 2] < static_cast<std::size_t>(n) * f[n - 1]) {
      ok = false;
      os << "f_{n-2} < n f_{n-1} / 2; ";
    }
  }
  if (n >= 4 && p.simplicial()) {
    // Bjorner: f_0 < ... < f_{m-1} <= f_m with m = floor(n/2); f_{floor(3(n-1)/4)} > ... > f_{n-1}.
    const int m = n / 2;
    for (int k = 1; k <= m; ++k) {
      const bool good = k < m ? f[k - 1] < f[k] : f[k - 1] <= f[k];
      if (!good) {
        ok = false;
        os << "not increasing at f_" << k << "; ";
      }
    }
    for (int k = 3 * (n - 1) / 4; k + 1 < n; ++k)
      if (!(f[k] > f[k + 1])) {
        ok = false;
        os << "not decreasing at f_" << k + 1 << "; ";
      }
  }
  if (detail) *detail = os.str();
  return ok;
}

std::size_t PropertyReport::failures() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const PropertyCheck& c) { return !c.pass; }));
}

std::vector<std::string> PropertyReport::properties() const {
  std::set<std::string> s;
  for (const auto& c : checks) s.insert(c.property);
  return {s.begin(), s.end()};
}

PropertyReport check_properties(const std::vector<CorpusEntry>& corpus, std::uint64_t samples, std::uint64_t seed) {
  PropertyReport rep;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const CorpusEntry& e = corpus[i];
    const int n = e.body->dim();
    const std::uint64_t s = derive_seed(seed, i);
    std::uint64_t sub = 0;
    auto opt = [&] { return DeviationOptions{samples, derive_seed(s, ++sub), std::nullopt}; };

    double nonneg = kInfinity, sym = kInfinity;
    std::string worst_nonneg, worst_sym;
    for (const auto& d : deviation_kinds(n)) {
      if (d.needs_origin && !(e.body->origin_interior() && e.partner->origin_interior())) continue;
      const DeviationReport ab = d.fn(e.body, e.partner, opt());
      const DeviationReport ba = d.fn(e.partner, e.body, opt());
      const double m1 = std::min(ab.value + kSigmas * ab.std_error, ba.value + kSigmas * ba.std_error) + kAbsSlack;
      if (m1 < nonneg) {
        nonneg = m1;
        worst_nonneg = d.name;
      }
      const double m2 = kSigmas * se_pair(ab.std_error, ba.std_error) + kAbsSlack - std::abs(ab.value - ba.value);
      if (m2 < sym) {
        sym = m2;
        worst_sym = d.name;
      }
    }
    add(rep, e.label, "nonnegativity", nonneg, worst_nonneg);
    add(rep, e.label, "symmetry", sym, worst_sym);

    check_volumes(rep, e, samples, derive_seed(s, 1000));

    for (const BodyPtr& b : {e.body, e.partner, e.nested}) {
      if (b->kind() != BodyKind::Polytope) continue;
      std::string detail;
      const bool ok = f_vector_ok(static_cast<const PolytopeBody&>(*b).polytope(), &detail);
      add(rep, e.label, "handshaking_euler", ok ? 0.0 : -1.0, detail);
    }

    const Delta1Comparison c = delta1_comparison(e.body, e.partner, samples, derive_seed(s, 2000));
    add(rep, e.label, "delta1_width_bound", c.gap + kSigmas * c.gap_se + kAbsSlack, "");
    const Delta1Comparison nc = delta1_comparison(e.body, e.nested, samples, derive_seed(s, 3000));
    add(rep, e.label, "delta1_nested_equality", kSigmas * nc.gap_se + kAbsSlack - std::abs(nc.gap), "");
  }
  return rep;
}

}  // namespace polyapprox
