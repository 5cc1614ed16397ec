#include <algorithm>
#include <cmath>
#include <map>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_map>

#include "polyapprox/errors.hpp"
#include "polyapprox/polytope.hpp"

namespace polyapprox {

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (int x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

double point_scale(const Points& pts) {
  Vec lo = pts[0], hi = pts[0];
  for (const auto& p : pts) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return std::max((hi - lo).norm(), 1e-300);
}

// Beneath-beyond over simplicial facets with an adjacency graph.
class HullBuilder {
 public:
  struct SFacet {
    std::vector<int> v;   // n point indices
    std::vector<int> nb;  // nb[k]: facet sharing all vertices except v[k]
    Vec normal;
    double offset = 0.0;
    bool alive = true;
  };

  HullBuilder(const Points& pts, double scale) : P_(pts), n_(static_cast<int>(pts[0].size())), scale_(scale) {
    eps_ = 1e-12 * scale_;
  }

  void build() {
    initial_simplex();
    std::vector<char> used(P_.size(), 0);
    for (int i : simplex_) used[static_cast<std::size_t>(i)] = 1;
    for (std::size_t i = 0; i < P_.size(); ++i)
      if (!used[i]) insert(static_cast<int>(i));
  }

  const std::vector<SFacet>& facets() const { return F_; }
  const Vec& center() const { return center_; }

 private:
  const Points& P_;
  int n_;
  double scale_;
  double eps_;
  std::vector<SFacet> F_;
  std::vector<int> simplex_;
  Vec center_;
  std::vector<int> visit_mark_;
  int visit_epoch_ = 0;

  void orient(SFacet& f) const {
    Points pts;
    pts.reserve(f.v.size());
    for (int i : f.v) pts.push_back(P_[static_cast<std::size_t>(i)]);
    f.normal = hyperplane_normal(pts);
    f.offset = f.normal.dot(pts[0]);
    if (f.normal.dot(center_) > f.offset) {
      f.normal = -f.normal;
      f.offset = -f.offset;
    }
  }

  void initial_simplex() {
    const std::size_t m = P_.size();
    std::size_t i0 = 0;
    for (std::size_t i = 1; i < m; ++i)
      if (lex_less(P_[i], P_[i0])) i0 = i;
    simplex_.push_back(static_cast<int>(i0));
    Mat basis(n_, 0);
    const double deg_tol = 1e-10 * scale_;
    for (int k = 1; k <= n_; ++k) {
      double best = -1.0;
      std::size_t arg = 0;
      for (std::size_t i = 0; i < m; ++i) {
        Vec d = P_[i] - P_[i0];
        if (basis.cols() > 0) d -= basis * (basis.transpose() * d);
        const double dist = d.norm();
        if (dist > best) {
          best = dist;
          arg = i;
        }
      }
      if (best <= deg_tol) fail(ErrorCode::DegenerateInput, "points are not full-dimensional");
      Vec d = P_[arg] - P_[i0];
      if (basis.cols() > 0) d -= basis * (basis.transpose() * d);
      if (basis.cols() > 0) d -= basis * (basis.transpose() * d);
      basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
      basis.col(basis.cols() - 1) = d.normalized();
      simplex_.push_back(static_cast<int>(arg));
    }
    center_ = Vec::Zero(n_);
    for (int i : simplex_) center_ += P_[static_cast<std::size_t>(i)];
    center_ /= static_cast<double>(n_ + 1);

    // Facet k omits simplex vertex k; its neighbour opposite simplex vertex m is facet m.
    for (int k = 0; k <= n_; ++k) {
      SFacet f;
      std::vector<int> owner;
      for (int m2 = 0; m2 <= n_; ++m2)
        if (m2 != k) {
          f.v.push_back(simplex_[static_cast<std::size_t>(m2)]);
          owner.push_back(m2);
        }
      for (int m2 : owner) f.nb.push_back(m2);
      orient(f);
      F_.push_back(std::move(f));
    }
  }

  void insert(int pi) {
    const Vec& p = P_[static_cast<std::size_t>(pi)];
    int start = -1;
    double best = eps_;
    for (std::size_t f = 0; f < F_.size(); ++f) {
      if (!F_[f].alive) continue;
      const double d = F_[f].normal.dot(p) - F_[f].offset;
      if (d > best) {
        best = d;
        start = static_cast<int>(f);
      }
    }
    if (start < 0) return;

    ++visit_epoch_;
    visit_mark_.resize(F_.size(), 0);
    std::vector<int> visible{start};
    visit_mark_[static_cast<std::size_t>(start)] = visit_epoch_;
    std::vector<std::pair<int, int>> horizon;  // (visible facet, slot)
    for (std::size_t q = 0; q < visible.size(); ++q) {
      const int f = visible[q];
      for (int k = 0; k < n_; ++k) {
        const int g = F_[static_cast<std::size_t>(f)].nb[static_cast<std::size_t>(k)];
        const auto& G = F_[static_cast<std::size_t>(g)];
        if (visit_mark_[static_cast<std::size_t>(g)] == visit_epoch_) continue;
        const double d = G.normal.dot(p) - G.offset;
        if (d > eps_) {
          visit_mark_[static_cast<std::size_t>(g)] = visit_epoch_;
          visible.push_back(g);
        }
      }
    }
    for (int f : visible) {
      for (int k = 0; k < n_; ++k) {
        const int g = F_[static_cast<std::size_t>(f)].nb[static_cast<std::size_t>(k)];
        if (visit_mark_[static_cast<std::size_t>(g)] != visit_epoch_) horizon.emplace_back(f, k);
      }
    }

    std::unordered_map<std::vector<int>, std::pair<int, int>, VecHash> open;
    open.reserve(horizon.size() * static_cast<std::size_t>(n_));
    for (const auto& [f, k] : horizon) {
      SFacet nf;
      const auto& old = F_[static_cast<std::size_t>(f)];
      for (int s = 0; s < n_; ++s)
        if (s != k) nf.v.push_back(old.v[static_cast<std::size_t>(s)]);
      nf.v.push_back(pi);
      nf.nb.assign(static_cast<std::size_t>(n_), -1);
      const int g = old.nb[static_cast<std::size_t>(k)];
      nf.nb[static_cast<std::size_t>(n_ - 1)] = g;
      orient(nf);
      const int id = static_cast<int>(F_.size());
      auto& G = F_[static_cast<std::size_t>(g)];
      for (int s = 0; s < n_; ++s)
        if (G.nb[static_cast<std::size_t>(s)] == f) G.nb[static_cast<std::size_t>(s)] = id;
      for (int s = 0; s < n_ - 1; ++s) {
        std::vector<int> key;
        key.reserve(static_cast<std::size_t>(n_ - 1));
        for (int t = 0; t < n_; ++t)
          if (t != s) key.push_back(nf.v[static_cast<std::size_t>(t)]);
        std::sort(key.begin(), key.end());
        auto it = open.find(key);
        if (it == open.end()) {
          open.emplace(std::move(key), std::make_pair(id, s));
        } else {
          const auto [other, slot] = it->second;
          nf.nb[static_cast<std::size_t>(s)] = other;
          F_[static_cast<std::size_t>(other)].nb[static_cast<std::size_t>(slot)] = id;
          open.erase(it);
        }
      }
      F_.push_back(std::move(nf));
    }
    for (int f : visible) F_[static_cast<std::size_t>(f)].alive = false;
  }
};

double simplex_measure(const Points& pts) {
  // (k)-volume of the simplex spanned by k+1 points.
  const Eigen::Index k = static_cast<Eigen::Index>(pts.size()) - 1;
  Mat d(pts[0].size(), k);
  for (Eigen::Index i = 0; i < k; ++i) d.col(i) = pts[static_cast<std::size_t>(i + 1)] - pts[0];
  const double g = (d.transpose() * d).determinant();
  return std::sqrt(std::max(g, 0.0)) / std::tgamma(static_cast<double>(k) + 1.0);
}

}  // namespace

class PolytopeAssembler {
 public:
  // Assemble from extreme vertices (any order), merged facet groups and a boundary triangulation.
  static Polytope assemble(int n, const Points& extreme, std::vector<Facet> facets, Points tri_points,
                           std::vector<std::vector<int>> tri, double scale) {
    Polytope P;
    P.n_ = n;
    std::vector<int> order(extreme.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return lex_less(extreme[static_cast<std::size_t>(a)], extreme[static_cast<std::size_t>(b)]);
    });
    std::vector<int> remap(extreme.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      remap[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
      P.vertices_.push_back(extreme[static_cast<std::size_t>(order[i])]);
    }
    for (auto& f : facets) {
      for (int& v : f.vertices) v = remap[static_cast<std::size_t>(v)];
      std::sort(f.vertices.begin(), f.vertices.end());
    }
    std::sort(facets.begin(), facets.end(), [](const Facet& a, const Facet& b) { return a.vertices < b.vertices; });
    P.facets_ = std::move(facets);
    P.tri_points_ = std::move(tri_points);
    P.tri_simplices_ = std::move(tri);
    P.interior_ = Vec::Zero(n);
    for (const auto& v : P.vertices_) P.interior_ += v;
    P.interior_ /= static_cast<double>(P.vertices_.size());
    P.simplicial_ = std::all_of(P.facets_.begin(), P.facets_.end(),
                                [&](const Facet& f) { return static_cast<int>(f.vertices.size()) == n; });
    build_lattice(P, scale);
    return P;
  }

 private:
  static void build_lattice(Polytope& P, double scale) {
    const int n = P.n_;
    P.faces_.assign(static_cast<std::size_t>(n), {});
    auto& top = P.faces_[static_cast<std::size_t>(n - 1)];
    for (const auto& f : P.facets_) top.push_back(f.vertices);
    std::vector<std::vector<int>> verts;
    for (std::size_t i = 0; i < P.vertices_.size(); ++i) verts.push_back({static_cast<int>(i)});
    const double tol = 1e-9 * scale;

    for (int k = n - 2; k >= 1; --k) {
      const auto& upper = P.faces_[static_cast<std::size_t>(k + 1)];
      std::vector<std::vector<int>> incident(P.vertices_.size());
      for (std::size_t a = 0; a < upper.size(); ++a)
        for (int v : upper[a]) incident[static_cast<std::size_t>(v)].push_back(static_cast<int>(a));
      std::map<std::vector<int>, std::pair<int, int>> found;
      std::vector<int> count(upper.size(), 0);
      std::vector<int> touched;
      for (std::size_t a = 0; a < upper.size(); ++a) {
        touched.clear();
        for (int v : upper[a])
          for (int b : incident[static_cast<std::size_t>(v)])
            if (b > static_cast<int>(a)) {
              if (count[static_cast<std::size_t>(b)]++ == 0) touched.push_back(b);
            }
        for (int b : touched) {
          const int c = count[static_cast<std::size_t>(b)];
          count[static_cast<std::size_t>(b)] = 0;
          if (c < k + 1) continue;
          std::vector<int> inter;
          std::set_intersection(upper[a].begin(), upper[a].end(), upper[static_cast<std::size_t>(b)].begin(),
                                upper[static_cast<std::size_t>(b)].end(), std::back_inserter(inter));
          bool ok = true;
          if (!(static_cast<int>(inter.size()) == k + 1 && k <= 2)) {
            Points pts;
            for (int v : inter) pts.push_back(P.vertices_[static_cast<std::size_t>(v)]);
            ok = affine_rank(pts, tol) == k;
          }
          if (ok) found.emplace(std::move(inter), std::make_pair(static_cast<int>(a), b));
        }
      }
      auto& level = P.faces_[static_cast<std::size_t>(k)];
      for (auto& [face, pair] : found) {
        level.push_back(face);
        if (k == n - 2) P.ridges_.push_back({pair.first, pair.second, face});
      }
    }
    P.faces_[0] = verts;
    if (n == 2) {
      // Ridges of a polygon are its vertices.
      std::vector<std::vector<int>> inc(P.vertices_.size());
      for (std::size_t f = 0; f < P.facets_.size(); ++f)
        for (int v : P.facets_[f].vertices) inc[static_cast<std::size_t>(v)].push_back(static_cast<int>(f));
      for (std::size_t v = 0; v < inc.size(); ++v)
        if (inc[v].size() == 2) P.ridges_.push_back({inc[v][0], inc[v][1], {static_cast<int>(v)}});
    }
    P.f_vector_.clear();
    for (int k = 0; k < n; ++k) P.f_vector_.push_back(P.faces_[static_cast<std::size_t>(k)].size());
  }
};

namespace {

double cross2(const Vec& o, const Vec& a, const Vec& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

Polytope hull_2d(const Points& pts, double scale) {
  std::vector<int> idx(pts.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return lex_less(pts[static_cast<std::size_t>(a)], pts[static_cast<std::size_t>(b)]);
  });
  const double tol = 1e-12 * scale * scale;
  std::vector<int> h(2 * idx.size() + 1);
  std::size_t k = 0;
  for (int i : idx) {
    while (k >= 2 && cross2(pts[static_cast<std::size_t>(h[k - 2])], pts[static_cast<std::size_t>(h[k - 1])],
                            pts[static_cast<std::size_t>(i)]) <= tol)
      --k;
    h[k++] = i;
  }
  for (std::size_t t = idx.size() - 1, lower = k + 1; t-- > 0;) {
    const int i = idx[t];
    while (k >= lower && cross2(pts[static_cast<std::size_t>(h[k - 2])], pts[static_cast<std::size_t>(h[k - 1])],
                                pts[static_cast<std::size_t>(i)]) <= tol)
      --k;
    h[k++] = i;
  }
  h.resize(k - 1);
  if (h.size() < 3) fail(ErrorCode::DegenerateInput, "points are not full-dimensional");
  Points ext;
  for (int i : h) ext.push_back(pts[static_cast<std::size_t>(i)]);
  double area2 = 0.0;
  for (std::size_t i = 0; i < ext.size(); ++i) {
    const Vec& a = ext[i];
    const Vec& b = ext[(i + 1) % ext.size()];
    area2 += a[0] * b[1] - a[1] * b[0];
  }
  if (area2 <= 1e-10 * scale * scale) fail(ErrorCode::DegenerateInput, "points are not full-dimensional");
  std::vector<Facet> facets;
  std::vector<std::vector<int>> tri;
  for (std::size_t i = 0; i < ext.size(); ++i) {
    const Vec& a = ext[i];
    const Vec& b = ext[(i + 1) % ext.size()];
    Vec nrm(2);
    nrm << b[1] - a[1], a[0] - b[0];
    nrm.normalize();
    Facet f;
    f.normal = nrm;
    f.offset = nrm.dot(a);
    f.vertices = {static_cast<int>(i), static_cast<int>((i + 1) % ext.size())};
    facets.push_back(std::move(f));
    tri.push_back({static_cast<int>(i), static_cast<int>((i + 1) % ext.size())});
  }
  return PolytopeAssembler::assemble(2, ext, std::move(facets), ext, std::move(tri), scale);
}

}  // namespace

Polytope convex_hull(const Points& pts) {
  if (pts.empty()) fail(ErrorCode::DegenerateInput, "no points");
  const int n = static_cast<int>(pts[0].size());
  if (n < 2 || n > kMaxHullDim)
    fail(ErrorCode::UnsupportedDimension, "hull dimension must be in [2, 8], got " + std::to_string(n));
  for (const auto& p : pts) {
    if (p.size() != n) fail(ErrorCode::DegenerateInput, "mixed point dimensions");
    if (!p.allFinite()) fail(ErrorCode::DegenerateInput, "non-finite coordinate");
  }
  if (static_cast<int>(pts.size()) < n + 1) fail(ErrorCode::DegenerateInput, "need at least n+1 points");
  const double scale = point_scale(pts);
  if (n == 2) return hull_2d(pts, scale);

  HullBuilder hb(pts, scale);
  hb.build();
  const auto& sf = hb.facets();
  std::vector<int> alive;
  for (std::size_t i = 0; i < sf.size(); ++i)
    if (sf[i].alive) alive.push_back(static_cast<int>(i));

  // Merge coplanar neighbours.
  std::vector<int> parent(sf.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  const double merge_tol = 1e-9 * scale;
  for (int f : alive) {
    const auto& F = sf[static_cast<std::size_t>(f)];
    for (int g : F.nb) {
      if (g < f) continue;
      const auto& G = sf[static_cast<std::size_t>(g)];
      if (F.normal.dot(G.normal) <= 0.0) continue;
      bool coplanar = true;
      for (int v : G.v)
        if (std::abs(F.normal.dot(pts[static_cast<std::size_t>(v)]) - F.offset) > merge_tol) {
          coplanar = false;
          break;
        }
      if (coplanar) parent[static_cast<std::size_t>(find(f))] = find(g);
    }
  }
  std::map<int, std::vector<int>> groups;
  for (int f : alive) groups[find(f)].push_back(f);

  struct Group {
    Vec normal;
    double offset;
    std::vector<int> pts;
  };
  std::vector<Group> merged;
  std::vector<std::vector<int>> point_groups(pts.size());
  for (auto& [root, members] : groups) {
    Vec nrm = Vec::Zero(n);
    std::vector<int> ids;
    for (int f : members) {
      const auto& F = sf[static_cast<std::size_t>(f)];
      Points s;
      for (int v : F.v) s.push_back(pts[static_cast<std::size_t>(v)]);
      nrm += simplex_measure(s) * F.normal;
      ids.insert(ids.end(), F.v.begin(), F.v.end());
    }
    if (nrm.norm() == 0.0) nrm = sf[static_cast<std::size_t>(members[0])].normal;
    nrm.normalize();
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    double off = -std::numeric_limits<double>::infinity();
    for (int v : ids) off = std::max(off, nrm.dot(pts[static_cast<std::size_t>(v)]));
    const int gid = static_cast<int>(merged.size());
    for (int v : ids) point_groups[static_cast<std::size_t>(v)].push_back(gid);
    merged.push_back({nrm, off, std::move(ids)});
  }

  // A hull point is a vertex iff the normals of its facets span R^n.
  std::vector<int> ext_index(pts.size(), -1);
  Points extreme;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& gs = point_groups[i];
    if (static_cast<int>(gs.size()) < n) continue;
    Mat N(static_cast<Eigen::Index>(gs.size()), n);
    for (std::size_t r = 0; r < gs.size(); ++r)
      N.row(static_cast<Eigen::Index>(r)) = merged[static_cast<std::size_t>(gs[r])].normal.transpose();
    Eigen::JacobiSVD<Mat> svd(N);
    if (svd.singularValues()[n - 1] > 1e-9) {
      ext_index[i] = static_cast<int>(extreme.size());
      extreme.push_back(pts[i]);
    }
  }
  std::vector<Facet> facets;
  for (const auto& g : merged) {
    Facet f;
    f.normal = g.normal;
    f.offset = g.offset;
    for (int v : g.pts)
      if (ext_index[static_cast<std::size_t>(v)] >= 0) f.vertices.push_back(ext_index[static_cast<std::size_t>(v)]);
    facets.push_back(std::move(f));
  }

  // Boundary triangulation over the points it references.
  std::vector<int> tri_index(pts.size(), -1);
  Points tri_points;
  std::vector<std::vector<int>> tri;
  for (int f : alive) {
    std::vector<int> s;
    for (int v : sf[static_cast<std::size_t>(f)].v) {
      auto& ti = tri_index[static_cast<std::size_t>(v)];
      if (ti < 0) {
        ti = static_cast<int>(tri_points.size());
        tri_points.push_back(pts[static_cast<std::size_t>(v)]);
      }
      s.push_back(ti);
    }
    tri.push_back(std::move(s));
  }
  return PolytopeAssembler::assemble(n, extreme, std::move(facets), std::move(tri_points), std::move(tri), scale);
}

}  // namespace polyapprox
