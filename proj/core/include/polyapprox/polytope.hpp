#pragma once

#include <cstddef>
#include <vector>

#include "polyapprox/linalg.hpp"

namespace polyapprox {

struct Halfspace {
  Vec normal;  // outward, unit length after normalization
  double offset = 0.0;
};

struct Facet {
  Vec normal;
  double offset = 0.0;
  std::vector<int> vertices;  // indices into Polytope::vertices(), sorted
};

// An (n-2)-face together with the two facets meeting there.
struct Ridge {
  int facet_a = -1;
  int facet_b = -1;
  std::vector<int> vertices;
};

inline constexpr int kMaxHullDim = 8;

class Polytope {
 public:
  Polytope() = default;

  int dim() const { return n_; }
  bool empty() const { return vertices_.empty(); }

  const Points& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }
  // f_0 .. f_{n-1}
  const std::vector<std::size_t>& f_vector() const { return f_vector_; }
  const Vec& interior_point() const { return interior_; }
  bool simplicial() const { return simplicial_; }

  // Vertex sets of all k-faces, 0 <= k <= n-1.
  const std::vector<std::vector<int>>& faces(int k) const { return faces_[static_cast<std::size_t>(k)]; }
  const std::vector<Ridge>& ridges() const { return ridges_; }

  // Boundary triangulation into (n-1)-simplices; may use non-extreme coplanar points.
  const Points& triangulation_points() const { return tri_points_; }
  const std::vector<std::vector<int>>& boundary_simplices() const { return tri_simplices_; }

  Mat facet_matrix() const;
  Vec facet_offsets() const;
  std::vector<Halfspace> halfspaces() const;

  bool contains(const Vec& x, double tol = 1e-9) const;
  double max_violation(const Vec& x) const;

  double volume() const;
  double surface_area() const;
  double support(const Vec& u) const;
  Vec bbox_lo() const;
  Vec bbox_hi() const;
  double scale() const;  // max vertex distance from the interior point

  // Vertices of a 2D polygon in counter-clockwise order.
  Points ccw_polygon() const;

  Polytope transformed(const Mat& linear, const Vec& shift) const;
  Polytope scaled(double s) const;
  Polytope translated(const Vec& t) const;

  friend Polytope convex_hull(const Points& pts);

 private:
  int n_ = 0;
  Points vertices_;
  std::vector<Facet> facets_;
  std::vector<std::size_t> f_vector_;
  std::vector<std::vector<std::vector<int>>> faces_;
  std::vector<Ridge> ridges_;
  Vec interior_;
  bool simplicial_ = false;
  Points tri_points_;
  std::vector<std::vector<int>> tri_simplices_;

  friend class PolytopeAssembler;
};

// Hull of a finite point set (2 <= n <= 8).
Polytope convex_hull(const Points& pts);

// (intersection of halfspaces) intersected with the bounding polytope, computed by polarity.
Polytope halfspace_intersection(const std::vector<Halfspace>& halfspaces, const Polytope& bounding_box);

Polytope intersect(const Polytope& p, const Polytope& q);  // empty() result when the intersection has no interior

Polytope make_box(const Vec& lo, const Vec& hi);
Polytope make_cube(int n, double lo, double hi);
Polytope make_simplex(int n);  // conv{0, e_1, ..., e_n}
Polytope make_cross_polytope(int n, double r);
// Vertices at angles phase + 2 pi k / N.
Polytope make_regular_polygon(int N, double circumradius, double phase = 0.0);
// Tangent lines to the circle of radius r at angles phase + 2 pi k / N.
Polytope make_circumscribed_polygon(int N, double r, double phase = 0.0);
// Equilateral triangle with vertices at 90, 210, 330 degrees and circumradius 1 + h.
Polytope make_triangle_T(double h);
// Regular simplex inscribed in the unit sphere.
Polytope make_regular_simplex(int n);

}  // namespace polyapprox
