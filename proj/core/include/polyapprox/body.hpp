#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "polyapprox/linalg.hpp"
#include "polyapprox/polytope.hpp"

namespace polyapprox {

enum class BodyKind { Ball, Ellipsoid, Cap, Polytope, Intersection };

std::string_view to_string(BodyKind kind) noexcept;

// Convex body exposed through membership, support, radial and nearest-point queries.
// Immutable after construction.
class ConvexBody {
 public:
  explicit ConvexBody(int n) : n_(n) {}
  virtual ~ConvexBody() = default;

  int dim() const { return n_; }
  virtual BodyKind kind() const = 0;
  virtual std::string describe() const = 0;

  virtual bool contains(const Vec& x, double tol = 1e-12) const = 0;
  virtual double support(const Vec& u) const = 0;
  virtual Vec nearest_point(const Vec& x) const = 0;
  // Largest t >= 0 with c + t u in the body, for c inside the body.
  virtual double radial_from(const Vec& c, const Vec& u) const = 0;
  virtual Vec interior_point() const = 0;
  virtual bool origin_interior() const = 0;

  // rho_K(u); requires the origin in the interior.
  double radial(const Vec& u) const;
  double dist(const Vec& x) const;
  double rdist(const Vec& x) const;

  virtual Vec bbox_lo() const;
  virtual Vec bbox_hi() const;
  // Max width along the coordinate axes.
  double axis_diameter() const;

 private:
  int n_;
};

using BodyPtr = std::shared_ptr<const ConvexBody>;

class Ball final : public ConvexBody {
 public:
  Ball(Vec center, double radius);
  BodyKind kind() const override { return BodyKind::Ball; }
  std::string describe() const override;
  bool contains(const Vec& x, double tol = 1e-12) const override;
  double support(const Vec& u) const override;
  Vec nearest_point(const Vec& x) const override;
  double radial_from(const Vec& c, const Vec& u) const override;
  Vec interior_point() const override { return center_; }
  bool origin_interior() const override;

  const Vec& center() const { return center_; }
  double radius() const { return r_; }

 private:
  Vec center_;
  double r_;
};

// Centered, axis-aligned.
class Ellipsoid final : public ConvexBody {
 public:
  explicit Ellipsoid(Vec semi_axes);
  BodyKind kind() const override { return BodyKind::Ellipsoid; }
  std::string describe() const override;
  bool contains(const Vec& x, double tol = 1e-12) const override;
  double support(const Vec& u) const override;
  Vec nearest_point(const Vec& x) const override;
  double radial_from(const Vec& c, const Vec& u) const override;
  Vec interior_point() const override { return Vec::Zero(dim()); }
  bool origin_interior() const override { return true; }

  const Vec& semi_axes() const { return a_; }
  // Outward unit normal at a boundary point.
  Vec normal_at(const Vec& x) const;
  // Principal curvatures at a boundary point (n-1 values, ascending).
  Vec principal_curvatures(const Vec& x) const;

 private:
  Vec a_;
};

// Unit ball cut by {x : axis . x >= eps}.
class Cap final : public ConvexBody {
 public:
  Cap(int n, double eps, Vec axis);
  BodyKind kind() const override { return BodyKind::Cap; }
  std::string describe() const override;
  bool contains(const Vec& x, double tol = 1e-12) const override;
  double support(const Vec& u) const override;
  Vec nearest_point(const Vec& x) const override;
  double radial_from(const Vec& c, const Vec& u) const override;
  Vec interior_point() const override { return 0.5 * (1.0 + eps_) * axis_; }
  bool origin_interior() const override { return false; }

  double eps() const { return eps_; }
  const Vec& axis() const { return axis_; }

 private:
  double eps_;
  Vec axis_;
};

class PolytopeBody final : public ConvexBody {
 public:
  explicit PolytopeBody(Polytope p);
  BodyKind kind() const override { return BodyKind::Polytope; }
  std::string describe() const override;
  bool contains(const Vec& x, double tol = 1e-12) const override;
  double support(const Vec& u) const override;
  Vec nearest_point(const Vec& x) const override;
  double radial_from(const Vec& c, const Vec& u) const override;
  Vec interior_point() const override { return poly_.interior_point(); }
  bool origin_interior() const override { return origin_interior_; }
  Vec bbox_lo() const override { return poly_.bbox_lo(); }
  Vec bbox_hi() const override { return poly_.bbox_hi(); }

  const Polytope& polytope() const { return poly_; }

 private:
  Polytope poly_;
  bool origin_interior_;
  double r_in_ = 0.0;   // ball about the origin contained in P (when origin interior)
  double r_out_ = 0.0;  // ball about the origin containing P
};

// A ball or ellipsoid intersected with a polytope (nonempty interior).
class IntersectionBody final : public ConvexBody {
 public:
  IntersectionBody(BodyPtr base, Polytope p);
  BodyKind kind() const override { return BodyKind::Intersection; }
  std::string describe() const override;
  bool contains(const Vec& x, double tol = 1e-12) const override;
  double support(const Vec& u) const override;
  Vec nearest_point(const Vec& x) const override;
  double radial_from(const Vec& c, const Vec& u) const override;
  Vec interior_point() const override { return interior_; }
  bool origin_interior() const override;

  const BodyPtr& base() const { return base_; }
  const Polytope& polytope() const { return poly_; }

 private:
  struct FaceFrame {
    Vec origin;
    Mat basis;  // n x k orthonormal
  };
  BodyPtr base_;
  Polytope poly_;
  // Ball-normalized frame: base = center + scale * D_n (ball) or diag(axes) D_n (ellipsoid).
  Vec center_;
  Vec axes_;
  Polytope unit_poly_;  // polytope in the frame where the base is the unit ball
  std::vector<FaceFrame> frames_;
  struct EllipsoidSlice {
    Vec origin;
    Mat basis;     // n x k orthonormal, spans the face's affine hull
    Vec t0;        // slice centre in basis coordinates
    Mat rotation;  // principal axes of the slice
    Vec semi;
    bool whole_space = false;
    bool nonempty = false;  // the slice meets the ellipsoid interior
  };
  std::vector<EllipsoidSlice> slices_;  // one per face of P and the whole space; ellipsoid base only
  Vec interior_;

  Vec to_unit(const Vec& x) const;
  Vec from_unit(const Vec& y) const;
};

BodyPtr make_ball(int n, double r = 1.0);
BodyPtr make_ball(Vec center, double r);
BodyPtr make_ellipsoid(Vec semi_axes);
// L_{sign*eps} = D_n intersected with {sign * x_n >= eps}.
BodyPtr make_cap(int n, double eps, int sign);
BodyPtr make_polytope_body(Polytope p);
BodyPtr scaled(const BodyPtr& k, double lambda);

// Projection onto an intersection of convex sets by Dykstra's algorithm.
using Projector = std::function<Vec(const Vec&)>;
Vec dykstra(const Vec& x, const std::vector<Projector>& sets, int max_sweeps = 10000, double tol = 1e-10);

// Nearest point of P by face enumeration (exact, exponential in face count; used as an oracle).
Vec polytope_nearest_point_exact(const Polytope& p, const Vec& x);

}  // namespace polyapprox
