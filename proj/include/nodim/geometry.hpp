#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nodim/vec.hpp"

namespace nodim {

// Finite point set with eagerly cached centroid and diameter. Validation is
// strict: nonempty, uniform dimension, all coordinates finite.
class PointSet {
 public:
  explicit PointSet(std::vector<Point> pts);

  const std::vector<Point>& points() const { return pts_; }
  const Point& operator[](std::size_t i) const { return pts_[i]; }
  std::size_t size() const { return pts_.size(); }
  int dimension() const { return dim_; }
  const Point& centroid() const { return centroid_; }
  double diameter() const { return diameter_; }

 private:
  std::vector<Point> pts_;
  int dim_ = 0;
  Point centroid_;
  double diameter_ = 0.0;
};

struct Ball {
  Point center;
  double radius = 0.0;
};

// Closed halfspace { x : outer_normal . x <= offset }, outer_normal unit.
struct Halfspace {
  Point outer_normal;
  double offset = 0.0;

  bool contains(const Point& x, double tol = 0.0) const {
    return dot(outer_normal, x) <= offset + tol;
  }
};

enum class BodyKind { Hull, BallBody, HalfspaceBody };

// Tagged union over the convex body shapes the library manipulates.
// Hull bodies own their generating points.
class ConvexBody {
 public:
  static ConvexBody hull(std::vector<Point> pts);
  static ConvexBody ball(Point center, double radius);
  static ConvexBody halfspace(Point outer_normal, double offset);

  BodyKind kind() const { return kind_; }
  const PointSet& hull_points() const;
  const Ball& as_ball() const;
  const Halfspace& as_halfspace() const;
  int dimension() const { return dim_; }

 private:
  ConvexBody() = default;
  BodyKind kind_ = BodyKind::Hull;
  int dim_ = 0;
  std::optional<PointSet> hull_;
  std::optional<Ball> ball_;
  std::optional<Halfspace> halfspace_;
};

struct MinNormResult {
  Point nearest;                  // argmin |x| over conv(V) (shifted by caller)
  double distance = 0.0;          // |nearest|
  std::vector<double> coefficients;  // convex combination over the input points
  int iterations = 0;
  double gap = 0.0;               // x.x - min_i x.v_i at exit
};

class MinNormError : public std::runtime_error {
 public:
  MinNormError(const std::string& what, int iterations, double gap)
      : std::runtime_error(what), iterations(iterations), gap(gap) {}
  int iterations;
  double gap;
};

// Raised when the alternating-projection emptiness test can neither certify
// a common point nor confident emptiness.
class UndecidedError : public std::runtime_error {
 public:
  UndecidedError(const std::string& what, double residual, int sweeps)
      : std::runtime_error(what), residual(residual), sweeps(sweeps) {}
  double residual;
  int sweeps;
};

// Wolfe's min-norm-point over conv(points). Exact-arithmetic-free but
// robust: ridge-regularised affine solves, lowest-index tie breaking.
MinNormResult min_norm_point(const std::vector<Point>& points, double tol = 1e-9,
                             int max_iterations = 10000);

// min-norm over conv(points) - origin, i.e. the nearest point of the hull
// to `origin`, returned in original coordinates.
MinNormResult nearest_hull_point(const std::vector<Point>& points, const Point& origin,
                                 double tol = 1e-9, int max_iterations = 10000);

Point project_onto_body(const ConvexBody& body, const Point& x, double tol = 1e-9);

// Exact Euclidean projection onto the intersection of <= 12 halfspaces,
// by enumerating active-face subsets (KKT with nonnegative multipliers).
// Returns nullopt when the polyhedron is empty.
std::optional<Point> polyhedron_project(const std::vector<Halfspace>& hs, const Point& x);

struct IntersectionDistance {
  bool empty = false;        // certified empty intersection
  double distance = 0.0;     // d(q, intersection) when nonempty
  Point witness;             // achieving point when nonempty
};

// Distance from q to the intersection of `bodies`. Uses the exact
// halfspace-(+ball centred at q) path when possible, otherwise Dykstra's
// alternating projections. Throws UndecidedError when it cannot commit.
IntersectionDistance distance_to_intersection(const std::vector<ConvexBody>& bodies,
                                              const Point& q, double tol = 1e-7);

struct MinimaxConfig {
  int restarts = 20;
  int iterations = 5000;
  double tol = 1e-7;
  std::uint64_t seed = 1;
};

struct MinimaxResult {
  Point center;
  double radius = 0.0;   // max_i d(center, body_i)
  int evaluations = 0;
};

// min over q of max_i d(q, body_i); Polyak-step subgradient descent with
// multiple deterministic + random starts.
MinimaxResult minimax_center(const std::vector<ConvexBody>& bodies, const MinimaxConfig& cfg);

// Smallest enclosing ball of a finite point set (subgradient polish on top
// of the exact two/three-point cases in low cardinality).
Ball min_enclosing_ball(const std::vector<Point>& pts, double tol = 1e-9);

// Vertices of a regular simplex with n vertices and the given edge length,
// embedded in R^n (scaled standard basis, then centred at the origin).
std::vector<Point> regular_simplex(int n, double edge);

// Projection of x onto the affine hull of pts (least squares over offsets).
Point project_affine_hull(const std::vector<Point>& pts, const Point& x);

}  // namespace nodim
