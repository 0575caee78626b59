#pragma once

#include "tukey/rational.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tukey {

using Point = Vec;

/// Nonzero vector, compared up to positive scaling. No square roots are ever
/// taken, so a Direction is not a unit vector.
class Direction {
 public:
  explicit Direction(Vec v);

  const Vec& vec() const { return v_; }
  Eigen::Index dim() const { return v_.size(); }

  /// Divided by the absolute value of its first nonzero coordinate.
  Vec canonical() const;

  Direction operator-() const { return Direction(Vec(-v_)); }
  bool operator==(const Direction& other) const;

 private:
  Vec v_;
};

/// Closed halfspace {x : normal . x >= offset}; the normal points inward.
struct Halfspace {
  Direction normal;
  Rational offset;

  Rational evaluate(const Point& x) const { return normal.vec().dot(x) - offset; }
  /// Same halfspace with the normal in canonical scaling.
  Halfspace canonical() const;
  bool operator==(const Halfspace& other) const;
};

enum class Side { Interior, Boundary, Exterior };

std::string to_string(Side s);

/// Ordered multiset of points in R^d (duplicates allowed).
class DataSet {
 public:
  DataSet() = default;
  explicit DataSet(std::vector<Point> points);

  std::size_t size() const { return points_.size(); }
  int dim() const { return dim_; }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<Point>& points() const { return points_; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  /// Binary snap precision the points were produced with, if any.
  std::optional<int> snap_bits;

 private:
  std::vector<Point> points_;
  int dim_ = 0;
};

/// Convex region carrying both representations. `vertices` are exactly the
/// extreme points; `halfspaces` is the defining list. An empty polytope has
/// no vertices and affine_dim == -1.
struct Polytope {
  int dim = 0;
  std::vector<Halfspace> halfspaces;
  std::vector<Point> vertices;
  int affine_dim = -1;
  bool unbounded = false;

  bool empty() const { return vertices.empty() && !unbounded; }
  /// Membership against the H-representation (closed).
  bool contains(const Point& x) const;
};

/// Axis-aligned box [lo, hi] known to contain a region; speeds up clipping.
struct Box {
  Point lo;
  Point hi;
};

Box bounding_box(const DataSet& ds);

int affine_dimension(std::span<const Point> points);
inline int affine_dimension(const DataSet& ds) { return affine_dimension(std::span<const Point>(ds.points())); }

/// Throws std::invalid_argument on dimension mismatch.
Side side_of(const Halfspace& h, const Point& x);

/// Exact closed-hull membership via a rational convex-combination system.
bool convex_hull_contains(const DataSet& ds, const Point& x);

/// Facet halfspaces of cov(ds) for a full-dimensional dataset with d <= 3.
std::vector<Halfspace> hull_halfspaces(const DataSet& ds);

/// Exact intersection for d in {1,2,3}. Without a box the intersection is
/// clipped against a box large enough to contain every vertex of the exact
/// arrangement, and `unbounded` is set when a clipped vertex touches it.
/// With a box the caller guarantees the region lies inside it.
Polytope intersect_halfspaces(std::span<const Halfspace> hs, int d, const std::optional<Box>& box = std::nullopt);

enum class BarycenterMode { Uniform, VertexAverage };

/// Uniform barycenter (area/volume weighted) or plain vertex average. For 0-
/// and 1-dimensional regions both modes give the vertex centroid.
Point barycenter(const Polytope& p, BarycenterMode mode = BarycenterMode::Uniform);

/// Exact 2-D angular comparison of vectors around the origin, starting at the
/// positive x axis and turning counter-clockwise. Returns <0, 0, >0.
int compare_angle(const Vec& a, const Vec& b);

}  // namespace tukey
