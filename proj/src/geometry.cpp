#include "tukey/geometry.hpp"

#include "tukey/linalg.hpp"
#include "tukey/lp.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace tukey {

Direction::Direction(Vec v) : v_(std::move(v)) {
  if (v_.size() == 0 || v_.isZero()) throw std::invalid_argument("direction must be a nonzero vector");
}

Vec Direction::canonical() const {
  for (Eigen::Index i = 0; i < v_.size(); ++i) {
    if (v_(i) != 0) return v_ / abs(v_(i));
  }
  return v_;  // unreachable: the constructor rejects zero
}

bool Direction::operator==(const Direction& other) const {
  if (dim() != other.dim()) return false;
  return canonical() == other.canonical();
}

Halfspace Halfspace::canonical() const {
  for (Eigen::Index i = 0; i < normal.dim(); ++i) {
    const Rational s = abs(normal.vec()(i));
    if (s != 0) return Halfspace{Direction(normal.vec() / s), offset / s};
  }
  return *this;
}

bool Halfspace::operator==(const Halfspace& other) const {
  const Halfspace a = canonical(), b = other.canonical();
  return a.normal.vec() == b.normal.vec() && a.offset == b.offset;
}

std::string to_string(Side s) {
  switch (s) {
    case Side::Interior: return "Interior";
    case Side::Boundary: return "Boundary";
    case Side::Exterior: return "Exterior";
  }
  return "?";
}

DataSet::DataSet(std::vector<Point> points) : points_(std::move(points)) {
  if (points_.empty()) throw std::invalid_argument("dataset must contain at least one point");
  dim_ = static_cast<int>(points_.front().size());
  if (dim_ < 1) throw std::invalid_argument("points must have dimension >= 1");
  for (const auto& p : points_) {
    if (p.size() != dim_) throw std::invalid_argument("all points must share one dimension");
  }
}

bool Polytope::contains(const Point& x) const {
  if (empty()) return false;
  return std::all_of(halfspaces.begin(), halfspaces.end(),
                     [&](const Halfspace& h) { return side_of(h, x) != Side::Exterior; });
}

Box bounding_box(const DataSet& ds) {
  Box b{ds[0], ds[0]};
  for (const auto& p : ds) {
    for (Eigen::Index j = 0; j < p.size(); ++j) {
      if (p(j) < b.lo(j)) b.lo(j) = p(j);
      if (p(j) > b.hi(j)) b.hi(j) = p(j);
    }
  }
  return b;
}

int affine_dimension(std::span<const Point> points) {
  if (points.empty()) return -1;
  std::vector<Vec> diffs;
  diffs.reserve(points.size());
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i] != points[0]) diffs.push_back(points[i] - points[0]);
  }
  return rank_of<Rational>(diffs, points[0].size());
}

Side side_of(const Halfspace& h, const Point& x) {
  if (h.normal.dim() != x.size()) throw std::invalid_argument("side_of: dimension mismatch");
  const Rational v = h.evaluate(x);
  if (v > 0) return Side::Interior;
  if (v < 0) return Side::Exterior;
  return Side::Boundary;
}

bool convex_hull_contains(const DataSet& ds, const Point& x) {
  if (x.size() != ds.dim()) throw std::invalid_argument("convex_hull_contains: dimension mismatch");
  const Eigen::Index d = ds.dim();
  const Eigen::Index n = static_cast<Eigen::Index>(ds.size());
  Mat a(d + 1, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    a.col(j).head(d) = ds[static_cast<std::size_t>(j)];
    a(d, j) = 1;
  }
  Vec b(d + 1);
  b.head(d) = x;
  b(d) = 1;
  return nonnegative_solution(a, b).has_value();
}

int compare_angle(const Vec& a, const Vec& b) {
  auto half = [](const Vec& v) { return (v(1) > 0 || (v(1) == 0 && v(0) > 0)) ? 0 : 1; };
  const int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb ? -1 : 1;
  const Rational cr = a(0) * b(1) - a(1) * b(0);
  if (cr > 0) return -1;
  if (cr < 0) return 1;
  return 0;
}

namespace {

std::vector<Point> distinct_points(const DataSet& ds) {
  std::vector<Point> pts(ds.begin(), ds.end());
  auto lex = [](const Point& a, const Point& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      if (a(i) != b(i)) return a(i) < b(i);
    }
    return false;
  };
  std::sort(pts.begin(), pts.end(), lex);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

Rational cross2(const Vec& o, const Vec& a, const Vec& b) {
  return (a(0) - o(0)) * (b(1) - o(1)) - (a(1) - o(1)) * (b(0) - o(0));
}

void push_unique(std::vector<Halfspace>& out, Halfspace h) {
  h = h.canonical();
  if (std::find(out.begin(), out.end(), h) == out.end()) out.push_back(std::move(h));
}

// Lexicographic order on canonical (normal, offset); exact equality of keys
// matches Halfspace equality.
struct CanonicalLess {
  bool operator()(const Halfspace& a, const Halfspace& b) const {
    const Vec& u = a.normal.vec();
    const Vec& v = b.normal.vec();
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      if (u(i) != v(i)) return u(i) < v(i);
    }
    return a.offset < b.offset;
  }
};

}  // namespace

std::vector<Halfspace> hull_halfspaces(const DataSet& ds) {
  const int d = ds.dim();
  if (affine_dimension(ds) != d) throw std::invalid_argument("hull_halfspaces: dataset is not full-dimensional");
  std::vector<Halfspace> out;
  if (d == 1) {
    const Box b = bounding_box(ds);
    out.push_back({Direction(make_vec({1})), b.lo(0)});
    out.push_back({Direction(make_vec({-1})), Rational(-b.hi(0))});
    return out;
  }
  const std::vector<Point> pts = distinct_points(ds);
  if (d == 2) {
    // Andrew's monotone chain on lexicographically sorted points
    std::vector<Point> hull;
    for (int pass = 0; pass < 2; ++pass) {
      const std::size_t start = hull.size();
      for (std::size_t k = 0; k < pts.size(); ++k) {
        const Point& p = pass == 0 ? pts[k] : pts[pts.size() - 1 - k];
        while (hull.size() >= start + 2 && cross2(hull[hull.size() - 2], hull.back(), p) <= 0) hull.pop_back();
        hull.push_back(p);
      }
      hull.pop_back();
    }
    for (std::size_t i = 0; i < hull.size(); ++i) {
      const Point& a = hull[i];
      const Point& b = hull[(i + 1) % hull.size()];
      const Vec e = b - a;
      const Vec inward = make_vec({Rational(-e(1)), e(0)});  // counter-clockwise hull
      push_unique(out, Halfspace{Direction(inward), inward.dot(a)});
    }
    return out;
  }
  if (d == 3) {
    const std::size_t m = pts.size();
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        for (std::size_t k = j + 1; k < m; ++k) {
          const Vec nrm = cross3<Rational>(pts[j] - pts[i], pts[k] - pts[i]);
          if (nrm.isZero()) continue;
          const Rational q = nrm.dot(pts[i]);
          bool pos = false, neg = false;
          for (const auto& p : pts) {
            const Rational v = nrm.dot(p) - q;
            pos = pos || v > 0;
            neg = neg || v < 0;
            if (pos && neg) break;
          }
          if (pos && neg) continue;
          if (pos) push_unique(out, Halfspace{Direction(nrm), q});
          else push_unique(out, Halfspace{Direction(Vec(-nrm)), Rational(-q)});
        }
      }
    }
    return out;
  }
  throw std::invalid_argument("hull_halfspaces: supported for d <= 3");
}

namespace {

struct ClipVertex {
  Point p;
  std::vector<int> tight;  // sorted constraint ids
};

class Clipper {
 public:
  Clipper(int d, const Box& box) : d_(d) {
    for (int j = 0; j < d; ++j) {
      Vec e = Vec::Zero(d);
      e(j) = 1;
      box_ids_.push_back(add_normal(e));
      box_ids_.push_back(add_normal(Vec(-e)));
    }
    for (int mask = 0; mask < (1 << d); ++mask) {
      ClipVertex v{Point(d), {}};
      for (int j = 0; j < d; ++j) {
        const bool upper = (mask >> j) & 1;
        v.p(j) = upper ? box.hi(j) : box.lo(j);
        v.tight.push_back(box_ids_[static_cast<std::size_t>(2 * j + (upper ? 1 : 0))]);
      }
      std::sort(v.tight.begin(), v.tight.end());
      verts_.push_back(std::move(v));
    }
  }

  int add_normal(const Vec& u) {
    normals_.push_back(u);
    return static_cast<int>(normals_.size()) - 1;
  }

  bool is_box_id(int id) const { return std::find(box_ids_.begin(), box_ids_.end(), id) != box_ids_.end(); }

  void clip(const Halfspace& h) {
    if (verts_.empty()) return;
    const int id = add_normal(h.normal.vec());
    std::vector<Rational> s;
    s.reserve(verts_.size());
    bool any_out = false, any_in = false;
    for (const auto& v : verts_) {
      s.push_back(h.evaluate(v.p));
      any_out = any_out || s.back() < 0;
      any_in = any_in || s.back() >= 0;
    }
    if (!any_in) {
      verts_.clear();
      return;
    }
    std::vector<ClipVertex> next;
    for (std::size_t i = 0; i < verts_.size(); ++i) {
      if (s[i] < 0) continue;
      ClipVertex v = verts_[i];
      if (s[i] == 0) v.tight.push_back(id);
      next.push_back(std::move(v));
    }
    if (any_out) {
      for (std::size_t i = 0; i < verts_.size(); ++i) {
        if (s[i] <= 0) continue;
        for (std::size_t j = 0; j < verts_.size(); ++j) {
          if (s[j] >= 0) continue;
          std::vector<int> common;
          std::set_intersection(verts_[i].tight.begin(), verts_[i].tight.end(), verts_[j].tight.begin(),
                                verts_[j].tight.end(), std::back_inserter(common));
          if (!adjacent(common)) continue;
          const Rational t = s[i] / (s[i] - s[j]);
          ClipVertex v{verts_[i].p + t * (verts_[j].p - verts_[i].p), std::move(common)};
          v.tight.push_back(id);
          next.push_back(std::move(v));
        }
      }
    }
    verts_ = std::move(next);
  }

  const std::vector<ClipVertex>& vertices() const { return verts_; }

 private:
  // Two vertices span an edge iff their common active constraints have rank d-1.
  bool adjacent(const std::vector<int>& common) const {
    if (d_ == 1) return common.empty();
    if (d_ == 2) return !common.empty();
    std::vector<Vec> rows;
    for (int c : common) rows.push_back(normals_[static_cast<std::size_t>(c)]);
    return rank_of<Rational>(rows, d_) == d_ - 1;
  }

  int d_;
  std::vector<Vec> normals_;
  std::vector<int> box_ids_;
  std::vector<ClipVertex> verts_;
};

Integer lcm_int(const Integer& a, const Integer& b) { return a / boost::multiprecision::gcd(a, b) * b; }

// Every vertex of every nonempty face system lies in [-B, B]^d (Cramer + Hadamard
// on integer-scaled rows).
Rational coordinate_bound(std::span<const Halfspace> hs, int d) {
  Rational kmax = 1;
  for (const auto& h : hs) {
    Integer den = boost::multiprecision::denominator(h.offset);
    for (int j = 0; j < d; ++j) den = lcm_int(den, boost::multiprecision::denominator(h.normal.vec()(j)));
    Rational k = abs(h.offset) * den;
    for (int j = 0; j < d; ++j) k += abs(h.normal.vec()(j)) * den;
    if (k > kmax) kmax = k;
  }
  Rational b = 1;
  for (int j = 0; j < d; ++j) b *= kmax;
  return b + 1;
}

}  // namespace

Polytope intersect_halfspaces(std::span<const Halfspace> hs, int d, const std::optional<Box>& box) {
  if (d < 1 || d > 3) throw std::invalid_argument("intersect_halfspaces: exact enumeration supports d in {1,2,3}");
  if (hs.empty()) throw std::invalid_argument("intersect_halfspaces: empty halfspace list");
  Polytope out;
  out.dim = d;
  std::set<Halfspace, CanonicalLess> seen;
  for (const auto& h : hs) {
    if (h.normal.dim() != d) throw std::invalid_argument("intersect_halfspaces: dimension mismatch");
    Halfspace c = h.canonical();
    if (seen.insert(c).second) out.halfspaces.push_back(std::move(c));
  }

  Box clip_box;
  if (box) {
    clip_box = *box;
    for (int j = 0; j < d; ++j) {
      clip_box.lo(j) -= 1;
      clip_box.hi(j) += 1;
    }
  } else {
    const Rational b = coordinate_bound(out.halfspaces, d);
    clip_box = Box{Vec::Constant(d, Rational(-b)), Vec::Constant(d, b)};
  }

  Clipper clipper(d, clip_box);
  for (const auto& h : out.halfspaces) clipper.clip(h);

  std::vector<Point> clipped;
  for (const auto& v : clipper.vertices()) {
    clipped.push_back(v.p);
    const bool on_box = std::any_of(v.tight.begin(), v.tight.end(), [&](int id) { return clipper.is_box_id(id); });
    if (on_box && !box) {
      out.unbounded = true;
      continue;
    }
    if (std::find(out.vertices.begin(), out.vertices.end(), v.p) == out.vertices.end()) out.vertices.push_back(v.p);
  }
  // an unbounded region keeps its dimension even without extreme points
  out.affine_dim = clipped.empty() ? -1 : affine_dimension(std::span<const Point>(clipped));
  return out;
}

namespace {

Point vertex_average(const std::vector<Point>& vs) {
  Point c = Point::Zero(vs.front().size());
  for (const auto& v : vs) c += v;
  return c / Rational(static_cast<long>(vs.size()));
}

// Coordinate pair on which a planar vertex set keeps affine dimension 2.
std::pair<int, int> planar_axes(const std::vector<Point>& vs) {
  const int d = static_cast<int>(vs.front().size());
  for (int a = 0; a < d; ++a) {
    for (int b = a + 1; b < d; ++b) {
      std::vector<Point> proj;
      for (const auto& v : vs) proj.push_back(make_vec({v(a), v(b)}));
      if (affine_dimension(std::span<const Point>(proj)) == 2) return {a, b};
    }
  }
  throw std::logic_error("planar_axes: vertex set is not 2-dimensional");
}

// Vertices of a 2-dimensional convex polygon in cyclic order.
std::vector<Point> cyclic_order(std::vector<Point> vs) {
  const auto [a, b] = planar_axes(vs);
  const Point c = vertex_average(vs);
  std::sort(vs.begin(), vs.end(), [&, a = a, b = b](const Point& p, const Point& q) {
    return compare_angle(make_vec({p(a) - c(a), p(b) - c(b)}), make_vec({q(a) - c(a), q(b) - c(b)})) < 0;
  });
  return vs;
}

Rational det3(const Vec& a, const Vec& b, const Vec& c) { return a.dot(cross3<Rational>(b, c)); }

}  // namespace

Point barycenter(const Polytope& p, BarycenterMode mode) {
  if (p.vertices.empty() || p.unbounded) throw std::invalid_argument("barycenter of an empty or unbounded region");
  if (mode == BarycenterMode::VertexAverage || p.affine_dim <= 1) return vertex_average(p.vertices);

  if (p.affine_dim == 2) {
    const std::vector<Point> ring = cyclic_order(p.vertices);
    const auto [a, b] = planar_axes(ring);
    const Point c = vertex_average(ring);
    Rational total = 0;
    Point acc = Point::Zero(p.dim);
    for (std::size_t i = 0; i < ring.size(); ++i) {
      const Point& u = ring[i];
      const Point& v = ring[(i + 1) % ring.size()];
      const Rational area = abs((u(a) - c(a)) * (v(b) - c(b)) - (u(b) - c(b)) * (v(a) - c(a)));
      total += area;
      acc += area * (c + u + v) / Rational(3);
    }
    return acc / total;
  }

  // 3-dimensional: cone over each facet from the vertex centroid
  const Point c = vertex_average(p.vertices);
  Rational total = 0;
  Point acc = Point::Zero(p.dim);
  for (const auto& h : p.halfspaces) {
    std::vector<Point> facet;
    for (const auto& v : p.vertices) {
      if (h.evaluate(v) == 0) facet.push_back(v);
    }
    if (facet.size() < 3 || affine_dimension(std::span<const Point>(facet)) != 2) continue;
    const std::vector<Point> ring = cyclic_order(facet);
    const Point fc = vertex_average(ring);
    for (std::size_t i = 0; i < ring.size(); ++i) {
      const Point& u = ring[i];
      const Point& v = ring[(i + 1) % ring.size()];
      const Rational vol = abs(det3(fc - c, u - c, v - c));
      total += vol;
      acc += vol * (c + fc + u + v) / Rational(4);
    }
  }
  return acc / total;
}

}  // namespace tukey
