#include "tukey/planar.hpp"

#include "tukey/depth.hpp"
#include "tukey/lp.hpp"

#include <optional>
#include <stdexcept>

namespace tukey::planar {

namespace {

using Int = std::int64_t;
using Int128 = __int128;

constexpr Int kMaxScaled = Int(1) << 61;

std::optional<std::vector<Point2<Int>>> scaled_integers(const DataSet& ds) {
  Integer den = 1;
  for (const auto& p : ds) {
    for (int j = 0; j < 2; ++j) {
      const Integer q = boost::multiprecision::denominator(p(j));
      den = den / boost::multiprecision::gcd(den, q) * q;
    }
  }
  std::vector<Point2<Int>> out;
  out.reserve(ds.size());
  const Integer limit = kMaxScaled;
  for (const auto& p : ds) {
    Point2<Int> c{};
    for (int j = 0; j < 2; ++j) {
      const Integer v = boost::multiprecision::numerator(p(j)) * (den / boost::multiprecision::denominator(p(j)));
      if (abs(v) > limit) return std::nullopt;
      c[static_cast<std::size_t>(j)] = v.convert_to<Int>();
    }
    out.push_back(c);
  }
  return out;
}

struct OrientedLine {
  Vec normal;  // inner normal of the left side
  Rational offset;
  LineStat stat;

  // Expelled by the best infinitesimal rotation about one of the extreme
  // locations of the boundary.
  long expel() const { return stat.on - std::min(stat.mult_first, stat.mult_last); }
  bool left_irrotatable(long k) const { return stat.right <= k - 1 && stat.right + expel() >= k; }
  bool right_irrotatable(long k) const { return stat.left <= k - 1 && stat.left + expel() >= k; }
};

long max_projected_depth(const DataSet& ds, int axis) {
  std::vector<Rational> v;
  for (const auto& p : ds) v.push_back(p(axis));
  std::sort(v.begin(), v.end());
  const long n = static_cast<long>(v.size());
  long best = 0;
  for (long i = 0; i < n; ++i) {
    const long le = static_cast<long>(std::upper_bound(v.begin(), v.end(), v[static_cast<std::size_t>(i)]) - v.begin());
    const long ge = n - static_cast<long>(std::lower_bound(v.begin(), v.end(), v[static_cast<std::size_t>(i)]) - v.begin());
    best = std::max(best, std::min(le, ge));
  }
  return best;
}

Point coordinate_median(const DataSet& ds) {
  Point m(2);
  for (int j = 0; j < 2; ++j) {
    std::vector<Rational> v;
    for (const auto& p : ds) v.push_back(p(j));
    std::nth_element(v.begin(), v.begin() + static_cast<long>(v.size() / 2), v.end());
    m(j) = v[v.size() / 2];
  }
  return m;
}

// Halfspace containing D_k that excludes `p`, from a depth witness at p.
Halfspace witness_cut(const DataSet& ds, const Point& p, const DepthWitness& w) {
  const Vec& u = w.direction.vec();
  const Rational up = u.dot(p);
  std::optional<Rational> q;
  for (const auto& x : ds) {
    const Rational v = u.dot(x);
    if (v > up && (!q || v < *q)) q = v;
  }
  return Halfspace{w.direction, *q};
}

}  // namespace

void line_statistics(const DataSet& ds, const std::function<void(const LineStat&)>& emit) {
  if (ds.dim() != 2) throw std::invalid_argument("line_statistics: d must be 2");
  if (auto ints = scaled_integers(ds)) {
    line_statistics<Int, Int128>(std::span<const Point2<Int>>(*ints), emit);
    return;
  }
  std::vector<Point2<Rational>> pts;
  for (const auto& p : ds) pts.push_back({p(0), p(1)});
  line_statistics<Rational, Rational>(std::span<const Point2<Rational>>(pts), emit);
}

Vec left_normal(const DataSet& ds, const LineStat& s) {
  const Vec g = ds[s.j] - ds[s.i];
  return make_vec({Rational(-g(1)), g(0)});
}

long max_depth_count_2d(const DataSet& ds) {
  const Point p0 = coordinate_median(ds);
  long k_lo = std::max(1L, tukey_depth(p0, ds).witness.count_le);
  const long k_hi = std::min(max_projected_depth(ds, 0), max_projected_depth(ds, 1));
  if (k_lo >= k_hi) return k_lo;

  std::vector<OrientedLine> lines;
  line_statistics(ds, [&](const LineStat& s) {
    const long e = s.on - std::min(s.mult_first, s.mult_last);
    auto hits = [&](long cut) { return cut + 1 <= k_hi && cut + e > k_lo; };
    if (!hits(s.right) && !hits(s.left)) return;
    OrientedLine l{left_normal(ds, s), 0, s};
    l.offset = l.normal.dot(ds[s.i]);
    lines.push_back(std::move(l));
  });

  const Box box = bounding_box(ds);
  constexpr int kCutCap = 64;

  // Largest depth count >= k found at a point of D_k, or nullopt if D_k is empty.
  auto probe = [&](long k) -> std::optional<long> {
    std::vector<Halfspace> family;
    for (const auto& l : lines) {
      if (l.left_irrotatable(k)) family.push_back(Halfspace{Direction(l.normal), l.offset});
      if (l.right_irrotatable(k)) family.push_back(Halfspace{Direction(Vec(-l.normal)), Rational(-l.offset)});
    }
    for (int it = 0; it < kCutCap; ++it) {
      const auto p = feasible_point_2d(family, box);
      if (!p) return std::nullopt;
      const DepthResult r = tukey_depth(*p, ds);
      if (r.witness.count_le >= k) return r.witness.count_le;
      family.push_back(witness_cut(ds, *p, r.witness));
    }
    // Every halfspace cutting at most k-1 points.
    std::vector<Halfspace> full;
    line_statistics(ds, [&](const LineStat& s) {
      const Vec nrm = left_normal(ds, s);
      const Rational off = nrm.dot(ds[s.i]);
      if (s.right <= k - 1) full.push_back(Halfspace{Direction(nrm), off});
      if (s.left <= k - 1) full.push_back(Halfspace{Direction(Vec(-nrm)), Rational(-off)});
    });
    const auto p = feasible_point_2d(full, box);
    if (!p) return std::nullopt;
    const long c = tukey_depth(*p, ds).witness.count_le;
    if (c < k) throw std::logic_error("max_depth_count_2d: full family point below level");
    return c;
  };

  long lo = k_lo, hi = k_hi;
  while (lo < hi) {
    const long mid = (lo + hi + 1) / 2;
    if (auto c = probe(mid)) lo = std::min(*c, hi);
    else hi = mid - 1;
  }
  return lo;
}

}  // namespace tukey::planar
