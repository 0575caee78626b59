#pragma once

// Planar line statistics: for every line through two distinct sample
// locations, the number of points strictly on each side, on the line, and the
// multiplicities of the two extreme locations on it. One angular sweep per
// pivot, O(n^2 log n) overall. Templated on the coordinate type so the same
// code runs on 64-bit integers (with a 128-bit wide type for orientation
// tests) and on Rational.

#include "tukey/geometry.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace tukey::planar {

struct LineStat {
  std::uint32_t i = 0;  ///< first location along the line direction (lowest index among duplicates)
  std::uint32_t j = 0;  ///< any other point on the line
  std::int32_t left = 0;   ///< strictly left of the directed line i -> j
  std::int32_t right = 0;  ///< strictly right
  std::int32_t on = 0;
  std::int32_t mult_first = 0;  ///< multiplicity of location i
  std::int32_t mult_last = 0;   ///< multiplicity of the last location along i -> j
};

template <class Coord>
using Point2 = std::array<Coord, 2>;

template <class Coord, class Wide>
Wide cross(const Point2<Coord>& a, const Point2<Coord>& b) {
  return static_cast<Wide>(a[0]) * static_cast<Wide>(b[1]) - static_cast<Wide>(a[1]) * static_cast<Wide>(b[0]);
}

template <class Coord, class Wide>
Wide dot(const Point2<Coord>& a, const Point2<Coord>& b) {
  return static_cast<Wide>(a[0]) * static_cast<Wide>(b[0]) + static_cast<Wide>(a[1]) * static_cast<Wide>(b[1]);
}

/// Calls `emit` once per distinct line through at least two distinct
/// locations. The direction i -> j always has angle in [0, pi).
template <class Coord, class Wide>
void line_statistics(std::span<const Point2<Coord>> pts, const std::function<void(const LineStat&)>& emit) {
  const std::size_t n = pts.size();
  auto upper = [](const Point2<Coord>& v) { return v[1] > 0 || (v[1] == 0 && v[0] > 0); };
  auto less_angle = [&](const Point2<Coord>& a, const Point2<Coord>& b) {
    const bool ua = upper(a), ub = upper(b);
    if (ua != ub) return ua;
    return cross<Coord, Wide>(a, b) > 0;
  };
  struct Item {
    Point2<Coord> v;
    std::uint32_t idx;
  };
  std::vector<Item> items;
  std::vector<std::size_t> group_start;
  items.reserve(n);
  for (std::size_t p = 0; p < n; ++p) {
    items.clear();
    std::int32_t zeros = 0;
    bool lowest = true;
    for (std::size_t q = 0; q < n; ++q) {
      if (q == p) continue;
      const Point2<Coord> v{pts[q][0] - pts[p][0], pts[q][1] - pts[p][1]};
      if (v[0] == 0 && v[1] == 0) {
        ++zeros;
        if (q < p) lowest = false;
        continue;
      }
      items.push_back({v, static_cast<std::uint32_t>(q)});
    }
    if (!lowest || items.empty()) continue;
    std::sort(items.begin(), items.end(), [&](const Item& a, const Item& b) { return less_angle(a.v, b.v); });
    group_start.clear();
    for (std::size_t a = 0; a < items.size(); ++a) {
      if (a == 0 || less_angle(items[a - 1].v, items[a].v)) group_start.push_back(a);
    }
    const std::size_t m = group_start.size();
    const auto total = static_cast<std::int32_t>(items.size());
    auto size_of = [&](std::size_t g) {
      g %= m;
      const std::size_t end = g + 1 < m ? group_start[g + 1] : items.size();
      return static_cast<std::int32_t>(end - group_start[g]);
    };
    auto dir = [&](std::size_t g) -> const Point2<Coord>& { return items[group_start[g % m]].v; };
    // angle(b) in (angle(a), angle(a) + pi]
    auto in_upper = [&](std::size_t a, std::size_t b) {
      const Wide c = cross<Coord, Wide>(dir(a), dir(b));
      return c > 0 || (c == 0 && dot<Coord, Wide>(dir(a), dir(b)) < 0);
    };
    std::size_t end = 1;
    std::int32_t run = 0;
    for (std::size_t a = 0; a < m; ++a) {
      if (end <= a) {
        end = a + 1;
        run = 0;
      }
      while (end < a + m && in_upper(a, end)) {
        run += size_of(end);
        ++end;
      }
      const Point2<Coord>& g = dir(a);
      bool opposite = false;
      if (end > a + 1) {
        const Point2<Coord>& h = dir(end - 1);
        opposite = cross<Coord, Wide>(g, h) == 0;
      }
      if (upper(g) && !opposite) {
        LineStat s;
        s.i = static_cast<std::uint32_t>(p);
        s.j = items[group_start[a]].idx;
        s.left = run;
        s.right = total - run - size_of(a);
        s.on = size_of(a) + zeros + 1;
        s.mult_first = zeros + 1;
        Wide far = dot<Coord, Wide>(g, g);
        std::int32_t ties = 0;
        const std::size_t b0 = group_start[a], b1 = b0 + static_cast<std::size_t>(size_of(a));
        for (std::size_t t = b0; t < b1; ++t) {
          const Wide w = dot<Coord, Wide>(g, items[t].v);
          if (w > far) {
            far = w;
            ties = 1;
          } else if (w == far) {
            ++ties;
          }
        }
        s.mult_last = ties;
        emit(s);
      }
      if (end > a + 1) run -= size_of(a + 1);
    }
  }
}

/// Runs the sweep on `ds` (d = 2), using 64-bit integer coordinates when the
/// common denominator allows it and Rational otherwise.
void line_statistics(const DataSet& ds, const std::function<void(const LineStat&)>& emit);

/// Max over x of the exact depth count, for d = 2 data of full affine
/// dimension.
long max_depth_count_2d(const DataSet& ds);

/// Inner normal of the halfspace to the left of i -> j.
Vec left_normal(const DataSet& ds, const LineStat& s);

}  // namespace tukey::planar
