#pragma once

// Slow, independent reference computations used only by the tests.

#include "tukey/geometry.hpp"
#include "tukey/linalg.hpp"
#include "tukey/lp.hpp"

#include <algorithm>
#include <random>
#include <vector>

namespace oracle {

using tukey::DataSet;
using tukey::Mat;
using tukey::Point;
using tukey::Rational;
using tukey::Vec;

inline long count_le(const DataSet& ds, const Vec& u, const Point& x) {
  long c = 0;
  for (const auto& p : ds) c += u.dot(p) <= u.dot(x) ? 1 : 0;
  return c;
}

inline Vec rot90(const Vec& v) { return tukey::make_vec({Rational(-v(1)), v(0)}); }

// Angle in [0, 2 pi) as (half, slope) pair comparison by cross products.
inline bool angle_less(const Vec& a, const Vec& b) {
  auto half = [](const Vec& v) { return v(1) < 0 || (v(1) == 0 && v(0) < 0); };
  if (half(a) != half(b)) return !half(a);
  return a(0) * b(1) - a(1) * b(0) > 0;
}

// d = 2: every direction perpendicular to some X_i - x, plus the bisector of
// each pair of angularly consecutive ones.
inline long depth_2d(const Point& x, const DataSet& ds) {
  std::vector<Vec> crit;
  for (const auto& p : ds) {
    const Vec v = p - x;
    if (v.isZero()) continue;
    crit.push_back(rot90(v));
    crit.push_back(Vec(-rot90(v)));
  }
  if (crit.empty()) return static_cast<long>(ds.size());
  std::sort(crit.begin(), crit.end(), angle_less);
  long best = static_cast<long>(ds.size());
  for (std::size_t i = 0; i < crit.size(); ++i) {
    const Vec& a = crit[i];
    const Vec& b = crit[(i + 1) % crit.size()];
    best = std::min(best, count_le(ds, a, x));
    // crit is closed under negation, so consecutive gaps are at most pi
    Vec mid = a + b;
    if (mid.isZero()) mid = rot90(a);
    best = std::min(best, count_le(ds, mid, x));
  }
  return best;
}

// Any dimension: n - max over subsets S of offsets realizable as
// {i : u.v_i > 0} for some u. Feasibility of u.v_i >= 1 (i in S),
// u.v_i <= 0 (i not in S) by a rational phase-one LP in u = p - q.
inline bool open_side_realizable(const std::vector<Vec>& vs, unsigned mask) {
  const int d = static_cast<int>(vs.front().size());
  const int m = static_cast<int>(vs.size());
  Mat a = Mat::Zero(m, 2 * d + m);
  Vec b = Vec::Zero(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < d; ++j) {
      a(i, j) = vs[static_cast<std::size_t>(i)](j);
      a(i, d + j) = -vs[static_cast<std::size_t>(i)](j);
    }
    const bool in = (mask >> i) & 1U;
    a(i, 2 * d + i) = in ? Rational(-1) : Rational(1);
    b(i) = in ? 1 : 0;
  }
  return tukey::nonnegative_solution(a, b).has_value();
}

inline long depth_lp(const Point& x, const DataSet& ds) {
  std::vector<Vec> vs;
  long zeros = 0;
  for (const auto& p : ds) {
    Vec v = p - x;
    if (v.isZero()) ++zeros;
    else vs.push_back(std::move(v));
  }
  const long n = static_cast<long>(ds.size());
  if (vs.empty()) return n;
  long best_open = 0;
  for (unsigned mask = 0; mask < (1U << vs.size()); ++mask) {
    const long size = __builtin_popcount(mask);
    if (size <= best_open) continue;
    if (open_side_realizable(vs, mask)) best_open = size;
  }
  return n - best_open;
}

// Candidate points where maximal depth is attained in d = 2: sample points and
// intersections of lines through pairs of sample points.
inline long max_depth_2d(const DataSet& ds) {
  std::vector<Point> cand(ds.begin(), ds.end());
  std::vector<std::pair<Vec, Rational>> lines;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (std::size_t j = i + 1; j < ds.size(); ++j) {
      if (ds[i] == ds[j]) continue;
      const Vec nrm = rot90(Vec(ds[j] - ds[i]));
      lines.emplace_back(nrm, nrm.dot(ds[i]));
    }
  }
  for (std::size_t a = 0; a < lines.size(); ++a) {
    for (std::size_t b = a + 1; b < lines.size(); ++b) {
      Mat m(2, 2);
      m.row(0) = lines[a].first.transpose();
      m.row(1) = lines[b].first.transpose();
      const auto p = tukey::solve<Rational>(m, tukey::make_vec({lines[a].second, lines[b].second}));
      if (p && std::find(cand.begin(), cand.end(), *p) == cand.end()) cand.push_back(*p);
    }
  }
  long best = 0;
  for (const auto& p : cand) best = std::max(best, depth_2d(p, ds));
  return best;
}

// Literal infinitesimal rotation of a 2-D boundary line about each boundary
// location; delta must be small relative to the coordinate grid.
inline bool irrotatable_2d(const Vec& u, const Rational& q, const DataSet& ds, long k, const Rational& delta) {
  long cut = 0;
  std::vector<Point> boundary;
  for (const auto& p : ds) {
    const Rational v = u.dot(p) - q;
    if (v < 0) ++cut;
    if (v == 0) boundary.push_back(p);
  }
  if (cut > k - 1 || boundary.empty()) return false;
  const Vec t = rot90(u);
  for (const auto& pivot : boundary) {
    for (int s : {1, -1}) {
      const Vec w = u + Rational(s) * delta * t;
      long c = 0;
      for (const auto& p : ds) c += w.dot(p) < w.dot(pivot) ? 1 : 0;
      if (c > k - 1) return true;
    }
  }
  return false;
}

// Exhaustive candidate list: lines through pairs of distinct locations, both
// orientations, filtered by the literal rotation test.
inline long count_irrotatable_2d(const DataSet& ds, long k, const Rational& delta) {
  std::vector<std::pair<Vec, Rational>> seen;
  long count = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (std::size_t j = i + 1; j < ds.size(); ++j) {
      if (ds[i] == ds[j]) continue;
      for (int s : {1, -1}) {
        const Vec u = Rational(s) * tukey::Direction(rot90(Vec(ds[j] - ds[i]))).canonical();
        const Rational q = u.dot(ds[i]);
        const auto key = std::make_pair(u, q);
        if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
        seen.push_back(key);
        if (irrotatable_2d(u, q, ds, k, delta)) ++count;
      }
    }
  }
  return count;
}

// Random rational datasets on a coarse grid with forced duplicates and
// collinear triples.
struct Generator {
  std::mt19937_64 rng;
  explicit Generator(std::uint64_t seed) : rng(seed) {}

  Rational coord(int grid) {
    std::uniform_int_distribution<int> c(-grid, grid);
    return Rational(c(rng), grid);
  }

  DataSet degenerate(int d, std::size_t n, int grid = 4) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (;;) {
      std::vector<Point> pts;
      for (std::size_t i = 0; i < n; ++i) {
        Point p(d);
        for (int j = 0; j < d; ++j) p(j) = coord(grid);
        if (!pts.empty() && unit(rng) < 0.25) {
          std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
          p = pts[pick(rng)];
        } else if (pts.size() >= 2 && unit(rng) < 0.25) {
          std::uniform_int_distribution<int> t(-2, 3);
          p = pts[pts.size() - 2] + Rational(t(rng), 2) * (pts.back() - pts[pts.size() - 2]);
        }
        pts.push_back(p);
      }
      DataSet ds(std::move(pts));
      if (tukey::affine_dimension(ds) == d) return ds;
    }
  }

  Mat nonsingular(int d) {
    for (;;) {
      Mat a(d, d);
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) a(i, j) = coord(3);
      }
      if (tukey::rank<Rational>(a) == d) return a;
    }
  }
};

}  // namespace oracle
