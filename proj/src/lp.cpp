#include "tukey/lp.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace tukey {

std::optional<Vec> nonnegative_solution(const Mat& a, const Vec& b) {
  const Eigen::Index m = a.rows(), n = a.cols();
  // tableau: [A | I | b], artificial basis
  Mat t(m, n + m + 1);
  t.setZero();
  for (Eigen::Index i = 0; i < m; ++i) {
    const bool flip = b(i) < 0;
    for (Eigen::Index j = 0; j < n; ++j) t(i, j) = flip ? Rational(-a(i, j)) : a(i, j);
    t(i, n + i) = 1;
    t(i, n + m) = flip ? Rational(-b(i)) : b(i);
  }
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  std::iota(basis.begin(), basis.end(), n);

  // reduced costs of the phase-one objective sum(artificials)
  auto reduced_cost = [&](Eigen::Index j) {
    Rational c = j >= n ? Rational(1) : Rational(0);
    for (Eigen::Index i = 0; i < m; ++i) {
      if (basis[static_cast<std::size_t>(i)] >= n) c -= t(i, j);
    }
    return c;
  };

  for (;;) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < n + m; ++j) {
      if (reduced_cost(j) < 0) {
        enter = j;  // Bland: smallest index
        break;
      }
    }
    if (enter < 0) break;
    Eigen::Index leave = -1;
    Rational best;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (t(i, enter) <= 0) continue;
      Rational ratio = t(i, n + m) / t(i, enter);
      if (leave < 0 || ratio < best ||
          (ratio == best && basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) break;  // unbounded direction cannot occur in phase one
    const Rational piv = t(leave, enter);
    t.row(leave) /= piv;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (i == leave || t(i, enter) == 0) continue;
      const Rational f = t(i, enter);
      t.row(i) -= f * t.row(leave);
    }
    basis[static_cast<std::size_t>(leave)] = enter;
  }

  Vec x = Vec::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index j = basis[static_cast<std::size_t>(i)];
    if (j >= n) {
      if (t(i, n + m) != 0) return std::nullopt;
    } else {
      x(j) = t(i, n + m);
    }
  }
  return x;
}

namespace {

struct Constraint {
  Rational ax, ay, b;  // ax*x + ay*y >= b
};

}  // namespace

std::optional<Point> feasible_point_2d(std::span<const Halfspace> hs, const Box& box, std::uint64_t seed) {
  if (box.lo.size() != 2 || box.hi.size() != 2) throw std::invalid_argument("feasible_point_2d: box must be 2-D");
  if (box.lo(0) > box.hi(0) || box.lo(1) > box.hi(1)) return std::nullopt;

  std::vector<Constraint> cs;
  cs.reserve(hs.size() + 4);
  cs.push_back({1, 0, box.lo(0)});
  cs.push_back({0, 1, box.lo(1)});
  cs.push_back({-1, 0, Rational(-box.hi(0))});
  cs.push_back({0, -1, Rational(-box.hi(1))});
  std::vector<Constraint> rest;
  rest.reserve(hs.size());
  for (const auto& h : hs) {
    if (h.normal.dim() != 2) throw std::invalid_argument("feasible_point_2d: halfspace dimension");
    rest.push_back({h.normal.vec()(0), h.normal.vec()(1), h.offset});
  }
  std::mt19937_64 rng(seed);
  std::shuffle(rest.begin(), rest.end(), rng);
  cs.insert(cs.end(), rest.begin(), rest.end());

  Rational x = box.lo(0), y = box.lo(1);
  for (std::size_t i = 4; i < cs.size(); ++i) {
    const Constraint& c = cs[i];
    if (c.ax * x + c.ay * y >= c.b) continue;
    // new optimum on the line c.ax*x + c.ay*y = c.b
    Rational px, py;
    if (c.ax != 0) {
      px = c.b / c.ax;
      py = 0;
    } else {
      px = 0;
      py = c.b / c.ay;
    }
    const Rational dx = -c.ay, dy = c.ax;
    std::optional<Rational> lo, hi;
    for (std::size_t j = 0; j < i; ++j) {
      const Constraint& o = cs[j];
      const Rational slope = o.ax * dx + o.ay * dy;
      const Rational rhs = o.b - (o.ax * px + o.ay * py);
      if (slope == 0) {
        if (rhs > 0) return std::nullopt;
        continue;
      }
      const Rational t = rhs / slope;
      if (slope > 0) {
        if (!lo || t > *lo) lo = t;
      } else {
        if (!hi || t < *hi) hi = t;
      }
    }
    // box constraints bound every line in both directions
    if (*lo > *hi) return std::nullopt;
    const bool increasing = dx > 0 || (dx == 0 && dy > 0);
    const Rational t = increasing ? *lo : *hi;
    x = px + t * dx;
    y = py + t * dy;
  }
  return make_vec({x, y});
}

}  // namespace tukey
