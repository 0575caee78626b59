#include "tukey/depth.hpp"

#include "tukey/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>

namespace tukey {

DepthValue::DepthValue(long k, long n) : num(k), den(n) {
  if (n <= 0 || k < 0 || k > n) throw std::invalid_argument("depth value must satisfy 0 <= k <= n, n > 0");
}

DepthValue DepthValue::parse(const std::string& text) {
  const Rational r = parse_rational(text);
  if (r < 0 || r > 1) throw std::invalid_argument("depth value outside [0,1]: " + text);
  return DepthValue(boost::multiprecision::numerator(r).convert_to<long>(),
                    boost::multiprecision::denominator(r).convert_to<long>());
}

long ceil_count(long n, const DepthValue& tau) { return (n * tau.num + tau.den - 1) / tau.den; }

long count_le(const DataSet& ds, const Vec& u, const Point& x) {
  const Rational ux = u.dot(x);
  long c = 0;
  for (const auto& p : ds) c += u.dot(p) <= ux ? 1 : 0;
  return c;
}

Rational directional_quantile(const DataSet& ds, const Direction& u, const DepthValue& tau) {
  if (tau.num == 0) throw std::invalid_argument("directional_quantile: tau must be in (0, 1]");
  if (u.dim() != ds.dim()) throw std::invalid_argument("directional_quantile: dimension mismatch");
  std::vector<Rational> proj;
  proj.reserve(ds.size());
  for (const auto& p : ds) proj.push_back(u.vec().dot(p));
  const long k = ceil_count(static_cast<long>(ds.size()), tau);
  std::nth_element(proj.begin(), proj.begin() + (k - 1), proj.end());
  return proj[static_cast<std::size_t>(k - 1)];
}

namespace {

Vec rot90(const Vec& v) { return make_vec({Rational(-v(1)), v(0)}); }

// Lexicographic sign of (w.v, t.v).
int lex_sign(const Vec& w, const Vec& t, const Vec& v) {
  const int s = sign(w.dot(v));
  return s != 0 ? s : sign(t.dot(v));
}

// Exact direction u = w + eps t whose sign pattern on `vs` matches the
// lexicographic pattern of (w, t).
Vec realize(const Vec& w, const Vec& t, const std::vector<Vec>& vs) {
  Rational eps = 1;
  for (const auto& v : vs) {
    const Rational a = w.dot(v), b = t.dot(v);
    if (a == 0 || b == 0) continue;
    const Rational bound = abs(a) / (2 * abs(b));
    if (bound < eps) eps = bound;
  }
  return w + eps * t;
}

DepthWitness make_witness(const Vec& u, const DataSet& ds, const Point& x) {
  const Rational ux = u.dot(x);
  DepthWitness w{Direction(u), 0, 0};
  for (const auto& p : ds) {
    const Rational v = u.dot(p);
    if (v <= ux) ++w.count_le;
    if (v == ux) ++w.count_boundary;
  }
  return w;
}

struct Offsets {
  std::vector<Vec> nonzero;
  long zeros = 0;
};

Offsets offsets(const Point& x, const DataSet& ds) {
  if (ds.size() == 0) throw std::invalid_argument("empty dataset");
  if (x.size() != ds.dim()) throw std::invalid_argument("point and dataset dimensions differ");
  Offsets o;
  for (const auto& p : ds) {
    Vec v = p - x;
    if (v.isZero()) ++o.zeros;
    else o.nonzero.push_back(std::move(v));
  }
  return o;
}

// A candidate open cell of directions, described lexicographically; `count`
// is #{i : u.X_i <= u.x} for every u in the cell.
struct Candidate {
  Vec w, t;
  long count;
};

// Enumerates a set of candidates containing every minimizing cell. For d = 2
// only the O(n log n) extreme cells are produced unless `all` is set.
void enumerate_cells_2d(const Offsets& o, const std::function<void(const Candidate&)>& emit) {
  const long n = static_cast<long>(o.nonzero.size()) + o.zeros;
  std::vector<Vec> vs = o.nonzero;
  std::sort(vs.begin(), vs.end(), [](const Vec& a, const Vec& b) { return compare_angle(a, b) < 0; });
  // group equal angles
  std::vector<Vec> dirs;
  std::vector<long> sizes;
  for (const auto& v : vs) {
    if (!dirs.empty() && compare_angle(dirs.back(), v) == 0) ++sizes.back();
    else {
      dirs.push_back(v);
      sizes.push_back(1);
    }
  }
  const std::size_t m = dirs.size();
  const long total = static_cast<long>(vs.size());
  auto in_upper = [&](std::size_t a, std::size_t b) {  // angle(b) in (angle(a), angle(a) + pi]
    const Vec& ga = dirs[a];
    const Vec& gb = dirs[b % m];
    const Rational cr = ga(0) * gb(1) - ga(1) * gb(0);
    return cr > 0 || (cr == 0 && ga.dot(gb) < 0);
  };
  std::size_t end = 1;
  long run = 0;  // sizes of groups a+1 .. end-1
  for (std::size_t a = 0; a < m; ++a) {
    if (end <= a) {
      end = a + 1;
      run = 0;
    }
    while (end < a + m && in_upper(a, end)) {
      run += sizes[end % m];
      ++end;
    }
    const long c1 = run;           // open halfplane set (theta_a, theta_a + pi]
    const long c2 = total - c1;    // complementary set (theta_a - pi, theta_a]
    const Vec r = rot90(dirs[a]);
    emit({r, Vec(-dirs[a]), n - c1});
    emit({Vec(-r), dirs[a], n - c2});
    if (end > a + 1) run -= sizes[(a + 1) % m];
  }
}

void enumerate_cells_3d(const Offsets& o, const std::function<void(const Candidate&)>& emit) {
  const auto& vs = o.nonzero;
  auto count_for = [&](const Vec& w, const Vec& t) {
    long c = o.zeros;
    for (const auto& v : vs) c += lex_sign(w, t, v) < 0 ? 1 : 0;
    return c;
  };
  // distinct great circles {u : u.v = 0}
  std::vector<Vec> circles;
  for (const auto& v : vs) {
    Vec c = Direction(v).canonical();
    // v and -v define the same circle
    if (std::find_if(circles.begin(), circles.end(), [&](const Vec& e) { return e == c || e == Vec(-c); }) ==
        circles.end()) {
      circles.push_back(c);
    }
  }
  if (circles.size() == 1) {
    const Vec zero = Vec::Zero(3);
    emit({circles[0], zero, count_for(circles[0], zero)});
    emit({Vec(-circles[0]), zero, count_for(Vec(-circles[0]), zero)});
    return;
  }
  std::vector<Vec> seen;
  for (std::size_t i = 0; i < circles.size(); ++i) {
    for (std::size_t j = i + 1; j < circles.size(); ++j) {
      const Vec base = cross3<Rational>(circles[i], circles[j]);
      for (int s = 0; s < 2; ++s) {
        const Vec w = s == 0 ? base : Vec(-base);
        const Vec wc = Direction(w).canonical();
        if (std::find(seen.begin(), seen.end(), wc) != seen.end()) continue;
        seen.push_back(wc);
        const auto basis = orthocomplement<Rational>(w);
        std::vector<Vec> rays;
        for (const auto& c : circles) {
          if (c.dot(w) != 0) continue;
          const Vec p = make_vec({c.dot(basis[0]), c.dot(basis[1])});
          rays.push_back(rot90(p));
          rays.push_back(Vec(-rot90(p)));
        }
        std::sort(rays.begin(), rays.end(), [](const Vec& a, const Vec& b) { return compare_angle(a, b) < 0; });
        rays.erase(std::unique(rays.begin(), rays.end(), [](const Vec& a, const Vec& b) { return compare_angle(a, b) == 0; }),
                   rays.end());
        for (std::size_t k = 0; k < rays.size(); ++k) {
          const Vec tp = rays[k] + rays[(k + 1) % rays.size()];
          const Vec t = tp(0) * basis[0] + tp(1) * basis[1];
          emit({w, t, count_for(w, t)});
        }
      }
    }
  }
}

void enumerate_cells(const Point& x, const DataSet& ds, const Offsets& o,
                     const std::function<void(const Candidate&)>& emit) {
  const int d = ds.dim();
  const long n = static_cast<long>(ds.size());
  if (x.size() != d) throw std::invalid_argument("tukey_depth: dimension mismatch");
  if (o.nonzero.empty()) {
    Vec e = Vec::Zero(d);
    e(0) = 1;
    emit({e, Vec::Zero(d), n});
    return;
  }
  if (d == 1) {
    for (int s : {1, -1}) {
      const Vec u = make_vec({s});
      emit({u, Vec::Zero(1), count_le(ds, u, x)});
    }
    return;
  }
  if (d == 2) return enumerate_cells_2d(o, emit);
  if (d == 3) return enumerate_cells_3d(o, emit);
  throw std::invalid_argument("tukey_depth: exact depth supports d in {1,2,3}; use approximate_depth");
}

}  // namespace

DepthResult tukey_depth(const Point& x, const DataSet& ds) {
  const Offsets o = offsets(x, ds);
  std::optional<Candidate> best;
  enumerate_cells(x, ds, o, [&](const Candidate& c) {
    if (!best || c.count < best->count) best = c;
  });
  const Vec u = best->t.isZero() ? best->w : realize(best->w, best->t, o.nonzero);
  DepthWitness w = make_witness(u, ds, x);
  const long n = static_cast<long>(ds.size());
  return DepthResult{DepthValue(w.count_le, n), std::move(w), true};
}

std::vector<Direction> optimal_direction_cone(const Point& x, const DataSet& ds) {
  const Offsets o = offsets(x, ds);
  std::vector<Candidate> all;
  long best = static_cast<long>(ds.size()) + 1;
  enumerate_cells(x, ds, o, [&](const Candidate& c) {
    if (c.count < best) {
      best = c.count;
      all.clear();
    }
    if (c.count == best) all.push_back(c);
  });
  std::vector<Direction> out;
  std::vector<std::vector<bool>> signatures;
  for (const auto& c : all) {
    const Vec u = c.t.isZero() ? c.w : realize(c.w, c.t, o.nonzero);
    std::vector<bool> sig;
    const Rational ux = u.dot(x);
    for (const auto& p : ds) sig.push_back(u.dot(p) <= ux);
    if (std::find(signatures.begin(), signatures.end(), sig) != signatures.end()) continue;
    signatures.push_back(std::move(sig));
    out.emplace_back(u);
  }
  return out;
}

std::vector<Eigen::VectorXd> direction_net(int d, int count) {
  std::vector<Eigen::VectorXd> net;
  if (d == 1) {
    net.push_back(Eigen::VectorXd::Constant(1, 1.0));
    net.push_back(Eigen::VectorXd::Constant(1, -1.0));
    return net;
  }
  if (d == 2) {
    for (int j = 0; j < count; ++j) {
      const double a = 2.0 * std::numbers::pi * j / count;
      Eigen::VectorXd u(2);
      u << std::cos(a), std::sin(a);
      net.push_back(u);
    }
    return net;
  }
  for (int j = 0; j < d; ++j) {
    for (double s : {1.0, -1.0}) {
      Eigen::VectorXd u = Eigen::VectorXd::Zero(d);
      u(j) = s;
      net.push_back(u);
    }
  }
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(d));
  std::normal_distribution<double> g;
  while (static_cast<int>(net.size()) < count) {
    Eigen::VectorXd u(d);
    for (int j = 0; j < d; ++j) u(j) = g(rng);
    if (u.norm() > 1e-12) net.push_back(u.normalized());
  }
  return net;
}

DepthResult approximate_depth(const Point& x, const DataSet& ds, int random_directions, std::uint64_t seed) {
  const int d = ds.dim();
  if (x.size() != d) throw std::invalid_argument("approximate_depth: dimension mismatch");
  std::vector<Vec> candidates;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  for (int k = 0; k < random_directions; ++k) {
    Vec u(d);
    for (int j = 0; j < d; ++j) u(j) = snap(g(rng), 30);
    if (!u.isZero()) candidates.push_back(std::move(u));
  }
  for (const auto& p : ds) {
    Vec v = p - x;
    if (!v.isZero()) {
      candidates.push_back(v);
      candidates.push_back(Vec(-v));
    }
  }
  if (candidates.empty()) {
    Vec e = Vec::Zero(d);
    e(0) = 1;
    candidates.push_back(e);
  }
  std::optional<DepthWitness> best;
  for (const auto& u : candidates) {
    DepthWitness w = make_witness(u, ds, x);
    if (!best || w.count_le < best->count_le) best = std::move(w);
  }
  return DepthResult{DepthValue(best->count_le, static_cast<long>(ds.size())), *best, false};
}

PopulationDepthEstimate population_depth_estimate(std::span<const Eigen::VectorXd> draws, const Eigen::VectorXd& x,
                                                  int net_size) {
  if (draws.empty()) throw std::invalid_argument("population_depth_estimate: need at least one draw");
  const auto net = direction_net(static_cast<int>(x.size()), net_size);
  double best = 1.0;
  for (const auto& u : net) {
    const double ux = u.dot(x);
    std::size_t c = 0;
    for (const auto& p : draws) c += u.dot(p) <= ux ? 1 : 0;
    best = std::min(best, static_cast<double>(c) / static_cast<double>(draws.size()));
  }
  const double n = static_cast<double>(draws.size());
  return {best, 1.96 * std::sqrt(best * (1.0 - best) / n), draws.size()};
}

}  // namespace tukey
