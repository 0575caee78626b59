#include "tukey/regions.hpp"

#include "tukey/linalg.hpp"
#include "tukey/planar.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace tukey {

namespace {

struct Location {
  std::size_t index;  // lowest sample index at this location
  long multiplicity;
};

std::vector<Location> locations(const DataSet& ds, const std::vector<std::size_t>& idx) {
  std::vector<Location> out;
  for (std::size_t i : idx) {
    auto it = std::find_if(out.begin(), out.end(), [&](const Location& l) { return ds[l.index] == ds[i]; });
    if (it == out.end()) out.push_back({i, 1});
    else ++it->multiplicity;
  }
  return out;
}

std::vector<Location> locations(const DataSet& ds) {
  std::vector<std::size_t> all(ds.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return locations(ds, all);
}

bool cert_less(const IrrotatableCertificate& a, const IrrotatableCertificate& b) {
  const Vec& u = a.halfspace.normal.vec();
  const Vec& v = b.halfspace.normal.vec();
  for (Eigen::Index j = 0; j < u.size(); ++j) {
    if (u(j) != v(j)) return u(j) < v(j);
  }
  return a.halfspace.offset < b.halfspace.offset;
}

void require_full_dimension(const DataSet& ds, const char* who) {
  if (ds.size() == 0) throw std::invalid_argument(std::string(who) + ": empty dataset");
  if (affine_dimension(ds) != ds.dim()) {
    throw std::invalid_argument(std::string(who) + ": data must have full affine dimension");
  }
}

long max_count_1d(const DataSet& ds) {
  std::vector<Rational> v;
  for (const auto& p : ds) v.push_back(p(0));
  std::sort(v.begin(), v.end());
  const long n = static_cast<long>(v.size());
  long best = 0;
  for (const auto& x : v) {
    const long le = std::upper_bound(v.begin(), v.end(), x) - v.begin();
    const long ge = n - (std::lower_bound(v.begin(), v.end(), x) - v.begin());
    best = std::max(best, std::min(le, ge));
  }
  return best;
}

struct Plane {
  Vec normal;
  Rational offset;
  long below = 0;  // normal . X < offset
  long above = 0;
};

// Distinct planes through affinely independent triples of sample locations.
std::vector<Plane> candidate_planes(const DataSet& ds) {
  const auto locs = locations(ds);
  std::set<std::vector<Rational>> seen;
  std::vector<Plane> out;
  for (std::size_t a = 0; a < locs.size(); ++a) {
    for (std::size_t b = a + 1; b < locs.size(); ++b) {
      for (std::size_t c = b + 1; c < locs.size(); ++c) {
        const Point& p = ds[locs[a].index];
        const Vec nrm = cross3<Rational>(ds[locs[b].index] - p, ds[locs[c].index] - p);
        if (nrm.isZero()) continue;
        const Halfspace h = Halfspace{Direction(nrm), nrm.dot(p)}.canonical();
        std::vector<Rational> key(h.normal.vec().begin(), h.normal.vec().end());
        key.push_back(h.offset);
        if (!seen.insert(key).second) continue;
        Plane pl{h.normal.vec(), h.offset};
        for (const auto& x : ds) {
          const Rational v = pl.normal.dot(x);
          if (v < pl.offset) ++pl.below;
          else if (v > pl.offset) ++pl.above;
        }
        out.push_back(std::move(pl));
      }
    }
  }
  return out;
}

long max_count_3d(const DataSet& ds) {
  const auto planes = candidate_planes(ds);
  const Box box = bounding_box(ds);
  auto nonempty = [&](long k) {
    std::vector<Halfspace> hs;
    for (const auto& p : planes) {
      if (p.below <= k - 1) hs.push_back(Halfspace{Direction(p.normal), p.offset});
      if (p.above <= k - 1) hs.push_back(Halfspace{Direction(Vec(-p.normal)), Rational(-p.offset)});
    }
    return !intersect_halfspaces(hs, 3, box).empty();
  };
  long hi = static_cast<long>(ds.size());
  for (int axis = 0; axis < 3; ++axis) {
    std::vector<Point> proj;
    for (const auto& p : ds) proj.push_back(make_vec({p(axis)}));
    hi = std::min(hi, max_count_1d(DataSet(std::move(proj))));
  }
  long lo = 1;
  while (lo < hi) {
    const long mid = (lo + hi + 1) / 2;
    if (nonempty(mid)) lo = mid;
    else hi = mid - 1;
  }
  return lo;
}

long max_count(const DataSet& ds) {
  switch (ds.dim()) {
    case 1:
      return max_count_1d(ds);
    case 2:
      require_full_dimension(ds, "max_depth");
      return planar::max_depth_count_2d(ds);
    case 3:
      require_full_dimension(ds, "max_depth");
      return max_count_3d(ds);
    default:
      throw std::invalid_argument("max_depth: exact computation supports d in {1,2,3}");
  }
}

Polytope region_at_count(const DataSet& ds, long k, long lambda_count) {
  const int d = ds.dim();
  const long n = static_cast<long>(ds.size());
  if (k > lambda_count) {
    throw std::domain_error("depth_region: level " + DepthValue(k, n).str() + " exceeds the maximal depth " +
                            DepthValue(lambda_count, n).str());
  }
  if (d == 1) {
    std::vector<Rational> v;
    for (const auto& p : ds) v.push_back(p(0));
    std::sort(v.begin(), v.end());
    const std::vector<Halfspace> hs{Halfspace{Direction(make_vec({1})), v[static_cast<std::size_t>(k - 1)]},
                                    Halfspace{Direction(make_vec({-1})), Rational(-v[static_cast<std::size_t>(n - k)])}};
    return intersect_halfspaces(hs, 1);
  }
  const auto certs = enumerate_irrotatable(ds, DepthValue(std::max(k, 1L), n));
  if (certs.empty()) throw std::logic_error("depth_region: no irrotatable halfspaces at a feasible level");
  std::vector<Halfspace> hs;
  for (const auto& c : certs) hs.push_back(c.halfspace);
  std::optional<Box> box;
  if (n > 64) box = bounding_box(ds);
  return intersect_halfspaces(hs, d, box);
}

}  // namespace

IrrotatableCheck is_irrotatable(const Halfspace& h, const DataSet& ds, const DepthValue& tau) {
  const int d = ds.dim();
  if (d != 2 && d != 3) throw std::invalid_argument("is_irrotatable: d must be 2 or 3");
  if (h.normal.dim() != d) throw std::invalid_argument("is_irrotatable: dimension mismatch");
  if (tau.num <= 0) throw std::invalid_argument("is_irrotatable: tau must be positive");
  const long n = static_cast<long>(ds.size());
  const long k = ceil_count(n, tau);

  IrrotatableCertificate cert{h.canonical(), {}, {}, 0};
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const int s = sign(h.evaluate(ds[i]));
    if (s < 0) ++cert.cut_count;
    if (s == 0) cert.boundary_points.push_back(i);
  }
  if (cert.boundary_points.empty()) throw std::invalid_argument("is_irrotatable: no sample point on the boundary");
  if (cert.cut_count > k - 1) return {};

  const auto locs = locations(ds, cert.boundary_points);
  const Vec& u = h.normal.vec();
  std::optional<long> best;
  std::vector<std::size_t> pivot;
  auto consider = [&](long expelled, std::vector<std::size_t> flat) {
    if (cert.cut_count + expelled < k) return;
    if (!best || expelled < *best) {
      best = expelled;
      pivot = std::move(flat);
    }
  };
  if (d == 2) {
    const Vec t = make_vec({Rational(-u(1)), u(0)});
    for (const auto& p : locs) {
      const Rational sp = t.dot(ds[p.index]);
      long less = 0, more = 0;
      for (std::size_t i : cert.boundary_points) {
        const Rational si = t.dot(ds[i]);
        if (si < sp) ++less;
        else if (si > sp) ++more;
      }
      consider(less, {p.index});
      consider(more, {p.index});
    }
  } else {
    for (std::size_t a = 0; a < locs.size(); ++a) {
      for (std::size_t b = a + 1; b < locs.size(); ++b) {
        const Point& p = ds[locs[a].index];
        const Vec axis = ds[locs[b].index] - p;
        long pos = 0, neg = 0;
        for (std::size_t i : cert.boundary_points) {
          const int s = sign(u.dot(cross3<Rational>(axis, Vec(ds[i] - p))));
          if (s > 0) ++pos;
          else if (s < 0) ++neg;
        }
        consider(pos, {locs[a].index, locs[b].index});
        consider(neg, {locs[a].index, locs[b].index});
      }
    }
  }
  if (!best) return {};
  cert.pivot_flat = std::move(pivot);
  return {true, std::move(cert)};
}

std::vector<IrrotatableCertificate> enumerate_irrotatable(const DataSet& ds, const DepthValue& tau) {
  const int d = ds.dim();
  if (d != 2 && d != 3) throw std::invalid_argument("enumerate_irrotatable: d must be 2 or 3");
  if (tau.num <= 0) throw std::invalid_argument("enumerate_irrotatable: tau must be positive");
  require_full_dimension(ds, "enumerate_irrotatable");
  const long k = ceil_count(static_cast<long>(ds.size()), tau);

  std::vector<IrrotatableCertificate> out;
  auto add = [&](const Halfspace& h) {
    auto r = is_irrotatable(h, ds, tau);
    if (r.irrotatable) out.push_back(std::move(*r.certificate));
  };
  if (d == 2) {
    planar::line_statistics(ds, [&](const planar::LineStat& s) {
      const long e = s.on - std::min(s.mult_first, s.mult_last);
      const bool left = s.right <= k - 1 && s.right + e >= k;
      const bool right = s.left <= k - 1 && s.left + e >= k;
      if (!left && !right) return;
      const Vec nrm = planar::left_normal(ds, s);
      const Rational off = nrm.dot(ds[s.i]);
      if (left) add(Halfspace{Direction(nrm), off});
      if (right) add(Halfspace{Direction(Vec(-nrm)), Rational(-off)});
    });
  } else {
    for (const auto& p : candidate_planes(ds)) {
      if (p.below <= k - 1) add(Halfspace{Direction(p.normal), p.offset});
      if (p.above <= k - 1) add(Halfspace{Direction(Vec(-p.normal)), Rational(-p.offset)});
    }
  }
  std::sort(out.begin(), out.end(), cert_less);
  return out;
}

std::optional<DepthValue> lower_irrotatable_level(const IrrotatableCertificate& c, const DataSet& ds,
                                                  const DepthValue& tau) {
  const long n = static_cast<long>(ds.size());
  const long k = ceil_count(n, tau);
  if (c.cut_count >= k - 1) return std::nullopt;
  const DepthValue lower(c.cut_count + 1, n);
  if (!is_irrotatable(c.halfspace, ds, lower).irrotatable) return std::nullopt;
  return lower;
}

DepthValue max_depth(const DataSet& ds) { return DepthValue(max_count(ds), static_cast<long>(ds.size())); }

Polytope depth_region(const DataSet& ds, const DepthValue& tau) {
  if (tau.num <= 0) throw std::invalid_argument("depth_region: tau must be positive");
  if (ds.dim() > 3) throw std::invalid_argument("depth_region: exact regions support d in {1,2,3}");
  if (ds.dim() > 1) require_full_dimension(ds, "depth_region");
  const long n = static_cast<long>(ds.size());
  return region_at_count(ds, ceil_count(n, tau), max_count(ds));
}

MedianResult median_region(const DataSet& ds, BarycenterMode mode) {
  if (ds.dim() > 1) require_full_dimension(ds, "median_region");
  const long lambda = max_count(ds);
  MedianResult r;
  r.region = region_at_count(ds, lambda, lambda);
  r.lambda_star = DepthValue(lambda, static_cast<long>(ds.size()));
  r.median = barycenter(r.region, mode);
  return r;
}

}  // namespace tukey
