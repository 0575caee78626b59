#include "tukey/breakdown.hpp"

#include "tukey/linalg.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace tukey {

namespace {

void require_full_dimension(const DataSet& ds, const char* who) {
  if (ds.size() == 0 || affine_dimension(ds) != ds.dim()) {
    throw std::invalid_argument(std::string(who) + ": data must have full affine dimension");
  }
}

bool lex_less(const Point& a, const Point& b) {
  for (Eigen::Index j = 0; j < a.size(); ++j) {
    if (a(j) != b(j)) return a(j) < b(j);
  }
  return false;
}

Vec upper_half(Vec g) {
  if (g(1) < 0 || (g(1) == 0 && g(0) < 0)) g = -g;
  return g;
}

// A direction no pairwise difference is parallel to: (1, 2M + 1) in the
// integer coordinates obtained by clearing denominators.
Direction generic_direction_2d(const DataSet& ds) {
  Integer den = 1;
  for (const auto& p : ds) {
    for (int j = 0; j < 2; ++j) {
      const Integer q = boost::multiprecision::denominator(p(j));
      den = den / boost::multiprecision::gcd(den, q) * q;
    }
  }
  Rational m = 0;
  for (const auto& p : ds) {
    for (int j = 0; j < 2; ++j) m = std::max(m, abs(p(j)) * den);
  }
  return Direction(make_vec({1, Rational(2 * m + 1)}));
}

struct Escape {
  Point median;
  Rational distance_sq;
  Rational radius_sq;
  Rational growth;
  bool escaped = false;
};

Rational squared_norm(const Vec& v) { return v.dot(v); }

Escape escape_check(const DataSet& ds, const ContaminationPlan& plan) {
  const Box box = bounding_box(ds);
  const Point c = (box.lo + box.hi) / Rational(2);
  Escape e;
  e.radius_sq = 0;
  for (const auto& x : ds) e.radius_sq = std::max(e.radius_sq, squared_norm(x - c));
  e.median = median_region(contaminate(ds, plan)).median;
  e.distance_sq = squared_norm(e.median - c);
  const Point far = median_region(contaminate(ds, rescale(ds, plan, 10))).median;
  e.growth = e.distance_sq == 0 ? Rational(0) : squared_norm(far - c) / e.distance_sq;
  e.escaped = e.distance_sq > 4 * e.radius_sq && e.growth >= kMinGrowthPerDecade * kMinGrowthPerDecade;
  return e;
}

// Largest k with D_k(Z) meeting cov(X).
long max_count_inside(const DataSet& x, const DataSet& z) {
  const long big_n = static_cast<long>(z.size());
  const auto hull = hull_halfspaces(x);
  const Box box = bounding_box(x);
  for (long k = max_depth(z).num; k > 1; --k) {
    std::vector<Halfspace> hs = hull;
    for (const auto& c : enumerate_irrotatable(z, DepthValue(k, big_n))) hs.push_back(c.halfspace);
    if (!intersect_halfspaces(hs, x.dim(), box).empty()) return k;
  }
  return 1;
}

// Vertex x0 of the projected median region such that an irrotatable
// halfspace touches the region only there; lexicographically smallest vertex
// when no vertex qualifies.
Point choose_x0(const DataSet& projected, const MedianResult& med) {
  std::vector<Point> verts = med.region.vertices;
  std::sort(verts.begin(), verts.end(), lex_less);
  if (verts.size() == 1 || projected.dim() == 1) return verts.front();
  const auto certs = enumerate_irrotatable(projected, med.lambda_star);
  for (const auto& v : verts) {
    for (const auto& c : certs) {
      if (c.halfspace.evaluate(v) != 0) continue;
      const bool alone = std::none_of(med.region.vertices.begin(), med.region.vertices.end(),
                                      [&](const Point& w) { return w != v && c.halfspace.evaluate(w) == 0; });
      if (alone) return v;
    }
  }
  return verts.front();
}

// Breakdown of the univariate T* from order statistics: m copies at the far
// right until the upper end of the median interval is a contaminating point.
BreakdownReport univariate_breakdown(const DataSet& ds, long m_max) {
  BreakdownReport r;
  r.n = static_cast<long>(ds.size());
  r.d = 1;
  r.lower = lower_bound(ds);
  r.upper = Rational(1, 2);
  std::vector<Rational> v;
  for (const auto& p : ds) v.push_back(p(0));
  std::sort(v.begin(), v.end());
  for (long m = 1; m <= m_max; ++m) {
    const long big_n = r.n + m;
    // every contaminating point sits above max(X)
    std::vector<Rational> z = v;
    for (long i = 0; i < m; ++i) z.push_back(v.back() + 1);
    std::vector<Point> pts;
    for (const auto& t : z) pts.push_back(make_vec({t}));
    const long k = max_depth(DataSet(pts)).num;
    if (big_n - k + 1 > r.n) {
      r.exact_m = m;
      r.upper = Rational(m, big_n);
      break;
    }
  }
  return r;
}

}  // namespace

ProjectionFrame projection_frame(const Direction& u) {
  const int d = static_cast<int>(u.dim());
  if (d < 2) throw std::invalid_argument("projection_frame: d must be at least 2");
  const auto cols = orthocomplement<Rational>(u.vec());
  ProjectionFrame f{u, Mat(d, d - 1)};
  for (int j = 0; j < d - 1; ++j) f.basis.col(j) = Direction(cols[static_cast<std::size_t>(j)]).canonical();
  return f;
}

DataSet project_dataset(const DataSet& ds, const ProjectionFrame& frame) {
  if (frame.basis.rows() != ds.dim()) throw std::invalid_argument("project_dataset: dimension mismatch");
  std::vector<Point> out;
  out.reserve(ds.size());
  for (const auto& p : ds) out.push_back(frame.basis.transpose() * p);
  return DataSet(std::move(out));
}

DepthValue projected_lambda(const DataSet& ds, const Direction& u) {
  if (ds.dim() != 2 && ds.dim() != 3) throw std::invalid_argument("projected_lambda: d must be 2 or 3");
  // Depth is unchanged by positive column scaling; integer columns keep the
  // planar sweep on machine integers.
  ProjectionFrame f = projection_frame(u);
  for (int j = 0; j < f.basis.cols(); ++j) {
    Integer den = 1;
    for (int i = 0; i < f.basis.rows(); ++i) {
      const Integer q = boost::multiprecision::denominator(f.basis(i, j));
      den = den / boost::multiprecision::gcd(den, q) * q;
    }
    f.basis.col(j) *= Rational(den);
  }
  return max_depth(project_dataset(ds, f));
}

Rational bound_ratio(const DepthValue& lambda) { return Rational(lambda.num, lambda.den + lambda.num); }

std::vector<Direction> critical_directions_2d(const DataSet& ds) {
  if (ds.dim() != 2) throw std::invalid_argument("critical_directions_2d: d must be 2");
  std::vector<Vec> crit;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (std::size_t j = i + 1; j < ds.size(); ++j) {
      const Vec g = ds[j] - ds[i];
      if (!g.isZero()) crit.push_back(Direction(upper_half(g)).canonical());
    }
  }
  std::sort(crit.begin(), crit.end(), [](const Vec& a, const Vec& b) { return compare_angle(a, b) < 0; });
  crit.erase(std::unique(crit.begin(), crit.end(), [](const Vec& a, const Vec& b) { return compare_angle(a, b) == 0; }),
             crit.end());
  std::vector<Direction> out;
  if (crit.empty()) {
    out.emplace_back(make_vec({1, 0}));
    return out;
  }
  for (std::size_t i = 0; i < crit.size(); ++i) {
    out.emplace_back(crit[i]);
    const Vec next = i + 1 < crit.size() ? crit[i + 1] : Vec(-crit.front());
    out.emplace_back(upper_half(Vec(crit[i] + next)));
  }
  return out;
}

UpperBound upper_bound(const DataSet& ds, const DirectionSearchConfig& cfg) {
  const int d = ds.dim();
  if (d != 2 && d != 3) throw std::invalid_argument("upper_bound: d must be 2 or 3");
  require_full_dimension(ds, "upper_bound");
  const long n = static_cast<long>(ds.size());

  std::optional<UpperBound> best;
  auto consider = [&](const Direction& u) {
    const DepthValue l = projected_lambda(ds, u);
    if (!best || l < best->inf_lambda) best = UpperBound{0, l, u, true};
  };
  if (d == 2) {
    // Every univariate sample has maximal depth at least ceil(n/2)/n, so a
    // direction with pairwise distinct projections is already optimal.
    consider(generic_direction_2d(ds));
    if (best->inf_lambda.num != (n + 1) / 2) {
      for (const auto& u : critical_directions_2d(ds)) consider(u);
    }
  } else {
    best.reset();
    for (int j = 0; j < 3; ++j) {
      Vec e = Vec::Zero(3);
      e(j) = 1;
      consider(Direction(e));
    }
    std::vector<Vec> diffs;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      for (std::size_t j = i + 1; j < ds.size(); ++j) {
        if (ds[i] != ds[j]) diffs.push_back(ds[j] - ds[i]);
      }
    }
    std::size_t used = 0;
    for (std::size_t a = 0; a < diffs.size() && used < cfg.max_pairs; ++a) {
      for (std::size_t b = a + 1; b < diffs.size() && used < cfg.max_pairs; ++b) {
        const Vec c = cross3<Rational>(diffs[a], diffs[b]);
        if (c.isZero()) continue;
        ++used;
        consider(Direction(c));
      }
    }
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> g;
    for (int k = 0; k < cfg.net_size; ++k) {
      Vec u(3);
      for (int j = 0; j < 3; ++j) u(j) = snap(g(rng), 20);
      if (!u.isZero()) consider(Direction(u));
    }
    best->exact = false;
  }
  best->bound = bound_ratio(best->inf_lambda);
  return *best;
}

Rational lower_bound(const DataSet& ds) {
  if (ds.dim() > 1) require_full_dimension(ds, "lower_bound");
  return bound_ratio(max_depth(ds));
}

Point line_point(const ProjectionFrame& frame, const Point& x0, const Rational& gamma) {
  Point p = gamma * frame.u.vec();
  for (Eigen::Index j = 0; j < frame.basis.cols(); ++j) {
    const Vec a = frame.basis.col(j);
    p += (x0(j) / a.dot(a)) * a;
  }
  return p;
}

ContaminationPlan build_attack(const DataSet& ds, const Direction& u, const Rational& distance, std::optional<long> m) {
  const int d = ds.dim();
  if (d != 2 && d != 3) throw std::invalid_argument("build_attack: d must be 2 or 3");
  if (u.dim() != d) throw std::invalid_argument("build_attack: dimension mismatch");
  if (distance <= 0) throw std::invalid_argument("build_attack: distance must be positive");
  const ProjectionFrame frame = projection_frame(u);
  const DataSet projected = project_dataset(ds, frame);
  const MedianResult med = median_region(projected);

  ContaminationPlan plan{u, choose_x0(projected, med), Point(), 0, distance, 0};
  plan.m = m ? *m : ceil_count(static_cast<long>(ds.size()), med.lambda_star);
  if (plan.m < 1) throw std::invalid_argument("build_attack: m must be positive");
  Rational top = 0;
  for (Eigen::Index j = 0; j < u.dim(); ++j) top = std::max(top, abs(u.vec()(j)));
  plan.gamma = distance / top;
  plan.y0 = line_point(frame, plan.x0_projected, plan.gamma);
  while (convex_hull_contains(ds, plan.y0)) {
    plan.gamma *= 2;
    plan.y0 = line_point(frame, plan.x0_projected, plan.gamma);
  }
  return plan;
}

ContaminationPlan rescale(const DataSet& ds, const ContaminationPlan& plan, const Rational& factor) {
  ContaminationPlan p = plan;
  p.gamma *= factor;
  p.distance_scale *= factor;
  p.y0 = line_point(projection_frame(plan.u), plan.x0_projected, p.gamma);
  if (convex_hull_contains(ds, p.y0)) throw std::invalid_argument("rescale: contamination moved inside the hull");
  return p;
}

DataSet contaminate(const DataSet& ds, const ContaminationPlan& plan) {
  std::vector<Point> pts = ds.points();
  for (long i = 0; i < plan.m; ++i) pts.push_back(plan.y0);
  return DataSet(std::move(pts));
}

AttackVerification verify_attack(const DataSet& ds, const ContaminationPlan& plan) {
  if (plan.y0.size() != ds.dim() || plan.u.dim() != ds.dim()) {
    throw std::invalid_argument("verify_attack: plan does not match the dataset dimension");
  }
  if (convex_hull_contains(ds, plan.y0)) throw std::invalid_argument("verify_attack: y0 lies inside the hull");
  const DataSet z = contaminate(ds, plan);
  const long big_n = static_cast<long>(z.size());
  AttackVerification v;
  v.depth_at_y0 = tukey_depth(plan.y0, z).depth;
  v.sup_depth_inside = DepthValue(max_count_inside(ds, z), big_n);
  const Escape e = escape_check(ds, plan);
  v.escaped = e.escaped;
  v.contaminated_median = e.median;
  v.distance_sq = e.distance_sq;
  v.radius_sq = e.radius_sq;
  v.growth = e.growth;
  return v;
}

std::vector<std::string> BreakdownReport::csv_header() const {
  return {"n", "d", "lower", "upper", "exact_m", "attack_u", "m", "scale", "escaped"};
}

std::vector<std::string> BreakdownReport::csv_row() const {
  std::vector<std::string> row{std::to_string(n), std::to_string(d), to_string(lower), to_string(upper),
                               exact_m ? std::to_string(*exact_m) : "unknown"};
  if (witness_plan) {
    row.push_back(to_string(witness_plan->u.vec()));
    row.push_back(std::to_string(witness_plan->m));
    row.push_back(to_string(witness_plan->distance_scale));
  } else {
    row.insert(row.end(), {"", "", ""});
  }
  row.push_back(exact_m ? "true" : "false");
  return row;
}

BreakdownReport exact_breakdown(const DataSet& ds, long m_max, const std::vector<Rational>& scales) {
  if (ds.dim() == 1) return univariate_breakdown(ds, m_max);
  if (ds.dim() != 2) throw std::invalid_argument("exact_breakdown: exhaustive search supports d = 2");
  if (scales.empty()) throw std::invalid_argument("exact_breakdown: empty scale schedule");
  BreakdownReport r;
  r.n = static_cast<long>(ds.size());
  r.d = 2;
  r.lower = lower_bound(ds);
  const UpperBound ub = upper_bound(ds);
  r.upper = ub.bound;
  r.upper_exact = ub.exact;

  std::vector<Direction> dirs = critical_directions_2d(ds);
  dirs.emplace_back(make_vec({1, 0}));
  dirs.emplace_back(make_vec({0, 1}));
  for (long m = 1; m <= m_max; ++m) {
    for (const auto& u : dirs) {
      const ContaminationPlan base = build_attack(ds, u, scales.front(), m);
      bool all = true;
      for (const auto& s : scales) {
        const ContaminationPlan p = build_attack(ds, u, s, m);
        if (!escape_check(ds, p).escaped) {
          all = false;
          break;
        }
      }
      if (all) {
        r.exact_m = m;
        r.witness_plan = base;
        return r;
      }
    }
  }
  return r;
}

}  // namespace tukey
