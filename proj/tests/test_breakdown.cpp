#include "oracles.hpp"
#include "tukey/breakdown.hpp"

#include <doctest.h>

using namespace tukey;

namespace {

DataSet ds_a() { return DataSet({make_vec({0, 0}), make_vec({2, 0}), make_vec({1, 1}), make_vec({1, 1})}); }
DataSet ds_b() { return DataSet({make_vec({0, 0}), make_vec({1, 0}), make_vec({0, 1}), make_vec({1, 1})}); }

DataSet line(std::initializer_list<int> xs) {
  std::vector<Point> pts;
  for (int x : xs) pts.push_back(make_vec({x}));
  return DataSet(std::move(pts));
}

// max_t min(#{v <= t}, #{v >= t}) over the sample values.
long max_depth_1d(const std::vector<Rational>& v) {
  long best = 0;
  for (const auto& t : v) {
    long le = 0, ge = 0;
    for (const auto& s : v) {
      le += s <= t ? 1 : 0;
      ge += s >= t ? 1 : 0;
    }
    best = std::max(best, std::min(le, ge));
  }
  return best;
}

// inf over unit b of the maximal depth of {b.X_i}: b perpendicular to some
// X_i - X_j, plus bisectors of angularly consecutive such b.
long inf_projected_2d(const DataSet& ds) {
  std::vector<Vec> crit{make_vec({1, 0}), make_vec({-1, 0})};
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (std::size_t j = i + 1; j < ds.size(); ++j) {
      if (ds[i] == ds[j]) continue;
      const Vec b = oracle::rot90(Vec(ds[j] - ds[i]));
      crit.push_back(b);
      crit.push_back(Vec(-b));
    }
  }
  std::sort(crit.begin(), crit.end(), oracle::angle_less);
  auto depth_along = [&](const Vec& b) {
    std::vector<Rational> v;
    for (const auto& p : ds) v.push_back(b.dot(p));
    return max_depth_1d(v);
  };
  long best = static_cast<long>(ds.size());
  for (std::size_t i = 0; i < crit.size(); ++i) {
    const Vec& a = crit[i];
    Vec mid = a + crit[(i + 1) % crit.size()];
    if (mid.isZero()) mid = oracle::rot90(a);
    best = std::min({best, depth_along(a), depth_along(mid)});
  }
  return best;
}

const std::vector<Rational> kScales{1000, 10000, 100000};

}  // namespace

TEST_SUITE("breakdown") {

TEST_CASE("projection frames") {
  CHECK(projection_frame(Direction(make_vec({0, 1}))).basis == Mat(make_vec({1, 0})));
  const Mat b = projection_frame(Direction(make_vec({1, 1}))).basis;
  CHECK(b(0, 0) == -b(1, 0));
  CHECK(b(0, 0) != 0);
  Mat e3(3, 2);
  e3 << 0, 0, 1, 0, 0, 1;
  CHECK(projection_frame(Direction(make_vec({1, 0, 0}))).basis == e3);

  oracle::Generator g(61);
  for (int t = 0; t < 50; ++t) {
    Vec u(3);
    do {
      u << g.coord(4), g.coord(4), g.coord(4);
    } while (u.isZero());
    const Mat basis = projection_frame(Direction(u)).basis;
    CHECK(rank<Rational>(basis) == 2);
    CHECK((basis.transpose() * u).isZero());
    CHECK(basis.col(0).dot(basis.col(1)) == 0);
  }
}

TEST_CASE("projected samples") {
  const DataSet p = project_dataset(ds_a(), projection_frame(Direction(make_vec({0, 1}))));
  CHECK(p.points() == std::vector<Point>{make_vec({0}), make_vec({2}), make_vec({1}), make_vec({1})});

  const DataSet sym({make_vec({1, 2}), make_vec({-1, -2}), make_vec({3, -1}), make_vec({-3, 1})});
  const DataSet q = project_dataset(sym, projection_frame(Direction(make_vec({2, 5}))));
  for (const auto& v : q) CHECK(std::find(q.begin(), q.end(), Point(-v)) != q.end());
}

TEST_CASE("projected maximal depth") {
  // {0, 2, 1, 1}: the value 1 has three points on each closed side
  CHECK(projected_lambda(ds_a(), Direction(make_vec({0, 1}))) == DepthValue(3, 4));
  CHECK(projected_lambda(ds_a(), Direction(make_vec({1, 0}))) == DepthValue(2, 4));
  const DataSet five({make_vec({0, 0}), make_vec({3, 1}), make_vec({1, 4}), make_vec({-2, 3}), make_vec({5, -2})});
  CHECK(projected_lambda(five, Direction(make_vec({1, 7}))) == DepthValue(3, 5));
}

TEST_CASE("bounds examples") {
  CHECK(bound_ratio(DepthValue(1, 2)) == Rational(1, 3));
  CHECK(lower_bound(ds_a()) == Rational(1, 3));
  CHECK(lower_bound(line({1, 2, 3, 4, 5})) == Rational(3, 8));
  CHECK(lower_bound(ds_b()) == Rational(1, 3));

  const UpperBound a = upper_bound(ds_a());
  CHECK(a.inf_lambda == DepthValue(1, 2));
  CHECK(a.bound == Rational(1, 3));
  CHECK(a.exact);

  const DataSet on_line({make_vec({1, 0}), make_vec({2, 0}), make_vec({3, 0})});
  CHECK_THROWS_AS(upper_bound(on_line), std::invalid_argument);
}

TEST_CASE("replicated triangle keeps a middle vertex in every projection") {
  for (long copies : {1, 2, 3}) {
    std::vector<Point> pts;
    for (long c = 0; c < copies; ++c) {
      pts.push_back(make_vec({0, 0}));
      pts.push_back(make_vec({1, 0}));
      pts.push_back(make_vec({0, 1}));
    }
    const UpperBound up = upper_bound(DataSet(pts));
    CHECK(up.inf_lambda == DepthValue(2, 3));
    CHECK(up.bound == Rational(2, 5));
  }
}

TEST_CASE("centrally symmetric samples without a centre point pin the bound at one third") {
  oracle::Generator g(73);
  for (int t = 0; t < 30; ++t) {
    const DataSet half = g.degenerate(2, 3 + static_cast<std::size_t>(t % 5));
    std::vector<Point> pts;
    for (const auto& p : half) {
      if (p.isZero()) continue;
      pts.push_back(p);
      pts.push_back(-p);
    }
    const DataSet sym(pts);
    if (affine_dimension(sym) < 2) continue;
    CHECK(upper_bound(sym).bound == Rational(1, 3));
  }
}

TEST_CASE("infimum over directions matches the pairwise oracle") {
  oracle::Generator g(67);
  for (int t = 0; t < 80; ++t) {
    const DataSet ds = g.degenerate(2, 4 + static_cast<std::size_t>(t % 9));
    const UpperBound up = upper_bound(ds);
    CHECK(up.inf_lambda.num == inf_projected_2d(ds));
    CHECK(projected_lambda(ds, up.argmin) == up.inf_lambda);
    CHECK(lower_bound(ds) <= up.bound);
    for (const auto& u : critical_directions_2d(ds)) {
      CHECK((u.vec()(1) > 0 || (u.vec()(1) == 0 && u.vec()(0) > 0)));
    }
  }
}

TEST_CASE("attack construction") {
  SUBCASE("vertical direction on sample A") {
    const ContaminationPlan p = build_attack(ds_a(), Direction(make_vec({0, 1})), 1000000);
    CHECK(p.x0_projected == make_vec({1}));
    CHECK(p.m == 3);
    CHECK(p.y0 == make_vec({1, 1000000}));
    CHECK_FALSE(convex_hull_contains(ds_a(), p.y0));
    CHECK(verify_attack(ds_a(), p).escaped);
  }
  SUBCASE("vertical direction on sample B") {
    const ContaminationPlan p = build_attack(ds_b(), Direction(make_vec({0, 1})), 1000);
    CHECK(p.x0_projected == make_vec({0}));
    CHECK(p.m == 2);
  }
  SUBCASE("points on the line") {
    const ProjectionFrame f = projection_frame(Direction(make_vec({1, 2})));
    const ContaminationPlan p = build_attack(ds_b(), f.u, 1000);
    const Point a = line_point(f, p.x0_projected, 0);
    CHECK(f.basis.transpose() * a == p.x0_projected);
    CHECK(p.y0 - a == p.gamma * f.u.vec());
    const ContaminationPlan far = rescale(ds_b(), p, 10);
    CHECK(far.gamma == 10 * p.gamma);
    CHECK(contaminate(ds_b(), p).size() == ds_b().size() + static_cast<std::size_t>(p.m));
  }
}

TEST_CASE("attack verification on sample A") {
  const Direction u(make_vec({1, 0}));
  const ContaminationPlan p = build_attack(ds_a(), u, 1000);
  CHECK(p.m == 2);
  const AttackVerification v = verify_attack(ds_a(), p);
  CHECK(v.sup_depth_inside <= DepthValue(2, 6));
  CHECK(v.depth_at_y0 == DepthValue(2, 6));
  CHECK(v.escaped);

  CHECK_FALSE(verify_attack(ds_a(), build_attack(ds_a(), u, 1000, 1)).escaped);

  ContaminationPlan inside = p;
  inside.y0 = make_vec({1, Rational(1, 2)});
  CHECK_THROWS(verify_attack(ds_a(), inside));
}

TEST_CASE("exact breakdown examples") {
  const BreakdownReport a = exact_breakdown(ds_a(), 4, kScales);
  REQUIRE(a.exact_m.has_value());
  CHECK(*a.exact_m == 2);
  CHECK(a.lower == Rational(1, 3));
  CHECK(a.upper == Rational(1, 3));

  const BreakdownReport b = exact_breakdown(ds_b(), 4, kScales);
  REQUIRE(b.exact_m.has_value());
  CHECK(*b.exact_m == 2);

  const BreakdownReport one = exact_breakdown(line({1, 2, 3}), 6, kScales);
  REQUIRE(one.exact_m.has_value());
  CHECK(*one.exact_m == 3);
  CHECK(one.lower <= Rational(3, 6));
  CHECK(one.csv_row().size() == one.csv_header().size());
}

TEST_CASE("attack soundness on random samples") {
  oracle::Generator g(71);
  for (int t = 0; t < 12; ++t) {
    const DataSet ds = g.degenerate(2, 5 + static_cast<std::size_t>(t % 4));
    const long n = static_cast<long>(ds.size());
    const UpperBound up = upper_bound(ds);
    const ContaminationPlan p = build_attack(ds, up.argmin, 1000);
    CHECK(p.m == ceil_count(n, up.inf_lambda));
    const AttackVerification v = verify_attack(ds, p);
    CHECK(v.sup_depth_inside <= DepthValue(up.inf_lambda.num, n + p.m));
    CHECK(v.escaped);

    const BreakdownReport r = exact_breakdown(ds, n, kScales);
    REQUIRE(r.exact_m.has_value());
    const Rational eps(*r.exact_m, n + *r.exact_m);
    CHECK(r.lower <= eps);
    CHECK(eps <= r.upper);
  }
}

}
