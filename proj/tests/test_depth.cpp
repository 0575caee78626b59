#include "oracles.hpp"
#include "tukey/depth.hpp"

#include <doctest.h>

using namespace tukey;

namespace {

DataSet ds_a() { return DataSet({make_vec({0, 0}), make_vec({2, 0}), make_vec({1, 1}), make_vec({1, 1})}); }

DataSet line(std::initializer_list<int> xs) {
  std::vector<Point> pts;
  for (int x : xs) pts.push_back(make_vec({x}));
  return DataSet(std::move(pts));
}

DataSet transform(const DataSet& ds, const Mat& a, const Vec& b) {
  std::vector<Point> pts;
  for (const auto& p : ds) pts.push_back(a * p + b);
  return DataSet(std::move(pts));
}

Point random_probe(oracle::Generator& g, int d) {
  Point x(d);
  for (int j = 0; j < d; ++j) x(j) = g.coord(8) * Rational(5, 4);
  return x;
}

}  // namespace

TEST_SUITE("depth") {

TEST_CASE("depth values") {
  CHECK(DepthValue(2, 4) == DepthValue(1, 2));
  CHECK(DepthValue(1, 3) < DepthValue(1, 2));
  CHECK(DepthValue::parse("3/5").num == 3);
  CHECK(DepthValue::parse("1") == DepthValue(1, 1));
  CHECK_THROWS(DepthValue(5, 4));
  CHECK(ceil_count(4, DepthValue(1, 2)) == 2);
  CHECK(ceil_count(5, DepthValue(1, 3)) == 2);
}

TEST_CASE("directional quantile") {
  CHECK(directional_quantile(line({1, 2, 3, 4, 5}), Direction(make_vec({1})), DepthValue(3, 5)) == 3);
  const Direction up(make_vec({0, 1}));
  CHECK(directional_quantile(ds_a(), up, DepthValue(1, 2)) == 0);
  CHECK(directional_quantile(ds_a(), up, DepthValue(3, 4)) == 1);
  CHECK_THROWS(directional_quantile(ds_a(), up, DepthValue(0, 4)));
}

TEST_CASE("quantile is nondecreasing in tau") {
  oracle::Generator g(21);
  for (int t = 0; t < 50; ++t) {
    const DataSet ds = g.degenerate(2, 9);
    Vec u(2);
    do {
      u << g.coord(3), g.coord(3);
    } while (u.isZero());
    for (long k = 1; k < 9; ++k) {
      CHECK(directional_quantile(ds, Direction(u), DepthValue(k, 9)) <=
            directional_quantile(ds, Direction(u), DepthValue(k + 1, 9)));
    }
  }
}

TEST_CASE("depth examples") {
  CHECK(tukey_depth(make_vec({3}), line({1, 2, 3, 4, 5})).depth == DepthValue(3, 5));

  const DepthResult mid = tukey_depth(make_vec({1, 1}), ds_a());
  CHECK(mid.depth == DepthValue(2, 4));
  CHECK(mid.witness.count_le == 2);

  const DepthResult corner = tukey_depth(make_vec({0, 0}), ds_a());
  CHECK(corner.depth == DepthValue(1, 4));
  CHECK(count_le(ds_a(), corner.witness.direction.vec(), make_vec({0, 0})) == 1);

  CHECK(tukey_depth(make_vec({5, 5}), ds_a()).depth == DepthValue(0, 4));
  CHECK_THROWS(tukey_depth(make_vec({1, 1, 1}), ds_a()));
}

TEST_CASE("optimal direction cones") {
  const auto one = optimal_direction_cone(make_vec({2}), line({1, 2, 3}));
  CHECK(one.size() == 2);
  for (const auto& u : one) CHECK(count_le(line({1, 2, 3}), u.vec(), make_vec({2})) == 2);

  const Point x = make_vec({1, 1});
  bool found = false;
  for (const auto& u : optimal_direction_cone(x, ds_a())) {
    CHECK(count_le(ds_a(), u.vec(), x) == 2);
    found = found || (u.vec().dot(ds_a()[0]) > u.vec().dot(x) && u.vec().dot(ds_a()[1]) > u.vec().dot(x));
  }
  CHECK(found);
  for (const auto& u : optimal_direction_cone(make_vec({0, 0}), ds_a())) {
    CHECK(count_le(ds_a(), u.vec(), make_vec({0, 0})) == 1);
  }
}

TEST_CASE("planar sweep agrees with the critical-direction oracle") {
  oracle::Generator g(1);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 3 + static_cast<std::size_t>(t % 10);
    const DataSet ds = g.degenerate(2, n);
    std::vector<Point> probes(ds.begin(), ds.end());
    probes.push_back(random_probe(g, 2));
    probes.push_back(Rational(1, 2) * (ds[0] + ds[1]));
    for (const auto& x : probes) {
      const DepthResult r = tukey_depth(x, ds);
      CHECK(r.depth.den == static_cast<long>(n));
      CHECK(r.depth.num == oracle::depth_2d(x, ds));
      CHECK(count_le(ds, r.witness.direction.vec(), x) == r.depth.num);
    }
  }
}

TEST_CASE("3-D depth agrees with the subset LP oracle") {
  oracle::Generator g(2);
  for (int t = 0; t < 40; ++t) {
    const DataSet ds = g.degenerate(3, 4 + static_cast<std::size_t>(t % 4), 2);
    for (const Point& x : {Point(ds[0]), random_probe(g, 3), Point(Rational(1, 3) * (ds[0] + ds[1] + ds[2]))}) {
      const DepthResult r = tukey_depth(x, ds);
      CHECK(r.depth.num == oracle::depth_lp(x, ds));
      CHECK(count_le(ds, r.witness.direction.vec(), x) == r.depth.num);
    }
  }
}

TEST_CASE("affine invariance") {
  oracle::Generator g(8);
  for (int t = 0; t < 60; ++t) {
    const int d = 2 + t % 2;
    const DataSet ds = g.degenerate(d, 6 + static_cast<std::size_t>(t % 3));
    const Mat a = g.nonsingular(d);
    Vec b(d);
    for (int j = 0; j < d; ++j) b(j) = g.coord(5);
    const DataSet moved = transform(ds, a, b);
    for (const Point& x : {Point(ds[1]), random_probe(g, d)}) {
      CHECK(tukey_depth(Vec(a * x + b), moved).depth == tukey_depth(x, ds).depth);
    }
  }
}

TEST_CASE("zero depth exactly outside the hull") {
  oracle::Generator g(9);
  for (int t = 0; t < 100; ++t) {
    const int d = 2 + t % 2;
    const DataSet ds = g.degenerate(d, 6);
    const Point x = random_probe(g, d);
    CHECK((tukey_depth(x, ds).depth.num == 0) == !convex_hull_contains(ds, x));
  }
}

TEST_CASE("approximate depth never undercuts the exact value") {
  oracle::Generator g(12);
  for (int t = 0; t < 30; ++t) {
    const DataSet ds = g.degenerate(2, 8);
    const Point x = random_probe(g, 2);
    const DepthResult approx = approximate_depth(x, ds, 64, static_cast<std::uint64_t>(t));
    CHECK_FALSE(approx.exact);
    CHECK(approx.depth >= tukey_depth(x, ds).depth);
  }
}

TEST_CASE("population depth from draws") {
  std::vector<Eigen::VectorXd> draws;
  for (int i = 0; i < 400; ++i) {
    const double a = 2.0 * 3.141592653589793 * i / 400.0;
    draws.push_back(Eigen::Vector2d(std::cos(a), std::sin(a)));
  }
  const auto centre = population_depth_estimate(draws, Eigen::Vector2d(0, 0));
  CHECK(centre.estimate == doctest::Approx(0.5).epsilon(0.02));
  CHECK(population_depth_estimate(draws, Eigen::Vector2d(3, 0)).estimate == 0.0);
  CHECK(direction_net(2, 4).size() == 4);
}

}
