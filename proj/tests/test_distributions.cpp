#include "oracles.hpp"
#include "tukey/distributions.hpp"

#include <doctest.h>

#include <cmath>
#include <memory>

using namespace tukey;

namespace {

DistributionSpec spec_of(decltype(DistributionSpec::law) law, int snap_bits = 53) {
  return DistributionSpec{std::move(law), {}, snap_bits};
}

std::shared_ptr<const DistributionSpec> ball() {
  return std::make_shared<const DistributionSpec>(spec_of(UniformBall{2, 1.0}));
}

DistributionSpec atom() { return spec_of(AtomOnHyperplane{2, 0.4, 1.0, ball()}); }

const std::vector<double> kWidths{1e-1, 1e-2, 1e-3};

}  // namespace

TEST_SUITE("distributions") {

TEST_CASE("sphere draws keep their radius after snapping") {
  const DataSet ds = sample(spec_of(UniformSphere{2, 2.0}), 1000, 3);
  CHECK(ds.snap_bits == 53);
  for (const auto& p : ds) {
    const double r = std::hypot(to_double(p(0)), to_double(p(1)));
    CHECK(std::abs(r - 2.0) <= std::ldexp(1.0, -50));
  }
}

TEST_CASE("mixture support is the unit ball and the radius-two sphere") {
  const auto draws = sample_double(spec_of(BallSphereMixture{2}), 10000, 5);
  std::size_t inner = 0;
  for (const auto& x : draws) {
    const double r = x.norm();
    CHECK((r <= 1.0 + 1e-12 || std::abs(r - 2.0) <= 1e-12));
    inner += r <= 1.0 ? 1 : 0;
  }
  CHECK(std::abs(static_cast<double>(inner) / 1e4 - 0.5) <= 0.02);
}

TEST_CASE("atom mass lies exactly on the hyperplane") {
  const std::size_t n = 20000;
  const DataSet ds = sample(atom(), n, 7);
  std::size_t on = 0;
  for (const auto& p : ds) on += p(0) == 0 ? 1 : 0;
  const double p = static_cast<double>(on) / static_cast<double>(n);
  CHECK(std::abs(p - 0.4) <= 3.0 * std::sqrt(0.4 * 0.6 / static_cast<double>(n)));
}

TEST_CASE("degenerate sampler produces duplicates") {
  const DistributionSpec s = spec_of(DegenerateSampler{ball(), 0.2, 0.1});
  const DataSet ds = sample(s, 100, 9);
  long dup = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (std::size_t j = i + 1; j < ds.size(); ++j) dup += ds[i] == ds[j] ? 1 : 0;
  }
  CHECK(dup >= 1);
  CHECK_THROWS_AS(sample(spec_of(DegenerateSampler{ball(), 1.5, 0.0}), 10, 1), std::invalid_argument);
}

TEST_CASE("seed determinism") {
  for (const auto& s : {spec_of(UniformBall{3, 1.0}), spec_of(BallSphereMixture{2}), atom(),
                        spec_of(DegenerateSampler{ball(), 0.3, 0.2}, 6)}) {
    CHECK(sample(s, 50, 42).points() == sample(s, 50, 42).points());
    CHECK_FALSE(sample(s, 50, 42).points() == sample(s, 50, 43).points());
  }
  // draw i depends only on (seed, i)
  const auto long_run = sample_double(spec_of(UniformBall{2, 1.0}), 20, 4);
  const auto short_run = sample_double(spec_of(UniformBall{2, 1.0}), 10, 4);
  for (std::size_t i = 0; i < short_run.size(); ++i) CHECK(long_run[i] == short_run[i]);
}

TEST_CASE("spec parsing") {
  const DistributionSpec s = parse_distribution({{"variant", "AtomOnHyperplane"}, {"d", "2"}, {"m0", "0.4"}});
  CHECK(s.hyperplane_mass() == doctest::Approx(0.4));
  CHECK(s.dim() == 2);
  const DistributionSpec c =
      parse_distribution({{"variant", "DiscreteCloud"}, {"points", "0 0; 1 0; 2 0"}, {"weights", "1 1 1"}});
  CHECK(c.dim() == 2);
  CHECK_THROWS_AS(parse_distribution({{"variant", "Cauchy"}}), std::invalid_argument);
}

TEST_CASE("halfspace symmetry probe") {
  const Eigen::VectorXd o = Eigen::VectorXd::Zero(2);
  CHECK(halfspace_symmetry_probe(spec_of(UniformBall{2, 1.0}), o, 180, 100000, 1).verdict == "PASS");
  CHECK(halfspace_symmetry_probe(spec_of(BallSphereMixture{2}), o, 180, 100000, 1).verdict == "PASS");

  DiscreteCloud cloud{{Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0), Eigen::Vector2d(2, 0)}, {1, 1, 1}};
  const ProbeReport r = halfspace_symmetry_probe(spec_of(cloud), Eigen::Vector2d(2, 0), 180, 100000, 1);
  CHECK(r.verdict == "FAIL");
  CHECK(r.estimate == doctest::Approx(1.0 / 3.0).epsilon(0.02));
  CHECK(r.half_width == doctest::Approx(binomial_half_width(r.estimate, r.draws)));
}

TEST_CASE("smoothness probe") {
  const Eigen::VectorXd o = Eigen::VectorXd::Zero(2);
  CHECK(smoothness_probe(spec_of(BallSphereMixture{2}), o, kWidths, 180, 100000, 2).verdict == "SMOOTH");
  CHECK(smoothness_probe(spec_of(UniformBall{2, 1.0}), Eigen::Vector2d(0.3, -0.5), kWidths, 180, 100000, 2).verdict ==
        "SMOOTH");
  const ProbeReport r = smoothness_probe(atom(), o, kWidths, 180, 100000, 2);
  CHECK(r.verdict == "NON-SMOOTH");
  REQUIRE(r.witness.has_value());
  CHECK(std::abs((*r.witness)(1)) < 1e-9);
  CHECK(r.series.back() == doctest::Approx(0.4).epsilon(0.05));
}

TEST_CASE("depth continuity probe") {
  const Eigen::VectorXd o = Eigen::VectorXd::Zero(2);
  const std::vector<double> radii{1e-1, 1e-2, 1e-3};
  const ProbeReport jump = depth_continuity_probe(atom(), o, Eigen::Vector2d(1, 0), radii, 100000, 3);
  CHECK(jump.verdict == "DISCONTINUOUS");
  CHECK(jump.estimate >= 0.47);
  for (double v : jump.series) CHECK(v <= 0.33);
  CHECK(depth_continuity_probe(spec_of(UniformBall{2, 1.0}), o, Eigen::Vector2d(1, 0), radii, 100000, 3).verdict ==
        "CONTINUOUS");
  CHECK(depth_continuity_probe(spec_of(BallSphereMixture{2}), o, Eigen::Vector2d(0, 1), radii, 100000, 3).verdict ==
        "CONTINUOUS");
}

TEST_CASE("population depth estimates") {
  const auto centre = population_depth_estimate(spec_of(UniformBall{2, 1.0}), Eigen::Vector2d(0, 0), 100000, 4);
  CHECK(std::abs(centre.estimate - 0.5) <= 0.01);
  CHECK(population_depth_estimate(spec_of(UniformBall{2, 1.0}), Eigen::Vector2d(3, 0), 100000, 4).estimate == 0.0);
  const auto mix = population_depth_estimate(spec_of(BallSphereMixture{2}), Eigen::Vector2d(0, 0), 100000, 4);
  CHECK(std::abs(mix.estimate - 0.5) <= 0.01);
}

TEST_CASE("shell mass") {
  const ProbeReport r = shell_mass_probe(spec_of(BallSphereMixture{2}), 2.0, 10000, 5);
  CHECK(std::abs(r.estimate - 0.5) <= 0.02);
}

TEST_CASE("symmetrized samples hold half the points on every closed side") {
  oracle::Generator g(79);
  for (int t = 0; t < 40; ++t) {
    const int d = 2 + t % 2;
    const DataSet ds = g.degenerate(d, 5);
    Point c(d);
    for (int j = 0; j < d; ++j) c(j) = g.coord(4);
    const DataSet sym = symmetrize(ds, c);
    CHECK(sym.size() == 2 * ds.size());
    const long m = min_halfspace_count(sym, c);
    CHECK(2 * m >= static_cast<long>(sym.size()));
    if (d == 2) CHECK(m == oracle::depth_2d(c, sym));
  }
}

}
