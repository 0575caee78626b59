#pragma once

#include "tukey/depth.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace tukey {

struct DistributionSpec;

struct UniformBall {
  int d = 2;
  double radius = 1.0;
};

struct UniformSphere {
  int d = 2;
  double radius = 1.0;
};

/// eta Z1 + (1 - eta) Z2 with eta ~ Bernoulli(1/2), Z1 uniform in the unit
/// ball, Z2 uniform on the sphere of radius 2.
struct BallSphereMixture {
  int d = 2;
};

/// With probability m0 the draw lies on {x_1 = theta0_1}, uniform in a
/// (d-1)-ball of radius `radius` around theta0; otherwise it comes from `base`.
struct AtomOnHyperplane {
  int d = 2;
  double m0 = 0.4;
  double radius = 1.0;
  std::shared_ptr<const DistributionSpec> base;
};

struct DiscreteCloud {
  std::vector<Eigen::VectorXd> points;
  std::vector<double> weights;
};

/// Draws from `base`, then replaces points by copies of earlier ones with
/// probability dup_rate and moves the third point of consecutive triples onto
/// the line of the first two with probability collinear_rate.
struct DegenerateSampler {
  std::shared_ptr<const DistributionSpec> base;
  double dup_rate = 0.0;
  double collinear_rate = 0.0;
};

struct DistributionSpec {
  std::variant<UniformBall, UniformSphere, BallSphereMixture, AtomOnHyperplane, DiscreteCloud, DegenerateSampler> law;
  Eigen::VectorXd center;  ///< theta0; empty means the origin
  int snap_bits = 53;

  int dim() const;
  Eigen::VectorXd theta0() const;
  /// Mass carried by the hyperplane {x_1 = theta0_1}: m0 for an atom, else 0.
  double hyperplane_mass() const;
  std::string name() const;
};

/// Raw double draws; draw i depends only on (seed, i).
std::vector<Eigen::VectorXd> sample_double(const DistributionSpec& spec, std::size_t n, std::uint64_t seed);

/// n draws snapped to multiples of 2^-snap_bits; DegenerateSampler
/// post-processing is exact. Records snap_bits in the dataset.
DataSet sample(const DistributionSpec& spec, std::size_t n, std::uint64_t seed);

/// Builds a spec from key=value pairs: variant, d, radius, m0, base,
/// dup_rate, collinear_rate, points ("x y; x y"), weights, center, snap_bits.
DistributionSpec parse_distribution(const std::map<std::string, std::string>& kv);

struct ProbeReport {
  std::string statistic;
  double estimate = 0.0;
  double half_width = 0.0;
  std::size_t draws = 0;
  std::string verdict;
  std::optional<Eigen::VectorXd> witness;
  std::vector<double> series;  ///< per width / radius values when relevant
  bool pass() const { return verdict == "PASS" || verdict == "SMOOTH" || verdict == "CONTINUOUS"; }
};

double binomial_half_width(double p, std::size_t n);

/// min over a direction net of P(u.X >= u.theta0); PASS iff
/// min >= 1/2 - 3 half_width.
ProbeReport halfspace_symmetry_probe(const DistributionSpec& spec, const Eigen::VectorXd& theta0, int directions,
                                     std::size_t n, std::uint64_t seed);
ProbeReport halfspace_symmetry_probe(std::span<const Eigen::VectorXd> draws, const Eigen::VectorXd& theta0,
                                     int directions);

struct SmoothnessConfig {
  double threshold = 0.01;
};

/// max over the net of P(|u.X - u.x0| <= w) for each width; SMOOTH iff the
/// value at the last width is at most the threshold.
ProbeReport smoothness_probe(const DistributionSpec& spec, const Eigen::VectorXd& x0, const std::vector<double>& widths,
                             int directions, std::size_t n, std::uint64_t seed, const SmoothnessConfig& cfg = {});

struct ContinuityConfig {
  double tolerance = 0.03;
  int net_size = 360;
};

/// Population depth at theta0 and along theta0 + r dir. With hyperplane mass
/// m0 > 0 the verdict is DISCONTINUOUS iff every side estimate is at most
/// (1 - m0)/2 + tol while the center is at least 1/2 - tol; otherwise
/// CONTINUOUS iff the last side estimate is within tol of the center.
ProbeReport depth_continuity_probe(const DistributionSpec& spec, const Eigen::VectorXd& theta0,
                                   const Eigen::VectorXd& direction, const std::vector<double>& radii, std::size_t n,
                                   std::uint64_t seed, const ContinuityConfig& cfg = {});

/// Fraction of draws with | |x - theta0| - radius | <= 1e-12.
ProbeReport shell_mass_probe(const DistributionSpec& spec, double radius, std::size_t n, std::uint64_t seed);

/// Population depth of x under spec from n Monte Carlo draws.
PopulationDepthEstimate population_depth_estimate(const DistributionSpec& spec, const Eigen::VectorXd& x,
                                                  std::size_t n, std::uint64_t seed, int net_size = 360);

/// ds u (2 theta0 - ds).
DataSet symmetrize(const DataSet& ds, const Point& theta0);

/// Exact min over all directions of #{i : u.X_i >= u.theta0}.
long min_halfspace_count(const DataSet& ds, const Point& theta0);

}  // namespace tukey
