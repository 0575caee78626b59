#pragma once

#include "tukey/geometry.hpp"

#include <Eigen/Core>

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace tukey {

/// Exact depth-like ratio num/den with 0 <= num <= den. Used for depths
/// (den = n), trimming levels tau, lambda* and the projected lambda_u*.
struct DepthValue {
  long num = 0;
  long den = 1;

  DepthValue() = default;
  DepthValue(long k, long n);

  Rational value() const { return Rational(num, den); }
  double approx() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

  /// Parses "k/n" or an integer 0/1.
  static DepthValue parse(const std::string& text);

  friend bool operator==(const DepthValue& a, const DepthValue& b) { return a.num * b.den == b.num * a.den; }
  friend std::strong_ordering operator<=>(const DepthValue& a, const DepthValue& b) {
    return a.num * b.den <=> b.num * a.den;
  }
};

/// ceil(n * tau): the number of points a tau-halfspace must keep.
long ceil_count(long n, const DepthValue& tau);

struct DepthWitness {
  Direction direction;
  long count_le = 0;        ///< #{i : u.X_i <= u.x}
  long count_boundary = 0;  ///< #{i : u.X_i == u.x}
};

struct DepthResult {
  DepthValue depth;
  DepthWitness witness;
  bool exact = true;
};

/// #{i : u.X_i <= u.x}.
long count_le(const DataSet& ds, const Vec& u, const Point& x);

/// ceil(n tau)-th smallest of {u.X_i}, i.e. the inf-quantile of the projections.
Rational directional_quantile(const DataSet& ds, const Direction& u, const DepthValue& tau);

/// Exact halfspace depth for d in {1,2,3}; ties and duplicates counted with
/// multiplicity under the closed-side convention u.X_i <= u.x.
DepthResult tukey_depth(const Point& x, const DataSet& ds);

/// One exact representative per combinatorially distinct minimizing cone.
std::vector<Direction> optimal_direction_cone(const Point& x, const DataSet& ds);

/// Any-dimension approximation over a finite direction net (random unit
/// directions plus data-derived directions). Never below the exact depth.
DepthResult approximate_depth(const Point& x, const DataSet& ds, int random_directions = 512,
                              std::uint64_t seed = 1);

struct PopulationDepthEstimate {
  double estimate = 0.0;
  double half_width = 0.0;
  std::size_t draws = 0;
};

/// Unit direction net in R^d: `count` equally spaced angles over the full
/// circle for d = 2, deterministic pseudo-random directions plus the axes
/// otherwise.
std::vector<Eigen::VectorXd> direction_net(int d, int count);

/// min over the net of the empirical P(u.X <= u.x) from Monte Carlo draws,
/// with a 95% binomial half-width. A finite net can only over-estimate D(x,F).
PopulationDepthEstimate population_depth_estimate(std::span<const Eigen::VectorXd> draws, const Eigen::VectorXd& x,
                                                  int net_size = 360);

}  // namespace tukey
