#pragma once

#include "tukey/regions.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tukey {

/// Orthogonal (not unit) basis of the orthocomplement of u, one column per
/// basis vector, each scaled so its first nonzero entry is +-1.
struct ProjectionFrame {
  Direction u;
  Mat basis;  ///< d x (d-1)
};

ProjectionFrame projection_frame(const Direction& u);

/// The (d-1)-dimensional images basis^T X_i, multiplicities preserved.
DataSet project_dataset(const DataSet& ds, const ProjectionFrame& frame);

/// lambda_u*: maximal depth of the projected sample.
DepthValue projected_lambda(const DataSet& ds, const Direction& u);

/// k / (n + k) for a depth k/n, i.e. lambda / (1 + lambda).
Rational bound_ratio(const DepthValue& lambda);

struct DirectionSearchConfig {
  int net_size = 256;           ///< random directions added for d = 3
  std::size_t max_pairs = 500;  ///< cap on cross-product candidates for d = 3
  std::uint64_t seed = 7;
};

struct UpperBound {
  Rational bound;
  DepthValue inf_lambda;
  Direction argmin;
  bool exact = true;  ///< false when only a finite direction net was searched
};

/// Minimizes lambda_u* over candidate directions and returns
/// inf lambda_u* / (1 + inf lambda_u*).
UpperBound upper_bound(const DataSet& ds, const DirectionSearchConfig& cfg = {});

/// All directions where the projected order can change plus one direction
/// strictly inside each cell between them (d = 2, angles in [0, pi)).
std::vector<Direction> critical_directions_2d(const DataSet& ds);

/// lambda* / (1 + lambda*).
Rational lower_bound(const DataSet& ds);

struct ContaminationPlan {
  Direction u;
  Point x0_projected;
  Point y0;
  long m = 0;
  Rational distance_scale;
  Rational gamma;  ///< y0 = lift(x0) + gamma u
};

/// Point of the line through lift(x0) along u at parameter gamma.
Point line_point(const ProjectionFrame& frame, const Point& x0, const Rational& gamma);

/// Builds the plan for direction u. `m` defaults to ceil(n lambda_u*).
ContaminationPlan build_attack(const DataSet& ds, const Direction& u, const Rational& distance,
                               std::optional<long> m = std::nullopt);

/// The same plan with the contamination pushed `factor` times further.
ContaminationPlan rescale(const DataSet& ds, const ContaminationPlan& plan, const Rational& factor);

/// The contaminated sample X u {m copies of y0}.
DataSet contaminate(const DataSet& ds, const ContaminationPlan& plan);

struct AttackVerification {
  DepthValue sup_depth_inside;  ///< max depth in Z over cov(X)
  DepthValue depth_at_y0;
  bool escaped = false;
  Point contaminated_median;
  Rational distance_sq;  ///< |T*(Z) - c|^2, c the bounding-box center of X
  Rational radius_sq;    ///< max |X_i - c|^2
  Rational growth;       ///< |T*(Z') - c|^2 / |T*(Z) - c|^2, Z' at ten times the distance
};

/// Minimum ratio of median distances when the placement distance grows
/// tenfold. Compared on squared distances.
inline constexpr long kMinGrowthPerDecade = 5;

AttackVerification verify_attack(const DataSet& ds, const ContaminationPlan& plan);

struct BreakdownReport {
  long n = 0;
  int d = 0;
  Rational lower;
  Rational upper;
  std::optional<long> exact_m;
  std::optional<ContaminationPlan> witness_plan;
  bool upper_exact = true;

  std::vector<std::string> csv_header() const;
  std::vector<std::string> csv_row() const;
};

/// Smallest m <= m_max for which some plan in the structured family escapes
/// at every scale. d = 1 uses the closed form from order statistics.
BreakdownReport exact_breakdown(const DataSet& ds, long m_max, const std::vector<Rational>& scales);

}  // namespace tukey
