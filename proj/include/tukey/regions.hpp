#pragma once

#include "tukey/depth.hpp"

#include <optional>
#include <vector>

namespace tukey {

struct IrrotatableCertificate {
  Halfspace halfspace;                     ///< canonical normal
  std::vector<std::size_t> boundary_points;  ///< every sample index on the boundary
  std::vector<std::size_t> pivot_flat;       ///< d-1 boundary indices the rotation pivots about
  long cut_count = 0;                      ///< #{i : normal . X_i < offset}
};

struct IrrotatableCheck {
  bool irrotatable = false;
  std::optional<IrrotatableCertificate> certificate;
};

/// Tests conditions (a) and (b) for the closed halfspace `h` at level tau.
/// Among the pivots that work, the one expelling the fewest points is
/// reported. Throws if no sample point lies on the boundary or d is not 2/3.
IrrotatableCheck is_irrotatable(const Halfspace& h, const DataSet& ds, const DepthValue& tau);

/// All tau-irrotatable halfspaces, sorted by canonical normal then offset.
std::vector<IrrotatableCertificate> enumerate_irrotatable(const DataSet& ds, const DepthValue& tau);

/// For a certificate cutting fewer than ceil(n tau) - 1 points, the lower
/// level at which the same halfspace is irrotatable.
std::optional<DepthValue> lower_irrotatable_level(const IrrotatableCertificate& c, const DataSet& ds,
                                                  const DepthValue& tau);

/// lambda* = max_x D(x, F_n), exact for d in {1, 2, 3}.
DepthValue max_depth(const DataSet& ds);

/// {x : D(x, F_n) >= tau}. Throws std::domain_error when tau > lambda*.
Polytope depth_region(const DataSet& ds, const DepthValue& tau);

struct MedianResult {
  Polytope region;
  DepthValue lambda_star;
  Point median;
};

MedianResult median_region(const DataSet& ds, BarycenterMode mode = BarycenterMode::Uniform);

}  // namespace tukey
