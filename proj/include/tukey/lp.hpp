#pragma once

#include "tukey/geometry.hpp"

#include <cstdint>
#include <optional>
#include <span>

namespace tukey {

/// Phase-one simplex with Bland's rule: is there lambda >= 0 with
/// A lambda = b? Exact over the rationals.
std::optional<Vec> nonnegative_solution(const Mat& a, const Vec& b);

/// A feasible point of {h_i} inside `box` for d = 2, by Seidel's randomized
/// incremental algorithm with a lexicographic (x, then y) objective. The
/// returned point is the unique lexicographic minimum; nullopt when empty.
std::optional<Point> feasible_point_2d(std::span<const Halfspace> hs, const Box& box, std::uint64_t seed = 0x5eed);

}  // namespace tukey
