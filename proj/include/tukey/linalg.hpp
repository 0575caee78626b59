#pragma once

// Exact linear algebra helpers. All routines are templated on the scalar so
// they work with Rational as well as with plain integers in tests; none of
// them uses pivoting by magnitude, only by nonzero-ness.

#include "tukey/rational.hpp"

#include <optional>
#include <vector>

namespace tukey {

/// Rank by Gaussian elimination over an exact field.
template <class Scalar>
int rank(MatrixX<Scalar> m) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index pivot = -1;
    for (Eigen::Index i = r; i < rows; ++i) {
      if (m(i, c) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    m.row(r).swap(m.row(pivot));
    for (Eigen::Index i = r + 1; i < rows; ++i) {
      if (m(i, c) == 0) continue;
      const Scalar f = m(i, c) / m(r, c);
      for (Eigen::Index k = c; k < cols; ++k) m(i, k) -= f * m(r, k);
    }
    ++r;
  }
  return static_cast<int>(r);
}

/// Rank of a list of vectors (as rows).
template <class Scalar>
int rank_of(const std::vector<VectorX<Scalar>>& vs, Eigen::Index dim) {
  if (vs.empty()) return 0;
  MatrixX<Scalar> m(static_cast<Eigen::Index>(vs.size()), dim);
  for (std::size_t i = 0; i < vs.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = vs[i].transpose();
  return rank<Scalar>(std::move(m));
}

/// Unique solution of a square system, or nullopt when singular.
template <class Scalar>
std::optional<VectorX<Scalar>> solve(MatrixX<Scalar> a, VectorX<Scalar> b) {
  const Eigen::Index n = a.rows();
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index pivot = -1;
    for (Eigen::Index i = c; i < n; ++i) {
      if (a(i, c) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) return std::nullopt;
    a.row(c).swap(a.row(pivot));
    std::swap(b(c), b(pivot));
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      const Scalar f = a(i, c) / a(c, c);
      for (Eigen::Index k = c; k < n; ++k) a(i, k) -= f * a(c, k);
      b(i) -= f * b(c);
    }
  }
  VectorX<Scalar> x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = b(i) / a(i, i);
  return x;
}

template <class Scalar>
VectorX<Scalar> cross3(const VectorX<Scalar>& a, const VectorX<Scalar>& b) {
  VectorX<Scalar> c(3);
  c(0) = a(1) * b(2) - a(2) * b(1);
  c(1) = a(2) * b(0) - a(0) * b(2);
  c(2) = a(0) * b(1) - a(1) * b(0);
  return c;
}

/// Orthogonal (not normalized) basis of the complement of `u`, obtained by
/// Gram-Schmidt on the standard basis. Returns d-1 pairwise orthogonal vectors.
template <class Scalar>
std::vector<VectorX<Scalar>> orthocomplement(const VectorX<Scalar>& u) {
  const Eigen::Index d = u.size();
  std::vector<VectorX<Scalar>> basis{u};
  for (Eigen::Index e = 0; e < d && static_cast<Eigen::Index>(basis.size()) < d; ++e) {
    VectorX<Scalar> v = VectorX<Scalar>::Zero(d);
    v(e) = 1;
    for (const auto& b : basis) {
      const Scalar bb = b.dot(b);
      v -= (v.dot(b) / bb) * b;
    }
    if (!v.isZero()) basis.push_back(v);
  }
  basis.erase(basis.begin());
  return basis;
}

}  // namespace tukey
