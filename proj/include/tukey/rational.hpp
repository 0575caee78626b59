#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <string_view>

namespace tukey {

/// Exact rational scalar. Every combinatorial predicate in the library is
/// evaluated in this type; doubles only appear in Monte Carlo probes.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

template <class Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <class Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Vec = VectorX<Rational>;
using Mat = MatrixX<Rational>;

/// Parses "3", "-1/4", "0.125", "1e-3", "2.5E+2". Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// "p/q" or "p" when the denominator is one.
std::string to_string(const Rational& r);

double to_double(const Rational& r);

/// Nearest multiple of 2^-bits (ties away from zero). Exact for finite input.
Rational snap(double value, int bits);

Integer floor_int(const Rational& r);
Integer ceil_int(const Rational& r);

int sign(const Rational& r);

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

/// Builds a vector from a braced list, e.g. make_vec({1, Rational(1, 2)}).
Vec make_vec(std::initializer_list<Rational> coords);

std::string to_string(const Vec& v, std::string_view sep = " ");

}  // namespace tukey
