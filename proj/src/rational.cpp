#include "tukey/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace tukey {

namespace {

Integer parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw std::invalid_argument("malformed number: " + std::string(whole));
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("malformed number: " + std::string(whole));
    }
  }
  // a leading zero would select octal in the string constructor
  while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
  return Integer(std::string(digits));
}

Integer pow10(long e) {
  Integer r = 1;
  for (long i = 0; i < e; ++i) r *= 10;
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty number");

  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash), whole);
    Integer den = parse_integer(text.substr(slash + 1), whole);
    if (den == 0) throw std::invalid_argument("zero denominator: " + std::string(whole));
    Rational r(num, den);
    return negative ? Rational(-r) : r;
  }

  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = text.substr(e + 1);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part.front() == '+' || exp_part.front() == '-')) {
      exp_negative = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    Integer ev = parse_integer(exp_part, whole);
    if (ev > 4096) throw std::invalid_argument("exponent out of range: " + std::string(whole));
    exponent = ev.convert_to<long>();
    if (exp_negative) exponent = -exponent;
    text = text.substr(0, e);
  }

  std::string digits;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) throw std::invalid_argument("malformed number: " + std::string(whole));
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  } else {
    digits = std::string(text);
  }
  Integer mantissa = parse_integer(digits, whole);
  Rational r = exponent >= 0 ? Rational(mantissa * pow10(exponent)) : Rational(mantissa, pow10(-exponent));
  return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& r) {
  const Integer num = boost::multiprecision::numerator(r);
  const Integer den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational snap(double value, int bits) {
  if (!std::isfinite(value)) throw std::invalid_argument("cannot snap a non-finite value");
  if (bits < 0 || bits > 1000) throw std::invalid_argument("snap precision out of range");
  // value * 2^bits is exact in binary; rounding happens in the integer domain
  Rational scaled = Rational(value) * Rational(Integer(1) << bits);
  Integer rounded = floor_int(abs(scaled) + Rational(1, 2));
  if (scaled < 0) rounded = -rounded;
  return Rational(rounded, Integer(1) << bits);
}

Integer floor_int(const Rational& r) {
  const Integer num = boost::multiprecision::numerator(r);
  const Integer den = boost::multiprecision::denominator(r);
  Integer q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

Integer ceil_int(const Rational& r) { return -floor_int(Rational(-r)); }

int sign(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

Vec make_vec(std::initializer_list<Rational> coords) {
  Vec v(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (const auto& c : coords) v(i++) = c;
  return v;
}

std::string to_string(const Vec& v, std::string_view sep) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += to_string(v(i));
  }
  return out;
}

}  // namespace tukey
