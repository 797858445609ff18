#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace dcoh {

using Integer = mpz_class;
using Rational = mpq_class;

using IntVec = std::vector<Integer>;
using RatVec = std::vector<Rational>;

/// Parses "p", "p/q" or a decimal literal such as "-0.25" into a canonical rational.
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Parses a decimal integer literal of unbounded size.
Integer parse_integer(std::string_view text);

std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }
bool is_integral(const RatVec& v);

/// Representative of q mod 1 in [0, 1).
Rational frac(const Rational& q);

/// Best rational approximation of x with denominator at most max_den
/// (continued-fraction convergents and semiconvergents).
Rational nearest_rational(double x, long max_den);

IntVec to_integers(const RatVec& v);  // throws std::domain_error if a component is not integral
RatVec to_rationals(const IntVec& v);

inline bool is_zero(const RatVec& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}
inline bool is_zero(const IntVec& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

template <class T>
std::vector<T> operator+(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}
template <class T>
std::vector<T> operator-(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}
template <class T>
std::vector<T> operator-(const std::vector<T>& a) {
  std::vector<T> r(a);
  for (auto& x : r) x = -x;
  return r;
}
template <class T, class S>
std::vector<T> scaled(const std::vector<T>& a, const S& s) {
  std::vector<T> r(a);
  for (auto& x : r) x *= s;
  return r;
}

}  // namespace dcoh
