#include "dcoh/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace dcoh {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Integer parse_integer(std::string_view text) {
  auto s = trim(text);
  std::string_view body = s;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  if (!all_digits(body)) throw std::invalid_argument("malformed integer '" + std::string(text) + "'");
  std::string buf(s);
  if (buf.front() == '+') buf.erase(0, 1);
  return Integer(buf, 10);
}

Rational parse_rational(std::string_view text) {
  auto s = trim(text);
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(s.substr(0, slash));
    Integer den = parse_integer(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    bool neg = !s.empty() && s.front() == '-';
    std::string_view ip = s.substr(0, dot);
    std::string_view fp = s.substr(dot + 1);
    if (!ip.empty() && (ip.front() == '-' || ip.front() == '+')) ip.remove_prefix(1);
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
      throw std::invalid_argument("malformed number '" + std::string(text) + "'");
    std::string digits = std::string(ip) + std::string(fp);
    Integer num(digits.empty() ? std::string("0") : digits, 10);
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, fp.size());
    Rational q(neg ? Integer(-num) : num, den);
    q.canonicalize();
    return q;
  }
  return Rational(parse_integer(s));
}

std::string to_string(const Rational& q) { return q.get_str(10); }
std::string to_string(const Integer& z) { return z.get_str(10); }

bool is_integral(const RatVec& v) {
  for (const auto& x : v)
    if (!is_integral(x)) return false;
  return true;
}

Rational frac(const Rational& q) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(q - fl);
}

Rational nearest_rational(double x, long max_den) {
  if (!std::isfinite(x)) throw std::domain_error("nearest_rational: non-finite input");
  if (max_den < 1) throw std::invalid_argument("nearest_rational: max_den < 1");
  // Stern-Brocot style search over convergents; candidates compared by exact distance.
  double fl = std::floor(x);
  double r = x - fl;
  long p0 = 1, q0 = 0, p1 = 0, q1 = 1;  // convergents n-2 and n-1 of r = [0; a1, a2, ...]
  Rational best(0);
  double best_err = r;
  if (1.0 - r < best_err) {
    best = 1;
    best_err = 1.0 - r;
  }
  double y = r;
  for (int it = 0; it < 64 && y > 0; ++it) {
    double inv = 1.0 / y;
    // Clamp so huge partial quotients still reach the semiconvergent branch.
    long a = inv > static_cast<double>(max_den) ? max_den + 1 : static_cast<long>(std::floor(inv));
    long p2 = a * p1 + p0;
    long q2 = a * q1 + q0;
    if (q2 > max_den) {
      // semiconvergent with the largest admissible multiplier
      long k = (max_den - q0) / q1;
      if (k > 0) {
        long ps = k * p1 + p0, qs = k * q1 + q0;
        double e = std::fabs(r - static_cast<double>(ps) / qs);
        if (e < best_err) {
          best = Rational(ps, qs);
          best_err = e;
        }
      }
      break;
    }
    double e = std::fabs(r - static_cast<double>(p2) / q2);
    if (e < best_err) {
      best = Rational(p2, q2);
      best_err = e;
    }
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    y = inv - a;
    if (e == 0.0) break;
  }
  best.canonicalize();
  return Rational(best + Rational(static_cast<long>(fl)));
}

IntVec to_integers(const RatVec& v) {
  IntVec out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (!is_integral(x)) throw std::domain_error("expected an integral vector, found " + to_string(x));
    out.emplace_back(x.get_num());
  }
  return out;
}

RatVec to_rationals(const IntVec& v) {
  RatVec out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

}  // namespace dcoh
