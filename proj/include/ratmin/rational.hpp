#ifndef RATMIN_RATIONAL_HPP
#define RATMIN_RATIONAL_HPP

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <string>

#include "ratmin/common.hpp"

namespace ratmin {

// Exact arbitrary-precision rational. GMP keeps values canonical
// (reduced, denominator > 0) through arithmetic; only string input
// needs an explicit canonicalize.
using Rational = mpq_class;

inline Rational rat_from_long(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Doubles are dyadic rationals; the conversion is exact.
inline Rational rat_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value has no rational form");
  return Rational(x);
}

// Accepts "num", "num/den", or a plain decimal float literal.
inline Rational rat_parse(const std::string& s) {
  if (s.find_first_of(".eE") != std::string::npos &&
      s.find('/') == std::string::npos) {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("bad numeric literal: " + s);
    return rat_from_double(v);
  }
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("rational with zero denominator: " + s);
  q.canonicalize();
  return q;
}

inline std::string rat_str(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline double to_double(const Rational& q) { return q.get_d(); }

// num/den quotient carrying ~75 significant bits, for the long-double
// paths in the eigensolvers. mpq_get_d would truncate to 53 bits.
inline long double to_long_double(const Rational& q) {
  if (sgn(q) == 0) return 0.0L;
  mpz_class num = q.get_num(), den = q.get_den();
  bool neg = sgn(num) < 0;
  if (neg) num = -num;
  long shift = 80 - (static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
                     static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)));
  mpz_class scaled;
  if (shift >= 0) {
    mpz_mul_2exp(scaled.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
    scaled /= den;
  } else {
    mpz_class d2;
    mpz_mul_2exp(d2.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(-shift));
    scaled = num / d2;
  }
  long double v = std::ldexp(static_cast<long double>(scaled.get_d()), 0);
  // scaled fits in ~81 bits; split to keep all of them.
  mpz_class hi = scaled >> 40, lo = scaled - (hi << 40);
  v = std::ldexp(static_cast<long double>(hi.get_d()), 40) +
      static_cast<long double>(lo.get_d());
  v = std::ldexp(v, static_cast<int>(-shift));
  return neg ? -v : v;
}

inline std::uint64_t rat_hash(const Rational& q) {
  std::string s = rat_str(q);
  return fnv1a(s.data(), s.size());
}

}  // namespace ratmin

#endif
