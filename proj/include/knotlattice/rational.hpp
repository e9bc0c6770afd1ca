#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace knotlattice {

using Rational = mpq_class;
using Integer = mpz_class;
using RationalVector = std::vector<Rational>;

// "p/q" with q > 0; integers are printed as "p/1" so every coefficient has
// the same shape in serialized vectors.
inline std::string to_fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational parse_fraction(const std::string& text) {
  Rational q(text, 10);
  q.canonicalize();
  return q;
}

inline Rational factorial(int m) {
  Integer f = 1;
  for (int i = 2; i <= m; ++i) f *= i;
  return Rational(f);
}

inline Rational power_of_two(int e) {
  Integer p = 1;
  p <<= static_cast<unsigned>(e);
  return Rational(p);
}

inline bool is_zero(const RationalVector& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

inline RationalVector& axpy(RationalVector& y, const Rational& a, const RationalVector& x) {
  if (y.size() < x.size()) y.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
  return y;
}

}  // namespace knotlattice
