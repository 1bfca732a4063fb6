#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace nsv {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Largest power of p dividing n (n > 0).
inline Int p_part(Int n, const Int& p) {
  Int pp = 1;
  while (n % p == 0) {
    pp *= p;
    n /= p;
  }
  return pp;
}

inline Int gcd(Int a, Int b) {
  return boost::multiprecision::gcd(a, b);
}

inline Int lcm(const Int& a, const Int& b) {
  return boost::multiprecision::lcm(a, b);
}

inline Int pow_int(const Int& base, unsigned e) {
  Int r = 1;
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace nsv
