#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>

namespace prodact {

// Group orders overflow 64 bits for the wreath products built here, so all
// order arithmetic is arbitrary precision. Certified probabilities are exact
// rationals; no floating point on those paths.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer int_pow(Integer base, std::uint64_t e) {
  Integer r = 1;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

inline Integer factorial(std::uint64_t n) {
  Integer r = 1;
  for (std::uint64_t i = 2; i <= n; ++i) r *= i;
  return r;
}

inline Integer binomial(Integer n, std::uint64_t k) {
  if (n < 0) return 0;
  if (Integer(k) > n) return 0;
  Integer r = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    r *= n - Integer(i);
    r /= Integer(i + 1);
  }
  return r;
}

// Smallest b with n^b >= order; the information-theoretic base-size bound.
inline unsigned log_lower_bound(const Integer& order, std::uint64_t n) {
  if (order <= 1) return 0;
  unsigned b = 0;
  Integer p = 1;
  while (p < order) {
    p *= n;
    ++b;
  }
  return b;
}

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace prodact
