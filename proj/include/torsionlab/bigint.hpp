#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace torsionlab {

using BigInt = mpz_class;

/// Parses a decimal integer with optional sign; throws std::invalid_argument.
BigInt parse_bigint(std::string_view text);

std::string to_decimal(const BigInt& x);

/// Natural log of |x| for x != 0, accurate for values far beyond double range.
double log_abs(const BigInt& x);

BigInt ipow(const BigInt& base, unsigned long exponent);

inline BigInt big_gcd(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline BigInt big_abs(const BigInt& a) { return a < 0 ? BigInt(-a) : a; }

inline std::int64_t to_int64(const BigInt& x) {
  if (!x.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits");
  return static_cast<std::int64_t>(x.get_si());
}

}  // namespace torsionlab
