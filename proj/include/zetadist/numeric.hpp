#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace zetadist {

using BigInt = boost::multiprecision::mpz_int;
using Real = boost::multiprecision::mpfr_float;

/// Sets the default precision of newly created `Real` values for the lifetime
/// of the object, restoring the previous setting on exit.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits10)
      : saved_(Real::default_precision()) {
    Real::default_precision(digits10);
  }
  ~PrecisionScope() { Real::default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

/// Exact integer power of a machine integer.
BigInt big_pow(const BigInt& base, std::uint64_t exponent);

/// p-adic valuation of a nonzero integer.
int valuation(const BigInt& value, std::uint64_t p);

/// Decimal representation with `digits` significant digits.
std::string to_decimal(const Real& value, int digits);

/// Nearest double of value / 2^shift style conversions of huge integers:
/// returns (mantissa in [0.5,1), exponent) with |value| = mantissa * 2^exponent.
void frexp_big(const BigInt& value, double& mantissa, long& exponent);

}  // namespace zetadist
