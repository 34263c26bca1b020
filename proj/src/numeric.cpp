#include "zetadist/numeric.hpp"

#include <gmp.h>

#include <sstream>

#include "zetadist/error.hpp"

namespace zetadist {

BigInt big_pow(const BigInt& base, std::uint64_t exponent) {
  BigInt result = 1;
  BigInt b = base;
  while (exponent != 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent != 0) b *= b;
  }
  return result;
}

int valuation(const BigInt& value, std::uint64_t p) {
  if (value == 0) fail(ErrorKind::InvalidArgument, "valuation of zero is infinite");
  BigInt v = abs(value);
  int count = 0;
  while (v % p == 0) {
    v /= p;
    ++count;
  }
  return count;
}

std::string to_decimal(const Real& value, int digits) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out.precision(digits);
  out << std::scientific << value;
  return out.str();
}

void frexp_big(const BigInt& value, double& mantissa, long& exponent) {
  mantissa = mpz_get_d_2exp(&exponent, value.backend().data());
}

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::SizeExceeded: return "SizeExceeded";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::EvenCharacteristic: return "EvenCharacteristic";
    case ErrorKind::UnsupportedField: return "UnsupportedField";
    case ErrorKind::SingularCurve: return "SingularCurve";
    case ErrorKind::BadDegree: return "BadDegree";
    case ErrorKind::WeilViolation: return "WeilViolation";
    case ErrorKind::NonIntegerCoefficient: return "NonIntegerCoefficient";
    case ErrorKind::GuardExceeded: return "GuardExceeded";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::BadCharacteristic: return "BadCharacteristic";
    case ErrorKind::DegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorKind::ToleranceBelowPrecision: return "ToleranceBelowPrecision";
    case ErrorKind::ToleranceUnachievable: return "ToleranceUnachievable";
    case ErrorKind::PrecisionInsufficient: return "PrecisionInsufficient";
    case ErrorKind::ZeroParameter: return "ZeroParameter";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace zetadist
