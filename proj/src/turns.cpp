#include "zetadist/turns.hpp"

namespace zetadist {

Turn Turn::from_real(const Real& x) {
  PrecisionScope scope(80);
  Real frac = Real(x) - floor(Real(x));
  const Real two64 = ldexp(Real(1), 64);
  frac *= two64;
  Real hi_part = floor(frac);
  Real lo_part = floor((frac - hi_part) * two64 + Real(0.5));
  auto hi = hi_part.convert_to<std::uint64_t>();
  unsigned __int128 lo = lo_part.convert_to<std::uint64_t>();
  if (lo_part >= two64) lo = static_cast<unsigned __int128>(1) << 64U;
  return Turn((static_cast<unsigned __int128>(hi) << 64U) + lo);
}

Turn Turn::from_double(double x) {
  PrecisionScope scope(40);
  return from_real(Real(x));
}

}  // namespace zetadist
