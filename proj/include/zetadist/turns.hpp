#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "zetadist/numeric.hpp"

namespace zetadist {

/// A point of R/Z stored as a 128-bit binary fraction. Integer multiples are
/// exact modulo 1 up to the initial rounding of 2^-128, which keeps {n x}
/// accurate for n far beyond what double arithmetic allows.
class Turn {
 public:
  Turn() = default;

  /// Rounds x mod 1 to the nearest multiple of 2^-128. `x` should carry at
  /// least ~40 significant digits for the rounding to be meaningful.
  static Turn from_real(const Real& x);
  static Turn from_double(double x);

  Turn times(std::uint64_t n) const { return Turn(frac_ * n); }
  Turn operator+(Turn other) const { return Turn(frac_ + other.frac_); }
  Turn operator-(Turn other) const { return Turn(frac_ - other.frac_); }

  /// Representative in [0, 1).
  double value() const {
    const auto hi = static_cast<std::uint64_t>(frac_ >> 64U);
    const auto lo = static_cast<std::uint64_t>(frac_);
    return std::ldexp(static_cast<double>(hi), -64) + std::ldexp(static_cast<double>(lo), -128);
  }

  /// Distance to the nearest integer, in [0, 1/2].
  double distance_to_integer() const {
    unsigned __int128 f = frac_;
    if (f >> 127U) f = -f;
    return Turn(f).value();
  }

  /// cos(2 pi x).
  double cos2pi() const {
    // Reduce to [0, 1/2] first; cos is even.
    unsigned __int128 f = frac_;
    if (f >> 127U) f = -f;
    return std::cos(2.0 * std::numbers::pi * Turn(f).value());
  }

  unsigned __int128 raw() const { return frac_; }

 private:
  explicit Turn(unsigned __int128 frac) : frac_(frac) {}
  unsigned __int128 frac_ = 0;
};

}  // namespace zetadist
