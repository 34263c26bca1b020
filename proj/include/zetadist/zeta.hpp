#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "zetadist/curves.hpp"
#include "zetadist/numeric.hpp"

namespace zetadist {

/// Numerator P(T) = sum_i (-1)^i e_i T^i = prod_j (1 - tau_j T) of the zeta
/// function of a genus-g curve over F_q. Construction enforces e_0 = 1 and
/// the functional equation e_{2g-i} = q^{g-i} e_i.
class ZetaNumerator {
 public:
  ZetaNumerator(int genus, BigInt q, std::vector<BigInt> e);

  int genus() const { return genus_; }
  const BigInt& q() const { return q_; }
  /// e_0 .. e_{2g}.
  const std::vector<BigInt>& e() const { return e_; }
  /// Ascending coefficients of P(T), i.e. (-1)^i e_i.
  std::vector<BigInt> coefficients() const;

  bool operator==(const ZetaNumerator&) const = default;

 private:
  int genus_;
  BigInt q_;
  std::vector<BigInt> e_;
};

/// Traces s_1..s_N with s_n = sum_j tau_j^n = q^n + 1 - #C(F_{q^n}).
struct PowerSums {
  BigInt q;
  int genus = 0;
  std::vector<BigInt> s;  // s[n - 1] holds s_n

  const BigInt& at(std::size_t n) const { return s.at(n - 1); }
  std::size_t size() const { return s.size(); }
};

inline constexpr std::size_t kMaxRecurrenceLength = 1'000'000;

/// Exact test of the Weil bound s^2 <= 4 g^2 q^n.
bool within_weil_bound(const BigInt& s, const BigInt& q, int genus, std::uint64_t n);

/// s_n = q^n + 1 - counts[n-1] for n = 1..counts.size(); WeilViolation on a miscount.
PowerSums power_sums_from_counts(std::span<const std::uint64_t> counts, const BigInt& q,
                                 int genus);

/// Newton's identities on s_1..s_g, completed by the functional equation.
ZetaNumerator numerator_from_power_sums(const PowerSums& ps);

/// Exact s_1..s_N; GuardExceeded above 10^6 terms.
PowerSums extend_power_sums(const ZetaNumerator& z, std::size_t count);

/// Sequential generator of s_1, s_2, ... keeping only the last 2g terms, for
/// streams too long to materialize.
class TraceStream {
 public:
  explicit TraceStream(const ZetaNumerator& z);

  /// Advances to the next index and returns s_n for it.
  const BigInt& next();
  std::size_t index() const { return n_; }

 private:
  std::vector<BigInt> e_;
  std::vector<BigInt> history_;  // ring buffer of the last 2g values
  std::size_t n_ = 0;
  BigInt current_;
};

/// P_m(T) = prod_j (1 - tau_j^m T), a numerator over F_{q^m}.
ZetaNumerator pm_numerator(const ZetaNumerator& z, unsigned m);

/// #J(F_{q^n}) = P_n(1).
BigInt jacobian_order(const ZetaNumerator& z, unsigned n);

/// Zeta numerator of a curve from point counts over F_{q}, ..., F_{q^g}.
ZetaNumerator zeta_numerator(const CurveSpec& curve);

struct FrobeniusAngles {
  BigInt q;
  int genus = 0;
  /// theta_1 <= ... <= theta_g in [0, 1], tau_j = sqrt(q) exp(i pi theta_j).
  std::vector<Real> theta;
  int precision_digits = 0;
  /// max_j | |tau_j| - sqrt(q) | over all 2g computed roots.
  Real modulus_residual;
  /// max_i |e_i' - e_i| / max(1, |e_i|) after rebuilding P from theta.
  Real reconstruction_error;
  int iterations = 0;
};

inline constexpr int kDefaultAngleDigits = 50;

/// All 2g eigenvalues by simultaneous (Aberth) iteration at 2 * digits of
/// working precision; throws NoConvergence or WeilViolation.
FrobeniusAngles frobenius_angles(const ZetaNumerator& z, int digits = kDefaultAngleDigits);

/// Expands prod_j (T^2 - 2 sqrt(q) cos(pi theta_j) T + q), descending
/// degree, at the current default precision.
std::vector<Real> reconstruct_eigenvalue_polynomial(const FrobeniusAngles& angles);

}  // namespace zetadist
