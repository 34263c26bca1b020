#pragma once

#include <cstdint>
#include <vector>

namespace zetadist::polyfp {

/// Dense polynomial over F_p, ascending degree, no trailing zeros (the zero
/// polynomial is the empty vector).
using Poly = std::vector<std::uint64_t>;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exponent, std::uint64_t p);
std::uint64_t invmod(std::uint64_t a, std::uint64_t p);

void trim(Poly& f);
int degree(const Poly& f);

Poly add(const Poly& a, const Poly& b, std::uint64_t p);
Poly sub(const Poly& a, const Poly& b, std::uint64_t p);
Poly mul(const Poly& a, const Poly& b, std::uint64_t p);
Poly rem(const Poly& a, const Poly& modulus, std::uint64_t p);
Poly derivative(const Poly& f, std::uint64_t p);
Poly make_monic(const Poly& f, std::uint64_t p);
Poly gcd(Poly a, Poly b, std::uint64_t p);

/// base^exponent mod `modulus`.
Poly powmod(const Poly& base, std::uint64_t exponent, const Poly& modulus,
            std::uint64_t p);

/// Rabin's test: f of degree k is irreducible iff x^{p^k} = x mod f and
/// gcd(x^{p^{k/r}} - x, f) = 1 for every prime r | k.
bool is_irreducible(const Poly& f, std::uint64_t p);

/// Square-free test via gcd(f, f') = 1; assumes deg f < p or f' != 0.
bool is_squarefree(const Poly& f, std::uint64_t p);

}  // namespace zetadist::polyfp
