#include "zetadist/poly_fp.hpp"

#include <algorithm>
#include <utility>

namespace zetadist::polyfp {

std::uint64_t powmod(std::uint64_t base, std::uint64_t exponent, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (exponent != 0) {
    if (exponent & 1U) result = mulmod(result, base, p);
    base = mulmod(base, base, p);
    exponent >>= 1U;
  }
  return result;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
  return powmod(a, p - 2, p);
}

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }

Poly add(const Poly& a, const Poly& b, std::uint64_t p) {
  Poly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = (out[i] + b[i]) % p;
  trim(out);
  return out;
}

Poly sub(const Poly& a, const Poly& b, std::uint64_t p) {
  Poly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = (out[i] + p - b[i]) % p;
  trim(out);
  return out;
}

Poly mul(const Poly& a, const Poly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] = (out[i + j] + mulmod(a[i], b[j], p)) % p;
    }
  }
  trim(out);
  return out;
}

Poly rem(const Poly& a, const Poly& modulus, std::uint64_t p) {
  Poly r = a;
  trim(r);
  const int dm = degree(modulus);
  const std::uint64_t lead_inv = invmod(modulus.back(), p);
  while (degree(r) >= dm) {
    const int shift = degree(r) - dm;
    const std::uint64_t factor = mulmod(r.back(), lead_inv, p);
    for (int i = 0; i <= dm; ++i) {
      auto& slot = r[static_cast<std::size_t>(i + shift)];
      slot = (slot + p - mulmod(factor, modulus[static_cast<std::size_t>(i)], p)) % p;
    }
    trim(r);
  }
  return r;
}

Poly derivative(const Poly& f, std::uint64_t p) {
  Poly out;
  for (std::size_t i = 1; i < f.size(); ++i) out.push_back(mulmod(i % p, f[i], p));
  trim(out);
  return out;
}

Poly make_monic(const Poly& f, std::uint64_t p) {
  if (f.empty()) return f;
  const std::uint64_t inv = invmod(f.back(), p);
  Poly out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = mulmod(f[i], inv, p);
  return out;
}

Poly gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a, p);
}

Poly powmod(const Poly& base, std::uint64_t exponent, const Poly& modulus,
            std::uint64_t p) {
  Poly result{1 % p};
  trim(result);
  Poly b = rem(base, modulus, p);
  while (exponent != 0) {
    if (exponent & 1U) result = rem(mul(result, b, p), modulus, p);
    exponent >>= 1U;
    if (exponent != 0) b = rem(mul(b, b, p), modulus, p);
  }
  return result;
}

namespace {

std::vector<unsigned> prime_divisors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// x^{p^times} mod f by repeated p-th powering.
Poly frobenius_power_of_x(unsigned times, const Poly& f, std::uint64_t p) {
  Poly x = rem(Poly{0, 1}, f, p);
  for (unsigned i = 0; i < times; ++i) x = powmod(x, p, f, p);
  return x;
}

}  // namespace

bool is_irreducible(const Poly& f, std::uint64_t p) {
  const int k = degree(f);
  if (k <= 0) return false;
  if (k == 1) return true;
  const Poly fm = make_monic(f, p);
  const Poly x = Poly{0, 1};
  if (sub(frobenius_power_of_x(static_cast<unsigned>(k), fm, p), x, p) != Poly{}) {
    return false;
  }
  for (unsigned r : prime_divisors(static_cast<unsigned>(k))) {
    const Poly h = sub(frobenius_power_of_x(static_cast<unsigned>(k) / r, fm, p),
                       rem(x, fm, p), p);
    if (degree(gcd(h, fm, p)) != 0) return false;
  }
  return true;
}

bool is_squarefree(const Poly& f, std::uint64_t p) {
  const Poly d = derivative(f, p);
  if (d.empty()) return false;
  return degree(gcd(f, d, p)) == 0;
}

}  // namespace zetadist::polyfp
