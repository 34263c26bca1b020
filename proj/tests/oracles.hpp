#pragma once

// Brute-force reference computations used only by the tests. Nothing here
// calls into the library's arithmetic.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace oracle {

using Vec = std::vector<std::int64_t>;

inline std::int64_t mod(std::int64_t a, std::int64_t p) { return ((a % p) + p) % p; }

/// Minimal F_p[x]/(m) with m found by exhaustive search for a monic
/// polynomial of degree n without factors of degree <= n/2.
struct ToyField {
  std::int64_t p;
  int n;
  Vec modulus;  // monic, length n + 1
  std::int64_t order;

  Vec mul(const Vec& a, const Vec& b) const {
    Vec prod(2 * n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) prod[i + j] = mod(prod[i + j] + a[i] * b[j], p);
    for (int top = 2 * n - 1; top >= n; --top) {
      std::int64_t c = prod[top];
      if (c == 0) continue;
      for (int i = 0; i <= n; ++i) prod[top - n + i] = mod(prod[top - n + i] - c * modulus[i], p);
    }
    prod.resize(n);
    return prod;
  }
  Vec add(const Vec& a, const Vec& b) const {
    Vec out(n);
    for (int i = 0; i < n; ++i) out[i] = mod(a[i] + b[i], p);
    return out;
  }
  Vec element(std::int64_t index) const {
    Vec out(n);
    for (int i = 0; i < n; ++i) {
      out[i] = index % p;
      index /= p;
    }
    return out;
  }
  std::int64_t index(const Vec& a) const {
    std::int64_t out = 0;
    for (int i = n - 1; i >= 0; --i) out = out * p + a[i];
    return out;
  }
};

// Does the monic polynomial f (ascending) have a monic factor of degree d?
inline bool has_factor_of_degree(const Vec& f, int d, std::int64_t p) {
  std::int64_t total = 1;
  for (int i = 0; i < d; ++i) total *= p;
  for (std::int64_t idx = 0; idx < total; ++idx) {
    Vec g(d + 1, 0);
    std::int64_t rest = idx;
    for (int i = 0; i < d; ++i) {
      g[i] = rest % p;
      rest /= p;
    }
    g[d] = 1;
    Vec r = f;
    for (int top = static_cast<int>(r.size()) - 1; top >= d; --top) {
      std::int64_t c = r[top];
      for (int i = 0; i <= d; ++i) r[top - d + i] = mod(r[top - d + i] - c * g[i], p);
    }
    bool zero = true;
    for (int i = 0; i < d; ++i) zero = zero && r[i] == 0;
    if (zero) return true;
  }
  return false;
}

inline ToyField toy_field(std::int64_t p, int n) {
  ToyField f{p, n, {}, 1};
  for (int i = 0; i < n; ++i) f.order *= p;
  if (n == 1) {
    f.modulus = {0, 1};
    return f;
  }
  for (std::int64_t idx = 1;; ++idx) {
    Vec m(n + 1, 0);
    std::int64_t rest = idx;
    for (int i = 0; i < n; ++i) {
      m[i] = rest % p;
      rest /= p;
    }
    m[n] = 1;
    bool irreducible = m[0] != 0;
    for (int d = 1; irreducible && d <= n / 2; ++d) irreducible = !has_factor_of_degree(m, d, p);
    if (irreducible) {
      f.modulus = m;
      return f;
    }
  }
}

/// #{(x, y) : y^2 = f(x)} over F_{p^n} plus points at infinity, with f given
/// by integer coefficients (ascending). Counts square roots with a multiset
/// table rather than a character.
inline std::int64_t count_points(const Vec& f_coeffs, std::int64_t p, int n) {
  ToyField F = toy_field(p, n);
  std::vector<int> roots(static_cast<std::size_t>(F.order), 0);
  for (std::int64_t y = 0; y < F.order; ++y) {
    Vec v = F.element(y);
    roots[static_cast<std::size_t>(F.index(F.mul(v, v)))] += 1;
  }
  std::int64_t affine = 0;
  for (std::int64_t xi = 0; xi < F.order; ++xi) {
    Vec x = F.element(xi);
    Vec acc(n, 0);
    for (int i = static_cast<int>(f_coeffs.size()) - 1; i >= 0; --i) {
      acc = F.mul(acc, x);
      Vec c(n, 0);
      c[0] = mod(f_coeffs[i], p);
      acc = F.add(acc, c);
    }
    affine += roots[static_cast<std::size_t>(F.index(acc))];
  }
  std::int64_t infinity = 1;
  if (f_coeffs.size() == 7) {
    // two points at infinity, rational iff the leading coefficient is a square
    Vec lc(n, 0);
    lc[0] = mod(f_coeffs.back(), p);
    infinity = roots[static_cast<std::size_t>(F.index(lc))] > 0 ? 2 : 0;
  }
  return affine + infinity;
}

/// Kloosterman sum over F_{p^n} by direct enumeration: inverses by search,
/// trace as the sum of Frobenius conjugates, character e(t/p).
inline double kloosterman(std::int64_t p, int n, std::int64_t a, double* imag = nullptr) {
  ToyField F = toy_field(p, n);
  std::vector<std::int64_t> inverse(static_cast<std::size_t>(F.order), 0);
  for (std::int64_t x = 1; x < F.order; ++x)
    for (std::int64_t y = 1; y < F.order; ++y) {
      Vec prod = F.mul(F.element(x), F.element(y));
      if (F.index(prod) == 1) {
        inverse[static_cast<std::size_t>(x)] = y;
        break;
      }
    }
  double re = 0, im = 0;
  for (std::int64_t x = 1; x < F.order; ++x) {
    Vec ax(n, 0);
    ax[0] = mod(a, p);
    Vec z = F.add(F.element(x), F.mul(ax, F.element(inverse[static_cast<std::size_t>(x)])));
    Vec conj = z;
    std::int64_t tr = 0;
    for (int j = 0; j < n; ++j) {
      tr = mod(tr + conj[0], p);  // trace lies in F_p
      Vec power = Vec(n, 0);
      power[0] = 1;
      for (std::int64_t e = 0; e < p; ++e) power = F.mul(power, conj);
      conj = power;
    }
    re += std::cos(2 * std::numbers::pi * static_cast<double>(tr) / static_cast<double>(p));
    im += std::sin(2 * std::numbers::pi * static_cast<double>(tr) / static_cast<double>(p));
  }
  if (imag) *imag = im;
  return re;
}

/// Measure of {psi in [0,1]^2 : beta <= (cos pi psi_1 + cos pi psi_2) / 2 <= gamma}
/// by a midpoint rule in psi_1 with the psi_2 slice measured exactly.
inline double lambda2_midpoint(double beta, double gamma, int steps = 400000) {
  const double pi = std::numbers::pi;
  double total = 0;
  for (int i = 0; i < steps; ++i) {
    const double c1 = std::cos(pi * (i + 0.5) / steps);
    const double lo = std::fmax(-1.0, 2 * beta - c1);
    const double hi = std::fmin(1.0, 2 * gamma - c1);
    if (lo < hi) total += (std::acos(lo) - std::acos(hi)) / pi;
  }
  return total / steps;
}

/// Star discrepancy by evaluating every critical anchored box directly.
inline double star_discrepancy(const std::vector<std::vector<double>>& pts) {
  const std::size_t d = pts.front().size();
  std::vector<std::vector<double>> cand(d);
  for (std::size_t k = 0; k < d; ++k) {
    for (const auto& x : pts) cand[k].push_back(x[k]);
    cand[k].push_back(1.0);
  }
  const double n = static_cast<double>(pts.size());
  double worst = 0;
  std::vector<std::size_t> idx(d, 0);
  while (true) {
    double vol = 1;
    for (std::size_t k = 0; k < d; ++k) vol *= cand[k][idx[k]];
    double open = 0, closed = 0;
    for (const auto& x : pts) {
      bool in_open = true, in_closed = true;
      for (std::size_t k = 0; k < d; ++k) {
        if (!(x[k] < cand[k][idx[k]])) in_open = false;
        if (!(x[k] <= cand[k][idx[k]])) in_closed = false;
      }
      open += in_open;
      closed += in_closed;
    }
    worst = std::fmax(worst, std::fmax(vol - open / n, closed / n - vol));
    std::size_t k = 0;
    while (k < d && ++idx[k] == cand[k].size()) idx[k++] = 0;
    if (k == d) break;
  }
  return worst;
}

}  // namespace oracle
