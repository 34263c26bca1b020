#include "zetadist/zeta.hpp"

#include <algorithm>
#include <string>

#include "zetadist/error.hpp"

namespace zetadist {

namespace {

constexpr int kMaxGenus = 4;  // eigenvalue polynomials of degree <= 8
constexpr int kAberthIterationCap = 500;

int sign(int i) { return i % 2 == 0 ? 1 : -1; }

// Full Newton's identities: elementary symmetric e_1..e_d from power sums
// s_1..s_d (s[n-1] = s_n). Throws NonIntegerCoefficient on inexact division.
std::vector<BigInt> newton_elementary(const std::vector<BigInt>& s, std::size_t d) {
  std::vector<BigInt> e(d + 1);
  e[0] = 1;
  for (std::size_t n = 1; n <= d; ++n) {
    BigInt acc = 0;
    for (std::size_t i = 1; i <= n; ++i) {
      acc += sign(static_cast<int>(i) - 1) * e[n - i] * s[i - 1];
    }
    if (acc % n != 0) {
      fail(ErrorKind::NonIntegerCoefficient,
           "power sums give a non-integral coefficient e_" + std::to_string(n));
    }
    e[n] = acc / n;
  }
  return e;
}

struct Complex {
  Real re;
  Real im;
};

Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
Complex operator*(const Complex& a, const Complex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Complex operator/(const Complex& a, const Complex& b) {
  const Real den = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}
Real norm(const Complex& a) { return sqrt(a.re * a.re + a.im * a.im); }

}  // namespace

ZetaNumerator::ZetaNumerator(int genus, BigInt q, std::vector<BigInt> e)
    : genus_(genus), q_(std::move(q)), e_(std::move(e)) {
  if (genus_ < 1 || genus_ > kMaxGenus) {
    fail(ErrorKind::InvalidArgument, "genus must lie in [1, 4]");
  }
  if (q_ < 2) fail(ErrorKind::InvalidArgument, "q must be at least 2");
  if (e_.size() != static_cast<std::size_t>(2 * genus_ + 1)) {
    fail(ErrorKind::InvalidArgument, "numerator needs 2g + 1 coefficients");
  }
  if (e_[0] != 1) fail(ErrorKind::InvalidArgument, "e_0 must be 1");
  for (int i = 0; i <= genus_; ++i) {
    if (e_[static_cast<std::size_t>(2 * genus_ - i)] !=
        big_pow(q_, static_cast<std::uint64_t>(genus_ - i)) * e_[static_cast<std::size_t>(i)]) {
      fail(ErrorKind::InvalidArgument,
           "functional equation e_{2g-i} = q^{g-i} e_i fails at i = " + std::to_string(i));
    }
  }
}

std::vector<BigInt> ZetaNumerator::coefficients() const {
  std::vector<BigInt> out(e_.size());
  for (std::size_t i = 0; i < e_.size(); ++i) out[i] = sign(static_cast<int>(i)) * e_[i];
  return out;
}

bool within_weil_bound(const BigInt& s, const BigInt& q, int genus, std::uint64_t n) {
  return s * s <= 4 * genus * genus * big_pow(q, n);
}

PowerSums power_sums_from_counts(std::span<const std::uint64_t> counts, const BigInt& q,
                                 int genus) {
  PowerSums ps{q, genus, {}};
  for (std::size_t n = 1; n <= counts.size(); ++n) {
    BigInt s = big_pow(q, n) + 1 - BigInt(counts[n - 1]);
    if (!within_weil_bound(s, q, genus, n)) {
      fail(ErrorKind::WeilViolation, "count over F_{q^" + std::to_string(n) +
                                         "} violates the Weil bound");
    }
    ps.s.push_back(std::move(s));
  }
  return ps;
}

ZetaNumerator numerator_from_power_sums(const PowerSums& ps) {
  const auto g = static_cast<std::size_t>(ps.genus);
  if (ps.s.size() != g) fail(ErrorKind::InvalidArgument, "need exactly g power sums");
  std::vector<BigInt> e = newton_elementary(ps.s, g);
  e.resize(2 * g + 1);
  for (std::size_t i = 0; i < g; ++i) e[2 * g - i] = big_pow(ps.q, g - i) * e[i];
  return ZetaNumerator(ps.genus, ps.q, std::move(e));
}

TraceStream::TraceStream(const ZetaNumerator& z)
    : e_(z.e()), history_(z.e().size() - 1) {}

const BigInt& TraceStream::next() {
  ++n_;
  const std::size_t d = e_.size() - 1;
  const std::size_t n = n_;
  BigInt acc = 0;
  for (std::size_t i = 1; i <= std::min(n - 1, d); ++i) {
    const BigInt& prev = history_[(n - i) % d];
    if (i % 2 == 1) {
      acc += e_[i] * prev;
    } else {
      acc -= e_[i] * prev;
    }
  }
  if (n <= d) acc += sign(static_cast<int>(n) - 1) * static_cast<long>(n) * e_[n];
  history_[n % d] = acc;
  current_ = std::move(acc);
  return current_;
}

PowerSums extend_power_sums(const ZetaNumerator& z, std::size_t count) {
  if (count == 0) fail(ErrorKind::InvalidArgument, "need at least one power sum");
  if (count > kMaxRecurrenceLength) {
    fail(ErrorKind::GuardExceeded, "power-sum length above 10^6");
  }
  PowerSums ps{z.q(), z.genus(), {}};
  ps.s.reserve(count);
  TraceStream stream(z);
  for (std::size_t n = 1; n <= count; ++n) ps.s.push_back(stream.next());
  return ps;
}

ZetaNumerator pm_numerator(const ZetaNumerator& z, unsigned m) {
  if (m == 0) fail(ErrorKind::InvalidArgument, "extension degree must be positive");
  if (m == 1) return z;
  const auto d = static_cast<std::size_t>(2 * z.genus());
  TraceStream stream(z);
  std::vector<BigInt> strided;
  for (std::size_t n = 1; n <= d * m; ++n) {
    const BigInt& s = stream.next();
    if (n % m == 0) strided.push_back(s);
  }
  try {
    return ZetaNumerator(z.genus(), big_pow(z.q(), m), newton_elementary(strided, d));
  } catch (const Error& err) {
    fail(ErrorKind::NonIntegerCoefficient,
         std::string("internal inconsistency building P_m: ") + err.what());
  }
}

BigInt jacobian_order(const ZetaNumerator& z, unsigned n) {
  BigInt total = 0;
  for (const BigInt& c : pm_numerator(z, n).coefficients()) total += c;
  return total;
}

ZetaNumerator zeta_numerator(const CurveSpec& curve) {
  std::vector<std::uint64_t> counts;
  for (int n = 1; n <= curve.genus(); ++n) {
    counts.push_back(count_points(curve, static_cast<unsigned>(n)));
  }
  return numerator_from_power_sums(
      power_sums_from_counts(counts, BigInt(curve.base().p()), curve.genus()));
}

FrobeniusAngles frobenius_angles(const ZetaNumerator& z, int digits) {
  if (digits < 15 || digits > 200) {
    fail(ErrorKind::InvalidArgument, "angle precision must lie in [15, 200] digits");
  }
  PrecisionScope scope(static_cast<unsigned>(2 * digits));
  const int g = z.genus();
  const int degree = 2 * g;

  // Monic eigenvalue polynomial, descending: T^{2g} - e_1 T^{2g-1} + ... + e_{2g}.
  std::vector<Real> poly;
  for (int i = 0; i <= degree; ++i) {
    poly.emplace_back(Real(z.e()[static_cast<std::size_t>(i)].str()) * sign(i));
  }
  const Real root_q = sqrt(Real(z.q().str()));
  const Real pi = acos(Real(-1));
  const Real work_eps = pow(Real(10), -(2 * digits - 5));

  auto evaluate = [&](const Complex& x, Complex& value, Complex& slope) {
    value = {poly[0], Real(0)};
    slope = {Real(0), Real(0)};
    for (int i = 1; i <= degree; ++i) {
      slope = slope * x + value;
      value = value * x + Complex{poly[static_cast<std::size_t>(i)], Real(0)};
    }
  };

  std::vector<Complex> roots;
  const Real offset = Real(2) / 5;
  for (int k = 0; k < degree; ++k) {
    const Real arg = 2 * pi * k / degree + offset;
    roots.push_back({root_q * cos(arg), root_q * sin(arg)});
  }

  int iterations = 0;
  for (; iterations < kAberthIterationCap; ++iterations) {
    Real largest_step = 0;
    for (int k = 0; k < degree; ++k) {
      Complex value;
      Complex slope;
      evaluate(roots[static_cast<std::size_t>(k)], value, slope);
      if (value.re == 0 && value.im == 0) continue;
      const Complex ratio = value / slope;
      Complex repulsion{Real(0), Real(0)};
      for (int j = 0; j < degree; ++j) {
        if (j == k) continue;
        repulsion = repulsion + Complex{Real(1), Real(0)} /
                                    (roots[static_cast<std::size_t>(k)] -
                                     roots[static_cast<std::size_t>(j)]);
      }
      const Complex step =
          ratio / (Complex{Real(1), Real(0)} - ratio * repulsion);
      roots[static_cast<std::size_t>(k)] = roots[static_cast<std::size_t>(k)] - step;
      largest_step = std::max(largest_step, Real(norm(step)));
    }
    if (largest_step <= work_eps * root_q) break;
  }
  const bool hit_cap = iterations >= kAberthIterationCap;

  FrobeniusAngles out;
  out.q = z.q();
  out.genus = g;
  out.iterations = iterations;
  out.precision_digits = digits;
  out.modulus_residual = 0;
  for (const Complex& r : roots) {
    out.modulus_residual = std::max(out.modulus_residual, Real(abs(norm(r) - root_q)));
  }
  const Real modulus_tol = pow(Real(10), -(digits - 3));
  if (out.modulus_residual > modulus_tol) {
    if (hit_cap) fail(ErrorKind::NoConvergence, "root iteration did not converge in 500 steps");
    fail(ErrorKind::WeilViolation, "an eigenvalue modulus differs from sqrt(q)");
  }

  // Conjugate pairing: strictly upper roots give one angle each; roots on the
  // real axis (theta in {0, 1}) are sorted and every other one is kept.
  const Real axis_tol = modulus_tol * root_q;
  std::vector<Real> upper;
  std::vector<Real> real_axis;
  std::size_t lower_count = 0;
  for (const Complex& r : roots) {
    if (r.im > axis_tol) {
      upper.push_back(atan2(r.im, r.re) / pi);
    } else if (r.im < -axis_tol) {
      ++lower_count;
    } else {
      real_axis.push_back(r.re > 0 ? Real(0) : Real(1));
    }
  }
  if (upper.size() != lower_count || real_axis.size() % 2 != 0) {
    fail(ErrorKind::WeilViolation, "eigenvalues do not pair into complex conjugates");
  }
  std::sort(real_axis.begin(), real_axis.end());
  for (std::size_t i = 0; i < real_axis.size(); i += 2) upper.push_back(real_axis[i]);
  std::sort(upper.begin(), upper.end());
  out.theta = std::move(upper);

  const std::vector<Real> rebuilt = reconstruct_eigenvalue_polynomial(out);
  out.reconstruction_error = 0;
  for (int i = 0; i <= degree; ++i) {
    const Real& expected = poly[static_cast<std::size_t>(i)];
    const Real scale = std::max(Real(1), Real(abs(expected)));
    out.reconstruction_error = std::max(
        out.reconstruction_error, Real(abs(rebuilt[static_cast<std::size_t>(i)] - expected) / scale));
  }
  return out;
}

std::vector<Real> reconstruct_eigenvalue_polynomial(const FrobeniusAngles& angles) {
  const Real q(angles.q.str());
  const Real root_q = sqrt(q);
  const Real pi = acos(Real(-1));
  std::vector<Real> acc{Real(1)};
  for (const Real& theta : angles.theta) {
    const Real middle = -2 * root_q * cos(pi * theta);
    std::vector<Real> next(acc.size() + 2, Real(0));
    for (std::size_t i = 0; i < acc.size(); ++i) {
      next[i] += acc[i];
      next[i + 1] += acc[i] * middle;
      next[i + 2] += acc[i] * q;
    }
    acc = std::move(next);
  }
  return acc;
}

}  // namespace zetadist
