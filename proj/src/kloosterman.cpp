#include "zetadist/kloosterman.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

#include "zetadist/error.hpp"
#include "zetadist/ffield.hpp"
#include "zetadist/turns.hpp"

namespace zetadist {

namespace {

std::uint64_t reduce_parameter(std::int64_t a, std::uint64_t p) {
  const auto pp = static_cast<std::int64_t>(p);
  const auto r = static_cast<std::uint64_t>(((a % pp) + pp) % pp);
  if (r == 0) fail(ErrorKind::ZeroParameter, "a must be a unit mod p");
  return r;
}

std::uint64_t inverse_mod(std::uint64_t x, std::uint64_t p) {
  std::int64_t r0 = static_cast<std::int64_t>(p), r1 = static_cast<std::int64_t>(x);
  std::int64_t s0 = 0, s1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::make_tuple(r1, r0 - q * r1);
    std::tie(s0, s1) = std::make_tuple(s1, s0 - q * s1);
  }
  const auto pp = static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(((s0 % pp) + pp) % pp);
}

// Neumaier's compensated summation.
struct CompensatedSum {
  double sum = 0;
  double carry = 0;
  void add(double x) {
    const double t = sum + x;
    carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

Real angle_from_cosine(const Real& c) {
  // Near c = +-1 arccos is ill conditioned; use arcsin of sqrt(1 - c^2).
  if (abs(c) > Real(0.99)) {
    const Real s = asin(sqrt((1 - c) * (1 + c)));
    return c > 0 ? s : Real(acos(Real(-1)) - s);
  }
  return acos(c);
}

}  // namespace

std::vector<std::uint64_t> kloosterman_trace_counts(std::uint64_t p, unsigned n, std::int64_t a) {
  if (n == 0) fail(ErrorKind::InvalidArgument, "extension degree must be positive");
  std::uint64_t order = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (order > kMaxKloostermanOrder / p) fail(ErrorKind::SizeExceeded, "p^n exceeds 2^24");
    order *= p;
  }
  const FieldSpec field = make_field(p, n);
  const std::uint64_t ar = reduce_parameter(a, p);
  std::vector<std::uint64_t> counts(p, 0);
  if (n == 1) {
    for (std::uint64_t x = 1; x < p; ++x) {
      ++counts[(x + static_cast<std::uint64_t>(
                        (static_cast<unsigned __int128>(ar) * inverse_mod(x, p)) % p)) %
               p];
    }
    return counts;
  }
  // Walk the cyclic group by powers of a generator; g^{-i} = g^{order-1-i}.
  const std::uint64_t group = order - 1;
  const auto basis = monomial_traces(field);
  const FieldElement g = primitive_element(field);
  const auto& modulus = field.modulus();
  const auto gc = g.coeffs();
  unsigned g_degree = n - 1;
  while (g_degree > 0 && gc[g_degree] == 0) --g_degree;
  std::vector<std::uint32_t> trace(group);
  // y <- y * g as sum_j g_j (y x^j); multiplying by x is a shift plus one
  // reduction step, and the generator found first has few coefficients.
  std::vector<std::uint64_t> y(n, 0), shifted(n), acc(n);
  y[0] = 1;
  for (std::uint64_t i = 0; i < group; ++i) {
    std::uint64_t t = 0;
    for (unsigned j = 0; j < n; ++j) t += y[j] * basis[j] % p;
    trace[i] = static_cast<std::uint32_t>(t % p);
    std::fill(acc.begin(), acc.end(), 0);
    shifted = y;
    for (unsigned j = 0; j <= g_degree; ++j) {
      if (gc[j] != 0) {
        for (unsigned k = 0; k < n; ++k) acc[k] = (acc[k] + gc[j] * shifted[k]) % p;
      }
      if (j == g_degree) break;
      const std::uint64_t top = shifted[n - 1];
      for (unsigned k = n - 1; k > 0; --k) {
        shifted[k] = (shifted[k - 1] + (p - top) * modulus[k] % p) % p;
      }
      shifted[0] = (p - top) * modulus[0] % p;
    }
    y.swap(acc);
  }
  for (std::uint64_t i = 0; i < group; ++i) {
    const std::uint64_t inv_t = trace[(group - i) % group];
    ++counts[(trace[i] + ar * inv_t) % p];
  }
  return counts;
}

double kloosterman_sum(std::uint64_t p, unsigned n, std::int64_t a, double* imag) {
  const auto counts = kloosterman_trace_counts(p, n, a);
  CompensatedSum re, im;
  const double pd = static_cast<double>(p);
  // Pair t with p - t so that sin(pi) and cos(pi) never enter as rounded values.
  re.add(static_cast<double>(counts[0]));
  if (p == 2) re.add(-static_cast<double>(counts[1]));
  for (std::uint64_t t = 1; 2 * t < p; ++t) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(t) / pd;
    const auto plus = static_cast<double>(counts[t] + counts[p - t]);
    const double minus = static_cast<double>(counts[t]) - static_cast<double>(counts[p - t]);
    re.add(plus * std::cos(angle));
    im.add(minus * std::sin(angle));
  }
  if (std::abs(im.value()) > 1e-10) {
    fail(ErrorKind::NoConvergence, "Kloosterman sum has a nonzero imaginary part");
  }
  const double bound = 2.0 * std::pow(pd, n / 2.0);
  if (std::abs(re.value()) > bound * (1 + 1e-12)) {
    fail(ErrorKind::WeilViolation, "Kloosterman sum exceeds 2 p^{n/2}");
  }
  if (imag != nullptr) *imag = im.value();
  return re.value();
}

KloostermanData kloosterman_data(std::uint64_t p, std::int64_t a, int digits) {
  KloostermanData data;
  data.p = p;
  data.a = static_cast<std::int64_t>(reduce_parameter(a, p));
  data.K = kloosterman_sum(p, 1, a, &data.imag);
  data.precision_digits = digits;
  const auto counts = kloosterman_trace_counts(p, 1, a);
  PrecisionScope scope(static_cast<unsigned>(digits) + 10);
  const Real two_pi = 2 * acos(Real(-1));
  Real sum = 0;
  for (std::uint64_t t = 0; t < p; ++t) {
    if (counts[t] != 0) sum += Real(counts[t]) * cos(two_pi * t / p);
  }
  data.K_precise = sum;
  const Real c = sum / (2 * sqrt(Real(p)));
  if (1 - abs(c) < pow(Real(10), -(digits - 10))) {
    fail(ErrorKind::PrecisionInsufficient, "angle too close to 0 or pi to resolve");
  }
  data.phi = angle_from_cosine(c);
  return data;
}

KloostermanData kloosterman_data_from_angle(std::uint64_t p, const Real& phi, int digits) {
  KloostermanData data;
  data.p = p;
  data.a = 1;
  data.precision_digits = digits;
  PrecisionScope scope(static_cast<unsigned>(digits) + 10);
  data.phi = Real(phi);
  data.K_precise = 2 * sqrt(Real(p)) * cos(data.phi);
  data.K = data.K_precise.convert_to<double>();
  return data;
}

KappaSequence kappa_sequence(const KloostermanData& data, std::size_t count) {
  if (count > kMaxKappaLength) fail(ErrorKind::GuardExceeded, "kappa sequence above 10^7 terms");
  if (data.precision_digits < kDefaultAngleDigits) {
    fail(ErrorKind::PrecisionInsufficient, "kappa needs phi to 50 digits");
  }
  Turn step;
  {
    PrecisionScope scope(static_cast<unsigned>(data.precision_digits) + 10);
    step = Turn::from_real(data.phi / (2 * acos(Real(-1))));
  }
  KappaSequence seq;
  seq.kappa.reserve(count);
  for (std::size_t n = 1; n <= count; ++n) {
    const double c = step.times(n).cos2pi();
    seq.kappa.push_back(std::clamp(n % 2 == 1 ? c : -c, -1.0, 1.0));
  }
  return seq;
}

KappaSequence kappa_sequence(std::uint64_t p, std::int64_t a, std::size_t count) {
  if (count > kMaxKappaLength) fail(ErrorKind::GuardExceeded, "kappa sequence above 10^7 terms");
  return kappa_sequence(kloosterman_data(p, a), count);
}

KappaReport kappa_distribution_report(const KloostermanData& data, std::size_t count,
                                      std::span<const IntervalQuery> grid) {
  KappaReport report;
  report.data = data;
  const auto seq = kappa_sequence(data, count);
  report.empirical = empirical_report(std::span<const double>(seq.kappa), 1, grid);
  FrobeniusAngles angle;
  angle.q = data.p;
  angle.genus = 1;
  angle.precision_digits = data.precision_digits;
  {
    PrecisionScope scope(static_cast<unsigned>(data.precision_digits) + 10);
    angle.theta = {Real(data.phi / acos(Real(-1)))};
  }
  report.relation = find_integer_relation(angle, kKappaRelationBound, kKappaRelationEpsilon);
  report.equidistribution_expected = !report.relation.found.has_value();
  return report;
}

KappaReport kappa_distribution_report(std::uint64_t p, std::int64_t a, std::size_t count,
                                      std::span<const IntervalQuery> grid) {
  return kappa_distribution_report(kloosterman_data(p, a), count, grid);
}

}  // namespace zetadist
