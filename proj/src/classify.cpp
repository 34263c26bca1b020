#include "zetadist/classify.hpp"

#include <algorithm>
#include <random>

#include "zetadist/error.hpp"
#include "zetadist/poly_fp.hpp"

namespace zetadist {

namespace {

using Rational = boost::rational<long>;

// Positive divisors of |n| (n != 0) via trial-division factorisation.
std::vector<BigInt> positive_divisors(const BigInt& n) {
  BigInt rest = abs(n);
  std::vector<std::pair<BigInt, int>> factors;
  for (BigInt d = 2; d * d <= rest; ++d) {
    int e = 0;
    while (rest % d == 0) {
      rest /= d;
      ++e;
    }
    if (e > 0) factors.emplace_back(d, e);
  }
  if (rest > 1) factors.emplace_back(rest, 1);
  std::vector<BigInt> divisors{1};
  for (const auto& [prime, exponent] : factors) {
    const std::size_t existing = divisors.size();
    BigInt power = 1;
    for (int e = 1; e <= exponent; ++e) {
      power *= prime;
      for (std::size_t i = 0; i < existing; ++i) divisors.push_back(divisors[i] * power);
    }
  }
  std::sort(divisors.begin(), divisors.end());
  return divisors;
}

std::vector<BigInt> signed_divisors(const BigInt& n) {
  std::vector<BigInt> out;
  for (const BigInt& d : positive_divisors(n)) {
    out.push_back(d);
    out.push_back(-d);
  }
  return out;
}

bool has_rational_root(const std::vector<BigInt>& a) {
  const std::size_t n = a.size() - 1;
  if (a[0] == 0) return true;
  for (const BigInt& r : signed_divisors(a[0])) {
    for (const BigInt& s : positive_divisors(a[n])) {
      // sum a_i r^i s^{n-i} == 0
      BigInt value = 0;
      BigInt r_pow = 1;
      for (std::size_t i = 0; i <= n; ++i) {
        value += a[i] * r_pow * big_pow(s, n - i);
        r_pow *= r;
      }
      if (value == 0) return true;
    }
  }
  return false;
}

bool divides(const BigInt& d, const BigInt& n) { return d != 0 && n % d == 0; }

// (b2 x^2 + b1 x + b0)(c2 x^2 + c1 x + c0) = a4 x^4 + ... + a0, a0 != 0.
bool has_quadratic_factor(const std::vector<BigInt>& a) {
  const BigInt& a0 = a[0];
  const BigInt& a1 = a[1];
  const BigInt& a2 = a[2];
  const BigInt& a3 = a[3];
  const BigInt& a4 = a[4];
  auto consistent = [&](const BigInt& b2, const BigInt& b1, const BigInt& b0, const BigInt& c2,
                        const BigInt& c1, const BigInt& c0) {
    return b2 * c1 + b1 * c2 == a3 && b2 * c0 + b1 * c1 + b0 * c2 == a2 &&
           b1 * c0 + b0 * c1 == a1;
  };
  for (const BigInt& b2 : positive_divisors(a4)) {
    const BigInt c2 = a4 / b2;
    for (const BigInt& b0 : signed_divisors(a0)) {
      const BigInt c0 = a0 / b0;
      const BigInt det = c2 * b0 - b2 * c0;
      if (det != 0) {
        const BigInt num_b1 = a3 * b0 - b2 * a1;
        const BigInt num_c1 = c2 * a1 - c0 * a3;
        if (num_b1 % det != 0 || num_c1 % det != 0) continue;
        if (consistent(b2, num_b1 / det, b0, c2, num_c1 / det, c0)) return true;
        continue;
      }
      const BigInt m = a2 - b2 * c0 - b0 * c2;  // = b1 c1
      if (m != 0) {
        for (const BigInt& b1 : signed_divisors(m)) {
          if (consistent(b2, b1, b0, c2, m / b1, c0)) return true;
        }
      } else {
        if (divides(b2, a3) && consistent(b2, 0, b0, c2, a3 / b2, c0)) return true;
        if (divides(c2, a3) && consistent(b2, a3 / c2, b0, c2, 0, c0)) return true;
      }
    }
  }
  return false;
}

// Uniform integer in [0, n) from a 64-bit engine by rejection.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % n;
}

}  // namespace

std::string to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::Ordinary: return "ordinary";
    case CurveKind::Supersingular: return "supersingular";
    case CurveKind::Intermediate: return "intermediate";
  }
  return "unknown";
}

Classification classify(const ZetaNumerator& z, std::uint64_t p) {
  if (p < 2) fail(ErrorKind::BadCharacteristic, "p must be at least 2");
  BigInt rest = z.q();
  int k = 0;
  while (rest % p == 0) {
    rest /= p;
    ++k;
  }
  if (rest != 1) fail(ErrorKind::BadCharacteristic, "q is not a power of p");

  const int g = z.genus();
  // Vertices (i, v_p(e_i)); zero coefficients have infinite valuation.
  std::vector<std::pair<long, long>> points;
  for (int i = 0; i <= 2 * g; ++i) {
    const BigInt& e = z.e()[static_cast<std::size_t>(i)];
    if (e != 0) points.emplace_back(i, valuation(e, p));
  }
  // Lower convex hull, monotone chain.
  std::vector<std::pair<long, long>> hull;
  for (const auto& pt : points) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      const long cross = (b.first - a.first) * (pt.second - a.second) -
                         (b.second - a.second) * (pt.first - a.first);
      if (cross > 0) break;
      hull.pop_back();
    }
    hull.push_back(pt);
  }

  Classification out;
  for (std::size_t i = 1; i < hull.size(); ++i) {
    const long run = hull[i].first - hull[i - 1].first;
    const Rational slope(hull[i].second - hull[i - 1].second, run * k);
    if (!out.newton_slopes.empty() && out.newton_slopes.back().slope == slope) {
      out.newton_slopes.back().multiplicity += static_cast<int>(run);
    } else {
      out.newton_slopes.push_back({slope, static_cast<int>(run)});
    }
  }
  out.p_rank = 0;
  for (const auto& s : out.newton_slopes) {
    if (s.slope.numerator() == 0) out.p_rank += s.multiplicity;
  }
  if (out.p_rank == g) {
    out.kind = CurveKind::Ordinary;
  } else if (out.newton_slopes.size() == 1 && out.newton_slopes[0].slope == Rational(1, 2)) {
    out.kind = CurveKind::Supersingular;
  } else {
    out.kind = CurveKind::Intermediate;
  }
  return out;
}

bool is_irreducible_over_Z(const std::vector<BigInt>& poly) {
  std::vector<BigInt> a = poly;
  while (!a.empty() && a.back() == 0) a.pop_back();
  if (a.size() < 2 || a.size() > 5) {
    fail(ErrorKind::DegreeOutOfRange, "irreducibility test supports degree 1..4");
  }
  BigInt content = 0;
  for (const BigInt& c : a) content = gcd(content, abs(c));
  for (BigInt& c : a) c /= content;
  if (a.back() < 0) {
    for (BigInt& c : a) c = -c;
  }
  if (a.size() == 2) return true;
  if (has_rational_root(a)) return false;
  if (a.size() == 5) return !has_quadratic_factor(a);
  return true;
}

RelationReport find_integer_relation(const FrobeniusAngles& angles, long bound, double epsilon) {
  const int g = static_cast<int>(angles.theta.size());
  if (g < 1 || g > 3) fail(ErrorKind::InvalidArgument, "relation search supports g = 1..3");
  if (bound < 1 || bound > (g == 3 ? 60 : 1000)) {
    fail(ErrorKind::GuardExceeded, "search bound K out of range (1000 for g <= 2, 60 for g = 3)");
  }
  if (!(epsilon >= std::pow(10.0, -(angles.precision_digits - 10)))) {
    fail(ErrorKind::ToleranceBelowPrecision, "epsilon is below the angle precision");
  }
  PrecisionScope scope(static_cast<unsigned>(angles.precision_digits + 10));
  std::vector<Real> theta;
  for (const Real& t : angles.theta) theta.emplace_back(t);
  const Real eps(epsilon);

  RelationReport report;
  report.bound = bound;
  report.epsilon = epsilon;
  report.min_residual = Real(1);

  std::vector<long> k(static_cast<std::size_t>(g), 0);
  Real sum;
  Real residual;
  auto visit = [&](long shell) {
    sum = 0;
    for (int j = 0; j < g; ++j) sum += theta[static_cast<std::size_t>(j)] * k[static_cast<std::size_t>(j)];
    const Real nearest = round(sum);
    residual = abs(sum - nearest);
    if (residual < report.min_residual) {
      report.min_residual = residual;
      report.min_vector = k;
    }
    if (!report.found && residual <= eps) {
      std::vector<long> hit{nearest.convert_to<long>()};
      hit.insert(hit.end(), k.begin(), k.end());
      report.found = hit;
    }
    (void)shell;
  };

  // Lexicographic walk of one shell: coordinate j ranges over [-s, s]
  // (or [0, s] while all earlier entries are zero, for the sign
  // normalisation); the last coordinate is pinned to +-s unless an earlier
  // entry already has |k| = s.
  auto walk = [&](auto&& self, int j, long s, bool leading_zero, bool on_shell) -> void {
    if (j == g) {
      if (on_shell && !leading_zero) visit(s);
      return;
    }
    const long lo = leading_zero ? 0 : -s;
    for (long v = lo; v <= s; ++v) {
      const bool last = j == g - 1;
      const bool hits = v == s || v == -s;
      if (last && !on_shell && !hits) continue;
      if (last && leading_zero && v <= 0) continue;
      k[static_cast<std::size_t>(j)] = v;
      self(self, j + 1, s, leading_zero && v == 0, on_shell || hits);
    }
    k[static_cast<std::size_t>(j)] = 0;
  };

  for (long s = 1; s <= bound; ++s) {
    walk(walk, 0, s, true, false);
    report.shells_searched = s;
    if (report.found) break;
  }
  return report;
}

CensusReport census(std::uint64_t p, int genus, const CensusOptions& options) {
  if (p == 2) fail(ErrorKind::EvenCharacteristic, "census needs odd characteristic");
  if (!is_prime(p)) fail(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (genus != 1 && genus != 2) fail(ErrorKind::InvalidArgument, "census genus must be 1 or 2");
  if ((genus == 1 && p > 13) || (genus == 2 && p > 7)) {
    fail(ErrorKind::SizeExceeded, "census limited to p <= 13 (genus 1) and p <= 7 (genus 2)");
  }
  const FieldSpec base = make_field(p, 1);
  const auto sp = static_cast<std::int64_t>(p);

  CensusReport report;
  report.p = p;
  report.genus = genus;
  report.options = options;

  std::vector<std::vector<std::int64_t>> family;
  if (genus == 1) {
    report.family = "y^2 = x^3 + a x + b, all nonsingular (a, b)";
    for (std::int64_t a = 0; a < sp; ++a) {
      for (std::int64_t b = 0; b < sp; ++b) {
        try {
          validate(CurveSpec::elliptic(base, a, b));
          family.push_back({a, b});
        } catch (const Error&) {
        }
      }
    }
  } else {
    report.family = "y^2 = x^5 + c3 x^3 + c2 x^2 + c1 x + c0 (x^4 coefficient fixed to 0), squarefree";
    for (std::int64_t idx = 0; idx < sp * sp * sp * sp; ++idx) {
      std::vector<std::int64_t> c{idx % sp, (idx / sp) % sp, (idx / sp / sp) % sp, idx / sp / sp / sp};
      try {
        validate(CurveSpec::hyperelliptic(base, {c[0], c[1], c[2], c[3], 0, 1}));
        family.push_back(c);
      } catch (const Error&) {
      }
    }
    if (p == 7) {
      report.sampled = true;
      std::mt19937_64 rng(options.seed);
      const std::size_t take = std::min(options.sample_limit, family.size());
      for (std::size_t i = 0; i < take; ++i) {
        const std::size_t j = i + uniform_below(rng, family.size() - i);
        std::swap(family[i], family[j]);
      }
      family.resize(take);
      std::sort(family.begin(), family.end(), [](const auto& x, const auto& y) {
        return std::lexicographical_compare(x.rbegin(), x.rend(), y.rbegin(), y.rend());
      });
    }
  }

  for (const auto& c : family) {
    const CurveSpec curve = genus == 1
                                ? CurveSpec::elliptic(base, c[0], c[1])
                                : CurveSpec::hyperelliptic(base, {c[0], c[1], c[2], c[3], 0, 1});
    std::vector<std::uint64_t> counts;
    for (int n = 1; n <= genus; ++n) counts.push_back(count_points(curve, static_cast<unsigned>(n)));
    const ZetaNumerator z = numerator_from_power_sums(power_sums_from_counts(counts, BigInt(p), genus));
    CensusEntry entry{c, counts, z, classify(z, p), false, false, false, {}};
    entry.p_irreducible = is_irreducible_over_Z(z.coefficients());
    entry.p2_irreducible = is_irreducible_over_Z(pm_numerator(z, 2).coefficients());
    entry.pm_irreducible_all = true;
    for (unsigned m = 1; m <= options.simplicity_degree && entry.pm_irreducible_all; ++m) {
      entry.pm_irreducible_all = is_irreducible_over_Z(pm_numerator(z, m).coefficients());
    }
    entry.relation = find_integer_relation(frobenius_angles(z, options.digits), options.bound,
                                           options.epsilon);

    switch (entry.classification.kind) {
      case CurveKind::Ordinary: ++report.ordinary; break;
      case CurveKind::Supersingular: ++report.supersingular; break;
      case CurveKind::Intermediate: ++report.intermediate; break;
    }
    if (entry.p_irreducible) ++report.p_irreducible;
    if (entry.relation.found) ++report.relation_found;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace zetadist
