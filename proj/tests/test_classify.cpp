#include <numeric>

#include "doctest.h"
#include "zetadist/classify.hpp"
#include "zetadist/error.hpp"

using namespace zetadist;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an exception");
  return ErrorKind::InvalidArgument;
}

std::vector<BigInt> poly(std::initializer_list<long> c) {
  std::vector<BigInt> out;
  for (long x : c) out.emplace_back(x);
  return out;
}

FrobeniusAngles planted(std::vector<std::pair<long, long>> fractions, int digits = 50) {
  PrecisionScope scope(static_cast<unsigned>(digits + 10));
  FrobeniusAngles a;
  a.q = 5;
  a.genus = static_cast<int>(fractions.size());
  a.precision_digits = digits;
  for (auto [num, den] : fractions) a.theta.push_back(Real(num) / den);
  return a;
}

}  // namespace

TEST_CASE("classify examples") {
  const Classification ss = classify(ZetaNumerator(1, 3, {1, 0, 3}), 3);
  CHECK(ss.kind == CurveKind::Supersingular);
  CHECK(ss.p_rank == 0);
  REQUIRE(ss.newton_slopes.size() == 1);
  CHECK(ss.newton_slopes[0].slope == boost::rational<long>(1, 2));
  CHECK(ss.newton_slopes[0].multiplicity == 2);

  const Classification ord = classify(ZetaNumerator(1, 5, {1, -2, 5}), 5);
  CHECK(ord.kind == CurveKind::Ordinary);
  CHECK(ord.p_rank == 1);

  const Classification mid = classify(ZetaNumerator(2, 5, {1, 1, 5, 5, 25}), 5);
  CHECK(mid.kind == CurveKind::Intermediate);
  CHECK(mid.p_rank == 1);

  // slopes are normalised per power of q
  const Classification over25 = classify(ZetaNumerator(1, 25, {1, 5, 25}), 5);
  CHECK(over25.kind == CurveKind::Supersingular);

  CHECK(kind_of([] { classify(ZetaNumerator(1, 5, {1, -2, 5}), 3); }) ==
        ErrorKind::BadCharacteristic);
}

TEST_CASE("ordinary iff p does not divide e_g") {
  for (long q : {3L, 5L, 7L}) {
    for (long a = -3; a <= 3; ++a) {
      const Classification c = classify(ZetaNumerator(1, q, {1, a, q}), static_cast<std::uint64_t>(q));
      CHECK((c.kind == CurveKind::Ordinary) == (std::gcd(a, q) == 1));
    }
    for (long e1 = -4; e1 <= 4; ++e1) {
      for (long e2 = -6; e2 <= 6; ++e2) {
        const ZetaNumerator z(2, q, {1, e1, e2, q * e1, q * q});
        const Classification c = classify(z, static_cast<std::uint64_t>(q));
        CHECK((c.kind == CurveKind::Ordinary) == (std::gcd(e2, q) == 1));
      }
    }
  }
}

TEST_CASE("irreducibility over Z") {
  CHECK(is_irreducible_over_Z(poly({1, 2, 5})));
  CHECK_FALSE(is_irreducible_over_Z(poly({1, 6, 9})));
  CHECK_FALSE(is_irreducible_over_Z(poly({-1, 0, 1})));
  CHECK(is_irreducible_over_Z(poly({3, 7})));
  CHECK_FALSE(is_irreducible_over_Z(poly({0, 1, 1})));
  // x^4 + 4 = (x^2 + 2x + 2)(x^2 - 2x + 2): no rational roots, still reducible.
  CHECK_FALSE(is_irreducible_over_Z(poly({4, 0, 0, 0, 1})));
  // (x^2 + 1)^2 -- the singular det = 0 branch.
  CHECK_FALSE(is_irreducible_over_Z(poly({1, 0, 2, 0, 1})));
  // (x^2 + 3)(x^2 + 5)
  CHECK_FALSE(is_irreducible_over_Z(poly({15, 0, 8, 0, 1})));
  CHECK(is_irreducible_over_Z(poly({2, 0, 0, 0, 1})));
  CHECK(is_irreducible_over_Z(poly({1, 1, 1, 1, 1})));  // 5th cyclotomic
  CHECK(is_irreducible_over_Z(poly({2, 4, 10})));  // primitive part 1 + 2x + 5x^2
  CHECK(kind_of([] { is_irreducible_over_Z(poly({1, 0, 0, 0, 0, 1})); }) ==
        ErrorKind::DegreeOutOfRange);
  CHECK(kind_of([] { is_irreducible_over_Z(poly({5})); }) == ErrorKind::DegreeOutOfRange);
}

TEST_CASE("irreducibility agrees with brute-force products of small factors") {
  // Every product of two integer quadratics with small coefficients must be
  // reported reducible.
  for (long b1 = -2; b1 <= 2; ++b1)
    for (long b0 = -2; b0 <= 2; ++b0)
      for (long c1 = -2; c1 <= 2; ++c1)
        for (long c0 = 1; c0 <= 3; ++c0) {
          if (b0 == 0) continue;
          const auto f = poly({b0 * c0, b1 * c0 + b0 * c1, c0 + b1 * c1 + b0, b1 + c1, 1});
          CHECK_FALSE(is_irreducible_over_Z(f));
        }
}

TEST_CASE("relation search") {
  {
    const RelationReport r = find_integer_relation(planted({{1, 2}}), 50, 1e-9);
    REQUIRE(r.found);
    CHECK(*r.found == std::vector<long>{1, 2});
    CHECK(r.min_residual == 0);
  }
  {
    const RelationReport r = find_integer_relation(planted({{1, 3}, {1, 6}}), 50, 1e-9);
    REQUIRE(r.found);
    CHECK(*r.found == std::vector<long>{0, 1, -2});
    CHECK(r.shells_searched == 2);
  }
  {
    const FrobeniusAngles a = frobenius_angles(ZetaNumerator(1, 5, {1, -2, 5}), 50);
    const RelationReport r = find_integer_relation(a, 50, 1e-9);
    CHECK_FALSE(r.found);
    CHECK(r.shells_searched == 50);
    CHECK(r.min_residual > 1e-9);
    CHECK(r.min_residual < 0.05);
  }
  // completeness on planted rationals r/s with s <= K
  for (long s = 2; s <= 40; s += 3) {
    for (long num = 1; num < s; num += 5) {
      const RelationReport r = find_integer_relation(planted({{num, s}, {1, 7}}), 40, 1e-12);
      REQUIRE(r.found);
      CHECK(r.min_residual < 1e-50);
    }
  }
  CHECK(kind_of([] { find_integer_relation(planted({{1, 2}}, 20), 10, 1e-12); }) ==
        ErrorKind::ToleranceBelowPrecision);
  CHECK(kind_of([] { find_integer_relation(planted({{1, 2}, {1, 3}, {1, 5}}), 61, 1e-9); }) ==
        ErrorKind::GuardExceeded);
}

TEST_CASE("relation soundness at doubled precision") {
  const ZetaNumerator z(1, 3, {1, 3, 3});  // theta = 5/6 or so
  const FrobeniusAngles a = frobenius_angles(z, 50);
  const RelationReport r = find_integer_relation(a, 50, 1e-9);
  REQUIRE(r.found);
  const FrobeniusAngles fine = frobenius_angles(z, 100);
  PrecisionScope scope(110);
  Real sum = -Real((*r.found)[0]);
  sum += fine.theta[0] * (*r.found)[1];
  CHECK(abs(sum) <= 1e-9);
}

TEST_CASE("census") {
  const CensusReport c3 = census(3, 1, {});
  // (a, b) in F_3^2 with 4a^3 + 27b^2 = a^3 != 0
  CHECK(c3.entries.size() == 6);
  for (const CensusEntry& e : c3.entries) {
    const long a1 = e.numerator.e()[1].convert_to<long>();
    CHECK(a1 >= -3);
    CHECK(a1 <= 3);
  }

  const CensusReport c5 = census(5, 1, {});
  for (const CensusEntry& e : c5.entries) {
    const bool ordinary = e.numerator.e()[1] % 5 != 0;
    CHECK((e.classification.kind == CurveKind::Ordinary) == ordinary);
    if (ordinary) CHECK_FALSE(e.relation.found);
    if (e.numerator.e()[1] == 0) CHECK_FALSE(e.p2_irreducible);
  }
  CHECK(c5.ordinary + c5.supersingular + c5.intermediate == c5.entries.size());

  CHECK(kind_of([] { census(2, 1, {}); }) == ErrorKind::EvenCharacteristic);
  CHECK(kind_of([] { census(17, 1, {}); }) == ErrorKind::SizeExceeded);

  CensusOptions small;
  small.sample_limit = 12;
  small.seed = 7;
  const CensusReport s1 = census(7, 2, small);
  const CensusReport s2 = census(7, 2, small);
  CHECK(s1.sampled);
  CHECK(s1.entries.size() == 12);
  for (std::size_t i = 0; i < s1.entries.size(); ++i) {
    CHECK(s1.entries[i].coefficients == s2.entries[i].coefficients);
    for (std::size_t j = 0; j < 5; ++j) {
      const BigInt& e = s1.entries[i].numerator.e()[j];
      const std::size_t g = 2;
      if (j >= g) continue;
      CHECK(s1.entries[i].numerator.e()[4 - j] == big_pow(7, g - j) * e);
    }
  }
}
