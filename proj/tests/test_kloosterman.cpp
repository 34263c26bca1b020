#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "zetadist/error.hpp"
#include "zetadist/kloosterman.hpp"

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

}  // namespace

TEST_CASE("Kloosterman sums match brute-force enumeration") {
  CHECK(std::abs(kloosterman_sum(3, 1, 1) + 1.0) <= 1e-10);
  for (std::int64_t p : {2, 3, 5, 7}) {
    for (unsigned n = 1; n <= 3; ++n) {
      for (std::int64_t a = 1; a < p; ++a) {
        double im = 0;
        const double ref = oracle::kloosterman(p, static_cast<int>(n), a);
        const double k = kloosterman_sum(static_cast<std::uint64_t>(p), n, a, &im);
        CHECK(k == doctest::Approx(ref).epsilon(1e-12));
        CHECK(std::abs(im) <= 1e-10);
        CHECK(std::abs(k) <= 2 * std::pow(p, n / 2.0));
      }
    }
  }
}

TEST_CASE("Kloosterman sums over extensions follow the eigenvalue recurrence") {
  // K_{p^n} = -(sigma^n + conj(sigma)^n) with sigma + conj(sigma) = -K_p.
  for (std::uint64_t p : {3, 5, 7, 11, 13}) {
    for (std::int64_t a = 1; a < static_cast<std::int64_t>(p); ++a) {
      const double k1 = kloosterman_sum(p, 1, a);
      const double pd = static_cast<double>(p);
      CHECK(std::abs(kloosterman_sum(p, 2, a) - (2 * pd - k1 * k1)) <= 1e-6);
      CHECK(std::abs(kloosterman_sum(p, 3, a) - (k1 * k1 * k1 - 3 * pd * k1)) <= 1e-6);
    }
  }
  CHECK(std::abs(kloosterman_sum(3, 2, 1) - 5.0) <= 1e-10);
}

TEST_CASE("Kloosterman argument checks") {
  CHECK(kind_of([] { kloosterman_sum(5, 1, 10); }) == ErrorKind::ZeroParameter);
  CHECK(kind_of([] { kloosterman_sum(17, 6, 1); }) == ErrorKind::SizeExceeded);
  CHECK(kind_of([] { kloosterman_sum(9, 1, 1); }) == ErrorKind::NotPrime);
  CHECK(kloosterman_sum(5, 1, -1) == kloosterman_sum(5, 1, 4));
}

TEST_CASE("kappa sequence") {
  const auto data = kloosterman_data(3, 1);
  CHECK(std::abs(data.K_precise.convert_to<double>() + 1.0) <= 1e-15);
  const auto seq = kappa_sequence(data, 12);
  CHECK(seq.kappa[0] == doctest::Approx(-1.0 / (2 * std::sqrt(3.0))).epsilon(1e-15));
  CHECK(seq.kappa[1] == doctest::Approx(5.0 / 6.0).epsilon(1e-14));
  for (std::uint64_t p : {3, 5, 11}) {
    for (std::int64_t a : {1, 2}) {
      const auto d = kloosterman_data(p, a);
      const auto kap = kappa_sequence(d, 20);
      PrecisionScope scope(60);
      CHECK(abs(2 * sqrt(Real(p)) * cos(d.phi) - d.K_precise) < Real(1e-45));
      for (unsigned n = 1; std::pow(p, n) <= 20000; ++n) {
        const double scaled = 2 * std::pow(static_cast<double>(p), n / 2.0) * kap.kappa[n - 1];
        CHECK(std::abs(scaled - kloosterman_sum(p, n, a)) <= 1e-6);
      }
      for (double k : kap.kappa) CHECK(std::abs(k) <= 1.0);
    }
  }
  CHECK(kind_of([] { kappa_sequence(3, 1, kMaxKappaLength + 1); }) == ErrorKind::GuardExceeded);
}

TEST_CASE("kappa distribution report") {
  const auto grid = default_grid(21);
  const auto rep = kappa_distribution_report(11, 1, 10000, grid);
  CHECK_FALSE(rep.relation.found.has_value());
  CHECK(rep.equidistribution_expected);
  CHECK(rep.empirical.sup_deviation <= 0.05);

  PrecisionScope scope(60);
  const auto planted = kloosterman_data_from_angle(7, acos(Real(-1)) / 3);
  const auto periodic = kappa_distribution_report(planted, 10000, grid);
  REQUIRE(periodic.relation.found.has_value());
  CHECK(periodic.relation.found->at(1) == 3);
  CHECK_FALSE(periodic.equidistribution_expected);

  const std::vector<IntervalQuery> whole{IntervalQuery::make(-1, 1)};
  const auto full = kappa_distribution_report(11, 1, 1000, whole);
  CHECK(full.empirical.rows[0].frequency == 1.0);
  CHECK(full.empirical.rows[0].lambda == 1.0);
  CHECK(full.empirical.rows[0].deviation == 0.0);
}
