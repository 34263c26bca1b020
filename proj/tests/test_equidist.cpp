#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "zetadist/curves.hpp"
#include "zetadist/equidist.hpp"
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

ZetaNumerator f5_curve() { return ZetaNumerator(1, 5, {1, -2, 5}); }
ZetaNumerator f3_supersingular() { return ZetaNumerator(1, 3, {1, 0, 3}); }
ZetaNumerator genus2_f5() {
  return zeta_numerator(CurveSpec::hyperelliptic(make_field(5, 1), {1, 1, 0, 0, 0, 1}));
}

std::vector<IntervalQuery> random_queries(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<IntervalQuery> out;
  for (int i = 0; i < count; ++i) {
    double a = u(rng), b = u(rng);
    if (a > b) std::swap(a, b);
    out.push_back(IntervalQuery::make(a, b));
  }
  return out;
}

}  // namespace

TEST_CASE("alpha examples") {
  const auto ss = alpha_sequence(f3_supersingular(), 12, AlphaMode::Exact);
  const std::vector<double> period{0, -1, 0, 1};
  for (std::size_t n = 0; n < 12; ++n) CHECK(ss.alpha[n] == doctest::Approx(period[n % 4]));

  const auto a5 = alpha_sequence(f5_curve(), 1, AlphaMode::Exact);
  CHECK(a5.alpha[0] == doctest::Approx(-1.0 / std::sqrt(5.0)).epsilon(1e-15));
}

TEST_CASE("exact-mode alpha has 1e-12 relative accuracy") {
  for (const auto& z : {f5_curve(), genus2_f5(), ZetaNumerator(1, 7, {1, 1, 7})}) {
    const std::size_t count = 3000;
    const auto seq = alpha_sequence(z, count, AlphaMode::Exact);
    const auto ps = extend_power_sums(z, count);
    PrecisionScope scope(60);
    const Real root_q = sqrt(Real(z.q()));
    Real scale = 2 * z.genus();
    for (std::size_t n = 1; n <= count; ++n) {
      scale *= root_q;
      const double ref = Real(Real(ps.at(n)) / scale).convert_to<double>();
      CHECK(std::abs(seq.alpha[n - 1] - ref) <= 1e-12 * std::abs(ref) + 1e-300);
    }
  }
}

TEST_CASE("exact and angle modes agree") {
  for (const auto& z : {f5_curve(), genus2_f5(), ZetaNumerator(1, 7, {1, 1, 7})}) {
    const auto exact = alpha_sequence(z, 10000, AlphaMode::Exact);
    const auto angle = alpha_sequence(z, 10000, AlphaMode::Angle);
    double worst = 0;
    for (std::size_t i = 0; i < exact.size(); ++i) {
      worst = std::max(worst, std::abs(exact.alpha[i] - angle.alpha[i]));
    }
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("alpha guards") {
  CHECK(kind_of([] { alpha_sequence(f5_curve(), kMaxExactAlpha + 1, AlphaMode::Exact); }) ==
        ErrorKind::GuardExceeded);
  auto angles = frobenius_angles(f5_curve(), 30);
  CHECK(kind_of([&] { alpha_sequence(angles, 10); }) == ErrorKind::PrecisionInsufficient);
}

TEST_CASE("interval counting") {
  const std::vector<double> v{0.5, -0.2, 0.9};
  CHECK(count_in_interval(v, IntervalQuery::make(0, 1)) == 2);
  CHECK(count_in_interval(v, IntervalQuery::make(-1, 1)) == 3);
  CHECK(count_in_interval(v, IntervalQuery::make(0.5, 0.5)) == 1);
  const auto ss = alpha_sequence(f3_supersingular(), 100, AlphaMode::Exact);
  CHECK(count_in_interval(ss, IntervalQuery::make(-0.5, 0.5)) == 50);
  CHECK(kind_of([] { IntervalQuery::make(0.3, 0.2); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { IntervalQuery::make(-1.5, 0.2); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("default grid partitions [-1, 1]") {
  const auto grid = default_grid(21);
  REQUIRE(grid.size() == 21);
  CHECK(grid.front().beta == -1.0);
  CHECK(grid.back().gamma == 1.0);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) CHECK(grid[i].gamma == grid[i + 1].beta);
}

TEST_CASE("lambda closed form and full mass") {
  CHECK(lambda_density(1, IntervalQuery::make(-1, 1), 1e-9).value == 1.0);
  CHECK(lambda_density(1, IntervalQuery::make(-0.5, 0.5), 1e-9).value ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  for (int g : {2, 3}) {
    const auto full = lambda_density(g, IntervalQuery::make(-1, 1), default_density_tolerance(g));
    CHECK(full.method == DensityMethod::Quadrature);
    CHECK(std::abs(full.value - 1.0) <= default_density_tolerance(g));
  }
  CHECK(kind_of([] { lambda_density(4, IntervalQuery::make(-1, 1), 1e-6); }) ==
        ErrorKind::InvalidArgument);
  CHECK(kind_of([] { lambda_density(2, IntervalQuery::make(-1, 1), 1e-13); }) ==
        ErrorKind::InvalidArgument);
}

TEST_CASE("lambda_2 matches an independent midpoint integration") {
  for (const auto& q : random_queries(7, 6)) {
    const double ref = oracle::lambda2_midpoint(q.beta, q.gamma);
    CHECK(std::abs(lambda_density(2, q, 1e-9).value - ref) <= 1e-6);
  }
}

TEST_CASE("lambda normalization over a partition") {
  const auto grid = default_grid(21);
  for (int g : {1, 2, 3}) {
    const double tol = default_density_tolerance(g);
    double sum = 0;
    for (const auto& q : grid) sum += lambda_density(g, q, tol).value;
    CHECK(std::abs(sum - 1.0) <= 21 * tol);
  }
}

TEST_CASE("lambda symmetry and monotonicity") {
  for (int g : {1, 2, 3}) {
    for (const auto& q : random_queries(11 + g, 5)) {
      const double a = lambda_density(g, q, 1e-9).value;
      const double b = lambda_density(g, IntervalQuery::make(-q.gamma, -q.beta), 1e-9).value;
      CHECK(std::abs(a - b) <= 2e-9);
    }
    const double tol = default_density_tolerance(g);
    double prev = 0;
    for (double gamma = -0.9; gamma <= 1.0; gamma += 0.1) {
      const double v = lambda_density(g, IntervalQuery::make(-0.95, gamma), tol).value;
      CHECK(v >= prev - 2 * tol);
      prev = v;
    }
    prev = 1;
    for (double beta = -1.0; beta <= 0.9; beta += 0.1) {
      const double v = lambda_density(g, IntervalQuery::make(beta, 0.95), tol).value;
      CHECK(v <= prev + 2 * tol);
      prev = v;
    }
  }
}

TEST_CASE("Monte Carlo agrees with quadrature") {
  CHECK(monte_carlo_lambda(1, IntervalQuery::make(-1, 1), 1000, 3).value == 1.0);
  const auto third = monte_carlo_lambda(1, IntervalQuery::make(-0.5, 0.5), 1000000, 0);
  CHECK(std::abs(third.value - 1.0 / 3.0) <= 4 * third.error_bound);
  for (int g : {1, 2, 3}) {
    for (const auto& q : random_queries(100 + g, 4)) {
      const auto mc = monte_carlo_lambda(g, q, 200000, 5);
      const auto quad = lambda_density(g, q, default_density_tolerance(g));
      CHECK(std::abs(mc.value - quad.value) <= 4 * mc.error_bound);
    }
  }
  const auto a = monte_carlo_lambda(2, IntervalQuery::make(-0.3, 0.4), 100000, 9);
  const auto b = monte_carlo_lambda(2, IntervalQuery::make(-0.3, 0.4), 100000, 9);
  CHECK(a.value == b.value);
  CHECK(kind_of([] { monte_carlo_lambda(1, IntervalQuery::make(-1, 1), 999, 0); }) ==
        ErrorKind::InvalidArgument);
}

TEST_CASE("empirical report") {
  const auto grid = default_grid(21);
  const auto seq = alpha_sequence(f5_curve(), 10000, AlphaMode::Exact);
  const auto report = empirical_report(seq, grid);
  CHECK(report.sup_deviation <= 0.05);
  std::size_t hist_total = 0;
  for (auto c : report.histogram.counts) hist_total += c;
  CHECK(hist_total == 10000);

  const std::vector<IntervalQuery> whole{IntervalQuery::make(-1, 1)};
  const auto full = empirical_report(seq, whole);
  CHECK(full.rows[0].frequency == 1.0);
  CHECK(full.rows[0].deviation == 0.0);

  const auto ss = alpha_sequence(f3_supersingular(), 10000, AlphaMode::Exact);
  const std::vector<IntervalQuery> centre{IntervalQuery::make(-0.1, 0.1)};
  const auto neg = empirical_report(ss, centre);
  CHECK(neg.rows[0].frequency == 0.5);
  CHECK(neg.rows[0].lambda == doctest::Approx(0.0637686).epsilon(1e-6));
  CHECK(neg.sup_deviation > 0.4);
}

TEST_CASE("Kronecker points") {
  FrobeniusAngles half;
  half.q = 4;
  half.genus = 1;
  half.precision_digits = 50;
  half.theta = {Real(0.5)};
  const auto pts = kronecker_points(half, 4);
  CHECK(pts.coords == std::vector<double>{0.5, 0, 0.5, 0});

  const auto angles = frobenius_angles(f5_curve());
  const auto two = kronecker_points(angles, 2);
  const double t = angles.theta[0].convert_to<double>();
  CHECK(two.coords[0] == doctest::Approx(t).epsilon(1e-15));
  CHECK(two.coords[0] == doctest::Approx(0.6475836).epsilon(1e-7));
  CHECK(two.coords[1] == doctest::Approx(2 * t - 1).epsilon(1e-14));
}

TEST_CASE("star discrepancy in one dimension") {
  PointSet one{1, {0.5}};
  CHECK(star_discrepancy(one).star_discrepancy == 0.5);
  const std::size_t n = 16;
  PointSet mid{1, {}};
  for (std::size_t i = 1; i <= n; ++i) mid.coords.push_back((2.0 * i - 1) / (2.0 * n));
  const auto r = star_discrepancy(mid);
  CHECK(r.star_discrepancy == 1.0 / 32);
  CHECK(r.method == DiscrepancyMethod::Exact1d);
  CHECK(r.extreme_factor == 2);

  const auto angles = frobenius_angles(f5_curve());
  const double small = star_discrepancy(kronecker_points(angles, 100)).star_discrepancy;
  const double large = star_discrepancy(kronecker_points(angles, 10000)).star_discrepancy;
  CHECK(large < small);
}

TEST_CASE("star discrepancy in two and three dimensions matches brute force") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int d : {2, 3}) {
    for (int trial = 0; trial < 5; ++trial) {
      PointSet pts{d, {}};
      std::vector<std::vector<double>> raw;
      for (int i = 0; i < 25; ++i) {
        std::vector<double> x;
        for (int k = 0; k < d; ++k) {
          // Coarse values so that ties between coordinates occur.
          x.push_back(std::floor(u(rng) * 16) / 16);
          pts.coords.push_back(x.back());
        }
        raw.push_back(x);
      }
      const auto rep = star_discrepancy(pts);
      CHECK(rep.star_discrepancy == doctest::Approx(oracle::star_discrepancy(raw)).epsilon(1e-14));
      CHECK(rep.method == (d == 2 ? DiscrepancyMethod::Exact2d : DiscrepancyMethod::LowerBound));
    }
  }
  PointSet centre{2, {0.5, 0.5}};
  CHECK(star_discrepancy(centre).star_discrepancy == 0.75);
  PointSet big{2, std::vector<double>(2 * (kMaxExact2dPoints + 1), 0.25)};
  CHECK(kind_of([&] { star_discrepancy(big); }) == ErrorKind::SizeExceeded);
}

TEST_CASE("arcsine quadrature matches the closed form") {
  std::vector<IntervalQuery> queries = random_queries(3, 10);
  queries.push_back(IntervalQuery::make(-1, 1));
  queries.push_back(IntervalQuery::make(-1, -0.999));
  queries.push_back(IntervalQuery::make(0.2, 1));
  for (const auto& q : queries) {
    const auto quad = lambda_quadrature(1, q, 1e-10);
    CHECK(quad.method == DensityMethod::Quadrature);
    CHECK(std::abs(quad.value - lambda_density(1, q, 1e-10).value) <= 1e-10);
  }
}
