#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "zetadist/equidist.hpp"
#include "zetadist/error.hpp"

namespace zetadist {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kMaxLevels = 15;

double lambda1(double beta, double gamma) {
  const double b = std::clamp(beta, -1.0, 1.0);
  const double c = std::clamp(gamma, -1.0, 1.0);
  if (b >= c) return 0.0;
  return std::clamp((std::asin(c) - std::asin(b)) / kPi, 0.0, 1.0);
}

// Points in (0, 1) where (g x - cos(pi a)) / (g - 1) meets a singular point
// -1 + 2j/(g-1) of lambda_{g-1}, for x in {beta, gamma}.
std::vector<double> breakpoints(int g, double beta, double gamma) {
  std::vector<double> cuts{0.0, 1.0};
  for (double x : {beta, gamma}) {
    for (int j = 0; j < g; ++j) {
      const double v = -1.0 + 2.0 * j / (g - 1);
      const double c = g * x - (g - 1) * v;
      if (c > -1.0 && c < 1.0) cuts.push_back(std::acos(c) / kPi);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double a, double b) { return b - a < 1e-15; }),
             cuts.end());
  return cuts;
}

// Only the outermost call accumulates an error estimate; inner levels run
// at a tighter tolerance and contribute at most inner_tol over [0, 1].
double lambda_rec(int g, double beta, double gamma, double tol, bool& exhausted,
                  double* error) {
  if (g == 1) return lambda1(beta, gamma);
  if (beta > gamma || gamma < -1.0 || beta > 1.0) return 0.0;
  if (beta <= -1.0 && gamma >= 1.0) return 1.0;

  const double inner_tol = tol * 1e-2;
  boost::math::quadrature::tanh_sinh<double> integrator(kMaxLevels);
  const auto cuts = breakpoints(g, beta, gamma);
  const double gm1 = g - 1;
  double total = 0;
  double err_sum = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i];
    const double hi = cuts[i + 1];
    auto f = [&](double a) {
      const double c = std::cos(kPi * a);
      return lambda_rec(g - 1, (g * beta - c) / gm1, (g * gamma - c) / gm1, inner_tol,
                        exhausted, nullptr);
    };
    double err = 0;
    double l1 = 0;
    // tanh_sinh reports its error on the [-1, 1] reference interval.
    const double rel_tol = std::max(inner_tol, 4 * std::numeric_limits<double>::epsilon());
    total += integrator.integrate(f, lo, hi, rel_tol, &err, &l1);
    err_sum += err * (hi - lo) / 2;
  }
  if (err_sum > tol) exhausted = true;
  if (error != nullptr) *error = err_sum + inner_tol;
  return std::clamp(total, 0.0, 1.0);
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30U)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27U)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31U);
}

constexpr std::uint64_t kBlockSize = 1U << 16U;

}  // namespace

std::string to_string(DensityMethod method) {
  switch (method) {
    case DensityMethod::ClosedForm: return "closed-form";
    case DensityMethod::Quadrature: return "quadrature";
    case DensityMethod::MonteCarlo: return "monte-carlo";
  }
  return "unknown";
}

double default_density_tolerance(int genus) { return genus >= 3 ? 1e-6 : 1e-9; }

DensityValue lambda_density(int genus, const IntervalQuery& query, double tolerance) {
  if (genus < 1 || genus > 3) fail(ErrorKind::InvalidArgument, "density genus must be 1..3");
  if (!(tolerance >= 1e-12 && tolerance <= 1e-3)) {
    fail(ErrorKind::InvalidArgument, "tolerance must lie in [1e-12, 1e-3]");
  }
  IntervalQuery::make(query.beta, query.gamma);
  if (genus == 1) {
    return DensityValue{lambda1(query.beta, query.gamma), DensityMethod::ClosedForm, 0.0};
  }
  bool exhausted = false;
  double error = 0;
  const double value = lambda_rec(genus, query.beta, query.gamma, tolerance, exhausted, &error);
  if (exhausted || error > tolerance) {
    fail(ErrorKind::ToleranceUnachievable, "quadrature could not reach the requested tolerance");
  }
  return DensityValue{value, DensityMethod::Quadrature, error};
}

DensityValue lambda_quadrature(int genus, const IntervalQuery& query, double tolerance) {
  if (genus != 1) {
    auto v = lambda_density(genus, query, tolerance);
    v.method = DensityMethod::Quadrature;
    return v;
  }
  if (!(tolerance >= 1e-12 && tolerance <= 1e-3)) {
    fail(ErrorKind::InvalidArgument, "tolerance must lie in [1e-12, 1e-3]");
  }
  IntervalQuery::make(query.beta, query.gamma);
  if (query.beta == query.gamma) return DensityValue{0.0, DensityMethod::Quadrature, 0.0};
  boost::math::quadrature::tanh_sinh<double> integrator(kMaxLevels);
  // tanh_sinh passes xc = a - x (left half) or b - x (right half), which
  // keeps 1 -+ x accurate when an endpoint sits at -1 or 1.
  const double a = query.beta;
  const double b = query.gamma;
  auto density = [a, b](double x, double xc) {
    const double plus = xc < 0 ? (1 + a) - xc : 1 + x;
    const double minus = xc > 0 ? (1 - b) + xc : 1 - x;
    return 1.0 / (kPi * std::sqrt(plus * minus));
  };
  double err = 0;
  double l1 = 0;
  const double rel_tol = std::max(tolerance * 1e-2, 4 * std::numeric_limits<double>::epsilon());
  const double value = integrator.integrate(density, a, b, rel_tol, &err, &l1);
  const double bound = err * (query.gamma - query.beta) / 2;
  if (bound > tolerance) {
    fail(ErrorKind::ToleranceUnachievable, "quadrature could not reach the requested tolerance");
  }
  return DensityValue{std::clamp(value, 0.0, 1.0), DensityMethod::Quadrature, bound};
}

DensityValue monte_carlo_lambda(int genus, const IntervalQuery& query, std::uint64_t samples,
                                std::uint64_t seed) {
  if (genus < 1) fail(ErrorKind::InvalidArgument, "genus must be positive");
  if (samples < 1000) fail(ErrorKind::InvalidArgument, "at least 10^3 samples required");
  IntervalQuery::make(query.beta, query.gamma);
  const double g = genus;
  std::uint64_t hits = 0;
  const std::uint64_t blocks = (samples + kBlockSize - 1) / kBlockSize;
  for (std::uint64_t b = 0; b < blocks; ++b) {
    std::uint64_t state = seed ^ (0xD1B54A32D192ED03ULL * (b + 1));
    std::mt19937_64 rng(splitmix64(state));
    const std::uint64_t len = std::min(kBlockSize, samples - b * kBlockSize);
    for (std::uint64_t i = 0; i < len; ++i) {
      double sum = 0;
      for (int j = 0; j < genus; ++j) {
        const double psi = static_cast<double>(rng() >> 11U) * 0x1.0p-53;
        sum += std::cos(kPi * psi);
      }
      const double mean = sum / g;
      if (query.beta <= mean && mean <= query.gamma) ++hits;
    }
  }
  const double m = static_cast<double>(samples);
  const double p = static_cast<double>(hits) / m;
  return DensityValue{p, DensityMethod::MonteCarlo, std::sqrt(p * (1 - p) / m)};
}

}  // namespace zetadist
