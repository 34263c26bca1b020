#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "zetadist/zeta.hpp"

namespace zetadist {

enum class AlphaMode { Exact, Angle };

std::string to_string(AlphaMode mode);

/// alpha_n = a_n / (2 g q^{n/2}) for n = 1..N.
struct AlphaSequence {
  BigInt q;
  int genus = 0;
  AlphaMode mode = AlphaMode::Exact;
  std::vector<double> alpha;  // alpha[n - 1] holds alpha_n

  std::size_t size() const { return alpha.size(); }
};

inline constexpr std::size_t kMaxExactAlpha = 1'000'000;
inline constexpr std::size_t kMaxAngleAlpha = 100'000'000;

/// Exact mode runs the integer trace recurrence and converts each s_n in
/// the log domain; angle mode evaluates (1/g) sum_j cos(pi theta_j n) from
/// 50-digit angles.
AlphaSequence alpha_sequence(const ZetaNumerator& z, std::size_t count, AlphaMode mode);

/// Angle mode with caller-supplied angles (PrecisionInsufficient below 50 digits).
AlphaSequence alpha_sequence(const FrobeniusAngles& angles, std::size_t count);

/// Converts one exact trace to alpha_n without forming q^{n/2}.
class AlphaScaler {
 public:
  AlphaScaler(const BigInt& q, int genus);
  double operator()(const BigInt& s, std::uint64_t n) const;

 private:
  double log2q_hi_;
  double log2q_lo_;
  int genus_;
};

/// Closed interval [beta, gamma] with -1 <= beta <= gamma <= 1.
struct IntervalQuery {
  double beta = -1;
  double gamma = 1;

  /// Validating constructor; InvalidArgument on bad ordering or range.
  static IntervalQuery make(double beta, double gamma);
  bool contains(double x) const { return beta <= x && x <= gamma; }
};

/// M closed intervals [-1 + 2i/M, -1 + 2(i+1)/M].
std::vector<IntervalQuery> default_grid(int intervals = 21);

/// T_{beta,gamma}(N): number of alpha_n in the closed interval.
std::size_t count_in_interval(std::span<const double> values, const IntervalQuery& query);
std::size_t count_in_interval(const AlphaSequence& seq, const IntervalQuery& query);

enum class DensityMethod { ClosedForm, Quadrature, MonteCarlo };

std::string to_string(DensityMethod method);

struct DensityValue {
  double value = 0;
  DensityMethod method = DensityMethod::ClosedForm;
  double error_bound = 0;
};

/// Default quadrature tolerance: 1e-9 for g <= 2, 1e-6 for g = 3.
double default_density_tolerance(int genus);

/// Lebesgue measure of {psi in [0,1]^g : beta <= (1/g) sum cos(pi psi_j) <= gamma}.
/// g = 1 in closed form (the arcsine law); g = 2, 3 by nested adaptive
/// quadrature over the last coordinate with breakpoints where the inner
/// interval endpoints cross the inner level's singular points.
DensityValue lambda_density(int genus, const IntervalQuery& query, double tolerance);

/// Forces numerical integration at every genus; for g = 1 this integrates
/// the arcsine density 1 / (pi sqrt(1 - x^2)) over [beta, gamma].
DensityValue lambda_quadrature(int genus, const IntervalQuery& query, double tolerance);

/// Same measure by sampling; error_bound is the binomial standard error.
/// Samples are drawn in fixed blocks with per-block seeds, so the estimate
/// does not depend on how blocks are scheduled.
DensityValue monte_carlo_lambda(int genus, const IntervalQuery& query, std::uint64_t samples,
                                std::uint64_t seed);

struct IntervalRow {
  IntervalQuery query;
  std::size_t count = 0;
  double frequency = 0;
  double lambda = 0;
  double deviation = 0;
};

struct Histogram {
  static constexpr int kBins = 64;
  std::vector<std::size_t> counts = std::vector<std::size_t>(kBins, 0);

  static double lower_edge(int bin) { return -1.0 + 2.0 * bin / kBins; }
  void add(double x);
};

struct EmpiricalReport {
  int genus = 0;
  std::size_t count = 0;
  std::vector<IntervalRow> rows;
  Histogram histogram;
  double sup_deviation = 0;
};

/// Interval frequencies T/N against lambda_g, a 64-bin histogram on [-1, 1],
/// and the largest deviation over the grid.
EmpiricalReport empirical_report(std::span<const double> values, int genus,
                                 std::span<const IntervalQuery> grid);
EmpiricalReport empirical_report(const AlphaSequence& seq, std::span<const IntervalQuery> grid);

/// Points of [0,1)^d stored row-major.
struct PointSet {
  int dimension = 1;
  std::vector<double> coords;

  std::size_t size() const { return coords.size() / static_cast<std::size_t>(dimension); }
  double at(std::size_t i, int axis) const {
    return coords[i * static_cast<std::size_t>(dimension) + static_cast<std::size_t>(axis)];
  }
};

inline constexpr std::size_t kMaxKroneckerPoints = 1'000'000;

/// ({n theta_1}, ..., {n theta_g}) for n = 1..N, reduced exactly in 128-bit
/// fixed point.
PointSet kronecker_points(const FrobeniusAngles& angles, std::size_t count);

enum class DiscrepancyMethod { Exact1d, Exact2d, LowerBound };

std::string to_string(DiscrepancyMethod method);

struct DiscrepancyReport {
  std::size_t count = 0;
  int dimension = 1;
  double star_discrepancy = 0;
  DiscrepancyMethod method = DiscrepancyMethod::Exact1d;
  /// The unanchored discrepancy D satisfies D* <= D <= extreme_factor * D*.
  double extreme_factor = 2;
};

inline constexpr std::size_t kMaxExact2dPoints = 10'000;

DiscrepancyReport star_discrepancy(const PointSet& points);

}  // namespace zetadist
