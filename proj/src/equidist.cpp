#include "zetadist/equidist.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "zetadist/error.hpp"
#include "zetadist/turns.hpp"

namespace zetadist {

namespace {

constexpr double kWeilSlack = 1e-9;

double clamp_alpha(double a) {
  if (!(std::abs(a) <= 1.0 + kWeilSlack)) {
    fail(ErrorKind::WeilViolation, "alpha outside [-1, 1]");
  }
  return std::clamp(a, -1.0, 1.0);
}

}  // namespace

std::string to_string(AlphaMode mode) {
  return mode == AlphaMode::Exact ? "exact" : "angle";
}

AlphaScaler::AlphaScaler(const BigInt& q, int genus) : genus_(genus) {
  PrecisionScope scope(40);
  Real l = log(Real(q)) / log(Real(2));
  log2q_hi_ = l.convert_to<double>();
  log2q_lo_ = Real(l - log2q_hi_).convert_to<double>();
}

double AlphaScaler::operator()(const BigInt& s, std::uint64_t n) const {
  if (s == 0) return 0.0;
  double mantissa = 0;
  long exponent = 0;
  frexp_big(s, mantissa, exponent);
  // (n/2) log2 q carried as an unevaluated sum so the exponent difference
  // keeps full relative accuracy for n up to 10^6.
  const auto nd = static_cast<double>(n);
  const double prod = nd * log2q_hi_;
  const double prod_err = std::fma(nd, log2q_hi_, -prod);
  double delta = static_cast<double>(exponent) - 0.5 * prod;
  delta -= 0.5 * (prod_err + nd * log2q_lo_);
  return mantissa * std::exp2(delta) / (2.0 * genus_);
}

AlphaSequence alpha_sequence(const ZetaNumerator& z, std::size_t count, AlphaMode mode) {
  if (mode == AlphaMode::Angle) {
    if (count > kMaxAngleAlpha) fail(ErrorKind::GuardExceeded, "angle-mode N above 10^8");
    return alpha_sequence(frobenius_angles(z, kDefaultAngleDigits), count);
  }
  if (count > kMaxExactAlpha) fail(ErrorKind::GuardExceeded, "exact-mode N above 10^6");
  AlphaSequence seq{z.q(), z.genus(), AlphaMode::Exact, {}};
  seq.alpha.reserve(count);
  const AlphaScaler scale(z.q(), z.genus());
  TraceStream stream(z);
  for (std::size_t n = 1; n <= count; ++n) {
    seq.alpha.push_back(clamp_alpha(scale(stream.next(), n)));
  }
  return seq;
}

AlphaSequence alpha_sequence(const FrobeniusAngles& angles, std::size_t count) {
  if (count > kMaxAngleAlpha) fail(ErrorKind::GuardExceeded, "angle-mode N above 10^8");
  if (angles.precision_digits < kDefaultAngleDigits) {
    fail(ErrorKind::PrecisionInsufficient, "angle mode needs angles to 50 digits");
  }
  AlphaSequence seq{angles.q, angles.genus, AlphaMode::Angle, {}};
  seq.alpha.reserve(count);
  // cos(pi theta n) = cos(2 pi n (theta / 2)).
  std::vector<Turn> half;
  {
    PrecisionScope scope(static_cast<unsigned>(angles.precision_digits) + 10);
    for (const Real& t : angles.theta) half.push_back(Turn::from_real(t / 2));
  }
  const double g = angles.genus;
  for (std::size_t n = 1; n <= count; ++n) {
    double sum = 0;
    for (const Turn& h : half) sum += h.times(n).cos2pi();
    seq.alpha.push_back(clamp_alpha(sum / g));
  }
  return seq;
}

IntervalQuery IntervalQuery::make(double beta, double gamma) {
  if (!(beta >= -1.0 && gamma <= 1.0 && beta <= gamma)) {
    fail(ErrorKind::InvalidArgument, "interval must satisfy -1 <= beta <= gamma <= 1");
  }
  return IntervalQuery{beta, gamma};
}

std::vector<IntervalQuery> default_grid(int intervals) {
  if (intervals < 1) fail(ErrorKind::InvalidArgument, "grid needs at least one interval");
  std::vector<IntervalQuery> grid;
  grid.reserve(static_cast<std::size_t>(intervals));
  for (int i = 0; i < intervals; ++i) {
    const double lo = static_cast<double>(2 * i - intervals) / intervals;
    const double hi = static_cast<double>(2 * (i + 1) - intervals) / intervals;
    grid.push_back(IntervalQuery{lo, hi});
  }
  return grid;
}

std::size_t count_in_interval(std::span<const double> values, const IntervalQuery& query) {
  return static_cast<std::size_t>(
      std::count_if(values.begin(), values.end(), [&](double x) { return query.contains(x); }));
}

std::size_t count_in_interval(const AlphaSequence& seq, const IntervalQuery& query) {
  return count_in_interval(std::span<const double>(seq.alpha), query);
}

void Histogram::add(double x) {
  auto bin = static_cast<int>(std::floor((x + 1.0) / 2.0 * kBins));
  bin = std::clamp(bin, 0, kBins - 1);
  ++counts[static_cast<std::size_t>(bin)];
}

EmpiricalReport empirical_report(std::span<const double> values, int genus,
                                 std::span<const IntervalQuery> grid) {
  if (grid.empty()) fail(ErrorKind::InvalidArgument, "empty interval grid");
  if (values.empty()) fail(ErrorKind::InvalidArgument, "empty sequence");
  EmpiricalReport report;
  report.genus = genus;
  report.count = values.size();
  const double tol = default_density_tolerance(genus);
  const auto n = static_cast<double>(values.size());
  for (const IntervalQuery& q : grid) {
    IntervalRow row;
    row.query = q;
    row.count = count_in_interval(values, q);
    row.frequency = static_cast<double>(row.count) / n;
    row.lambda = lambda_density(genus, q, tol).value;
    row.deviation = std::abs(row.frequency - row.lambda);
    report.sup_deviation = std::max(report.sup_deviation, row.deviation);
    report.rows.push_back(row);
  }
  for (double x : values) report.histogram.add(x);
  return report;
}

EmpiricalReport empirical_report(const AlphaSequence& seq, std::span<const IntervalQuery> grid) {
  return empirical_report(std::span<const double>(seq.alpha), seq.genus, grid);
}

PointSet kronecker_points(const FrobeniusAngles& angles, std::size_t count) {
  if (count > kMaxKroneckerPoints) fail(ErrorKind::GuardExceeded, "more than 10^6 points");
  std::vector<Turn> base;
  {
    PrecisionScope scope(static_cast<unsigned>(std::max(angles.precision_digits, 40)) + 10);
    for (const Real& t : angles.theta) base.push_back(Turn::from_real(t));
  }
  PointSet points;
  points.dimension = angles.genus;
  points.coords.reserve(count * base.size());
  for (std::size_t n = 1; n <= count; ++n) {
    for (const Turn& t : base) {
      points.coords.push_back(std::min(t.times(n).value(), std::nextafter(1.0, 0.0)));
    }
  }
  return points;
}

}  // namespace zetadist
