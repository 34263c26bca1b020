#include <algorithm>
#include <cmath>
#include <numeric>

#include "zetadist/equidist.hpp"
#include "zetadist/error.hpp"

namespace zetadist {

namespace {

constexpr std::size_t kGridCandidates = 64;

std::vector<double> axis_values(const PointSet& pts, int axis) {
  std::vector<double> v;
  v.reserve(pts.size() + 1);
  for (std::size_t i = 0; i < pts.size(); ++i) v.push_back(pts.at(i, axis));
  v.push_back(1.0);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::size_t rank_of(const std::vector<double>& sorted, double x) {
  return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), x) -
                                  sorted.begin());
}

double exact_1d(const PointSet& pts) {
  std::vector<double> x(pts.coords);
  std::sort(x.begin(), x.end());
  const auto n = static_cast<double>(x.size());
  double worst = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    worst = std::max(worst, std::abs(x[i] - (2.0 * static_cast<double>(i) + 1.0) / (2.0 * n)));
  }
  return 1.0 / (2.0 * n) + worst;
}

// Sweeps the last axis for a fixed set of members: `open_rank[r]` counts
// members strictly inside in the other coordinates with last coordinate of
// rank r, `closed_rank[r]` those inside the closed box.
double sweep_last_axis(const std::vector<double>& last, const std::vector<std::size_t>& open_rank,
                       const std::vector<std::size_t>& closed_rank, double base_volume,
                       double n) {
  double worst = 0;
  std::size_t open_count = 0;
  std::size_t closed_count = 0;
  for (std::size_t r = 0; r < last.size(); ++r) {
    const double vol = base_volume * last[r];
    worst = std::max(worst, vol - static_cast<double>(open_count) / n);
    closed_count += closed_rank[r];
    worst = std::max(worst, static_cast<double>(closed_count) / n - vol);
    open_count += open_rank[r];
  }
  return worst;
}

double exact_2d(const PointSet& pts) {
  const auto xs = axis_values(pts, 0);
  const auto ys = axis_values(pts, 1);
  const std::size_t count = pts.size();
  const auto n = static_cast<double>(count);
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return pts.at(a, 0) < pts.at(b, 0); });
  std::vector<std::size_t> yrank(count);
  for (std::size_t i = 0; i < count; ++i) yrank[i] = rank_of(ys, pts.at(i, 1));

  std::vector<std::size_t> open_rank(ys.size(), 0);
  std::vector<std::size_t> closed_rank(ys.size(), 0);
  std::size_t next_open = 0;
  std::size_t next_closed = 0;
  double worst = 0;
  for (double u : xs) {
    while (next_open < count && pts.at(order[next_open], 0) < u) {
      ++open_rank[yrank[order[next_open]]];
      ++next_open;
    }
    while (next_closed < count && pts.at(order[next_closed], 0) <= u) {
      ++closed_rank[yrank[order[next_closed]]];
      ++next_closed;
    }
    worst = std::max(worst, sweep_last_axis(ys, open_rank, closed_rank, u, n));
  }
  return worst;
}

std::vector<double> subsample(const std::vector<double>& values) {
  if (values.size() <= kGridCandidates) return values;
  std::vector<double> out;
  out.reserve(kGridCandidates);
  for (std::size_t i = 0; i < kGridCandidates; ++i) {
    out.push_back(values[i * (values.size() - 1) / (kGridCandidates - 1)]);
  }
  return out;
}

double lower_bound_3d(const PointSet& pts) {
  const auto us = subsample(axis_values(pts, 0));
  const auto vs = subsample(axis_values(pts, 1));
  const auto ws = axis_values(pts, 2);
  const std::size_t count = pts.size();
  const auto n = static_cast<double>(count);
  std::vector<std::size_t> wrank(count);
  for (std::size_t i = 0; i < count; ++i) wrank[i] = rank_of(ws, pts.at(i, 2));

  std::vector<std::size_t> open_rank(ws.size());
  std::vector<std::size_t> closed_rank(ws.size());
  double worst = 0;
  for (double u : us) {
    for (double v : vs) {
      std::fill(open_rank.begin(), open_rank.end(), 0);
      std::fill(closed_rank.begin(), closed_rank.end(), 0);
      for (std::size_t i = 0; i < count; ++i) {
        const double x = pts.at(i, 0);
        const double y = pts.at(i, 1);
        if (x < u && y < v) ++open_rank[wrank[i]];
        if (x <= u && y <= v) ++closed_rank[wrank[i]];
      }
      worst = std::max(worst, sweep_last_axis(ws, open_rank, closed_rank, u * v, n));
    }
  }
  return worst;
}

}  // namespace

std::string to_string(DiscrepancyMethod method) {
  switch (method) {
    case DiscrepancyMethod::Exact1d: return "exact-1d";
    case DiscrepancyMethod::Exact2d: return "exact-2d";
    case DiscrepancyMethod::LowerBound: return "lower-bound";
  }
  return "unknown";
}

DiscrepancyReport star_discrepancy(const PointSet& points) {
  if (points.dimension < 1 || points.dimension > 3) {
    fail(ErrorKind::InvalidArgument, "star discrepancy supports dimensions 1 to 3");
  }
  if (points.size() == 0) fail(ErrorKind::InvalidArgument, "empty point set");
  for (double c : points.coords) {
    if (!(c >= 0.0 && c < 1.0)) fail(ErrorKind::InvalidArgument, "points must lie in [0, 1)");
  }
  DiscrepancyReport report;
  report.count = points.size();
  report.dimension = points.dimension;
  report.extreme_factor = std::ldexp(1.0, points.dimension);
  switch (points.dimension) {
    case 1:
      report.method = DiscrepancyMethod::Exact1d;
      report.star_discrepancy = exact_1d(points);
      break;
    case 2:
      if (points.size() > kMaxExact2dPoints) {
        fail(ErrorKind::SizeExceeded, "exact 2-d discrepancy limited to 10^4 points");
      }
      report.method = DiscrepancyMethod::Exact2d;
      report.star_discrepancy = exact_2d(points);
      break;
    default:
      if (points.size() > kMaxKroneckerPoints) {
        fail(ErrorKind::SizeExceeded, "3-d discrepancy bound limited to 10^6 points");
      }
      report.method = DiscrepancyMethod::LowerBound;
      report.star_discrepancy = lower_bound_3d(points);
      break;
  }
  return report;
}

}  // namespace zetadist
