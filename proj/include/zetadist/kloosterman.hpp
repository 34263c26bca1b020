#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "zetadist/classify.hpp"
#include "zetadist/equidist.hpp"
#include "zetadist/numeric.hpp"

namespace zetadist {

inline constexpr std::uint64_t kMaxKloostermanOrder = 1U << 24U;
inline constexpr std::size_t kMaxKappaLength = 10'000'000;

/// How often each residue t in F_p occurs as Tr(x + a/x), x in F_{p^n}^*.
/// The sum is then sum_t counts[t] e(t/p).
std::vector<std::uint64_t> kloosterman_trace_counts(std::uint64_t p, unsigned n, std::int64_t a);

/// K_{p^n}(a) = sum_{x != 0} cos(2 pi Tr(x + a/x) / p) with psi(t) = e(t/p).
/// Throws SizeExceeded when p^n > 2^24 and ZeroParameter when p | a. If
/// `imag` is given it receives the discarded sine part.
double kloosterman_sum(std::uint64_t p, unsigned n, std::int64_t a, double* imag = nullptr);

struct KloostermanData {
  std::uint64_t p = 0;
  std::int64_t a = 0;  // reduced into [1, p)
  double K = 0;
  Real K_precise;
  /// arccos(K / (2 sqrt p)) in [0, pi].
  Real phi;
  int precision_digits = 0;
  double imag = 0;
};

KloostermanData kloosterman_data(std::uint64_t p, std::int64_t a,
                                 int digits = kDefaultAngleDigits);

/// Data for a prescribed angle, used to exercise the pipeline on synthetic input.
KloostermanData kloosterman_data_from_angle(std::uint64_t p, const Real& phi,
                                            int digits = kDefaultAngleDigits);

struct KappaSequence {
  /// kappa[n - 1] = K_{p^n}(a) / (2 p^{n/2}) = (-1)^{n+1} cos(n phi).
  std::vector<double> kappa;
  std::size_t size() const { return kappa.size(); }
};

KappaSequence kappa_sequence(const KloostermanData& data, std::size_t count);
KappaSequence kappa_sequence(std::uint64_t p, std::int64_t a, std::size_t count);

struct KappaReport {
  KloostermanData data;
  EmpiricalReport empirical;
  /// Search for k_1 phi/pi = k_0 with |k_1| <= 50 at epsilon 1e-9.
  RelationReport relation;
  /// False when a relation was found, i.e. the sequence is periodic.
  bool equidistribution_expected = true;
};

inline constexpr long kKappaRelationBound = 50;
inline constexpr double kKappaRelationEpsilon = 1e-9;

KappaReport kappa_distribution_report(const KloostermanData& data, std::size_t count,
                                      std::span<const IntervalQuery> grid);
KappaReport kappa_distribution_report(std::uint64_t p, std::int64_t a, std::size_t count,
                                      std::span<const IntervalQuery> grid);

}  // namespace zetadist
