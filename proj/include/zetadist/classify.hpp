#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "zetadist/zeta.hpp"

namespace zetadist {

enum class CurveKind { Ordinary, Supersingular, Intermediate };

std::string to_string(CurveKind kind);

struct NewtonSlope {
  boost::rational<long> slope;  // valuation per power of q, in [0, 1]
  int multiplicity = 0;
};

struct Classification {
  int p_rank = 0;
  CurveKind kind = CurveKind::Ordinary;
  std::vector<NewtonSlope> newton_slopes;  // ascending slope
};

/// Newton polygon of P(T) with respect to p, slopes normalised by v_p(q).
/// Throws BadCharacteristic unless q is a power of p.
Classification classify(const ZetaNumerator& z, std::uint64_t p);

/// Irreducibility over Z of the primitive part of an integer polynomial
/// (ascending coefficients) of degree 1..4. Rational-root search, plus an
/// exhaustive quadratic-times-quadratic search in degree 4.
bool is_irreducible_over_Z(const std::vector<BigInt>& poly);

struct RelationReport {
  /// (k_0, k_1, ..., k_g) with sum k_j theta_j = k_0 up to epsilon.
  std::optional<std::vector<long>> found;
  long bound = 0;
  double epsilon = 0;
  /// Smallest distance of sum k_j theta_j to an integer over all searched vectors.
  Real min_residual;
  std::vector<long> min_vector;  // (k_1..k_g) attaining min_residual
  long shells_searched = 0;
};

/// Scans nonzero (k_1..k_g), |k_j| <= bound, one representative per +-pair
/// (first nonzero entry positive), shell by max-norm and lexicographically
/// within a shell. Stops after the shell containing the first hit.
RelationReport find_integer_relation(const FrobeniusAngles& angles, long bound, double epsilon);

struct CensusOptions {
  long bound = 50;
  double epsilon = 1e-9;
  std::size_t sample_limit = 200;
  std::uint64_t seed = 0;
  int digits = kDefaultAngleDigits;
  unsigned simplicity_degree = 6;  // P_m irreducible for m = 1..this
};

struct CensusEntry {
  std::vector<std::int64_t> coefficients;  // (a, b) or (c_0, c_1, c_2, c_3)
  std::vector<std::uint64_t> counts;       // #C(F_{p^n}), n = 1..g
  ZetaNumerator numerator;
  Classification classification;
  bool p_irreducible = false;
  bool p2_irreducible = false;
  /// Irreducibility of P_m for every m up to options.simplicity_degree; a
  /// proxy for an absolutely simple Jacobian, not a proof.
  bool pm_irreducible_all = false;
  RelationReport relation;
};

struct CensusReport {
  std::uint64_t p = 0;
  int genus = 0;
  std::string family;
  bool sampled = false;
  CensusOptions options;
  std::vector<CensusEntry> entries;
  std::size_t ordinary = 0;
  std::size_t supersingular = 0;
  std::size_t intermediate = 0;
  std::size_t p_irreducible = 0;
  std::size_t relation_found = 0;
};

/// genus 1: all nonsingular y^2 = x^3 + a x + b, p <= 13.
/// genus 2: y^2 = x^5 + c_3 x^3 + c_2 x^2 + c_1 x + c_0; full for p <= 5,
/// a seeded sample of `sample_limit` curves for p = 7.
CensusReport census(std::uint64_t p, int genus, const CensusOptions& options);

}  // namespace zetadist
