#pragma once

#include <cstdint>
#include <vector>

#include "zetadist/ffield.hpp"

namespace zetadist {

enum class CurveModel { Elliptic, Hyperelliptic2 };

/// y^2 = f(x) over a prime field F_p (p odd). Elliptic models store
/// f = x^3 + a x + b; genus-2 models store f of degree 5 or 6 as given.
class CurveSpec {
 public:
  static CurveSpec elliptic(const FieldSpec& base, std::int64_t a, std::int64_t b);
  /// `f` is ascending degree; length 6 or 7 with nonzero leading coefficient mod p.
  static CurveSpec hyperelliptic(const FieldSpec& base, const std::vector<std::int64_t>& f);

  const FieldSpec& base() const { return base_; }
  CurveModel model() const { return model_; }
  int genus() const { return model_ == CurveModel::Elliptic ? 1 : 2; }
  /// Residues of f mod p, ascending degree, leading coefficient nonzero.
  const std::vector<std::uint64_t>& f() const { return f_; }
  std::uint64_t a() const { return f_[1]; }
  std::uint64_t b() const { return f_[0]; }

 private:
  CurveSpec(FieldSpec base, CurveModel model, std::vector<std::uint64_t> f)
      : base_(std::move(base)), model_(model), f_(std::move(f)) {}

  FieldSpec base_;
  CurveModel model_;
  std::vector<std::uint64_t> f_;
};

/// Throws EvenCharacteristic, UnsupportedField, BadDegree or SingularCurve.
void validate(const CurveSpec& curve);

/// #C(F_{p^n}) on the smooth projective model, by enumeration of F_{p^n}.
/// Requires p^n <= 2^28.
std::uint64_t count_points(const CurveSpec& curve, unsigned n);

/// Same count restricted to x with index in [first, last); summing the
/// partial counts over a partition of [0, p^n) plus `points_at_infinity`
/// gives count_points.
std::uint64_t count_affine_points(const CurveSpec& curve, unsigned n, std::uint64_t first,
                                  std::uint64_t last);
std::uint64_t points_at_infinity(const CurveSpec& curve, unsigned n);

}  // namespace zetadist
