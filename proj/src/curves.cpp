#include "zetadist/curves.hpp"

#include <string>

#include "zetadist/error.hpp"
#include "zetadist/poly_fp.hpp"

namespace zetadist {

namespace {

std::uint64_t residue(std::int64_t value, std::uint64_t p) {
  const auto sp = static_cast<std::int64_t>(p);
  const std::int64_t r = value % sp;
  return static_cast<std::uint64_t>(r < 0 ? r + sp : r);
}

void check_base(const FieldSpec& base) {
  if (base.p() == 2) fail(ErrorKind::EvenCharacteristic, "curve models need odd characteristic");
  if (base.k() != 1) {
    fail(ErrorKind::UnsupportedField, "curve input must be over a prime field");
  }
}

// Nonzero squares of F_{p^n} as a bitmap over element indices.
std::vector<bool> square_table(const FieldSpec& field) {
  std::vector<bool> is_square(field.order(), false);
  for (const FieldElement& y : enumerate(field)) {
    if (!y.is_zero()) is_square[(y * y).index()] = true;
  }
  return is_square;
}

}  // namespace

CurveSpec CurveSpec::elliptic(const FieldSpec& base, std::int64_t a, std::int64_t b) {
  check_base(base);
  const std::uint64_t p = base.p();
  return CurveSpec(base, CurveModel::Elliptic, {residue(b, p), residue(a, p), 0, 1});
}

CurveSpec CurveSpec::hyperelliptic(const FieldSpec& base, const std::vector<std::int64_t>& f) {
  check_base(base);
  if (f.size() != 6 && f.size() != 7) {
    fail(ErrorKind::BadDegree, "genus-2 model needs f of degree 5 or 6 (6 or 7 coefficients)");
  }
  std::vector<std::uint64_t> reduced;
  for (auto c : f) reduced.push_back(residue(c, base.p()));
  if (reduced.back() == 0) {
    fail(ErrorKind::BadDegree, "leading coefficient of f vanishes mod p");
  }
  return CurveSpec(base, CurveModel::Hyperelliptic2, std::move(reduced));
}

void validate(const CurveSpec& curve) {
  check_base(curve.base());
  const std::uint64_t p = curve.base().p();
  if (curve.model() == CurveModel::Elliptic) {
    const std::uint64_t a = curve.a();
    const std::uint64_t b = curve.b();
    const std::uint64_t a3 = polyfp::mulmod(polyfp::mulmod(a, a, p), a, p);
    const std::uint64_t disc =
        (polyfp::mulmod(4 % p, a3, p) + polyfp::mulmod(27 % p, polyfp::mulmod(b, b, p), p)) % p;
    if (disc == 0) fail(ErrorKind::SingularCurve, "4a^3 + 27b^2 = 0");
    return;
  }
  const auto& f = curve.f();
  if ((f.size() != 6 && f.size() != 7) || f.back() == 0) {
    fail(ErrorKind::BadDegree, "genus-2 model needs f of degree 5 or 6");
  }
  if (!polyfp::is_squarefree(f, p)) fail(ErrorKind::SingularCurve, "f is not squarefree");
}

std::uint64_t points_at_infinity(const CurveSpec& curve, unsigned n) {
  if (curve.model() == CurveModel::Elliptic || curve.f().size() == 6) return 1;
  // Degree 6: two points at infinity, rational iff the leading coefficient
  // is a square in F_{p^n}.
  if (n % 2 == 0) return 2;
  const std::uint64_t p = curve.base().p();
  const std::uint64_t lc = curve.f().back();
  return polyfp::powmod(lc, (p - 1) / 2, p) == 1 ? 2 : 0;
}

std::uint64_t count_affine_points(const CurveSpec& curve, unsigned n, std::uint64_t first,
                                  std::uint64_t last) {
  validate(curve);
  if (n == 0) fail(ErrorKind::InvalidArgument, "extension degree must be positive");
  const std::uint64_t p = curve.base().p();
  std::uint64_t order = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (order > kMaxEnumerationOrder / p) {
      fail(ErrorKind::SizeExceeded, "q^n exceeds the enumeration bound 2^28");
    }
    order *= p;
  }
  const FieldSpec ext = make_field(p, n);
  const std::vector<bool> is_square = square_table(ext);

  std::vector<FieldElement> coeffs;
  for (auto c : curve.f()) coeffs.push_back(FieldElement::from_integer(ext, static_cast<std::int64_t>(c)));

  std::uint64_t count = 0;
  for (const FieldElement& x : enumerate(ext, first, last)) {
    FieldElement value = coeffs.back();
    for (std::size_t i = coeffs.size() - 1; i-- > 0;) {
      value *= x;
      value += coeffs[i];
    }
    if (value.is_zero()) {
      count += 1;
    } else if (is_square[value.index()]) {
      count += 2;
    }
  }
  return count;
}

std::uint64_t count_points(const CurveSpec& curve, unsigned n) {
  return count_affine_points(curve, n, 0, ~std::uint64_t{0}) + points_at_infinity(curve, n);
}

}  // namespace zetadist
