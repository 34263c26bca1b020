#include "doctest.h"
#include "oracles.hpp"
#include "zetadist/curves.hpp"
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

oracle::Vec as_vec(const CurveSpec& c) { return oracle::Vec(c.f().begin(), c.f().end()); }

}  // namespace

TEST_CASE("validate") {
  CHECK_NOTHROW(validate(CurveSpec::elliptic(make_field(3, 1), 1, 0)));
  CHECK(kind_of([] { validate(CurveSpec::elliptic(make_field(5, 1), 0, 0)); }) ==
        ErrorKind::SingularCurve);
  CHECK_NOTHROW(validate(CurveSpec::hyperelliptic(make_field(7, 1), {1, 0, 0, 0, 0, 1})));
  // (x - 1)^2 (x^3 + 1) style repeated factor
  CHECK(kind_of([] {
          validate(CurveSpec::hyperelliptic(make_field(7, 1), {1, -2, 1, 1, -2, 1}));
        }) == ErrorKind::SingularCurve);
  CHECK(kind_of([] { CurveSpec::elliptic(make_field(2, 1), 1, 1); }) ==
        ErrorKind::EvenCharacteristic);
  CHECK(kind_of([] { CurveSpec::elliptic(make_field(3, 2), 1, 1); }) ==
        ErrorKind::UnsupportedField);
  CHECK(kind_of([] { CurveSpec::hyperelliptic(make_field(7, 1), {1, 0, 0, 1}); }) ==
        ErrorKind::BadDegree);
  CHECK(kind_of([] { CurveSpec::hyperelliptic(make_field(7, 1), {1, 0, 0, 0, 0, 7}); }) ==
        ErrorKind::BadDegree);
}

TEST_CASE("count_points worked examples") {
  const CurveSpec e3 = CurveSpec::elliptic(make_field(3, 1), 1, 0);
  const CurveSpec e5 = CurveSpec::elliptic(make_field(5, 1), -1, 0);
  const CurveSpec h7 = CurveSpec::hyperelliptic(make_field(7, 1), {1, 0, 0, 0, 0, 1});
  CHECK(oracle::count_points(as_vec(e3), 3, 1) == 4);
  CHECK(oracle::count_points(as_vec(e5), 5, 1) == 8);
  CHECK(oracle::count_points(as_vec(h7), 7, 1) == 8);
  CHECK(count_points(e3, 1) == 4);
  CHECK(count_points(e5, 1) == 8);
  CHECK(count_points(h7, 1) == 8);
  CHECK(count_points(e5, 2) == 32);
  CHECK(count_points(h7, 2) == static_cast<std::uint64_t>(oracle::count_points(as_vec(h7), 7, 2)));
  CHECK(kind_of([] { count_points(CurveSpec::elliptic(make_field(5, 1), 0, 0), 1); }) ==
        ErrorKind::SingularCurve);
  CHECK(kind_of([&] { count_points(e5, 13); }) == ErrorKind::SizeExceeded);
}

TEST_CASE("count_points agrees with the pair-count oracle") {
  for (std::int64_t p : {3, 5, 7}) {
    const FieldSpec base = make_field(static_cast<std::uint64_t>(p), 1);
    for (std::int64_t a = 0; a < p; ++a) {
      for (std::int64_t b = 0; b < p; ++b) {
        if (oracle::mod(4 * a * a * a + 27 * b * b, p) == 0) continue;
        const CurveSpec e = CurveSpec::elliptic(base, a, b);
        for (int n = 1; n <= 2; ++n) {
          CHECK(count_points(e, static_cast<unsigned>(n)) ==
                static_cast<std::uint64_t>(oracle::count_points(as_vec(e), p, n)));
        }
      }
    }
  }
  // degree-6 model with non-square leading coefficient: no rational points at
  // infinity over F_5, two over F_25.
  const CurveSpec sextic = CurveSpec::hyperelliptic(make_field(5, 1), {1, 1, 0, 0, 0, 0, 2});
  CHECK(points_at_infinity(sextic, 1) == 0);
  CHECK(points_at_infinity(sextic, 2) == 2);
  for (unsigned n = 1; n <= 3; ++n) {
    CHECK(count_points(sextic, n) ==
          static_cast<std::uint64_t>(oracle::count_points(as_vec(sextic), 5, static_cast<int>(n))));
  }
}

TEST_CASE("Weil bound and partitioned counting") {
  const CurveSpec h = CurveSpec::hyperelliptic(make_field(5, 1), {1, 1, 0, 0, 0, 1});
  for (unsigned n = 1; n <= 5; ++n) {
    const auto count = static_cast<double>(count_points(h, n));
    const double qn = std::pow(5.0, n);
    CHECK(std::abs(count - qn - 1) <= 4 * std::sqrt(qn) + 1e-9);
  }
  const std::uint64_t whole = count_affine_points(h, 3, 0, 125);
  std::uint64_t parts = 0;
  for (std::uint64_t start = 0; start < 125; start += 17) {
    parts += count_affine_points(h, 3, start, start + 17);
  }
  CHECK(parts == whole);
}

TEST_CASE("elliptic census over F_5 covers the Hasse interval") {
  const FieldSpec base = make_field(5, 1);
  std::vector<bool> even_seen(2, false);
  for (std::int64_t a = 0; a < 5; ++a) {
    for (std::int64_t b = 0; b < 5; ++b) {
      if (oracle::mod(4 * a * a * a + 27 * b * b, 5) == 0) continue;
      const std::uint64_t c = count_points(CurveSpec::elliptic(base, a, b), 1);
      CHECK(static_cast<double>(c) >= 6 - 2 * std::sqrt(5.0));
      CHECK(static_cast<double>(c) <= 6 + 2 * std::sqrt(5.0));
      even_seen[c % 2] = true;
    }
  }
  CHECK(even_seen[0]);
  CHECK(even_seen[1]);
}
