#include "zetadist/ffield.hpp"

#include <algorithm>
#include <sstream>

#include "zetadist/error.hpp"
#include "zetadist/poly_fp.hpp"

namespace zetadist {

namespace {

using polyfp::mulmod;

// Checked p^k; returns 0 when the result exceeds `bound`.
std::uint64_t bounded_power(std::uint64_t p, unsigned k, std::uint64_t bound) {
  std::uint64_t result = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (result > bound / p) return 0;
    result *= p;
  }
  return result;
}

std::vector<std::uint64_t> factor_distinct(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool FieldSpec::operator==(const FieldSpec& other) const {
  if (data_ == other.data_) return true;
  return data_->p == other.data_->p && data_->modulus == other.data_->modulus;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

FieldSpec make_field(std::uint64_t p, unsigned k) {
  if (p > kMaxPrime) fail(ErrorKind::SizeExceeded, "characteristic above 10^6 is not supported");
  if (!is_prime(p)) fail(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (k == 0) fail(ErrorKind::InvalidArgument, "extension degree must be positive");
  const std::uint64_t order = bounded_power(p, k, kMaxFieldOrder);
  if (order == 0) fail(ErrorKind::SizeExceeded, "field order exceeds 2^40");

  std::vector<std::uint64_t> modulus(k + 1, 0);
  modulus[k] = 1;
  if (k > 1) {
    // Candidates in increasing index of (c_0, ..., c_{k-1}) read base p.
    for (std::uint64_t index = 0;; ++index) {
      std::uint64_t rest = index;
      for (unsigned i = 0; i < k; ++i) {
        modulus[i] = rest % p;
        rest /= p;
      }
      if (modulus[0] == 0) continue;  // divisible by x
      if (polyfp::is_irreducible(modulus, p)) break;
    }
  }
  return FieldSpec(std::make_shared<const FieldSpec::Data>(
      FieldSpec::Data{p, k, order, std::move(modulus)}));
}

FieldSpec make_field_with_modulus(std::uint64_t p, std::vector<std::uint64_t> modulus) {
  if (p > kMaxPrime) fail(ErrorKind::SizeExceeded, "characteristic above 10^6 is not supported");
  if (!is_prime(p)) fail(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  for (auto& c : modulus) c %= p;
  polyfp::trim(modulus);
  if (modulus.size() < 2 || modulus.back() != 1) {
    fail(ErrorKind::InvalidArgument, "modulus must be monic of positive degree");
  }
  const auto k = static_cast<unsigned>(modulus.size() - 1);
  if (!polyfp::is_irreducible(modulus, p)) {
    fail(ErrorKind::InvalidArgument, "modulus is reducible");
  }
  const std::uint64_t order = bounded_power(p, k, kMaxFieldOrder);
  if (order == 0) fail(ErrorKind::SizeExceeded, "field order exceeds 2^40");
  return FieldSpec(std::make_shared<const FieldSpec::Data>(
      FieldSpec::Data{p, k, order, std::move(modulus)}));
}

FieldElement::FieldElement(FieldSpec field, std::span<const std::int64_t> coeffs)
    : field_(std::move(field)), coeffs_(field_.k(), 0) {
  const std::uint64_t p = field_.p();
  polyfp::Poly poly(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const std::int64_t r = coeffs[i] % static_cast<std::int64_t>(p);
    poly[i] = static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(p) : r);
  }
  poly = polyfp::rem(poly, field_.modulus(), p);
  std::copy(poly.begin(), poly.end(), coeffs_.begin());
}

FieldElement FieldElement::zero(const FieldSpec& field) {
  return FieldElement(Reduced{}, field, std::vector<std::uint64_t>(field.k(), 0));
}

FieldElement FieldElement::one(const FieldSpec& field) {
  std::vector<std::uint64_t> c(field.k(), 0);
  c[0] = 1;
  return FieldElement(Reduced{}, field, std::move(c));
}

FieldElement FieldElement::from_integer(const FieldSpec& field, std::int64_t value) {
  const auto p = static_cast<std::int64_t>(field.p());
  std::vector<std::uint64_t> c(field.k(), 0);
  const std::int64_t r = value % p;
  c[0] = static_cast<std::uint64_t>(r < 0 ? r + p : r);
  return FieldElement(Reduced{}, field, std::move(c));
}

FieldElement FieldElement::from_index(const FieldSpec& field, std::uint64_t index) {
  std::vector<std::uint64_t> c(field.k(), 0);
  for (unsigned i = 0; i < field.k(); ++i) {
    c[i] = index % field.p();
    index /= field.p();
  }
  return FieldElement(Reduced{}, field, std::move(c));
}

std::uint64_t FieldElement::index() const {
  std::uint64_t out = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) out = out * field_.p() + coeffs_[i];
  return out;
}

bool FieldElement::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](auto c) { return c == 0; });
}

bool FieldElement::is_one() const {
  return coeffs_[0] == 1 &&
         std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](auto c) { return c == 0; });
}

void FieldElement::check_same_field(const FieldElement& other) const {
  if (!(field_ == other.field_)) {
    fail(ErrorKind::FieldMismatch, "operands belong to different fields");
  }
}

FieldElement& FieldElement::operator+=(const FieldElement& other) {
  check_same_field(other);
  const std::uint64_t p = field_.p();
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    coeffs_[i] += other.coeffs_[i];
    if (coeffs_[i] >= p) coeffs_[i] -= p;
  }
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& other) {
  check_same_field(other);
  const std::uint64_t p = field_.p();
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    coeffs_[i] = coeffs_[i] >= other.coeffs_[i] ? coeffs_[i] - other.coeffs_[i]
                                                : coeffs_[i] + p - other.coeffs_[i];
  }
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& other) {
  check_same_field(other);
  const std::uint64_t p = field_.p();
  const unsigned k = field_.k();
  if (k == 1) {
    coeffs_[0] = mulmod(coeffs_[0], other.coeffs_[0], p);
    return *this;
  }
  std::vector<std::uint64_t> prod(2 * k - 1, 0);
  for (unsigned i = 0; i < k; ++i) {
    if (coeffs_[i] == 0) continue;
    for (unsigned j = 0; j < k; ++j) {
      prod[i + j] = (prod[i + j] + mulmod(coeffs_[i], other.coeffs_[j], p)) % p;
    }
  }
  // x^k = -(m_0 + m_1 x + ... + m_{k-1} x^{k-1})
  const auto& m = field_.modulus();
  for (unsigned top = 2 * k - 2; top >= k; --top) {
    const std::uint64_t c = prod[top];
    if (c != 0) {
      for (unsigned i = 0; i < k; ++i) {
        auto& slot = prod[top - k + i];
        slot = (slot + p - mulmod(c, m[i], p)) % p;
      }
    }
  }
  std::copy(prod.begin(), prod.begin() + k, coeffs_.begin());
  return *this;
}

FieldElement FieldElement::operator-() const {
  FieldElement out = *this;
  const std::uint64_t p = field_.p();
  for (auto& c : out.coeffs_) c = c == 0 ? 0 : p - c;
  return out;
}

bool FieldElement::operator==(const FieldElement& other) const {
  return field_ == other.field_ && coeffs_ == other.coeffs_;
}

FieldElement pow(const FieldElement& base, std::uint64_t exponent) {
  FieldElement result = FieldElement::one(base.field());
  FieldElement b = base;
  while (exponent != 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent != 0) b *= b;
  }
  return result;
}

FieldElement inv(const FieldElement& a) {
  if (a.is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero");
  return pow(a, a.field().order() - 2);
}

int quadratic_character(const FieldElement& a) {
  if (a.field().p() == 2) {
    fail(ErrorKind::EvenCharacteristic, "quadratic character needs odd characteristic");
  }
  if (a.is_zero()) return 0;
  return pow(a, (a.field().order() - 1) / 2).is_one() ? 1 : -1;
}

std::uint64_t trace_to_prime(const FieldElement& a) {
  FieldElement sum = a;
  FieldElement conj = a;
  for (unsigned j = 1; j < a.field().k(); ++j) {
    conj = pow(conj, a.field().p());
    sum += conj;
  }
  // The trace lies in F_p, i.e. only the constant coefficient survives.
  return sum.coeffs()[0];
}

std::vector<std::uint64_t> monomial_traces(const FieldSpec& field) {
  std::vector<std::uint64_t> out(field.k());
  FieldElement monomial = FieldElement::one(field);
  const FieldElement x = field.k() > 1 ? FieldElement::from_index(field, field.p())
                                       : FieldElement::zero(field);
  for (unsigned i = 0; i < field.k(); ++i) {
    out[i] = trace_to_prime(monomial);
    monomial *= x;
  }
  return out;
}

FieldElement primitive_element(const FieldSpec& field) {
  const std::uint64_t group = field.order() - 1;
  if (group == 1) return FieldElement::one(field);
  const auto primes = factor_distinct(group);
  for (std::uint64_t index = 1; index < field.order(); ++index) {
    const FieldElement candidate = FieldElement::from_index(field, index);
    const bool generates = std::none_of(primes.begin(), primes.end(), [&](std::uint64_t r) {
      return pow(candidate, group / r).is_one();
    });
    if (generates) return candidate;
  }
  fail(ErrorKind::InvalidArgument, "no primitive element found");
}

std::string to_string(const FieldElement& a) {
  std::ostringstream out;
  bool first = true;
  const auto c = a.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    if (!first) out << " + ";
    first = false;
    if (i == 0) {
      out << c[i];
    } else {
      if (c[i] != 1) out << c[i];
      out << 'x';
      if (i > 1) out << '^' << i;
    }
  }
  if (first) out << '0';
  return out.str();
}

ElementRange enumerate(const FieldSpec& field) {
  if (field.order() > kMaxEnumerationOrder) {
    fail(ErrorKind::SizeExceeded, "field too large to enumerate (limit 2^28)");
  }
  return ElementRange(field, 0, field.order());
}

ElementRange enumerate(const FieldSpec& field, std::uint64_t first, std::uint64_t last) {
  if (field.order() > kMaxEnumerationOrder) {
    fail(ErrorKind::SizeExceeded, "field too large to enumerate (limit 2^28)");
  }
  last = std::min(last, field.order());
  first = std::min(first, last);
  return ElementRange(field, first, last);
}

}  // namespace zetadist
