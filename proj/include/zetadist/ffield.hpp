#pragma once

#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace zetadist {

inline constexpr std::uint64_t kMaxPrime = 1'000'000;
inline constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 40;
inline constexpr std::uint64_t kMaxEnumerationOrder = std::uint64_t{1} << 28;

/// The finite field F_{p^k} = F_p[x]/(modulus). Immutable and cheap to copy;
/// copies share the same underlying description.
class FieldSpec {
 public:
  std::uint64_t p() const { return data_->p; }
  unsigned k() const { return data_->k; }
  std::uint64_t order() const { return data_->order; }
  /// Monic modulus, ascending degree, length k + 1.
  const std::vector<std::uint64_t>& modulus() const { return data_->modulus; }

  bool operator==(const FieldSpec& other) const;

 private:
  struct Data {
    std::uint64_t p;
    unsigned k;
    std::uint64_t order;
    std::vector<std::uint64_t> modulus;
  };

  explicit FieldSpec(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

  std::shared_ptr<const Data> data_;

  friend FieldSpec make_field(std::uint64_t p, unsigned k);
  friend FieldSpec make_field_with_modulus(std::uint64_t p,
                                           std::vector<std::uint64_t> modulus);
};

bool is_prime(std::uint64_t n);

/// Deterministic field construction. The modulus is the first monic
/// irreducible polynomial of degree k when candidates x^k + c_{k-1}x^{k-1} +
/// ... + c_0 are ordered by the integer c_0 + c_1 p + ... + c_{k-1} p^{k-1}.
/// For k = 1 the modulus is x.
FieldSpec make_field(std::uint64_t p, unsigned k);

/// Field with a caller-chosen modulus (validated: monic and irreducible).
FieldSpec make_field_with_modulus(std::uint64_t p, std::vector<std::uint64_t> modulus);

class FieldElement {
 public:
  /// Reduces `coeffs` (any length, ascending degree) modulo (p, modulus).
  FieldElement(FieldSpec field, std::span<const std::int64_t> coeffs);
  FieldElement(FieldSpec field, std::initializer_list<std::int64_t> coeffs)
      : FieldElement(std::move(field), std::span<const std::int64_t>(coeffs.begin(), coeffs.size())) {}

  static FieldElement zero(const FieldSpec& field);
  static FieldElement one(const FieldSpec& field);
  static FieldElement from_integer(const FieldSpec& field, std::int64_t value);
  /// Element whose coefficients are the base-p digits of `index`
  /// (constant term least significant).
  static FieldElement from_index(const FieldSpec& field, std::uint64_t index);

  const FieldSpec& field() const { return field_; }
  std::span<const std::uint64_t> coeffs() const { return coeffs_; }
  std::uint64_t index() const;
  bool is_zero() const;
  bool is_one() const;

  FieldElement& operator+=(const FieldElement& other);
  FieldElement& operator-=(const FieldElement& other);
  FieldElement& operator*=(const FieldElement& other);

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  FieldElement operator-() const;

  bool operator==(const FieldElement& other) const;

 private:
  struct Reduced {};
  FieldElement(Reduced, FieldSpec field, std::vector<std::uint64_t> reduced)
      : field_(std::move(field)), coeffs_(std::move(reduced)) {}

  void check_same_field(const FieldElement& other) const;

  friend FieldElement pow(const FieldElement& base, std::uint64_t exponent);

  FieldSpec field_;
  std::vector<std::uint64_t> coeffs_;  // always length k, entries in [0, p)
};

FieldElement pow(const FieldElement& base, std::uint64_t exponent);
FieldElement inv(const FieldElement& a);

/// Legendre-type symbol on F_{p^k}: 0 for zero, +1 for nonzero squares, -1 otherwise.
int quadratic_character(const FieldElement& a);

/// Absolute trace Tr(a) = a + a^p + ... + a^{p^{k-1}}, returned as a residue mod p.
std::uint64_t trace_to_prime(const FieldElement& a);

/// Trace of each basis monomial 1, x, ..., x^{k-1}; Tr is the dot product of
/// these values with the coefficient vector.
std::vector<std::uint64_t> monomial_traces(const FieldSpec& field);

/// A generator of the multiplicative group (smallest by index).
FieldElement primitive_element(const FieldSpec& field);

std::string to_string(const FieldElement& a);

/// Range over all p^k elements in index order (0, 1, ..., p-1, x, x+1, ...).
class ElementRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = FieldElement;
    using difference_type = std::ptrdiff_t;

    iterator(const FieldSpec* field, std::uint64_t index) : field_(field), index_(index) {}
    FieldElement operator*() const { return FieldElement::from_index(*field_, index_); }
    iterator& operator++() {
      ++index_;
      return *this;
    }
    bool operator==(const iterator& other) const { return index_ == other.index_; }

   private:
    const FieldSpec* field_;
    std::uint64_t index_;
  };

  ElementRange(FieldSpec field, std::uint64_t first, std::uint64_t last)
      : field_(std::move(field)), first_(first), last_(last) {}

  iterator begin() const { return {&field_, first_}; }
  iterator end() const { return {&field_, last_}; }
  std::uint64_t size() const { return last_ - first_; }

 private:
  FieldSpec field_;
  std::uint64_t first_;
  std::uint64_t last_;
};

/// All elements of `field`; throws SizeExceeded beyond 2^28 elements.
ElementRange enumerate(const FieldSpec& field);

/// Elements with index in [first, last), for partitioned enumeration.
ElementRange enumerate(const FieldSpec& field, std::uint64_t first, std::uint64_t last);

}  // namespace zetadist
