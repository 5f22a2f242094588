#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>

namespace gfrank {

/// Raised when two field values (or tensors) over different moduli meet.
class ModulusMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The prime q of F_q. Construction rejects q < 2 and composite q.
class FieldModulus {
 public:
  explicit FieldModulus(std::uint32_t q);

  std::uint32_t value() const noexcept { return q_; }

  friend bool operator==(FieldModulus a, FieldModulus b) noexcept { return a.q_ == b.q_; }

 private:
  std::uint32_t q_;
};

bool is_prime(std::uint64_t q) noexcept;

/// Residue in [0, q). Immutable; all arithmetic is exact modular arithmetic.
class FieldElement {
 public:
  /// Reduces `value` mod q.
  FieldElement(std::uint64_t value, FieldModulus modulus) noexcept;

  static FieldElement zero(FieldModulus modulus) noexcept { return {0, modulus}; }
  static FieldElement one(FieldModulus modulus) noexcept { return {1, modulus}; }

  std::uint32_t value() const noexcept { return value_; }
  FieldModulus modulus() const noexcept { return modulus_; }
  bool is_zero() const noexcept { return value_ == 0; }

  FieldElement operator-() const noexcept;
  /// Multiplicative inverse; throws std::domain_error for zero.
  FieldElement inv() const;

  friend FieldElement operator+(FieldElement a, FieldElement b);
  friend FieldElement operator-(FieldElement a, FieldElement b);
  friend FieldElement operator*(FieldElement a, FieldElement b);

  friend bool operator==(FieldElement a, FieldElement b) noexcept {
    return a.modulus_ == b.modulus_ && a.value_ == b.value_;
  }

 private:
  std::uint32_t value_;
  FieldModulus modulus_;
};

inline FieldElement add(FieldElement a, FieldElement b) { return a + b; }
inline FieldElement mul(FieldElement a, FieldElement b) { return a * b; }
inline FieldElement neg(FieldElement a) noexcept { return -a; }
inline FieldElement inv(FieldElement a) { return a.inv(); }

std::ostream& operator<<(std::ostream& os, FieldElement a);

}  // namespace gfrank
