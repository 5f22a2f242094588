#include "gfrank/gf.hpp"

#include <string>

namespace gfrank {

bool is_prime(std::uint64_t q) noexcept {
  if (q < 2) return false;
  for (std::uint64_t p = 2; p * p <= q; ++p) {
    if (q % p == 0) return false;
  }
  return true;
}

FieldModulus::FieldModulus(std::uint32_t q) : q_(q) {
  if (!is_prime(q)) {
    throw std::invalid_argument("field modulus must be a prime >= 2, got " + std::to_string(q));
  }
}

FieldElement::FieldElement(std::uint64_t value, FieldModulus modulus) noexcept
    : value_(static_cast<std::uint32_t>(value % modulus.value())), modulus_(modulus) {}

namespace {

void require_same_field(FieldElement a, FieldElement b) {
  if (!(a.modulus() == b.modulus())) {
    throw ModulusMismatch("field elements over F_" + std::to_string(a.modulus().value()) +
                          " and F_" + std::to_string(b.modulus().value()));
  }
}

}  // namespace

FieldElement FieldElement::operator-() const noexcept {
  return {value_ == 0 ? 0u : modulus_.value() - value_, modulus_};
}

FieldElement FieldElement::inv() const {
  if (value_ == 0) throw std::domain_error("zero has no multiplicative inverse");
  // Fermat: a^(q-2) = a^-1 for prime q.
  std::uint64_t q = modulus_.value();
  std::uint64_t base = value_, result = 1;
  for (std::uint64_t e = q - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % q;
    base = base * base % q;
  }
  return {result, modulus_};
}

FieldElement operator+(FieldElement a, FieldElement b) {
  require_same_field(a, b);
  return {std::uint64_t{a.value_} + b.value_, a.modulus_};
}

FieldElement operator-(FieldElement a, FieldElement b) {
  require_same_field(a, b);
  return a + (-b);
}

FieldElement operator*(FieldElement a, FieldElement b) {
  require_same_field(a, b);
  return {std::uint64_t{a.value_} * b.value_, a.modulus_};
}

std::ostream& operator<<(std::ostream& os, FieldElement a) {
  return os << a.value() << " (mod " << a.modulus().value() << ")";
}

}  // namespace gfrank
