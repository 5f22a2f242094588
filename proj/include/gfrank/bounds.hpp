#pragma once

// Closed-form cardinality bounds, converse and achievability thresholds,
// and failure predictions for rank-r recovery over F_q.
//
// Log-base policy: exponential failure bounds use the natural log (they
// are written with e^{...}); lambda and the converse threshold are ratios
// of logs and do not depend on the base. The Fano bound carries a "-1"
// that is one bit, so it is evaluated in base 2.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

#include "gfrank/gf.hpp"

namespace gfrank {

using BigInt = boost::multiprecision::cpp_int;

/// A parameter lies outside the domain of the formula.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The Hamming radius would violate m*eps <= tau <= m(q-1)/q.
class InvalidRadius : public DomainError {
 public:
  using DomainError::DomainError;
};

struct PowerBound {
  double value = 0.0;     // may be +inf when it overflows a double
  double ln_value = 0.0;  // natural log, always finite
  BigInt exact;
};

/// |T(n;d;r;q)| <= q^{dnr}.
PowerBound lemma1_upper(std::size_t n, std::size_t d, std::size_t r, FieldModulus q);

/// prod_{i>=1} (1 - q^{-i}), truncated once q^{-i} < 1e-18.
double c_q(std::uint32_t q);

/// C q^{dnr} / (r^r (q-1)^{r(d-1)}) with C = c_2^2. Requires d >= 3, r >= 1.
double lemma2_lower(std::size_t n, std::size_t d, std::size_t r, FieldModulus q);

/// 1 + sum_{s=1}^{r} binom(((q^n-1)/(q-1))^{d-2}, s)
///       * (prod_{i<s} (q^n - q^i))^2 / (q-1)^s, exactly. Requires d >= 3.
BigInt lemma2_sum_lower(std::size_t n, std::size_t d, std::size_t r, FieldModulus q);

/// Matrix case: q^{(2n-2)r - r^2}.
double remark1_lower(std::size_t n, std::size_t r, FieldModulus q);

/// h(e) = -e ln e - (1-e) ln(1-e), in nats; h(0) = h(1) = 0.
double binary_entropy(double e);

/// ln q / (ln q - h(e) - e ln(q-1)). Requires 0 <= e < (q-1)/q.
double lambda(double e, FieldModulus q);

/// ln q / (2 ((q-1)/q - eta)^2). Requires 0 <= e < eta < (q-1)/q.
double gamma(double e, FieldModulus q, double eta);

/// d >= 3: n r d - r log r / log q;  d = 2: 2 n r - r^2;  times lambda(e, q)
/// when a channel error probability is given. Requires r >= 1.
double converse_threshold(std::size_t n, std::size_t d, std::size_t r, FieldModulus q,
                          std::optional<double> e = std::nullopt);

/// max(0, [log2 card - m log2 q (+ m h2(e) + m e log2(q-1)) - 1] / log2 card).
double fano_lower(std::uint64_t card, std::size_t m, FieldModulus q, std::optional<double> e = std::nullopt);

/// n r d noiseless, gamma(e, q, eta) n r d noisy (constants C1 = C2 = 1).
double achievability_threshold(std::size_t n, std::size_t d, std::size_t r, FieldModulus q,
                               std::optional<double> e = std::nullopt, std::optional<double> eta = std::nullopt);

/// floor(eta m), checked against m e <= tau <= m (q-1)/q. A 1e-9 slack
/// inside the floor absorbs representation error when eta * m lands just
/// below an integer.
std::size_t hamming_radius(std::size_t m, double e, double eta, FieldModulus q);

/// Noiseless: min(1, q^{-(m - nrd)}).
/// Noisy: min(1, exp(-2 (tau - m e)^2 / m) + q^{nrd} exp(-2 (m (q-1)/q - tau)^2 / m))
/// with the integer tau = floor(eta m) the decoder uses. When eta m is an
/// integer this is exactly exp(-2m(eta-e)^2) + exp(nrd ln q - 2m((q-1)/q - eta)^2).
double predicted_failure(std::size_t n, std::size_t d, std::size_t r, FieldModulus q, std::size_t m,
                         std::optional<double> e = std::nullopt, std::optional<double> eta = std::nullopt);

struct BoundReport {
  PowerBound lemma1_upper;
  std::optional<double> lemma2_lower;        // d >= 3, r >= 1
  std::optional<BigInt> lemma2_sum_lower;    // d >= 3
  std::optional<double> remark1_lower;       // d == 2
  std::optional<double> converse_threshold;  // r >= 1
  double achievability_threshold = 0.0;
  std::optional<double> lambda;  // noisy
  std::optional<double> gamma;   // noisy
  std::optional<std::size_t> tau;
  std::optional<double> predicted_failure;  // when m is given
  std::optional<double> fano_lower;         // when m and the cardinality are given
};

BoundReport bound_report(std::size_t n, std::size_t d, std::size_t r, FieldModulus q,
                         std::optional<std::size_t> m = std::nullopt, std::optional<double> e = std::nullopt,
                         std::optional<double> eta = std::nullopt, std::optional<std::uint64_t> card = std::nullopt);

}  // namespace gfrank
