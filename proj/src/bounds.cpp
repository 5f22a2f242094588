#include "gfrank/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace gfrank {

namespace {

void require_channel_domain(double e, FieldModulus q) {
  const double qd = q.value();
  if (!(e >= 0.0 && e < (qd - 1) / qd)) {
    throw DomainError("channel error probability " + std::to_string(e) +
                      " is at or beyond the symmetric-channel capacity zero point (q-1)/q");
  }
}

void require_eta_domain(double e, double eta, FieldModulus q) {
  require_channel_domain(e, q);
  const double qd = q.value();
  if (!(eta > e && eta < (qd - 1) / qd)) throw DomainError("eta must satisfy eps < eta < (q-1)/q");
}

}  // namespace

PowerBound lemma1_upper(std::size_t n, std::size_t d, std::size_t r, FieldModulus q) {
  if (d < 2) throw DomainError("order must be at least 2");
  const auto exponent = static_cast<unsigned>(d * n * r);
  PowerBound out;
  out.exact = boost::multiprecision::pow(BigInt(q.value()), exponent);
  out.ln_value = exponent * std::log(static_cast<double>(q.value()));
  out.value = std::exp(out.ln_value);
  if (out.exact < BigInt(std::uint64_t{1} << 53)) out.value = out.exact.convert_to<double>();
  return out;
}

double c_q(std::uint32_t q) {
  if (q < 2) throw DomainError("c_q needs q >= 2");
  double product = 1.0;
  double term = 1.0 / q;
  while (term >= 1e-18) {
    product *= 1.0 - term;
    term /= q;
  }
  return product;
}

double lemma2_lower(std::size_t n, std::size_t d, std::size_t r, FieldModulus q) {
  if (d < 3) throw DomainError("the tensor lower bound needs d >= 3; use remark1_lower for matrices");
  if (r < 1) throw DomainError("the tensor lower bound needs r >= 1");
  const double c2 = c_q(2);
  const double lq = std::log(static_cast<double>(q.value()));
  const double rd = static_cast<double>(r);
  const double ln = 2.0 * std::log(c2) + static_cast<double>(d * n * r) * lq - rd * std::log(rd) -
                    rd * static_cast<double>(d - 1) * std::log(static_cast<double>(q.value() - 1));
  return std::exp(ln);
}

BigInt lemma2_sum_lower(std::size_t n, std::size_t d, std::size_t r, FieldModulus q) {
  if (d < 3) throw DomainError("the tensor lower bound needs d >= 3");
  const BigInt qb = q.value();
  const BigInt qn = boost::multiprecision::pow(qb, static_cast<unsigned>(n));
  const BigInt points = boost::multiprecision::pow(BigInt((qn - 1) / (qb - 1)), static_cast<unsigned>(d - 2));

  BigInt total = 1;
  BigInt binom = 1;    // binom(points, s)
  BigInt falling = 1;  // prod_{i<s} (q^n - q^i)
  BigInt qi = 1;       // q^{s-1} inside the loop
  BigInt scale = 1;    // (q-1)^s
  for (std::size_t s = 1; s <= r; ++s) {
    binom = binom * (points - (s - 1)) / s;
    if (binom <= 0) break;
    falling *= qn - qi;
    qi *= qb;
    scale *= qb - 1;
    const BigInt numerator = binom * falling * falling;
    if (numerator % scale != 0) throw std::logic_error("non-integral summand in the rank-set lower bound");
    total += numerator / scale;
  }
  return total;
}

double remark1_lower(std::size_t n, std::size_t r, FieldModulus q) {
  const double exponent = (2.0 * static_cast<double>(n) - 2.0) * static_cast<double>(r) -
                          static_cast<double>(r) * static_cast<double>(r);
  return std::pow(static_cast<double>(q.value()), exponent);
}

double binary_entropy(double e) {
  if (!(e >= 0.0 && e <= 1.0)) throw DomainError("binary entropy needs a probability");
  if (e == 0.0 || e == 1.0) return 0.0;
  return -e * std::log(e) - (1.0 - e) * std::log1p(-e);
}

double lambda(double e, FieldModulus q) {
  require_channel_domain(e, q);
  const double lq = std::log(static_cast<double>(q.value()));
  return lq / (lq - binary_entropy(e) - e * std::log(static_cast<double>(q.value() - 1)));
}

double gamma(double e, FieldModulus q, double eta) {
  require_eta_domain(e, eta, q);
  const double qd = q.value();
  const double gap = (qd - 1) / qd - eta;
  return std::log(qd) / (2.0 * gap * gap);
}

double converse_threshold(std::size_t n, std::size_t d, std::size_t r, FieldModulus q, std::optional<double> e) {
  if (d < 2) throw DomainError("order must be at least 2");
  if (r < 1) throw DomainError("the converse threshold needs r >= 1");
  const double rd = static_cast<double>(r);
  double base;
  if (d == 2) {
    base = 2.0 * static_cast<double>(n) * rd - rd * rd;
  } else {
    base = static_cast<double>(n * r * d) - rd * std::log(rd) / std::log(static_cast<double>(q.value()));
  }
  return e ? base * lambda(*e, q) : base;
}

double fano_lower(std::uint64_t card, std::size_t m, FieldModulus q, std::optional<double> e) {
  if (card < 2) throw DomainError("Fano bound needs at least two candidates");
  const double log_card = std::log2(static_cast<double>(card));
  const double md = static_cast<double>(m);
  double numerator = log_card - md * std::log2(static_cast<double>(q.value())) - 1.0;
  if (e) {
    require_channel_domain(*e, q);
    const double h_bits = binary_entropy(*e) / std::log(2.0);
    numerator += md * h_bits + md * *e * std::log2(static_cast<double>(q.value() - 1));
  }
  return std::clamp(numerator / log_card, 0.0, 1.0);
}

double achievability_threshold(std::size_t n, std::size_t d, std::size_t r, FieldModulus q, std::optional<double> e,
                               std::optional<double> eta) {
  const double nrd = static_cast<double>(n * r * d);
  if (!e && !eta) return nrd;
  if (!e || !eta) throw DomainError("the noisy threshold needs both eps and eta");
  return gamma(*e, q, *eta) * nrd;
}

std::size_t hamming_radius(std::size_t m, double e, double eta, FieldModulus q) {
  require_channel_domain(e, q);
  if (!(eta >= 0.0)) throw InvalidRadius("eta must be nonnegative");
  const double md = static_cast<double>(m);
  const double qd = q.value();
  const auto tau = static_cast<std::size_t>(std::floor(eta * md + 1e-9));
  const double td = static_cast<double>(tau);
  if (!(md * e <= td + 1e-9) || !(td <= md * (qd - 1) / qd + 1e-9)) {
    throw InvalidRadius("tau = floor(eta*m) = " + std::to_string(tau) + " lies outside [m*eps, m(q-1)/q] for m = " +
                        std::to_string(m));
  }
  return tau;
}

double predicted_failure(std::size_t n, std::size_t d, std::size_t r, FieldModulus q, std::size_t m,
                         std::optional<double> e, std::optional<double> eta) {
  const double lq = std::log(static_cast<double>(q.value()));
  const double nrd = static_cast<double>(n * r * d);
  const double md = static_cast<double>(m);
  if (!e && !eta) {
    if (md <= nrd) return 1.0;
    return std::min(1.0, std::exp(-(md - nrd) * lq));
  }
  if (!e || !eta) throw DomainError("the noisy prediction needs both eps and eta");
  require_eta_domain(*e, *eta, q);
  const std::size_t tau = hamming_radius(m, *e, *eta, q);
  if (m == 0) return 1.0;
  const double td = static_cast<double>(tau);
  const double qd = q.value();
  const double outside = std::exp(-2.0 * (td - md * *e) * (td - md * *e) / md);
  const double gap = md * (qd - 1) / qd - td;
  const double competitors = std::exp(nrd * lq - 2.0 * gap * gap / md);
  return std::min(1.0, outside + competitors);
}

BoundReport bound_report(std::size_t n, std::size_t d, std::size_t r, FieldModulus q, std::optional<std::size_t> m,
                         std::optional<double> e, std::optional<double> eta, std::optional<std::uint64_t> card) {
  BoundReport out;
  out.lemma1_upper = lemma1_upper(n, d, r, q);
  if (d >= 3) {
    out.lemma2_sum_lower = lemma2_sum_lower(n, d, r, q);
    if (r >= 1) out.lemma2_lower = lemma2_lower(n, d, r, q);
  } else {
    out.remark1_lower = remark1_lower(n, r, q);
  }
  if (r >= 1) out.converse_threshold = converse_threshold(n, d, r, q, e);
  // A channel without a radius has no noisy threshold; report the noiseless one.
  out.achievability_threshold = e && eta ? achievability_threshold(n, d, r, q, e, eta) : achievability_threshold(n, d, r, q);
  if (e) out.lambda = lambda(*e, q);
  if (e && eta) out.gamma = gamma(*e, q, *eta);
  if (m) {
    if (e && eta) out.tau = hamming_radius(*m, *e, *eta, q);
    if (!e || eta) out.predicted_failure = predicted_failure(n, d, r, q, *m, e, eta);
    if (card && *card >= 2) out.fano_lower = fano_lower(*card, *m, q, e);
  }
  return out;
}

}  // namespace gfrank
