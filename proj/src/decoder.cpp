#include "gfrank/decoder.hpp"

namespace gfrank {

DecoderParams DecoderParams::noisy(std::size_t r, std::size_t m, double epsilon, double eta, FieldModulus q) {
  return {r, hamming_radius(m, epsilon, eta, q), eta};
}

std::string ErrorEvent::describe() const {
  if (!fired()) return "none";
  std::string out;
  auto append = [&](const char* s) { out += (out.empty() ? "" : "+") + std::string(s); };
  if (competitor) append("competitor");
  if (outside_ball) append("outside_ball");
  if (no_feasible) append("no_feasible");
  return out;
}

std::size_t hamming_distance(const MeasurementVector& a, const MeasurementVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("measurement vectors differ in length");
  if (!(a.modulus() == b.modulus())) throw ModulusMismatch("measurement vectors over different fields");
  std::size_t d = 0;
  for (std::size_t k = 0; k < a.size(); ++k) d += a.values()[k] != b.values()[k];
  return d;
}

DecodeOutcome Decoder::scan(const SensingEnsemble& ensemble, const MeasurementVector& target, std::size_t r,
                            std::size_t tau, const Tensor* t_star) const {
  if (!(ensemble.shape == cache_->shape())) throw ShapeMismatch("ensemble shape differs from the decoder");
  if (!(ensemble.modulus == cache_->modulus())) throw ModulusMismatch("ensemble field differs from the decoder");
  if (target.size() != ensemble.m()) throw std::invalid_argument("measurement count differs from the ensemble");

  const auto level = cache_->level(r);
  const auto& members = level->members;
  const std::size_t m = ensemble.m();
  const std::size_t entries = ensemble.shape.size();
  const std::uint64_t q = ensemble.modulus.value();
  const auto goal = target.values();

  DecodeOutcome out;
  std::size_t best_rank = r + 1;
  const Tensor* best = nullptr;

  for (std::size_t i = 0; i < members.size(); ++i) {
    const auto candidate = members[i].entries();
    // Early exit once the distance exceeds tau.
    std::size_t distance = 0;
    for (std::size_t k = 0; k < m && distance <= tau; ++k) {
      const auto sensing = ensemble.tensors[k].entries();
      std::uint64_t acc = 0;
      for (std::size_t e = 0; e < entries; ++e) acc += std::uint64_t{sensing[e]} * candidate[e];
      distance += (acc % q) != goal[k];
    }
    if (distance > tau) continue;

    const std::size_t rho = level->ranks[i];
    if (t_star != nullptr && !(members[i] == *t_star)) out.detail.competitor = true;
    if (rho < best_rank) {
      best_rank = rho;
      best = &members[i];
      out.feasible_count_at_min_rank = 1;
    } else if (rho == best_rank) {
      ++out.feasible_count_at_min_rank;
    }
  }

  if (best == nullptr) {
    out.detail.no_feasible = true;
  } else {
    out.reconstructed = *best;
    out.min_rank = best_rank;
  }
  out.error_event = out.detail.fired();
  return out;
}

DecodeOutcome Decoder::decode_noiseless(const SensingEnsemble& ensemble, const MeasurementVector& y,
                                        std::size_t r) const {
  auto out = scan(ensemble, y, r, 0, nullptr);
  if (!out.reconstructed) {
    throw NoConsistentTensor("no tensor of rank <= " + std::to_string(r) + " is consistent with the measurements");
  }
  return out;
}

DecodeOutcome Decoder::decode_noisy(const SensingEnsemble& ensemble, const MeasurementVector& y_tilde,
                                    const DecoderParams& params) const {
  return scan(ensemble, y_tilde, params.max_rank, params.tau, nullptr);
}

bool Decoder::noiseless_error_event(const SensingEnsemble& ensemble, const Tensor& t_star, std::size_t r) const {
  return run_noiseless(ensemble, t_star, r).detail.competitor;
}

ErrorEvent Decoder::noisy_error_event(const SensingEnsemble& ensemble, const Tensor& t_star,
                                      const MeasurementVector& y_tilde, const DecoderParams& params) const {
  auto event = run_noisy(ensemble, t_star, y_tilde, params).detail;
  // The event is defined by its two clauses; a failed decode is implied
  // by clause 2 and not part of it.
  event.no_feasible = false;
  return event;
}

DecodeOutcome Decoder::run_noiseless(const SensingEnsemble& ensemble, const Tensor& t_star, std::size_t r) const {
  const auto y = measure(ensemble, t_star);
  auto out = scan(ensemble, y, r, 0, &t_star);
  if (!out.reconstructed) {
    throw NoConsistentTensor("T* itself is not in the rank <= " + std::to_string(r) + " set");
  }
  return out;
}

DecodeOutcome Decoder::run_noisy(const SensingEnsemble& ensemble, const Tensor& t_star,
                                 const MeasurementVector& y_tilde, const DecoderParams& params) const {
  auto out = scan(ensemble, y_tilde, params.max_rank, params.tau, &t_star);
  out.detail.outside_ball = hamming_distance(measure(ensemble, t_star), y_tilde) > params.tau;
  out.error_event = out.detail.fired();
  return out;
}

}  // namespace gfrank
