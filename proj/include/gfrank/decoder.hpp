#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "gfrank/bounds.hpp"
#include "gfrank/model.hpp"
#include "gfrank/rankset.hpp"

namespace gfrank {

/// The noiseless decoder found nothing consistent with y at rank <= r,
/// which cannot happen when y came from a rank <= r tensor.
class NoConsistentTensor : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DecoderParams {
  std::size_t max_rank = 0;
  std::size_t tau = 0;  // Hamming radius; 0 for the noiseless rule
  double eta = 0.0;

  static DecoderParams noiseless(std::size_t r) { return {r, 0, 0.0}; }
  /// tau = hamming_radius(m, epsilon, eta, q); throws InvalidRadius.
  static DecoderParams noisy(std::size_t r, std::size_t m, double epsilon, double eta, FieldModulus q);
  /// Explicit radius without the window check, for fixtures that probe
  /// the decoder outside the regime the bounds cover.
  static DecoderParams with_radius(std::size_t r, std::size_t tau) { return {r, tau, 0.0}; }
};

/// Which parts of the error event fired.
struct ErrorEvent {
  bool competitor = false;    // some T != T*, rank(T) <= r, is feasible
  bool outside_ball = false;  // d_H(y, y~) > tau (noisy only)
  bool no_feasible = false;   // decoder found nothing at rank <= r

  bool fired() const noexcept { return competitor || outside_ball || no_feasible; }
  std::string describe() const;
};

struct DecodeOutcome {
  std::optional<Tensor> reconstructed;
  std::optional<std::size_t> min_rank;
  std::size_t feasible_count_at_min_rank = 0;
  /// From decode_* alone this only reflects a decoding failure; the
  /// run_* entry points, which know T*, evaluate the full event.
  bool error_event = false;
  ErrorEvent detail;
};

std::size_t hamming_distance(const MeasurementVector& a, const MeasurementVector& b);

/// Minimum-rank decoders over the cached rank levels of one shape and
/// field. Holds no mutable state of its own, so one instance may serve
/// concurrent trials.
class Decoder {
 public:
  explicit Decoder(std::shared_ptr<RankCache> cache) : cache_(std::move(cache)) {}
  Decoder(const Shape& shape, FieldModulus q, std::uint64_t budget = kDefaultBudget)
      : cache_(std::make_shared<RankCache>(shape, q, budget)) {}

  RankCache& cache() const noexcept { return *cache_; }

  /// argmin rank(T) s.t. y_T = y, scanning rho = 0..r; ties go to the
  /// smallest canonical key.
  DecodeOutcome decode_noiseless(const SensingEnsemble& ensemble, const MeasurementVector& y,
                                 std::size_t r) const;
  /// argmin rank(T) s.t. d_H(y_T, y~) <= tau.
  DecodeOutcome decode_noisy(const SensingEnsemble& ensemble, const MeasurementVector& y_tilde,
                             const DecoderParams& params) const;

  /// True iff some T != t_star with rank(T) <= r has y_T = y_{t_star}.
  bool noiseless_error_event(const SensingEnsemble& ensemble, const Tensor& t_star, std::size_t r) const;
  ErrorEvent noisy_error_event(const SensingEnsemble& ensemble, const Tensor& t_star,
                               const MeasurementVector& y_tilde, const DecoderParams& params) const;

  /// Decode and evaluate the error event in one pass over the rank set.
  DecodeOutcome run_noiseless(const SensingEnsemble& ensemble, const Tensor& t_star, std::size_t r) const;
  DecodeOutcome run_noisy(const SensingEnsemble& ensemble, const Tensor& t_star, const MeasurementVector& y_tilde,
                          const DecoderParams& params) const;

 private:
  DecodeOutcome scan(const SensingEnsemble& ensemble, const MeasurementVector& target, std::size_t r,
                     std::size_t tau, const Tensor* t_star) const;

  std::shared_ptr<RankCache> cache_;
};

}  // namespace gfrank
