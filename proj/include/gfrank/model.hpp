#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gfrank/gf.hpp"
#include "gfrank/tensor.hpp"

namespace gfrank {

/// m sensing tensors drawn i.i.d. uniformly from F_q^{n_1 x ... x n_d}
/// (with replacement), together with the seed that produced them.
struct SensingEnsemble {
  Shape shape;
  FieldModulus modulus;
  std::vector<Tensor> tensors;
  std::uint64_t seed = 0;

  std::size_t m() const noexcept { return tensors.size(); }
};

enum class MeasurementKind { kClean, kNoisy };

/// y (clean) or y-tilde (noisy): one residue per sensing tensor.
class MeasurementVector {
 public:
  MeasurementVector(FieldModulus modulus, std::vector<std::uint32_t> values,
                    MeasurementKind kind = MeasurementKind::kClean);

  FieldModulus modulus() const noexcept { return modulus_; }
  MeasurementKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const std::uint32_t> values() const noexcept { return values_; }
  FieldElement operator[](std::size_t k) const { return {values_.at(k), modulus_}; }

  /// Entry-wise equality of values and field; kind is ignored.
  friend bool operator==(const MeasurementVector& a, const MeasurementVector& b) noexcept {
    return a.modulus_ == b.modulus_ && a.values_ == b.values_;
  }

 private:
  FieldModulus modulus_;
  std::vector<std::uint32_t> values_;
  MeasurementKind kind_;
};

/// q-ary symmetric memoryless channel: a symbol survives w.p. 1 - epsilon,
/// otherwise it becomes each of the q - 1 other symbols w.p. epsilon/(q-1).
class ChannelSpec {
 public:
  ChannelSpec(double epsilon, FieldModulus modulus);

  double epsilon() const noexcept { return epsilon_; }
  FieldModulus modulus() const noexcept { return modulus_; }

  /// Row `from` of the q x q transition matrix.
  std::vector<double> transition_row(std::uint32_t from) const;

  /// Output symbol for input `symbol` given one uniform variate u in [0,1):
  /// u < epsilon selects alternative floor(u (q-1) / epsilon), counted
  /// upward (mod q) from symbol + 1; otherwise the symbol passes.
  std::uint32_t apply(std::uint32_t symbol, double u) const noexcept;

 private:
  double epsilon_;
  FieldModulus modulus_;
};

SensingEnsemble draw_ensemble(const Shape& shape, FieldModulus q, std::size_t m, std::uint64_t seed);

/// y_k = <M^(k), t> for every sensing tensor.
MeasurementVector measure(const SensingEnsemble& ensemble, const Tensor& t);

/// Passes y through the channel, one uniform draw per symbol.
MeasurementVector transmit(const MeasurementVector& y, const ChannelSpec& channel, std::uint64_t seed);

struct IndicatorVectors {
  std::vector<std::uint8_t> clean;  // b_T[k] = 1 iff <M^(k), t> != <M^(k), t*>
  std::vector<std::uint8_t> noisy;  // b~_T[k] = 1 iff <M^(k), t> != y~_k
};

/// Measures t* and t, passes y = y_{t*} through the channel with `seed`,
/// and compares.
IndicatorVectors indicator_vectors(const SensingEnsemble& ensemble, const Tensor& t, const Tensor& t_star,
                                   const ChannelSpec& channel, std::uint64_t seed);

}  // namespace gfrank
