#include "gfrank/model.hpp"

#include <algorithm>
#include <stdexcept>

#include "gfrank/rng.hpp"

namespace gfrank {

MeasurementVector::MeasurementVector(FieldModulus modulus, std::vector<std::uint32_t> values, MeasurementKind kind)
    : modulus_(modulus), values_(std::move(values)), kind_(kind) {
  for (auto v : values_) {
    if (v >= modulus_.value()) throw std::invalid_argument("measurement value out of field range");
  }
}

ChannelSpec::ChannelSpec(double epsilon, FieldModulus modulus) : epsilon_(epsilon), modulus_(modulus) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw std::invalid_argument("channel error probability must be in [0, 1]");
}

std::vector<double> ChannelSpec::transition_row(std::uint32_t from) const {
  const auto q = modulus_.value();
  std::vector<double> row(q, epsilon_ / (q - 1));
  row.at(from) = 1.0 - epsilon_;
  return row;
}

std::uint32_t ChannelSpec::apply(std::uint32_t symbol, double u) const noexcept {
  if (!(u < epsilon_)) return symbol;
  const auto q = modulus_.value();
  auto k = static_cast<std::uint32_t>(u * (q - 1) / epsilon_);
  k = std::min(k, q - 2);
  return (symbol + 1 + k) % q;
}

SensingEnsemble draw_ensemble(const Shape& shape, FieldModulus q, std::size_t m, std::uint64_t seed) {
  SensingEnsemble ensemble{shape, q, {}, seed};
  ensemble.tensors.reserve(m);
  Rng rng(seed);
  for (std::size_t k = 0; k < m; ++k) {
    std::vector<std::uint32_t> entries(shape.size());
    for (auto& v : entries) v = static_cast<std::uint32_t>(rng.below(q.value()));
    ensemble.tensors.emplace_back(shape, q, std::move(entries));
  }
  return ensemble;
}

MeasurementVector measure(const SensingEnsemble& ensemble, const Tensor& t) {
  if (!(t.shape() == ensemble.shape)) throw ShapeMismatch("tensor shape differs from the sensing ensemble");
  if (!(t.modulus() == ensemble.modulus)) throw ModulusMismatch("tensor field differs from the sensing ensemble");
  std::vector<std::uint32_t> y;
  y.reserve(ensemble.m());
  for (const auto& sensing : ensemble.tensors) y.push_back(inner(sensing, t).value());
  return {ensemble.modulus, std::move(y), MeasurementKind::kClean};
}

MeasurementVector transmit(const MeasurementVector& y, const ChannelSpec& channel, std::uint64_t seed) {
  if (!(y.modulus() == channel.modulus())) throw ModulusMismatch("channel field differs from the measurements");
  Rng rng(seed);
  std::vector<std::uint32_t> out;
  out.reserve(y.size());
  for (auto v : y.values()) out.push_back(channel.apply(v, rng.uniform01()));
  return {y.modulus(), std::move(out), MeasurementKind::kNoisy};
}

IndicatorVectors indicator_vectors(const SensingEnsemble& ensemble, const Tensor& t, const Tensor& t_star,
                                   const ChannelSpec& channel, std::uint64_t seed) {
  const auto y = measure(ensemble, t_star);
  const auto y_tilde = transmit(y, channel, seed);
  const auto y_t = measure(ensemble, t);

  IndicatorVectors out;
  out.clean.resize(ensemble.m());
  out.noisy.resize(ensemble.m());
  for (std::size_t k = 0; k < ensemble.m(); ++k) {
    out.clean[k] = y_t.values()[k] != y.values()[k];
    out.noisy[k] = y_t.values()[k] != y_tilde.values()[k];
  }
  return out;
}

}  // namespace gfrank
