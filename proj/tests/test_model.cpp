#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "gfrank/model.hpp"
#include "gfrank/rng.hpp"
#include "oracles.hpp"

namespace gfrank {
namespace {

const FieldModulus F2(2), F3(3);

TEST(Rng, DeriveSeedSeparatesStreams) {
  EXPECT_NE(derive_seed(1, Stream::kTruth, 5, 0), derive_seed(1, Stream::kEnsemble, 5, 0));
  EXPECT_NE(derive_seed(1, Stream::kTruth, 5, 0), derive_seed(1, Stream::kTruth, 5, 1));
  EXPECT_NE(derive_seed(1, Stream::kTruth, 5, 0), derive_seed(2, Stream::kTruth, 5, 0));
  static_assert(derive_seed(7, Stream::kChannel, 1, 2) == derive_seed(7, Stream::kChannel, 1, 2));
}

TEST(DrawEnsemble, EmptyAndDeterministic) {
  EXPECT_EQ(draw_ensemble(Shape::cubic(2, 3), F2, 0, 1).m(), 0u);
  const auto a = draw_ensemble(Shape::cubic(2, 3), F3, 25, 42);
  const auto b = draw_ensemble(Shape::cubic(2, 3), F3, 25, 42);
  ASSERT_EQ(a.m(), 25u);
  for (std::size_t k = 0; k < a.m(); ++k) EXPECT_EQ(canonical_key(a.tensors[k]), canonical_key(b.tensors[k]));
  const auto c = draw_ensemble(Shape::cubic(2, 3), F3, 25, 43);
  bool differs = false;
  for (std::size_t k = 0; k < a.m(); ++k) differs |= !(a.tensors[k] == c.tensors[k]);
  EXPECT_TRUE(differs);
}

TEST(DrawEnsemble, SingleEntryIsFairCoin) {
  const auto e = draw_ensemble(Shape{1, 1}, F2, 10000, 2024);
  std::size_t ones = 0;
  for (const auto& m : e.tensors) ones += m.entries()[0];
  EXPECT_NEAR(ones / 10000.0, 0.5, 0.015);
}

TEST(Measure, ZeroAndLinearity) {
  const Shape s = Shape::cubic(2, 3);
  const auto e = draw_ensemble(s, F3, 40, 9);
  EXPECT_EQ(measure(e, Tensor(s, F3)), MeasurementVector(F3, std::vector<std::uint32_t>(40, 0)));

  Rng rng(1);
  auto random = [&] {
    std::vector<std::uint32_t> v(8);
    for (auto& x : v) x = static_cast<std::uint32_t>(rng.below(3));
    return Tensor(s, F3, v);
  };
  for (int i = 0; i < 20; ++i) {
    const auto a = random(), b = random();
    const auto ya = measure(e, a), yb = measure(e, b), yd = measure(e, a - b);
    for (std::size_t k = 0; k < e.m(); ++k) EXPECT_EQ(yd[k], ya[k] - yb[k]);
  }
  EXPECT_THROW(measure(e, Tensor(Shape{2, 2}, F3)), ShapeMismatch);
}

TEST(Measure, SingleDeltaCollisionFraction) {
  // Exactly 8 of the 16 sensing matrices are orthogonal to a fixed nonzero delta.
  const oracle::Entries delta{1, 0, 1, 1};
  EXPECT_EQ(oracle::collision_count(delta, 2), 8u);
  std::size_t hits = 0;
  const Tensor d(Shape{2, 2}, F2, delta);
  for (std::uint32_t c = 0; c < 16; ++c) {
    hits += inner(Tensor(Shape{2, 2}, F2, oracle::decode(c, 4, 2)), d).is_zero();
  }
  EXPECT_EQ(hits, 8u);
}

TEST(Measure, ExactOneOverQCollisionLawExhaustive) {
  for (auto [dims, q] : {std::pair{std::vector<std::size_t>{2, 2}, 2u}, std::pair{std::vector<std::size_t>{2, 2}, 3u},
                         std::pair{std::vector<std::size_t>{2, 2, 2}, 2u}}) {
    const Shape shape(dims);
    const FieldModulus f(q);
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < shape.size(); ++i) total *= q;
    std::vector<Tensor> all;
    for (std::uint64_t c = 0; c < total; ++c) all.emplace_back(shape, f, oracle::decode(c, shape.size(), q));
    for (std::uint64_t c = 1; c < total; ++c) {
      std::uint64_t hits = 0;
      for (const auto& m : all) hits += inner(m, all[c]).is_zero();
      EXPECT_EQ(hits * q, total) << all[c];
    }
  }
}

TEST(Channel, TransitionRowsSumToOne) {
  for (std::uint32_t q : {2u, 3u, 5u, 7u}) {
    for (double eps : {0.0, 0.1, 0.25, 0.5, 1.0}) {
      const ChannelSpec ch(eps, FieldModulus(q));
      for (std::uint32_t s = 0; s < q; ++s) {
        const auto row = ch.transition_row(s);
        EXPECT_NEAR(std::accumulate(row.begin(), row.end(), 0.0), 1.0, 1e-15);
        EXPECT_DOUBLE_EQ(row[s], 1.0 - eps);
      }
    }
  }
  EXPECT_THROW(ChannelSpec(-0.1, F2), std::invalid_argument);
  EXPECT_THROW(ChannelSpec(1.5, F2), std::invalid_argument);
}

TEST(Channel, InverseCdfCoversAlternativesEvenly) {
  const ChannelSpec ch(0.3, FieldModulus(5));
  // u in [0, 0.3) splits into four equal bands, one per alternative.
  EXPECT_EQ(ch.apply(2, 0.0), 3u);
  EXPECT_EQ(ch.apply(2, 0.076), 4u);
  EXPECT_EQ(ch.apply(2, 0.151), 0u);
  EXPECT_EQ(ch.apply(2, 0.2999), 1u);
  EXPECT_EQ(ch.apply(2, 0.3), 2u);
}

TEST(Transmit, EdgeProbabilities) {
  const auto e = draw_ensemble(Shape::cubic(2, 3), F2, 500, 3);
  const auto y = measure(e, Tensor(Shape::cubic(2, 3), F2, {1, 0, 1, 1, 0, 0, 1, 0}));
  EXPECT_EQ(transmit(y, ChannelSpec(0.0, F2), 8), y);
  const auto flipped = transmit(y, ChannelSpec(1.0, F2), 8);
  for (std::size_t k = 0; k < y.size(); ++k) EXPECT_EQ(flipped.values()[k], 1u - y.values()[k]);
  EXPECT_EQ(flipped.kind(), MeasurementKind::kNoisy);
  EXPECT_EQ(transmit(y, ChannelSpec(0.2, F2), 77), transmit(y, ChannelSpec(0.2, F2), 77));
}

TEST(Transmit, FlipRateAndSplit) {
  const std::size_t m = 10000;
  std::vector<std::uint32_t> zeros(m, 0);
  const MeasurementVector y(F3, zeros);
  const auto out = transmit(y, ChannelSpec(0.1, F3), 31337);
  std::size_t to1 = 0, to2 = 0;
  for (auto v : out.values()) {
    to1 += v == 1;
    to2 += v == 2;
  }
  const std::size_t flips = to1 + to2;
  EXPECT_NEAR(flips / double(m), 0.1, oracle::three_sigma(0.1, m));
  // Given a flip, each alternative has probability 1/2.
  EXPECT_NEAR(to1 / double(flips), 0.5, oracle::three_sigma(0.5, flips));
}

TEST(Transmit, FlipIndicatorsUncorrelated) {
  const std::size_t m = 10000;
  const MeasurementVector y(F2, std::vector<std::uint32_t>(m, 0));
  const auto out = transmit(y, ChannelSpec(0.25, F2), 555);
  const auto v = out.values();
  double mean = std::accumulate(v.begin(), v.end(), 0.0) / m;
  double cov = 0.0, var = 0.0;
  for (std::size_t k = 0; k + 1 < m; ++k) cov += (v[k] - mean) * (v[k + 1] - mean);
  for (std::size_t k = 0; k < m; ++k) var += (v[k] - mean) * (v[k] - mean);
  const double corr = cov / var;
  EXPECT_NEAR(corr, 0.0, 3.0 / std::sqrt(static_cast<double>(m)));
}

TEST(IndicatorVectors, Statistics) {
  const Shape s = Shape::cubic(2, 3);
  const Tensor t_star(s, F2, {1, 1, 0, 0, 1, 1, 0, 0});
  const auto ens = draw_ensemble(s, F2, 300, 12);
  auto same = indicator_vectors(ens, t_star, t_star, ChannelSpec(0.0, F2), 1);
  EXPECT_EQ(std::accumulate(same.clean.begin(), same.clean.end(), 0), 0);
  EXPECT_EQ(std::accumulate(same.noisy.begin(), same.noisy.end(), 0), 0);

  const std::size_t m = 10000;
  for (std::uint32_t q : {2u, 3u}) {
    const FieldModulus f(q);
    const Tensor ts(s, f, {1, 1, 0, 0, 1, 1, 0, 0});
    const Tensor tt(s, f, {0, 1, 0, 0, 1, 1, 0, 1});
    const auto big = draw_ensemble(s, f, m, 100 + q);
    for (double eps : {0.1, 0.25}) {
      const ChannelSpec ch(eps, f);
      const auto own = indicator_vectors(big, ts, ts, ch, 7);
      const double own_rate = std::accumulate(own.noisy.begin(), own.noisy.end(), 0.0) / m;
      EXPECT_NEAR(own_rate, eps, oracle::three_sigma(eps, m)) << "q=" << q;

      const auto cross = indicator_vectors(big, tt, ts, ch, 7);
      const double p = 1.0 - 1.0 / q;
      const double cross_rate = std::accumulate(cross.noisy.begin(), cross.noisy.end(), 0.0) / m;
      EXPECT_NEAR(cross_rate, p, oracle::three_sigma(p, m)) << "q=" << q;
      const double clean_rate = std::accumulate(cross.clean.begin(), cross.clean.end(), 0.0) / m;
      EXPECT_NEAR(clean_rate, p, oracle::three_sigma(p, m)) << "q=" << q;
    }
  }
}

}  // namespace
}  // namespace gfrank
