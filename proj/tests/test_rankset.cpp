#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <thread>

#include "gfrank/bounds.hpp"
#include "gfrank/rankset.hpp"
#include "oracles.hpp"

namespace gfrank {
namespace {

const FieldModulus F2(2), F3(3);

std::vector<Tensor> all_tensors(const Shape& shape, FieldModulus q) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < shape.size(); ++i) total *= q.value();
  std::vector<Tensor> out;
  for (std::uint64_t c = 0; c < total; ++c) out.emplace_back(shape, q, oracle::decode(c, shape.size(), q.value()));
  return out;
}

TEST(ProblemParams, Validation) {
  EXPECT_THROW(ProblemParams(0, 2, 1, F2), std::invalid_argument);
  EXPECT_THROW(ProblemParams(2, 1, 1, F2), std::invalid_argument);
}

TEST(Enumerate, MatrixCountMatchesGaussianOracle) {
  // 2x2 over F_2 with matrix rank <= 1, counted by elimination.
  std::uint64_t expected = 0;
  for (std::uint32_t c = 0; c < 16; ++c) {
    expected += oracle::matrix_rank({{c >> 3 & 1, c >> 2 & 1}, {c >> 1 & 1, c & 1}}, 2) <= 1;
  }
  ASSERT_EQ(expected, 10u);
  EXPECT_EQ(cardinality(ProblemParams(2, 2, 1, F2)), expected);
}

TEST(Enumerate, CubeRankOneMatchesFullScan) {
  const auto table = oracle::rank_table({2, 2, 2}, 2, 1);
  ASSERT_EQ(oracle::count_true(table), 28u);
  const auto set = enumerate(ProblemParams(2, 3, 1, F2));
  EXPECT_EQ(set.size(), 28u);
  for (const auto& t : set.members()) EXPECT_TRUE(table[oracle::encode({t.entries().begin(), t.entries().end()}, 2)]);
}

TEST(Enumerate, SmallCases) {
  EXPECT_EQ(cardinality(ProblemParams(1, 2, 1, F2)), 2u);
  for (std::size_t d : {2u, 3u}) {
    const auto set = enumerate(ProblemParams(2, d, 0, F3));
    ASSERT_EQ(set.size(), 1u);
    EXPECT_TRUE(set.members()[0].is_zero());
  }
}

TEST(Enumerate, SortedUniqueWithZero) {
  const auto set = enumerate(ProblemParams(2, 3, 2, F2));
  const auto m = set.members();
  EXPECT_TRUE(m.front().is_zero());
  for (std::size_t i = 1; i < m.size(); ++i) EXPECT_LT(canonical_key(m[i - 1]), canonical_key(m[i]));
}

TEST(Enumerate, BudgetGuard) {
  // 2^{3*2*2} = 4096 tuples.
  EXPECT_EQ(tuple_count(Shape::cubic(2, 3), F2, 2), 4096u);
  EXPECT_THROW(enumerate(ProblemParams(2, 3, 2, F2), 4095), BudgetExceeded);
  EXPECT_NO_THROW(enumerate(ProblemParams(2, 3, 2, F2), 4096));
  EXPECT_THROW(enumerate(ProblemParams(5, 5, 5, F3)), BudgetExceeded);
}

TEST(Enumerate, MonotoneInRank) {
  for (auto [n, d, q] : {std::tuple{2u, 2u, 2u}, std::tuple{2u, 3u, 2u}, std::tuple{2u, 2u, 3u}, std::tuple{3u, 2u, 2u}}) {
    const FieldModulus f(q);
    for (std::size_t r = 0; r < 2; ++r) {
      const auto lo = enumerate(ProblemParams(n, d, r, f));
      const auto hi = enumerate(ProblemParams(n, d, r + 1, f));
      for (const auto& t : lo.members()) EXPECT_TRUE(hi.contains(t));
    }
  }
}

TEST(Enumerate, CardinalitySandwich) {
  for (auto [n, d, r, q] : {std::tuple{2u, 3u, 1u, 2u}, std::tuple{2u, 3u, 2u, 2u}, std::tuple{2u, 3u, 1u, 3u},
                            std::tuple{2u, 4u, 1u, 2u}, std::tuple{3u, 3u, 1u, 2u}}) {
    const FieldModulus f(q);
    const auto card = cardinality(ProblemParams(n, d, r, f));
    EXPECT_LE(BigInt(card), lemma1_upper(n, d, r, f).exact);
    EXPECT_LE(lemma2_sum_lower(n, d, r, f), BigInt(card));
    EXPECT_LT(lemma2_lower(n, d, r, f), static_cast<double>(card));
  }
  for (auto [n, r, q] : {std::tuple{2u, 1u, 2u}, std::tuple{3u, 1u, 2u}, std::tuple{3u, 2u, 2u}, std::tuple{2u, 1u, 3u}}) {
    const FieldModulus f(q);
    const auto card = cardinality(ProblemParams(n, 2, r, f));
    EXPECT_LE(remark1_lower(n, r, f), static_cast<double>(card));
    EXPECT_LE(BigInt(card), lemma1_upper(n, 2, r, f).exact);
  }
}

TEST(RankCache, SumsetLevelsMatchOdometer) {
  for (auto [n, d, q] : {std::tuple{2u, 3u, 2u}, std::tuple{2u, 2u, 3u}, std::tuple{3u, 2u, 2u}}) {
    const FieldModulus f(q);
    RankCache cache(Shape::cubic(n, d), f);
    for (std::size_t r = 0; r <= 2; ++r) {
      const auto odometer = enumerate(ProblemParams(n, d, r, f));
      const auto level = cache.level(r);
      ASSERT_EQ(level->members.size(), odometer.size()) << n << d << q << r;
      EXPECT_TRUE(std::equal(level->members.begin(), level->members.end(), odometer.members().begin()));
    }
  }
}

TEST(Rank, MatchesDefinitionOnAllCubesF2) {
  const auto r0 = oracle::rank_table({2, 2, 2}, 2, 0);
  const auto r1 = oracle::rank_table({2, 2, 2}, 2, 1);
  const auto r2 = oracle::rank_table({2, 2, 2}, 2, 2);
  RankCache cache(Shape::cubic(2, 3), F2);
  std::array<RankSet, 3> sets{enumerate(ProblemParams(2, 3, 0, F2)), enumerate(ProblemParams(2, 3, 1, F2)),
                              enumerate(ProblemParams(2, 3, 2, F2))};
  for (const auto& t : all_tensors(Shape::cubic(2, 3), F2)) {
    const auto code = oracle::encode({t.entries().begin(), t.entries().end()}, 2);
    const std::size_t expected = r0[code] ? 0 : r1[code] ? 1 : r2[code] ? 2 : 3;
    const auto got = cache.rank(t);
    EXPECT_EQ(got, expected) << t;
    for (std::size_t r = 0; r <= 2; ++r) EXPECT_EQ(got <= r, sets[r].contains(t)) << t << " r=" << r;
  }
}

TEST(Rank, Examples) {
  EXPECT_EQ(rank(Tensor(Shape::cubic(2, 3), F2)), 0u);
  EXPECT_EQ(rank(Tensor(Shape{2, 2}, F2, {1, 0, 0, 1})), 2u);
  EXPECT_EQ(rank(outer(FactorTuple{{{1, 2}, {2, 1}, {1, 1}}}, F3)), 1u);
  // Non-cubic shape.
  EXPECT_EQ(rank(Tensor(Shape{2, 3}, F2, {1, 0, 0, 0, 1, 0})), 2u);
}

TEST(Rank, InvariantUnderTransposeAndModePermutation) {
  for (const auto& t : all_tensors(Shape{2, 2}, F3)) {
    const auto e = t.entries();
    EXPECT_EQ(rank(t), rank(Tensor(Shape{2, 2}, F3, {e[0], e[2], e[1], e[3]})));
  }
  RankCache cache(Shape::cubic(2, 3), F2);
  for (const auto& t : all_tensors(Shape::cubic(2, 3), F2)) {
    // (i, j, k) -> (k, i, j)
    std::vector<std::uint32_t> p(8);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t k = 0; k < 2; ++k) p[k * 4 + i * 2 + j] = t.entries()[i * 4 + j * 2 + k];
    EXPECT_EQ(cache.rank(t), cache.rank(Tensor(Shape::cubic(2, 3), F2, p)));
  }
}

TEST(Rank, ConcurrentQueriesAgree) {
  auto cache = std::make_shared<RankCache>(Shape::cubic(2, 3), F2);
  const auto all = all_tensors(Shape::cubic(2, 3), F2);
  std::vector<std::vector<std::size_t>> results(4);
  std::vector<std::thread> pool;
  for (int w = 0; w < 4; ++w) {
    pool.emplace_back([&, w] {
      for (const auto& t : all) results[w].push_back(cache->rank(t));
    });
  }
  for (auto& th : pool) th.join();
  for (int w = 1; w < 4; ++w) EXPECT_EQ(results[w], results[0]);
}

TEST(SampleUniform, ZeroRankAndDeterminism) {
  EXPECT_TRUE(sample_uniform(ProblemParams(2, 3, 0, F2), 99).is_zero());
  const auto set = enumerate(ProblemParams(2, 3, 1, F2));
  Rng a(5), b(5);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(sample_uniform(set, a), sample_uniform(set, b));
  EXPECT_EQ(sample_uniform(ProblemParams(2, 3, 1, F2), 17), sample_uniform(ProblemParams(2, 3, 1, F2), 17));
}

TEST(SampleUniform, FrequenciesWithinThreeSigma) {
  const auto set = enumerate(ProblemParams(2, 3, 1, F2));
  ASSERT_EQ(set.size(), 28u);
  Rng rng(20240601);
  std::map<std::size_t, std::size_t> counts;
  for (int i = 0; i < 28000; ++i) ++counts[*set.index_of(sample_uniform(set, rng))];
  ASSERT_EQ(counts.size(), 28u);
  const double slack = 3.0 * std::sqrt(1000.0 * 27.0 / 28.0);
  for (auto [idx, c] : counts) EXPECT_NEAR(static_cast<double>(c), 1000.0, slack) << "member " << idx;
}

TEST(RankSetCache, RoundTripIsByteIdentical) {
  const auto dir = std::filesystem::temp_directory_path() / "gfrank_cache_test";
  std::filesystem::create_directories(dir);
  const ProblemParams params(2, 3, 2, F2);
  const auto set = enumerate(params);
  const auto a = dir / "a.bin", b = dir / "b.bin";
  write_rankset_cache(set, a);
  const auto loaded = read_rankset_cache(params, a);
  ASSERT_TRUE(loaded.has_value());
  ASSERT_EQ(loaded->size(), set.size());
  EXPECT_TRUE(std::equal(set.members().begin(), set.members().end(), loaded->members().begin()));
  write_rankset_cache(*loaded, b);
  std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
  EXPECT_EQ(std::string(std::istreambuf_iterator<char>(fa), {}), std::string(std::istreambuf_iterator<char>(fb), {}));

  EXPECT_FALSE(read_rankset_cache(ProblemParams(2, 3, 2, F3), a).has_value());
  EXPECT_FALSE(read_rankset_cache(params, dir / "missing.bin").has_value());
  EXPECT_EQ(rankset_cache_name(params), "rankset_n2_d3_r2_q2.bin");
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace gfrank
