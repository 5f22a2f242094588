#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gfrank/rng.hpp"
#include "gfrank/tensor.hpp"

namespace gfrank {

/// Default cap on the number of factor tuples (or pairwise sums) an
/// enumeration may visit.
inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 28;

/// An enumeration would exceed its work budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Side length n, order d, maximum rank r and field F_q of the cubic set
/// T(n; d; r; q) of tensors with rank at most r.
struct ProblemParams {
  ProblemParams(std::size_t n, std::size_t d, std::size_t r, FieldModulus q);

  std::size_t n;
  std::size_t d;
  std::size_t r;
  FieldModulus q;

  Shape shape() const { return Shape::cubic(n, d); }
  /// The degrees-of-freedom count n*r*d.
  std::size_t nrd() const noexcept { return n * r * d; }
};

/// Deduplicated members of T(n; d; r; q) sorted by canonical key.
class RankSet {
 public:
  RankSet(ProblemParams params, std::shared_ptr<const std::vector<Tensor>> members)
      : params_(params), members_(std::move(members)) {}

  const ProblemParams& params() const noexcept { return params_; }
  std::span<const Tensor> members() const noexcept { return *members_; }
  std::size_t size() const noexcept { return members_->size(); }
  bool contains(const Tensor& t) const;
  /// Position of `t` in members(), if present.
  std::optional<std::size_t> index_of(const Tensor& t) const;

 private:
  ProblemParams params_;
  std::shared_ptr<const std::vector<Tensor>> members_;
};

/// Number of factor tuples (q^{r * sum_j n_j}) an odometer scan would
/// visit, saturating at UINT64_MAX.
std::uint64_t tuple_count(const Shape& shape, FieldModulus q, std::size_t r) noexcept;

/// Every tensor of `shape` expressible as a sum of r rank-one terms,
/// found by scanning all factor tuples in odometer order. Sorted, unique.
std::vector<Tensor> enumerate_rank_at_most(const Shape& shape, FieldModulus q, std::size_t r,
                                           std::uint64_t budget = kDefaultBudget);

RankSet enumerate(const ProblemParams& params, std::uint64_t budget = kDefaultBudget);
std::uint64_t cardinality(const ProblemParams& params, std::uint64_t budget = kDefaultBudget);

/// Per-rank-level cache for one shape and field. level(rho) holds all
/// tensors of rank <= rho; levels above one are grown as sumsets
/// level(rho) + level(1), which visits |level(rho)| * |level(1)| pairs
/// instead of q^{(rho+1) sum n_j} tuples. Safe for concurrent readers;
/// builds are serialized.
class RankCache {
 public:
  struct Level {
    std::vector<Tensor> members;       // sorted by canonical key
    std::vector<std::uint32_t> ranks;  // exact rank of each member
  };

  RankCache(Shape shape, FieldModulus q, std::uint64_t budget = kDefaultBudget);

  const Shape& shape() const noexcept { return shape_; }
  FieldModulus modulus() const noexcept { return q_; }

  std::shared_ptr<const Level> level(std::size_t rho);
  /// Exact rank of `t`. Throws BudgetExceeded if the needed level is too big.
  std::size_t rank(const Tensor& t);

 private:
  std::shared_ptr<const Level> build_next_locked();

  Shape shape_;
  FieldModulus q_;
  std::uint64_t budget_;
  std::mutex mutex_;
  std::vector<std::shared_ptr<const Level>> levels_;
};

/// Exact tensor rank (0 for the zero tensor).
std::size_t rank(const Tensor& t, std::uint64_t budget = kDefaultBudget);

/// A member of the set drawn uniformly (over tensors, not over
/// decompositions).
const Tensor& sample_uniform(const RankSet& set, Rng& rng);
Tensor sample_uniform(const ProblemParams& params, std::uint64_t seed,
                      std::uint64_t budget = kDefaultBudget);

/// On-disk cache of a rank set: magic "GFRANKSET1\n", then a big-endian u64
/// member count, then the canonical keys of the members in order.
void write_rankset_cache(const RankSet& set, const std::filesystem::path& path);
/// File name keyed by (n, d, r, q), e.g. "rankset_n2_d3_r1_q2.bin".
std::string rankset_cache_name(const ProblemParams& params);
/// Reads a cache written for `params`; nullopt if missing or written for
/// different parameters.
std::optional<RankSet> read_rankset_cache(const ProblemParams& params, const std::filesystem::path& path);

}  // namespace gfrank
