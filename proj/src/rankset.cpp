#include "gfrank/rankset.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <string>
#include <unordered_set>

namespace gfrank {

ProblemParams::ProblemParams(std::size_t n_, std::size_t d_, std::size_t r_, FieldModulus q_)
    : n(n_), d(d_), r(r_), q(q_) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (d < 2) throw std::invalid_argument("d must be at least 2");
}

bool RankSet::contains(const Tensor& t) const { return index_of(t).has_value(); }

std::optional<std::size_t> RankSet::index_of(const Tensor& t) const {
  auto it = std::lower_bound(members_->begin(), members_->end(), t, canonical_less);
  if (it == members_->end() || !(*it == t)) return std::nullopt;
  return static_cast<std::size_t>(it - members_->begin());
}

namespace {

/// q^e saturating at UINT64_MAX.
std::uint64_t saturating_pow(std::uint64_t q, std::uint64_t e) noexcept {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (out > UINT64_MAX / q) return UINT64_MAX;
    out *= q;
  }
  return out;
}

/// Deduplicating sink for entry lists of one shape. When q^N fits in 64
/// bits each list is packed base q, most significant entry first, so the
/// packed order equals the canonical order.
class DedupSet {
 public:
  DedupSet(const Shape& shape, FieldModulus q)
      : shape_(shape), q_(q), packable_(saturating_pow(q.value(), shape.size()) != UINT64_MAX) {}

  void insert(std::span<const std::uint32_t> entries) {
    if (packable_) {
      std::uint64_t key = 0;
      for (auto v : entries) key = key * q_.value() + v;
      packed_.insert(key);
    } else {
      wide_.emplace(entries.begin(), entries.end());
    }
  }

  std::vector<Tensor> sorted() const {
    std::vector<Tensor> out;
    if (packable_) {
      std::vector<std::uint64_t> keys(packed_.begin(), packed_.end());
      std::sort(keys.begin(), keys.end());
      out.reserve(keys.size());
      const std::size_t size = shape_.size();
      for (auto key : keys) {
        std::vector<std::uint32_t> entries(size);
        for (std::size_t i = size; i-- > 0;) {
          entries[i] = static_cast<std::uint32_t>(key % q_.value());
          key /= q_.value();
        }
        out.emplace_back(shape_, q_, std::move(entries));
      }
    } else {
      out.reserve(wide_.size());
      for (const auto& entries : wide_) out.emplace_back(shape_, q_, entries);
    }
    return out;
  }

 private:
  Shape shape_;
  FieldModulus q_;
  bool packable_;
  std::unordered_set<std::uint64_t> packed_;
  std::set<std::vector<std::uint32_t>> wide_;
};

/// All q^{sum n_j} outer products u^(1) (x) ... (x) u^(d), with repetition,
/// in odometer order over the concatenated factor digits.
std::vector<std::vector<std::uint32_t>> rank_one_table(const Shape& shape, FieldModulus q) {
  const std::size_t digits = shape.sum_of_dims();
  const std::uint64_t count = saturating_pow(q.value(), digits);
  std::vector<std::vector<std::uint32_t>> table;
  table.reserve(count);

  std::vector<std::uint32_t> odometer(digits, 0);
  FactorTuple factors;
  factors.vectors.resize(shape.order());
  for (std::size_t j = 0; j < shape.order(); ++j) factors.vectors[j].resize(shape.dim(j));

  for (std::uint64_t t = 0; t < count; ++t) {
    std::size_t pos = 0;
    for (auto& u : factors.vectors) {
      for (auto& x : u) x = odometer[pos++];
    }
    auto product = outer(factors, q);
    table.emplace_back(product.entries().begin(), product.entries().end());

    for (std::size_t i = digits; i-- > 0;) {
      if (++odometer[i] < q.value()) break;
      odometer[i] = 0;
    }
  }
  return table;
}

void check_budget(std::uint64_t work, std::uint64_t budget, const std::string& what) {
  if (work > budget) {
    throw BudgetExceeded(what + " needs " + (work == UINT64_MAX ? std::string(">= 2^64") : std::to_string(work)) +
                         " steps, budget is " + std::to_string(budget));
  }
}

}  // namespace

std::uint64_t tuple_count(const Shape& shape, FieldModulus q, std::size_t r) noexcept {
  if (r == 0) return 1;
  const auto per_term = saturating_pow(q.value(), shape.sum_of_dims());
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < r; ++i) {
    if (per_term != 0 && out > UINT64_MAX / per_term) return UINT64_MAX;
    out *= per_term;
  }
  return out;
}

std::vector<Tensor> enumerate_rank_at_most(const Shape& shape, FieldModulus q, std::size_t r,
                                           std::uint64_t budget) {
  check_budget(tuple_count(shape, q, r), budget, "enumerating rank <= " + std::to_string(r));
  if (r == 0) return {Tensor(shape, q)};

  const auto table = rank_one_table(shape, q);
  const std::size_t size = shape.size();
  const std::uint32_t modulus = q.value();

  // partial[k] holds the sum of the first k chosen terms.
  std::vector<std::size_t> index(r, 0);
  std::vector<std::vector<std::uint32_t>> partial(r + 1, std::vector<std::uint32_t>(size, 0));
  auto refresh = [&](std::size_t from) {
    for (std::size_t k = from; k < r; ++k) {
      const auto& term = table[index[k]];
      for (std::size_t i = 0; i < size; ++i) partial[k + 1][i] = (partial[k][i] + term[i]) % modulus;
    }
  };

  DedupSet found(shape, q);
  refresh(0);
  while (true) {
    found.insert(partial[r]);
    std::size_t k = r;
    bool wrapped = true;
    while (k > 0) {
      --k;
      if (++index[k] < table.size()) {
        wrapped = false;
        break;
      }
      index[k] = 0;
    }
    if (wrapped) break;
    refresh(k);
  }
  return found.sorted();
}

RankSet enumerate(const ProblemParams& params, std::uint64_t budget) {
  auto members = std::make_shared<const std::vector<Tensor>>(
      enumerate_rank_at_most(params.shape(), params.q, params.r, budget));
  return {params, std::move(members)};
}

std::uint64_t cardinality(const ProblemParams& params, std::uint64_t budget) {
  return enumerate(params, budget).size();
}

RankCache::RankCache(Shape shape, FieldModulus q, std::uint64_t budget)
    : shape_(std::move(shape)), q_(q), budget_(budget) {}

std::shared_ptr<const RankCache::Level> RankCache::level(std::size_t rho) {
  std::lock_guard lock(mutex_);
  while (levels_.size() <= rho) levels_.push_back(build_next_locked());
  return levels_[rho];
}

std::shared_ptr<const RankCache::Level> RankCache::build_next_locked() {
  auto next = std::make_shared<Level>();
  const std::size_t rho = levels_.size();
  if (rho == 0) {
    next->members.emplace_back(shape_, q_);
    next->ranks.push_back(0);
    return next;
  }
  if (rho == 1) {
    next->members = enumerate_rank_at_most(shape_, q_, 1, budget_);
    for (const auto& t : next->members) next->ranks.push_back(t.is_zero() ? 0 : 1);
    return next;
  }

  const auto& prev = *levels_[rho - 1];
  const auto& ones = *levels_[1];
  const std::uint64_t pairs = prev.members.size() * ones.members.size();
  check_budget(pairs, budget_, "growing rank level " + std::to_string(rho));

  DedupSet found(shape_, q_);
  for (const auto& a : prev.members) {
    for (const auto& b : ones.members) found.insert((a + b).entries());
  }
  next->members = found.sorted();
  next->ranks.reserve(next->members.size());
  for (const auto& t : next->members) {
    auto it = std::lower_bound(prev.members.begin(), prev.members.end(), t, canonical_less);
    const bool seen = it != prev.members.end() && *it == t;
    next->ranks.push_back(seen ? prev.ranks[it - prev.members.begin()] : static_cast<std::uint32_t>(rho));
  }
  return next;
}

std::size_t RankCache::rank(const Tensor& t) {
  if (!(t.shape() == shape_)) throw ShapeMismatch("tensor shape differs from the rank cache shape");
  if (!(t.modulus() == q_)) throw ModulusMismatch("tensor field differs from the rank cache field");
  // Every tensor is a sum of at most shape.size() unit tensors.
  for (std::size_t rho = 0; rho <= shape_.size(); ++rho) {
    auto lvl = level(rho);
    auto it = std::lower_bound(lvl->members.begin(), lvl->members.end(), t, canonical_less);
    if (it != lvl->members.end() && *it == t) return rho;
  }
  throw std::logic_error("tensor not reached by any rank level");
}

std::size_t rank(const Tensor& t, std::uint64_t budget) {
  if (t.is_zero()) return 0;
  RankCache cache(t.shape(), t.modulus(), budget);
  return cache.rank(t);
}

const Tensor& sample_uniform(const RankSet& set, Rng& rng) {
  return set.members()[rng.below(set.size())];
}

Tensor sample_uniform(const ProblemParams& params, std::uint64_t seed, std::uint64_t budget) {
  auto set = enumerate(params, budget);
  Rng rng(seed);
  return sample_uniform(set, rng);
}

namespace {

constexpr char kCacheMagic[] = "GFRANKSET1\n";

}  // namespace

std::string rankset_cache_name(const ProblemParams& params) {
  return "rankset_n" + std::to_string(params.n) + "_d" + std::to_string(params.d) + "_r" +
         std::to_string(params.r) + "_q" + std::to_string(params.q.value()) + ".bin";
}

void write_rankset_cache(const RankSet& set, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(kCacheMagic, sizeof(kCacheMagic) - 1);
  std::uint64_t count = set.size();
  for (int shift = 56; shift >= 0; shift -= 8) out.put(static_cast<char>(count >> shift));
  for (const auto& t : set.members()) {
    auto key = canonical_key(t);
    out.write(reinterpret_cast<const char*>(key.data()), static_cast<std::streamsize>(key.size()));
  }
}

std::optional<RankSet> read_rankset_cache(const ProblemParams& params, const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;

  std::string magic(sizeof(kCacheMagic) - 1, '\0');
  in.read(magic.data(), static_cast<std::streamsize>(magic.size()));
  if (!in || magic != kCacheMagic) return std::nullopt;

  std::uint64_t count = 0;
  for (int i = 0; i < 8; ++i) {
    int c = in.get();
    if (c == EOF) return std::nullopt;
    count = (count << 8) | static_cast<std::uint8_t>(c);
  }

  const Shape shape = params.shape();
  const Tensor zero(shape, params.q);
  const auto header = canonical_key(zero);
  const std::size_t prefix = 4 * (2 + shape.order());

  auto members = std::make_shared<std::vector<Tensor>>();
  CanonicalKey key(header.size());
  for (std::uint64_t k = 0; k < count; ++k) {
    in.read(reinterpret_cast<char*>(key.data()), static_cast<std::streamsize>(key.size()));
    if (!in || !std::equal(header.begin(), header.begin() + prefix, key.begin())) return std::nullopt;
    std::vector<std::uint32_t> entries(shape.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const auto* p = key.data() + prefix + 4 * i;
      entries[i] = (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) | (std::uint32_t{p[2]} << 8) | p[3];
      if (entries[i] >= params.q.value()) return std::nullopt;
    }
    members->emplace_back(shape, params.q, std::move(entries));
  }
  if (in.peek() != EOF) return std::nullopt;
  return RankSet(params, std::move(members));
}

}  // namespace gfrank
