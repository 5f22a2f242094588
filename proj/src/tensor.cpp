#include "gfrank/tensor.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace gfrank {

Shape::Shape(std::vector<std::size_t> dims) : dims_(std::move(dims)), size_(1) {
  if (dims_.empty()) throw std::invalid_argument("tensor order must be at least 1");
  for (auto n : dims_) {
    if (n == 0) throw std::invalid_argument("tensor dimensions must be positive");
    size_ *= n;
  }
}

Shape Shape::cubic(std::size_t n, std::size_t d) { return Shape(std::vector<std::size_t>(d, n)); }

std::size_t Shape::sum_of_dims() const noexcept {
  return std::accumulate(dims_.begin(), dims_.end(), std::size_t{0});
}

std::size_t Shape::offset(std::span<const std::size_t> index) const {
  if (index.size() != dims_.size()) throw ShapeMismatch("index arity does not match tensor order");
  std::size_t flat = 0;
  for (std::size_t j = 0; j < dims_.size(); ++j) {
    if (index[j] >= dims_[j]) throw std::out_of_range("tensor index out of range");
    flat = flat * dims_[j] + index[j];
  }
  return flat;
}

std::ostream& operator<<(std::ostream& os, const Shape& s) {
  for (std::size_t j = 0; j < s.order(); ++j) os << (j ? "x" : "") << s.dim(j);
  return os;
}

Tensor::Tensor(Shape shape, FieldModulus modulus)
    : shape_(std::move(shape)), modulus_(modulus), entries_(shape_.size(), 0) {}

Tensor::Tensor(Shape shape, FieldModulus modulus, std::vector<std::uint32_t> entries)
    : shape_(std::move(shape)), modulus_(modulus), entries_(std::move(entries)) {
  if (entries_.size() != shape_.size()) {
    throw ShapeMismatch("expected " + std::to_string(shape_.size()) + " entries, got " +
                        std::to_string(entries_.size()));
  }
  const auto q = modulus_.value();
  for (auto& v : entries_) v %= q;
}

FieldElement Tensor::at(std::span<const std::size_t> index) const {
  return {entries_[shape_.offset(index)], modulus_};
}

bool Tensor::is_zero() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](auto v) { return v == 0; });
}

namespace {

void require_compatible(const Tensor& a, const Tensor& b) {
  if (!(a.modulus() == b.modulus())) throw ModulusMismatch("tensors over different fields");
  if (!(a.shape() == b.shape())) throw ShapeMismatch("tensors of different shapes");
}

}  // namespace

Tensor operator+(const Tensor& a, const Tensor& b) {
  require_compatible(a, b);
  const auto q = a.modulus_.value();
  std::vector<std::uint32_t> out(a.entries_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (a.entries_[i] + b.entries_[i]) % q;
  return {a.shape_, a.modulus_, std::move(out)};
}

Tensor operator-(const Tensor& a, const Tensor& b) {
  require_compatible(a, b);
  const auto q = a.modulus_.value();
  std::vector<std::uint32_t> out(a.entries_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (a.entries_[i] + q - b.entries_[i]) % q;
  return {a.shape_, a.modulus_, std::move(out)};
}

Tensor outer(const FactorTuple& factors, FieldModulus modulus) {
  std::vector<std::size_t> dims;
  dims.reserve(factors.vectors.size());
  for (const auto& u : factors.vectors) dims.push_back(u.size());
  Shape shape(std::move(dims));

  const std::uint64_t q = modulus.value();
  // Build mode by mode: after processing mode j the buffer holds the
  // outer product of the first j+1 factors in row-major order.
  std::vector<std::uint32_t> acc{1};
  for (const auto& u : factors.vectors) {
    std::vector<std::uint32_t> next;
    next.reserve(acc.size() * u.size());
    for (auto a : acc) {
      for (auto x : u) next.push_back(static_cast<std::uint32_t>(std::uint64_t{a} * (x % q) % q));
    }
    acc = std::move(next);
  }
  return {std::move(shape), modulus, std::move(acc)};
}

Tensor outer(const FactorTuple& factors, const Shape& shape, FieldModulus modulus) {
  if (factors.vectors.size() != shape.order()) throw ShapeMismatch("factor count differs from tensor order");
  for (std::size_t j = 0; j < shape.order(); ++j) {
    if (factors.vectors[j].size() != shape.dim(j)) {
      throw ShapeMismatch("factor " + std::to_string(j + 1) + " has length " +
                          std::to_string(factors.vectors[j].size()) + ", expected " +
                          std::to_string(shape.dim(j)));
    }
  }
  return outer(factors, modulus);
}

FieldElement inner(const Tensor& a, const Tensor& b) {
  require_compatible(a, b);
  const std::uint64_t q = a.modulus().value();
  std::uint64_t acc = 0;
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) acc = (acc + std::uint64_t{ea[i]} * eb[i]) % q;
  return {acc, a.modulus()};
}

namespace {

void put_u32(CanonicalKey& key, std::uint64_t v) {
  key.push_back(static_cast<std::uint8_t>(v >> 24));
  key.push_back(static_cast<std::uint8_t>(v >> 16));
  key.push_back(static_cast<std::uint8_t>(v >> 8));
  key.push_back(static_cast<std::uint8_t>(v));
}

}  // namespace

CanonicalKey canonical_key(const Tensor& t) {
  CanonicalKey key;
  key.reserve(4 * (2 + t.shape().order() + t.shape().size()));
  put_u32(key, t.shape().order());
  for (auto n : t.shape().dims()) put_u32(key, n);
  put_u32(key, t.modulus().value());
  for (auto v : t.entries()) put_u32(key, v);
  return key;
}

bool canonical_less(const Tensor& a, const Tensor& b) {
  if (a.shape() == b.shape() && a.modulus() == b.modulus()) {
    auto ea = a.entries();
    auto eb = b.entries();
    return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
  }
  return canonical_key(a) < canonical_key(b);
}

std::ostream& operator<<(std::ostream& os, const Tensor& t) {
  os << "Tensor(" << t.shape() << ", q=" << t.modulus().value() << ", [";
  auto e = t.entries();
  for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
  return os << "])";
}

}  // namespace gfrank
