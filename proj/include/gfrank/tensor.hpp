#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

#include "gfrank/gf.hpp"

namespace gfrank {

/// Raised on shape disagreement between tensors, factors or index tuples.
class ShapeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dimensions (n_1, ..., n_d) of an order-d tensor. d >= 1, every n_j >= 1.
class Shape {
 public:
  explicit Shape(std::vector<std::size_t> dims);
  Shape(std::initializer_list<std::size_t> dims) : Shape(std::vector<std::size_t>(dims)) {}

  /// n^{x d}
  static Shape cubic(std::size_t n, std::size_t d);

  std::size_t order() const noexcept { return dims_.size(); }
  std::size_t dim(std::size_t j) const { return dims_.at(j); }
  std::span<const std::size_t> dims() const noexcept { return dims_; }
  /// Number of entries, prod_j n_j.
  std::size_t size() const noexcept { return size_; }
  std::size_t sum_of_dims() const noexcept;

  /// Row-major flat offset, last index fastest. Indices are 0-based.
  std::size_t offset(std::span<const std::size_t> index) const;

  friend bool operator==(const Shape& a, const Shape& b) noexcept { return a.dims_ == b.dims_; }

 private:
  std::vector<std::size_t> dims_;
  std::size_t size_;
};

std::ostream& operator<<(std::ostream& os, const Shape& s);

/// One rank-one term: a vector per mode, entries given as residues mod q.
struct FactorTuple {
  std::vector<std::vector<std::uint32_t>> vectors;
};

using CanonicalKey = std::vector<std::uint8_t>;

/// Dense tensor over F_q. Entries are stored row-major with the last index
/// varying fastest; this is the one layout used for files, keys and iteration.
class Tensor {
 public:
  /// All-zero tensor.
  Tensor(Shape shape, FieldModulus modulus);
  /// Entries must have length shape.size(); values are reduced mod q.
  Tensor(Shape shape, FieldModulus modulus, std::vector<std::uint32_t> entries);

  const Shape& shape() const noexcept { return shape_; }
  FieldModulus modulus() const noexcept { return modulus_; }
  std::span<const std::uint32_t> entries() const noexcept { return entries_; }

  FieldElement at(std::span<const std::size_t> index) const;
  FieldElement at(std::initializer_list<std::size_t> index) const {
    return at(std::span<const std::size_t>(index.begin(), index.size()));
  }
  /// Flat (row-major) access.
  FieldElement operator[](std::size_t flat) const { return {entries_.at(flat), modulus_}; }

  bool is_zero() const noexcept;

  friend Tensor operator+(const Tensor& a, const Tensor& b);
  friend Tensor operator-(const Tensor& a, const Tensor& b);
  friend bool operator==(const Tensor& a, const Tensor& b) noexcept {
    return a.modulus_ == b.modulus_ && a.shape_ == b.shape_ && a.entries_ == b.entries_;
  }

 private:
  Shape shape_;
  FieldModulus modulus_;
  std::vector<std::uint32_t> entries_;
};

/// Outer product u^(1) (x) ... (x) u^(d) with shape (|u^(1)|, ..., |u^(d)|).
Tensor outer(const FactorTuple& factors, FieldModulus modulus);
/// As above, but checks the factor lengths against `shape`.
Tensor outer(const FactorTuple& factors, const Shape& shape, FieldModulus modulus);

inline Tensor add(const Tensor& a, const Tensor& b) { return a + b; }
inline Tensor sub(const Tensor& a, const Tensor& b) { return a - b; }

/// <a, b> = sum over all index tuples of a_i * b_i, mod q.
FieldElement inner(const Tensor& a, const Tensor& b);

/// Injective byte encoding: order, dims, q, then entries, each as a
/// big-endian u32. For a fixed shape and q, byte order equals the
/// lexicographic order of the entry lists.
CanonicalKey canonical_key(const Tensor& t);

/// Strict weak order consistent with canonical_key.
bool canonical_less(const Tensor& a, const Tensor& b);

std::ostream& operator<<(std::ostream& os, const Tensor& t);

}  // namespace gfrank
