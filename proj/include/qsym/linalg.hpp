#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "qsym/keyed.hpp"
#include "qsym/scalar.hpp"

namespace qsym {

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Sparse vector over a field, entries sorted by index, no stored zeros.
class SparseVector {
 public:
  using Entry = std::pair<std::size_t, Scalar>;

  explicit SparseVector(Field f) : field_(f) {}
  static SparseVector unit(Field f, std::size_t i) {
    SparseVector v(f);
    v.entries_.emplace_back(i, f.one());
    return v;
  }

  const Field& field() const { return field_; }
  bool empty() const { return entries_.empty(); }
  std::size_t nnz() const { return entries_.size(); }
  const std::vector<Entry>& entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  Scalar get(std::size_t i) const;
  void set(std::size_t i, const Scalar& s);
  /// Largest stored index + 1, or 0.
  std::size_t extent() const { return entries_.empty() ? 0 : entries_.back().first + 1; }

  /// this += s * o
  void axpy(const Scalar& s, const SparseVector& o);
  void scale(const Scalar& s);

  friend bool operator==(const SparseVector& a, const SparseVector& b);
  friend bool operator!=(const SparseVector& a, const SparseVector& b) { return !(a == b); }

 private:
  Field field_;
  std::vector<Entry> entries_;
};

/// rows x cols matrix stored as sparse rows, i.e. keyed by (row, col).
class Matrix {
 public:
  Matrix(Field f, std::size_t rows, std::size_t cols);
  static Matrix identity(Field f, std::size_t n);
  /// Builds from dense rows of integers (test and fixture convenience).
  static Matrix from_ints(Field f, const std::vector<std::vector<std::int64_t>>& rows);
  static Matrix from_rows(Field f, std::size_t cols, std::vector<SparseVector> rows);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const;

  Scalar get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Scalar& s);
  const SparseVector& row(std::size_t r) const { return rows_.at(r); }
  const std::vector<SparseVector>& row_vectors() const { return rows_; }

  Matrix transpose() const;
  SparseVector apply(const SparseVector& x) const;
  Matrix operator*(const Matrix& o) const;

  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  Field field_;
  std::size_t cols_;
  std::vector<SparseVector> rows_;
};

/// Subspace of K^ambient held as a reduced row-echelon basis.
class Subspace {
 public:
  Subspace(Field f, std::size_t ambient) : field_(f), ambient_(ambient) {}
  /// RREF of the span of arbitrary vectors.
  static Subspace span(Field f, std::size_t ambient, const std::vector<SparseVector>& vectors);
  static Subspace full(Field f, std::size_t ambient);

  const Field& field() const { return field_; }
  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<SparseVector>& basis() const { return basis_; }
  std::vector<std::size_t> pivots() const;

  bool contains(const SparseVector& v) const;
  /// Residual of v modulo this subspace: zero exactly on members, supported
  /// off the pivot columns. Linear in v.
  SparseVector reduce(const SparseVector& v) const;

  friend bool operator==(const Subspace& a, const Subspace& b);
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

 private:
  friend Subspace rref_subspace(Field, std::size_t, std::vector<SparseVector>);
  Field field_;
  std::size_t ambient_;
  std::vector<SparseVector> basis_;
};

/// Fraction of nonzero entries above which elimination switches to dense rows.
inline constexpr double kDenseFillThreshold = 0.5;

/// Reduced row-echelon form of the given rows (zero rows dropped). Chooses
/// sparse or dense elimination by fill; both give the same, unique RREF.
std::vector<SparseVector> rref(Field f, std::size_t cols, std::vector<SparseVector> rows);
std::vector<SparseVector> rref_sparse(Field f, std::size_t cols, std::vector<SparseVector> rows);
std::vector<SparseVector> rref_dense(Field f, std::size_t cols, const std::vector<SparseVector>& rows);

std::size_t rank(const Matrix& m);
/// Right null space {x : m x = 0}.
Subspace kernel(const Matrix& m);
/// Column space of m inside K^rows.
Subspace image(const Matrix& m);
/// Row space of m inside K^cols.
Subspace row_space(const Matrix& m);
Subspace intersect(const Subspace& a, const Subspace& b);
Subspace sum(const Subspace& a, const Subspace& b);
/// {x : v.x = 0 for all v in s}, the annihilator under the standard dot product.
Subspace annihilator(const Subspace& s);
/// {x : f x in s}.
Subspace preimage(const Matrix& f, const Subspace& s);

/// Dense index of a finite ordered list of keys.
template <class K>
class KeyIndex {
 public:
  KeyIndex() = default;
  explicit KeyIndex(std::vector<K> keys) : keys_(std::move(keys)) {
    for (std::size_t i = 0; i < keys_.size(); ++i) index_.emplace(keys_[i], i);
  }
  std::size_t size() const { return keys_.size(); }
  const std::vector<K>& keys() const { return keys_; }
  const K& key(std::size_t i) const { return keys_.at(i); }
  bool contains(const K& k) const { return index_.count(k) != 0; }
  std::size_t at(const K& k) const {
    auto it = index_.find(k);
    if (it == index_.end()) throw DimensionMismatch("key outside indexed basis");
    return it->second;
  }
  /// Appends k if new; returns its index.
  std::size_t insert(const K& k) {
    auto [it, fresh] = index_.emplace(k, keys_.size());
    if (fresh) keys_.push_back(k);
    return it->second;
  }

 private:
  std::vector<K> keys_;
  std::map<K, std::size_t> index_;
};

template <class K>
SparseVector to_sparse(const Combination<K>& c, const KeyIndex<K>& index) {
  SparseVector v(c.field());
  for (const auto& [k, s] : c) v.set(index.at(k), s);
  return v;
}

template <class K>
Combination<K> from_sparse(const SparseVector& v, const KeyIndex<K>& index) {
  Combination<K> c(v.field());
  for (const auto& [i, s] : v) c.add(index.key(i), s);
  return c;
}

}  // namespace qsym
