#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qsym/scalar.hpp"

namespace qsym {

/// Label of a basis element. Group elements are their reduced coordinate
/// tuples, structure-constant bases use a single index, words of the free
/// tensor model are (group tuple, letters).
using Key = std::vector<std::int64_t>;

/// Basis label of a K-tensor power: one Key per tensor factor.
using TensorKey = std::vector<Key>;

std::string key_string(const Key& k);
std::string tensor_key_string(const TensorKey& k);

/// Finite linear combination of labelled basis elements with exact
/// coefficients. No zero coefficient is ever stored.
template <class K>
class Combination {
 public:
  using map_type = std::map<K, Scalar>;
  using const_iterator = typename map_type::const_iterator;

  explicit Combination(Field f) : field_(f) {}
  static Combination basis(Field f, K k) {
    Combination c(f);
    c.terms_.emplace(std::move(k), f.one());
    return c;
  }
  static Combination term(K k, const Scalar& s) {
    Combination c(s.field());
    c.add(k, s);
    return c;
  }

  const Field& field() const { return field_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const_iterator begin() const { return terms_.begin(); }
  const_iterator end() const { return terms_.end(); }
  const map_type& terms() const { return terms_; }

  Scalar coefficient(const K& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? field_.zero() : it->second;
  }

  void add(const K& k, const Scalar& s) {
    if (!(s.field() == field_)) throw FieldMismatch("coefficient field " + s.field().name() + " vs " + field_.name());
    if (s.is_zero()) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      terms_.emplace(k, s);
      return;
    }
    it->second += s;
    if (it->second.is_zero()) terms_.erase(it);
  }

  void add(const Combination& o, const Scalar& s) {
    if (s.is_zero()) return;
    for (const auto& [k, c] : o.terms_) add(k, c * s);
  }

  Combination& operator+=(const Combination& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }
  Combination& operator-=(const Combination& o) {
    for (const auto& [k, c] : o.terms_) add(k, -c);
    return *this;
  }
  Combination scaled(const Scalar& s) const {
    Combination out(field_);
    if (s.is_zero()) return out;
    for (const auto& [k, c] : terms_) out.terms_.emplace(k, c * s);
    return out;
  }

  friend bool operator==(const Combination& a, const Combination& b) {
    if (!(a.field_ == b.field_) || a.terms_.size() != b.terms_.size()) return false;
    auto it = b.terms_.begin();
    for (const auto& [k, c] : a.terms_) {
      if (!(it->first == k) || it->second != c) return false;
      ++it;
    }
    return true;
  }
  friend bool operator!=(const Combination& a, const Combination& b) { return !(a == b); }

 private:
  Field field_;
  map_type terms_;
};

using Lin = Combination<Key>;
using Lin2 = Combination<std::pair<Key, Key>>;
using LinN = Combination<TensorKey>;

/// Tensor product of two combinations.
template <class A, class B>
Combination<std::pair<A, B>> tensor(const Combination<A>& a, const Combination<B>& b) {
  Combination<std::pair<A, B>> out(a.field());
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b) out.add({ka, kb}, ca * cb);
  return out;
}

/// Concatenation tensor of two K-tensor-power elements.
LinN concat(const LinN& a, const LinN& b);

}  // namespace qsym
