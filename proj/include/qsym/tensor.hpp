#pragma once

#include <map>
#include <memory>
#include <mutex>

#include "qsym/couple.hpp"

namespace qsym {

inline constexpr std::size_t kDefaultCap = 100000;

/// Homogeneous element of T_H(M).
struct GradedElement {
  std::size_t degree;
  Lin value;
};

/// Graded components of T_H(M) = sum_n M^{(x)_H n}.
///
/// Degree 0 is labelled by H keys and degree 1 by M keys. Higher degrees are
/// model specific: the quotient model uses a section of M^{(x)n} modulo the
/// balancing subspace, the free model (diagonal couples) uses g.v_{i_1}...v_{i_n}
/// labelled by the group tuple followed by the letters.
///
/// Components are built on demand and cached; all operations are safe to call
/// concurrently.
class TensorModel {
 public:
  enum class Kind { quotient, free };

  virtual ~TensorModel() = default;

  Kind kind() const { return kind_; }
  const Couple& couple() const { return couple_; }
  const Field& field() const { return couple_.field(); }
  std::size_t cap() const { return cap_; }

  /// Basis of T_n; finite couples only.
  virtual std::vector<Key> basis(std::size_t n) const = 0;
  /// Generators of T_n as a free left H-module (free model), else basis(n).
  virtual std::vector<Key> reduced_basis(std::size_t n) const = 0;

  virtual Lin multiply(std::size_t a, const Key& x, std::size_t b, const Key& y) const = 0;
  Lin multiply(std::size_t a, const Lin& x, std::size_t b, const Lin& y) const;
  GradedElement multiply(const GradedElement& x, const GradedElement& y) const;

  /// A representative in M^{(x)n}, n >= 1.
  virtual LinN lift(std::size_t n, const Key& x) const = 0;
  LinN lift(std::size_t n, const Lin& x) const;
  /// Class of a homogeneous element of M^{(x)n}, n >= 1.
  virtual Lin project(std::size_t n, const LinN& t) const = 0;

  /// The T_i (x) T_{n-i} block of delta(x).
  virtual Lin2 coproduct_block(std::size_t n, const Key& x, std::size_t i) const;
  Lin2 coproduct_block(std::size_t n, const Lin& x, std::size_t i) const;
  /// Same block computed from lift/project and the couple structure maps only.
  Lin2 generic_coproduct_block(std::size_t n, const Key& x, std::size_t i) const;

  /// Multidegree block of the iterated coproduct, splitting off the leftmost
  /// factor first; TensorKey entries are T_{d_j} labels. Throws on a bad shape.
  LinN coproduct_component(std::size_t n, const Key& x, const std::vector<std::size_t>& shape) const;

  Scalar counit(std::size_t n, const Key& x) const;
  Scalar counit(std::size_t n, const Lin& x) const;
  /// s|_H = S_H, s(m) = -S(m_{-1}).m_0.S(m_1), extended as an anti-algebra map.
  Lin antipode(std::size_t n, const Key& x) const;
  Lin antipode(std::size_t n, const Lin& x) const;

  /// x = sum_m m . x'_m with m an M label and x'_m in T_{n-1}; n >= 1.
  std::vector<std::pair<Key, Lin>> split_first(std::size_t n, const Key& x) const;

 protected:
  TensorModel(Kind k, Couple c, std::size_t cap) : kind_(k), couple_(std::move(c)), cap_(cap) {}
  /// Throws ResourceLimit when count exceeds the cap.
  void guard(std::size_t n, long double count, const char* what) const;

 private:
  Lin finish_leg(const LinN& leg) const;

  Kind kind_;
  Couple couple_;
  std::size_t cap_;
};

/// T_n = M^{(x)n} / span{x (x) h.y - x.h (x) y}, section = non-pivot basis tensors
/// of the RREF of the balancing subspace. Finite couples only; labels for
/// n >= 2 are {flat index of the representative tensor}.
class QuotientModel final : public TensorModel {
 public:
  explicit QuotientModel(Couple c, std::size_t cap = kDefaultCap);
  using TensorModel::lift;
  using TensorModel::multiply;

  std::vector<Key> basis(std::size_t n) const override;
  std::vector<Key> reduced_basis(std::size_t n) const override { return basis(n); }
  Lin multiply(std::size_t a, const Key& x, std::size_t b, const Key& y) const override;
  LinN lift(std::size_t n, const Key& x) const override;
  Lin project(std::size_t n, const LinN& t) const override;

  /// The balancing subspace inside M^{(x)n} (n >= 2), flat tensor coordinates.
  const Subspace& balancing(std::size_t n) const;
  std::size_t ambient_dim(std::size_t n) const;

 private:
  struct Level {
    Subspace balancing;
    std::vector<std::size_t> section;
  };
  const Level& level(std::size_t n) const;
  std::size_t flat(const TensorKey& t) const;
  TensorKey unflat(std::size_t n, std::size_t idx) const;

  std::size_t m_;
  mutable std::mutex mu_;
  mutable std::map<std::size_t, std::shared_ptr<const Level>> levels_;
};

/// Free model of a diagonal couple: T_n is free over H on the words v_w, with
/// (g,w)(h,u) = chi_w(h) (gh, wu).
class FreeModel final : public TensorModel {
 public:
  explicit FreeModel(Couple c, std::size_t cap = kDefaultCap);
  using TensorModel::coproduct_block;
  using TensorModel::lift;
  using TensorModel::multiply;

  std::vector<Key> basis(std::size_t n) const override;
  /// Words at the identity, in lexicographic letter order.
  std::vector<Key> reduced_basis(std::size_t n) const override;
  Lin multiply(std::size_t a, const Key& x, std::size_t b, const Key& y) const override;
  LinN lift(std::size_t n, const Key& x) const override;
  Lin project(std::size_t n, const LinN& t) const override;
  Lin2 coproduct_block(std::size_t n, const Key& x, std::size_t i) const override;

  Key word_key(const Key& g, const std::vector<std::size_t>& letters) const;
  Key group_part(const Key& x) const;
  std::vector<std::size_t> letters(const Key& x) const;
  /// prod_k chi_{w_k}(h)
  Scalar character(const std::vector<std::size_t>& w, const Key& h) const;

 private:
  std::size_t r_;
};

/// Free model for diagonal couples, quotient model otherwise.
std::shared_ptr<const TensorModel> make_tensor_model(const Couple& c, std::size_t cap = kDefaultCap);

struct TensorComponent {
  std::size_t degree;
  std::vector<Key> basis;
};

/// T_n of a finite couple (n = 0 gives H, n = 1 gives M).
TensorComponent tensor_component(const TensorModel& t, std::size_t n);

}  // namespace qsym
