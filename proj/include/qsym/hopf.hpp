#pragma once

#include <memory>
#include <optional>
#include <tuple>
#include <vector>

#include "qsym/keyed.hpp"
#include "qsym/linalg.hpp"
#include "qsym/report.hpp"

namespace qsym {

/// Finite-dimensional Hopf algebra by structure constants on a basis e_0..e_{d-1}.
struct StructureConstants {
  StructureConstants(Field f, std::size_t d);

  Field field;
  std::size_t dim;
  /// mult[i][j] = e_i e_j
  std::vector<std::vector<SparseVector>> mult;
  SparseVector unit;
  /// comult[i] lists (j, k, c) with Delta(e_i) = sum c e_j (x) e_k
  std::vector<std::vector<std::tuple<std::size_t, std::size_t, Scalar>>> comult;
  std::vector<Scalar> counit;
  /// Row i holds S(e_i).
  Matrix antipode;
};

/// A Hopf algebra H over Q or F_p, either by structure constants or as the
/// lazily evaluated group algebra of a finitely generated abelian group
/// Z/n_1 x ... x Z/n_r (n_k = 0 for an infinite cyclic factor).
///
/// Basis labels: {i} for structure constants, the reduced coordinate tuple
/// for group elements. Values are immutable and cheap to copy.
class HopfAlgebra {
 public:
  enum class Backend { structure_constants, abelian_group };

  /// No validation; see validate_hopf.
  static HopfAlgebra from_structure_constants(StructureConstants sc);
  static HopfAlgebra abelian_group(Field f, std::vector<std::int64_t> moduli);

  Backend backend() const { return backend_; }
  bool is_abelian_group() const { return backend_ == Backend::abelian_group; }
  const Field& field() const { return field_; }
  bool is_finite() const;
  /// Dimension; throws std::logic_error for an infinite group algebra.
  std::size_t dim() const;

  /// Full basis; finite algebras only.
  std::vector<Key> basis() const;
  /// Finite test block: the full basis when finite, otherwise group elements
  /// whose infinite coordinates lie in [-radius, radius].
  std::vector<Key> window(std::int64_t radius) const;

  Lin unit() const;
  Lin multiply(const Key& a, const Key& b) const;
  Lin multiply(const Lin& a, const Lin& b) const;
  Lin2 comultiply(const Key& a) const;
  Lin2 comultiply(const Lin& a) const;
  Scalar counit(const Key& a) const;
  Scalar counit(const Lin& a) const;
  Lin antipode(const Key& a) const;
  Lin antipode(const Lin& a) const;

  // Group-element arithmetic (abelian backend).
  const std::vector<std::int64_t>& moduli() const { return moduli_; }
  std::size_t rank() const { return moduli_.size(); }
  Key identity() const { return Key(moduli_.size(), 0); }
  Key reduce(Key g) const;
  Key compose(const Key& a, const Key& b) const;
  Key invert(const Key& a) const;

  const StructureConstants& structure() const;

  /// Structure-constant copy of a finite group algebra; basis order is window(0) order.
  HopfAlgebra materialize() const;

  friend bool operator==(const HopfAlgebra& a, const HopfAlgebra& b);

 private:
  HopfAlgebra() : field_(Field::rationals()) {}
  void require_key(const Key& k) const;

  Backend backend_ = Backend::structure_constants;
  Field field_;
  std::shared_ptr<const StructureConstants> sc_;
  std::vector<std::int64_t> moduli_;
};

/// Raised when a multiplication table is not a group; the message names the failing triple.
struct GroupTableError : InvalidInput {
  using InvalidInput::InvalidInput;
};

/// Group algebra K[G] from a multiplication table (table[i][j] = index of g_i g_j).
HopfAlgebra build_group_algebra(const std::vector<std::vector<std::size_t>>& table, Field f);
/// Lazy K[G] for G = Z/n_1 x ... x Z/n_r.
HopfAlgebra build_group_algebra(const std::vector<std::int64_t>& moduli, Field f);

/// Checks associativity, unit, coassociativity, counit, multiplicativity of
/// Delta and epsilon, and both antipode identities. Infinite group algebras are
/// checked on window(radius).
ValidationReport validate_hopf(const HopfAlgebra& h, std::int64_t radius = 1);

/// Bilinear form phi: H x B -> K, as a value matrix (finite bases) or as a
/// bicharacter beta(a, b) = prod_{k,l} q_{kl}^{a_k b_l} on group elements.
class HopfPairing {
 public:
  /// values(i, j) = phi(e_i, f_j)
  static HopfPairing from_matrix(Matrix values);
  /// q is rank(H) x rank(B); the field is explicit since q may be empty.
  static HopfPairing bicharacter(Field f, std::vector<std::vector<Scalar>> q);

  bool is_bicharacter() const { return bicharacter_; }
  const Field& field() const { return field_; }
  const Matrix& values() const { return values_; }
  const std::vector<std::vector<Scalar>>& q() const { return q_; }

  Scalar operator()(const Key& h, const Key& b) const;
  Scalar operator()(const Lin& h, const Lin& b) const;

  HopfPairing transposed() const;

  friend bool operator==(const HopfPairing& a, const HopfPairing& b);

 private:
  HopfPairing(Field f, Matrix values) : field_(f), values_(std::move(values)) {}
  Scalar bicharacter_value(const Key& a, const Key& b) const;
  Field field_;
  bool bicharacter_ = false;
  Matrix values_;
  std::vector<std::vector<Scalar>> q_;
};

/// Counit pairing phi(h, b) = eps(h) eps(b) between finite algebras.
HopfPairing counit_pairing(const HopfAlgebra& h, const HopfAlgebra& b);

/// The five Hopf pairing identities, on all basis pairs/triples of the test
/// blocks (window(radius) for infinite group algebras). A bicharacter is also
/// checked for well-definedness against the moduli of both groups.
ValidationReport validate_hopf_pairing(const HopfPairing& phi, const HopfAlgebra& h, const HopfAlgebra& b,
                                       std::int64_t radius = 1);

HopfPairing transpose_pairing(const HopfPairing& phi);

/// Which radical to test. Following the usual convention for pairings
/// A x C -> K, `left` non-degeneracy means every nonzero y in the second
/// argument pairs nontrivially with some x; `right` is the mirror statement.
enum class Side { left, right };

struct NondegeneracyResult {
  bool nondegenerate = false;
  /// Radical in coordinates of `keys`.
  Subspace radical;
  std::vector<Key> keys;
};

/// Radical of phi restricted to the finite blocks. For Side::left the radical
/// lives in B (kernel of the value matrix), for Side::right in H (kernel of
/// its transpose). Infinite group algebras need an explicit radius.
NondegeneracyResult nondegeneracy(const HopfPairing& phi, const HopfAlgebra& h, const HopfAlgebra& b, Side side,
                                  std::optional<std::int64_t> radius = std::nullopt);

}  // namespace qsym
