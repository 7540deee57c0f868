#pragma once

#include "qsym/tensor.hpp"

namespace qsym {

/// Raised when an element handed to the cotensor coalgebra is not in M^{box n}.
struct NotInComponent : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Which part of M^{box n} to build for a diagonal couple. Its basis is the
/// set of paths (h, a_1) (x) (h g_{a_1}, a_2) (x) ... in the Hopf quiver.
enum class PathScope {
  /// Every path; finite groups only.
  all,
  /// Paths starting at the identity: generators of M^{box n} as a left H-module.
  from_identity,
  /// Paths whose vertices all lie in H.window(radius): a finite subcoalgebra.
  within_window,
};

/// M^{box n} as a subspace of M^{(x)n}. Degree 0 is H, with labels {h}.
struct CotensorComponent {
  std::size_t degree;
  /// Coordinates: every basis tensor for raw couples, the supporting path
  /// tensors for diagonal ones.
  KeyIndex<TensorKey> ambient;
  Subspace space;

  std::vector<LinN> elements() const;
};

/// Raw couples: the intersection over s of ker(rho_r (x) id - id (x) rho_l) at
/// slots (s, s+1), computed in M^{(x)n}. Diagonal couples: the path basis.
CotensorComponent cotensor_component(const Couple& c, std::size_t n, PathScope scope = PathScope::all,
                                     std::int64_t radius = 0, std::size_t cap = kDefaultCap);

/// Applies the defining maps; works for lazy couples too.
bool in_cotensor(const Couple& c, std::size_t n, const LinN& z);

/// Blocks of Delta(z) for z in M^{box n}: entry i lies in C_i (x) C_{n-i}, with
/// H-factors written as one-entry TensorKeys. The end blocks use the
/// coactions on the outer factors; the middle ones deconcatenate.
std::vector<Combination<std::pair<TensorKey, TensorKey>>> cotensor_comultiply(const Couple& c, std::size_t n,
                                                                               const LinN& z);

/// Omega_n: T_n -> M^{(x)n}, the (1,...,1) block of the iterated coproduct.
/// Its image is S_H(M)_n and its kernel I(H,M)_n. Results are memoized.
class Symmetrizer {
 public:
  explicit Symmetrizer(std::shared_ptr<const TensorModel> t) : t_(std::move(t)) {}

  const TensorModel& model() const { return *t_; }
  LinN apply(std::size_t n, const Key& x) const;
  LinN apply(std::size_t n, const Lin& x) const;

  struct Matrix_ {
    std::vector<Key> domain;
    KeyIndex<TensorKey> codomain;
    /// rows = codomain, columns = domain
    Matrix matrix;
  };
  /// Matrix of Omega_n on the given T_n labels.
  Matrix_ matrix(std::size_t n, const std::vector<Key>& domain) const;

 private:
  std::shared_ptr<const TensorModel> t_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<std::size_t, Key>, LinN> memo_;
};

/// Graded subspace of a finite piece of Cot_H(M), degree by degree, as
/// spanning elements of M^{(x)n} (TensorKey{h} in degree 0).
struct GradedSubspace {
  std::vector<std::vector<LinN>> spans;
};

/// C_0..C_D: all of Cot for finite couples; for diagonal couples over infinite
/// groups the subcoalgebra of paths inside H.window(radius).
GradedSubspace cotensor_truncation(const Couple& c, std::size_t max_degree, std::int64_t radius = 1,
                                   std::size_t cap = kDefaultCap);

/// V wedge W = Delta^{-1}(V (x) C + C (x) W) inside the truncation C, degreewise.
GradedSubspace wedge(const Couple& c, const GradedSubspace& truncation, const GradedSubspace& v,
                     const GradedSubspace& w);

/// Dimension of each degree of a graded subspace.
std::vector<std::size_t> graded_dims(const GradedSubspace& s);

}  // namespace qsym
