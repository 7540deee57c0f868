#pragma once

#include <cstdint>
#include <optional>

#include "qsym/cotensor.hpp"
#include "qsym/report.hpp"

namespace qsym {

enum class Provenance { tensor_tensor, tensor_cotensor, symmetric_induced };

/// One degree of a graded pairing. Columns are T_n labels of the second couple,
/// or cotensor elements for the T x Cot pairing.
struct GramMatrix {
  std::size_t degree;
  Provenance provenance;
  std::vector<Key> rows;
  std::vector<Key> cols;
  std::vector<LinN> cot_cols;
  Matrix matrix;
};

/// Radical of the phi1 block over bounded windows; same conventions as
/// nondegeneracy() for phi0.
NondegeneracyResult nondegeneracy(const CouplePairing& p, const Couple& a, const Couple& b, Side side,
                                  std::optional<std::int64_t> radius);

/// Left and right.
bool two_sided_nondegenerate(const CouplePairing& p, const Couple& a, const Couple& b, std::int64_t radius);

/// The graded Hopf pairing T_H(M) x T_B(N) -> K extending (phi0, phi1).
///
/// Degrees are listed on the reduced bases of the tensor models: words at the
/// identity for diagonal couples, the whole component otherwise. All methods
/// are safe to call concurrently.
class PairingEngine {
 public:
  /// Validates the pairing on windows of the given radius first and throws
  /// InvalidInput naming the failed check.
  PairingEngine(CouplePairing p, const Couple& a, const Couple& b, std::size_t cap = kDefaultCap,
                std::int64_t radius = 1);

  const CouplePairing& pairing() const { return p_; }
  const TensorModel& first() const { return *a_; }
  const TensorModel& second() const { return *b_; }
  const Symmetrizer& first_symmetrizer() const { return oa_; }
  const Symmetrizer& second_symmetrizer() const { return ob_; }
  std::int64_t radius() const { return radius_; }
  bool reduced() const;

  /// phi''(x, y) for x in T_n of the first couple and y in T_n of the second.
  Scalar pair(std::size_t n, const Key& x, const Key& y) const;
  Scalar pair(std::size_t n, const Lin& x, const Lin& y) const;

  GramMatrix gram(std::size_t n) const;
  /// Rows: T_n; columns: basis of the second couple's M^{box n} (paths from the
  /// identity for diagonal couples); entries phi1^{(x)n}(lift(x), z).
  GramMatrix gram_vs_cotensor(std::size_t n) const;
  /// The pairing on S_n x S_n, rows and columns the words whose symmetrizer
  /// images form a basis of S_n.
  GramMatrix induced_gram(std::size_t n) const;

  /// Whether phi0 and phi1 are both two-sided non-degenerate (windowed).
  bool nondegenerate_inputs() const;

 private:
  Lin2 block(std::size_t n, const Key& y) const;

  CouplePairing p_;
  std::shared_ptr<const TensorModel> a_, b_;
  Symmetrizer oa_, ob_;
  std::int64_t radius_;
  mutable std::mutex mu_;
  mutable std::map<std::tuple<std::size_t, Key, Key>, Scalar> memo_;
  mutable std::map<std::pair<std::size_t, Key>, Lin2> blocks_;
  mutable std::optional<bool> nondegenerate_;
};

/// Symmetrizer matrix on the reduced basis of degree n.
Symmetrizer::Matrix_ symmetrizer_matrix(const Symmetrizer& omega, std::size_t n);

struct Relations {
  std::size_t degree;
  std::vector<Key> words;
  /// RREF basis of ker Omega_n as combinations of words.
  std::vector<Lin> basis;
};
Relations relations(const Symmetrizer& omega, std::size_t n);

struct HilbertSeries {
  enum class Mode { full, reduced };
  std::size_t max_degree;
  Mode mode;
  std::vector<std::size_t> dims;
  /// Gram ranks when a pairing was given.
  std::optional<std::vector<std::size_t>> gram_dims;
  /// Set when the resource cap stopped the computation early; dims then end
  /// at the last complete degree.
  bool truncated = false;

  bool agree() const { return !gram_dims || *gram_dims == dims; }
};
HilbertSeries hilbert(const Symmetrizer& omega, const PairingEngine* engine, std::size_t max_degree);

/// The five Hopf pairing identities for phi'' on sampled basis triples of
/// total degree <= D.
ValidationReport pairing_axioms(const PairingEngine& e, std::size_t max_degree, std::size_t samples,
                                std::uint64_t seed);

/// The Gram matrices vanish on the symmetrizer kernels from both sides, the
/// induced S x S blocks have full rank (when phi0 and phi1 are two-sided
/// non-degenerate) and the pairing identities hold on samples.
ValidationReport verify_theorem31(const PairingEngine& e, std::size_t max_degree, std::size_t samples = 100,
                                  std::uint64_t seed = 1);

/// Radicals of the Gram matrices equal the symmetrizer kernels on both sides.
/// Fails at "precondition" unless phi0 and phi1 are two-sided non-degenerate.
ValidationReport verify_theorem32(const PairingEngine& e, std::size_t max_degree);

/// A self-pairing of c: phi0 and phi1 two-sided non-degenerate, then the
/// induced S x S pairing non-degenerate in each degree.
ValidationReport self_dual_check(const Couple& c, const CouplePairing& p, std::size_t max_degree,
                                 std::size_t cap = kDefaultCap, std::int64_t radius = 1);

/// H wedge H = H + M inside Cot, degrees <= D (windowed for infinite groups).
ValidationReport verify_wedge_fact(const Couple& c, std::size_t max_degree, std::int64_t radius = 1,
                                   std::size_t cap = kDefaultCap);

}  // namespace qsym
