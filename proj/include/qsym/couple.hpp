#pragma once

#include <optional>
#include <tuple>
#include <vector>

#include "qsym/hopf.hpp"

namespace qsym {

/// Hopf bimodule over a structure-constant Hopf algebra, by structure constants.
struct RawBimodule {
  RawBimodule(Field f, std::size_t m, std::size_t h);

  Field field;
  std::size_t dim;
  std::size_t hopf_dim;
  /// lact[h][m] = e_h . e_m
  std::vector<std::vector<SparseVector>> lact;
  /// ract[m][h] = e_m . e_h
  std::vector<std::vector<SparseVector>> ract;
  /// lcoact[m] lists (h, m', c): rho_l(e_m) = sum c e_h (x) e_m'
  std::vector<std::vector<std::tuple<std::size_t, std::size_t, Scalar>>> lcoact;
  /// rcoact[m] lists (m', h, c): rho_r(e_m) = sum c e_m' (x) e_h
  std::vector<std::vector<std::tuple<std::size_t, std::size_t, Scalar>>> rcoact;
};

/// Diagonal data over the abelian group G = Z/n_1 x ... x Z/n_r: letters
/// v_1..v_theta with degrees g_i and characters chi_i. Convention:
/// q[i][j] = chi_j(g_i).
struct DiagonalData {
  std::vector<std::int64_t> moduli;
  std::vector<Key> degrees;
  std::vector<std::vector<Scalar>> q;
  /// characters[i][k] = chi_i(e_k). When absent the degrees must be the
  /// standard generators e_1..e_theta (or G trivial) and chi_i(e_k) = q[k][i].
  std::optional<std::vector<std::vector<Scalar>>> characters;

  std::size_t theta() const { return degrees.size(); }
};

/// A couple (H, M). Raw couples label M by {i}; diagonal couples label
/// g.v_i by the group tuple of g followed by i.
///
/// Diagonal structure: k.(g,i) = (kg, i), (g,i).k = chi_i(k) (gk, i),
/// rho_l(g,i) = g (x) (g,i), rho_r(g,i) = (g,i) (x) g g_i.
class Couple {
 public:
  enum class Kind { raw, diagonal };

  /// Requires a structure-constant H of matching dimension; no axiom check.
  static Couple from_raw(HopfAlgebra h, RawBimodule m);

  Kind kind() const { return kind_; }
  bool is_diagonal() const { return kind_ == Kind::diagonal; }
  const HopfAlgebra& hopf() const { return h_; }
  const Field& field() const { return h_.field(); }

  bool is_finite() const { return h_.is_finite(); }
  std::size_t dim() const;
  std::vector<Key> basis() const;
  /// M elements over H.window(radius).
  std::vector<Key> window(std::int64_t radius) const;

  Lin left_act(const Key& h, const Key& m) const;
  Lin right_act(const Key& m, const Key& h) const;
  Lin left_act(const Lin& h, const Lin& m) const;
  Lin right_act(const Lin& m, const Lin& h) const;
  /// Pairs (H key, M key).
  Lin2 left_coact(const Key& m) const;
  /// Pairs (M key, H key).
  Lin2 right_coact(const Key& m) const;

  // Diagonal couples.
  const DiagonalData& diagonal() const;
  std::size_t theta() const { return diag_.theta(); }
  const Key& degree(std::size_t i) const { return diag_.degrees.at(i); }
  Scalar character(std::size_t i, const Key& g) const;
  Key element(const Key& g, std::size_t letter) const;
  Key group_part(const Key& m) const;
  std::size_t letter(const Key& m) const;

  const RawBimodule& raw() const;

  /// Raw copy of a finite couple over H.materialize(); M is ordered as basis().
  Couple materialize() const;

 private:
  friend Couple build_diagonal_couple_unchecked(const DiagonalData&, Field);
  explicit Couple(HopfAlgebra h) : h_(std::move(h)) {}
  void require_key(const Key& m) const;

  Kind kind_ = Kind::raw;
  HopfAlgebra h_;
  std::shared_ptr<const RawBimodule> raw_;
  DiagonalData diag_;
  std::vector<std::vector<Scalar>> chi_;
};

/// Module, comodule, bimodule and bicomodule axioms plus both Hopf bimodule
/// compatibilities. Diagonal couples are checked on window(radius), and their
/// characters for well-definedness.
ValidationReport validate_hopf_bimodule(const Couple& c, std::int64_t radius = 1);

/// M = H with multiplication and Delta as (co)actions. Finite H only.
Couple regular_couple(const HopfAlgebra& h);

/// Checks the DiagonalData invariants; throws InvalidInput naming the violation.
Couple build_diagonal_couple(const DiagonalData& diag, Field f);
/// Only shape checks; for exercising the validator on bad data.
Couple build_diagonal_couple_unchecked(const DiagonalData& diag, Field f);

/// (phi0, phi1). phi1 is either a matrix on finite M x N bases, or, for
/// diagonal couples with a bicharacter phi0, phi1((g,i),(h,j)) = beta(g,h) L[i][j].
/// The second form is the general one: the pairing identities force it.
class CouplePairing {
 public:
  static CouplePairing explicit_matrix(HopfPairing phi0, Matrix phi1);
  static CouplePairing diagonal(HopfPairing phi0, Matrix letters);

  const HopfPairing& phi0() const { return phi0_; }
  const Field& field() const { return phi0_.field(); }
  bool is_diagonal() const { return diagonal_; }
  /// The phi1 matrix, or the letter matrix L for the diagonal form.
  const Matrix& phi1_matrix() const { return phi1_; }

  Scalar phi1(const Key& m, const Key& n) const;
  Scalar phi1(const Lin& m, const Lin& n) const;

  CouplePairing transposed() const;

 private:
  CouplePairing(HopfPairing p0, Matrix p1, bool diag) : phi0_(std::move(p0)), phi1_(std::move(p1)), diagonal_(diag) {}
  HopfPairing phi0_;
  Matrix phi1_;
  bool diagonal_;
};

/// Both couple-pairing identities, with implicit Sweedler sums, on all triples
/// from the test windows of H, B, M and N.
ValidationReport validate_couple_pairing(const CouplePairing& p, const Couple& a, const Couple& b,
                                         std::int64_t radius = 1);

struct SelfDualCouple {
  Couple couple;
  CouplePairing pairing;
};

/// phi0 = beta with beta(e_k, e_l) = q[k][l], phi1 = beta(g,h) delta_ij.
/// Requires symmetric q and degrees e_1..e_theta (or trivial G with q = 1).
SelfDualCouple build_self_dual_diagonal_pairing(const DiagonalData& diag, Field f);

}  // namespace qsym
