#pragma once

// Brute-force references shared by the unit tests and the acceptance runner.
// Nothing here calls the recursive coproduct or symmetrizer code paths.

#include <algorithm>
#include <numeric>
#include <sstream>
#include <string>

#include "qsym/pairing.hpp"
#include "tensor_fixtures.hpp"

namespace fixtures {

struct Instance {
  std::string name;
  Couple couple;
  CouplePairing pairing;
};

inline Instance self_dual(std::string name, const DiagonalData& d, Field f) {
  auto sd = build_self_dual_diagonal_pairing(d, f);
  return {std::move(name), sd.couple, sd.pairing};
}

// Rank one q = 1, rank one over F_5 at q = 2, A2 at q = 2, rank one q = -1.
inline std::vector<Instance> nondegenerate_instances() {
  const Field q = Field::rationals();
  const Field f5 = Field::prime(5);
  return {self_dual("trivial q=1", rank_one({}, q.one()), q), self_dual("Z/4 F_5 q=2", rank_one({4}, f5.from_int(2)), f5),
          self_dual("A2", a2(), q), self_dual("Z/2 q=-1", rank_one({2}, q.from_int(-1)), q)};
}

// The diagonal self-dual pairing moved onto the materialized couple.
inline Instance materialized(const Instance& in) {
  Couple raw = in.couple.materialize();
  const auto hk = in.couple.hopf().basis();
  const auto mk = in.couple.basis();
  const Field f = in.couple.field();
  Matrix p0(f, hk.size(), hk.size()), p1(f, mk.size(), mk.size());
  for (std::size_t i = 0; i < hk.size(); ++i)
    for (std::size_t j = 0; j < hk.size(); ++j) p0.set(i, j, in.pairing.phi0()(hk[i], hk[j]));
  for (std::size_t i = 0; i < mk.size(); ++i)
    for (std::size_t j = 0; j < mk.size(); ++j) p1.set(i, j, in.pairing.phi1(mk[i], mk[j]));
  return {in.name + " materialized", raw, CouplePairing::explicit_matrix(HopfPairing::from_matrix(p0), p1)};
}

inline std::vector<std::vector<std::size_t>> words(std::size_t theta, std::size_t n) {
  std::vector<std::vector<std::size_t>> out{{}};
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& w : out)
      for (std::size_t a = 0; a < theta; ++a) {
        auto u = w;
        u.push_back(a);
        next.push_back(u);
      }
    out = next;
  }
  return out;
}

inline TensorKey path_at_identity(const Couple& c, const std::vector<std::size_t>& letters) {
  Key v = c.hopf().identity();
  TensorKey out;
  for (auto a : letters) {
    out.push_back(c.element(v, a));
    v = c.hopf().compose(v, c.degree(a));
  }
  return out;
}

// Omega on a word at the identity as a sum over permutations: letter t moving
// in front of an earlier letter s picks up q_{w_t w_s}.
inline LinN shuffle_oracle(const Couple& c, const std::vector<std::size_t>& w) {
  const Field& f = c.field();
  const auto& q = c.diagonal().q;
  std::vector<std::size_t> order(w.size());
  std::iota(order.begin(), order.end(), 0);
  LinN out(f);
  do {
    Scalar coef = f.one();
    for (std::size_t x = 0; x < order.size(); ++x)
      for (std::size_t y = x + 1; y < order.size(); ++y)
        if (order[x] > order[y]) coef *= q[w[order[x]]][w[order[y]]];
    std::vector<std::size_t> u;
    for (auto i : order) u.push_back(w[i]);
    out.add(path_at_identity(c, u), coef);
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

// Rank of the degree-n symmetrizer from the permutation sums alone.
inline std::size_t shuffle_rank(const Couple& c, std::size_t n) {
  KeyIndex<TensorKey> idx;
  std::vector<LinN> images;
  for (const auto& w : words(c.theta(), n)) {
    images.push_back(shuffle_oracle(c, w));
    for (const auto& [k, s] : images.back()) idx.insert(k);
  }
  std::vector<SparseVector> rows;
  for (const auto& z : images) rows.push_back(to_sparse(z, idx));
  return Subspace::span(c.field(), idx.size(), rows).dim();
}

// Gram entry on words at the identity: sum over permutations pi with
// u o pi = w of prod over inversions of q_{later, earlier}.
inline Scalar shuffle_gram(const DiagonalData& d, Field f, const std::vector<std::size_t>& w,
                           const std::vector<std::size_t>& u) {
  std::vector<std::size_t> order(u.size());
  std::iota(order.begin(), order.end(), 0);
  Scalar total = f.zero();
  do {
    bool match = true;
    for (std::size_t k = 0; k < order.size() && match; ++k) match = u[order[k]] == w[k];
    if (!match) continue;
    Scalar c = f.one();
    for (std::size_t x = 0; x < order.size(); ++x)
      for (std::size_t y = x + 1; y < order.size(); ++y)
        if (order[x] > order[y]) c *= d.q[u[order[x]]][u[order[y]]];
    total += c;
  } while (std::next_permutation(order.begin(), order.end()));
  return total;
}

inline Scalar q_factorial(Scalar q, std::size_t n) {
  const Field f = q.field();
  Scalar out = f.one(), power = f.one(), bracket = f.zero();
  for (std::size_t k = 1; k <= n; ++k) {
    bracket += power;
    power *= q;
    out *= bracket;
  }
  return out;
}

// Coefficients of 1 / ((1-t)^2 (1-t^2)).
inline std::vector<std::size_t> pbw_a2(std::size_t d) {
  std::vector<std::size_t> out;
  for (std::size_t n = 0; n <= d; ++n) {
    std::size_t c = 0;
    for (std::size_t k = 0; 2 * k <= n; ++k) c += n - 2 * k + 1;
    out.push_back(c);
  }
  return out;
}

// Free-model labels to quotient-model labels, through M^{(x)n}.
struct Iso {
  const FreeModel& fm;
  const QuotientModel& qm;
  KeyIndex<Key> h, m;

  Iso(const FreeModel& f, const QuotientModel& q)
      : fm(f), qm(q), h(f.couple().hopf().basis()), m(f.couple().basis()) {}

  Lin operator()(std::size_t n, const Lin& x) const {
    Lin out(x.field());
    for (const auto& [k, c] : x) {
      if (n == 0) {
        out.add(Key{static_cast<std::int64_t>(h.at(k))}, c);
        continue;
      }
      LinN t(x.field());
      for (const auto& [tk, s] : fm.lift(n, k)) {
        TensorKey u;
        for (const auto& f : tk) u.push_back(Key{static_cast<std::int64_t>(m.at(f))});
        t.add(u, s);
      }
      out += qm.project(n, t).scaled(c);
    }
    return out;
  }

  Lin2 operator()(std::size_t a, std::size_t b, const Lin2& x) const {
    Lin2 out(x.field());
    for (const auto& [k, c] : x)
      out.add(tensor((*this)(a, Lin::basis(x.field(), k.first)), (*this)(b, Lin::basis(x.field(), k.second))), c);
    return out;
  }
};

inline std::string describe(const char* law, std::size_t n, const Key& x) {
  std::ostringstream s;
  s << law << " at degree " << n << ", label (";
  for (std::size_t i = 0; i < x.size(); ++i) s << (i ? "," : "") << x[i];
  s << ")";
  return s.str();
}

// Counit and coassociativity up to degree dmax, the antipode convolution up to
// degree smax. Returns the first failure, empty when all hold.
inline std::string hopf_law_failure(const TensorModel& t, std::size_t dmax, std::size_t smax, bool reduced) {
  const Field f = t.field();
  for (std::size_t n = 0; n <= dmax; ++n)
    for (const auto& x : reduced ? t.reduced_basis(n) : t.basis(n)) {
      const Lin ex = Lin::basis(f, x);
      Lin left_unit(f), right_unit(f);
      for (const auto& [k, c] : t.coproduct_block(n, x, 0)) left_unit.add(k.second, c * t.counit(0, k.first));
      for (const auto& [k, c] : t.coproduct_block(n, x, n)) right_unit.add(k.first, c * t.counit(0, k.second));
      if (left_unit != ex) return describe("left counit", n, x);
      if (right_unit != ex) return describe("right counit", n, x);
      if (n <= smax) {
        Lin conv(f);
        for (std::size_t i = 0; i <= n; ++i)
          for (const auto& [k, c] : t.coproduct_block(n, x, i))
            conv.add(t.multiply(i, t.antipode(i, k.first), n - i, Lin::basis(f, k.second)), c);
        if (conv != t.couple().hopf().unit().scaled(t.counit(n, x))) return describe("antipode convolution", n, x);
      }
      for (std::size_t a = 0; a <= n; ++a)
        for (std::size_t b = 0; a + b <= n; ++b) {
          // (a,b,c) split off left first, against splitting (a+b, c) then a.
          LinN right = t.coproduct_component(n, x, {a, b, n - a - b});
          LinN left(f);
          for (const auto& [k, c] : t.coproduct_block(n, x, a + b))
            for (const auto& [k2, c2] : t.coproduct_block(a + b, k.first, a))
              left.add({k2.first, k2.second, k.second}, c * c2);
          if (left != right) return describe("coassociativity", n, x);
        }
    }
  return {};
}

// Free and quotient models of a finite diagonal couple agree through Iso on
// products, coproducts and antipodes up to degree dmax. Returns the first
// failure, empty when all hold.
inline std::string model_agreement_failure(const Couple& c, std::size_t dmax) {
  const Field f = c.field();
  FreeModel fm(c);
  QuotientModel qm(c);
  Iso iso(fm, qm);
  for (std::size_t n = 0; n <= dmax; ++n) {
    const auto fb = fm.basis(n);
    if (fb.size() != qm.basis(n).size()) return "component sizes differ at degree " + std::to_string(n);
    std::vector<SparseVector> rows;
    KeyIndex<Key> qi(qm.basis(n));
    for (const auto& x : fb) rows.push_back(to_sparse(iso(n, Lin::basis(f, x)), qi));
    if (Subspace::span(f, qi.size(), rows).dim() != fb.size()) return "not bijective at degree " + std::to_string(n);
    for (const auto& x : fb) {
      const Lin ex = Lin::basis(f, x), qx = iso(n, ex);
      if (iso(n, fm.antipode(n, x)) != qm.antipode(n, qx)) return describe("antipode", n, x);
      for (std::size_t i = 0; i <= n; ++i) {
        const Lin2 fb2 = fm.coproduct_block(n, x, i);
        if (fb2 != fm.generic_coproduct_block(n, x, i)) return describe("generic coproduct", n, x);
        if (iso(i, n - i, fb2) != qm.coproduct_block(n, qx, i)) return describe("coproduct", n, x);
      }
      for (std::size_t b = 0; n + b <= dmax; ++b)
        for (const auto& y : fm.basis(b))
          if (iso(n + b, fm.multiply(n, x, b, y)) != qm.multiply(n, qx, b, iso(b, Lin::basis(f, y))))
            return describe("product", n, x);
    }
  }
  return {};
}

}  // namespace fixtures
