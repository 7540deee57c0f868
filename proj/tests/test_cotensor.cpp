#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "qsym/cotensor.hpp"
#include "oracles.hpp"

using namespace qsym;
using namespace fixtures;

namespace {

using Block = Combination<std::pair<TensorKey, TensorKey>>;

// Delta applied to the left (or right) factor of a block, grouped so that each
// group lies in a cotensor component.
Combination<std::vector<TensorKey>> refine(const Couple& c, const Block& b, std::size_t left_deg,
                                           std::size_t right_deg, bool on_left, std::size_t split) {
  const Field& f = c.field();
  std::map<TensorKey, LinN> groups;
  for (const auto& [ab, a] : b) {
    const TensorKey& fixed = on_left ? ab.second : ab.first;
    const TensorKey& moving = on_left ? ab.first : ab.second;
    groups.try_emplace(fixed, f).first->second.add(moving, a);
  }
  Combination<std::vector<TensorKey>> out(f);
  for (const auto& [fixed, z] : groups) {
    auto blocks = cotensor_comultiply(c, on_left ? left_deg : right_deg, z);
    for (const auto& [xy, a] : blocks.at(split)) {
      if (on_left)
        out.add({xy.first, xy.second, fixed}, a);
      else
        out.add({fixed, xy.first, xy.second}, a);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("cotensor components") {
  const Field q = Field::rationals();
  Couple z2 = regular_couple(build_group_algebra(std::vector<std::vector<std::size_t>>{{0, 1}, {1, 0}}, q));
  CHECK(cotensor_component(z2, 0).space.dim() == 2);
  CHECK(cotensor_component(z2, 1).space.dim() == 2);
  CHECK(cotensor_component(z2, 2).space.dim() == 2);
  Couple s3 = regular_couple(build_group_algebra(s3_table(), q));
  CHECK(cotensor_component(s3, 2).space.dim() == 6);
  CHECK(cotensor_component(s3, 3).space.dim() == 6);

  Couple r1 = build_diagonal_couple(rank_one({2}, q.from_int(-1)), q);
  CHECK(cotensor_component(r1, 2).space.dim() == 2);
  CHECK(cotensor_component(r1, 2, PathScope::from_identity).space.dim() == 1);
  CHECK_THROWS_AS(cotensor_component(s3, 2, PathScope::from_identity), InvalidInput);
  CHECK_THROWS_AS(cotensor_component(s3, 9, PathScope::all, 0, 1000), ResourceLimit);

  Couple lazy = build_diagonal_couple(a2(), q);
  CHECK_THROWS_AS(cotensor_component(lazy, 2), InvalidInput);
  CHECK(cotensor_component(lazy, 3, PathScope::from_identity).space.dim() == 8);
  for (const auto& z : cotensor_component(lazy, 3, PathScope::within_window, 1).elements())
    CHECK(in_cotensor(lazy, 3, z));
}

TEST_CASE("path bases agree with the kernel intersection") {
  const Field f5 = Field::prime(5);
  for (const auto& [d, f] : std::vector<std::pair<DiagonalData, Field>>{
           {rank_one({4}, f5.from_int(2)), f5}, {klein_pair(Field::rationals()), Field::rationals()},
           {rank_one({3}, Field::rationals().one()), Field::rationals()}}) {
    Couple c = build_diagonal_couple(d, f);
    Couple raw = c.materialize();
    KeyIndex<Key> mi(c.basis());
    for (std::size_t n = 0; n <= 3; ++n) {
      auto paths = cotensor_component(c, n);
      auto kern = cotensor_component(raw, n);
      CHECK(paths.space.dim() == kern.space.dim());
      if (n == 0) continue;
      for (const auto& p : paths.elements()) {
        LinN mapped(f);
        for (const auto& [t, a] : p) {
          TensorKey u;
          for (const auto& m : t) u.push_back(Key{static_cast<std::int64_t>(mi.at(m))});
          mapped.add(u, a);
        }
        CHECK(kern.space.contains(to_sparse(mapped, kern.ambient)));
      }
    }
  }
}

TEST_CASE("cotensor comultiplication") {
  const Field q = Field::rationals();
  Couple s3 = regular_couple(build_group_algebra(s3_table(), q));
  Couple lazy = build_diagonal_couple(a2(), q);
  Couple klein = build_diagonal_couple(klein_pair(q), q);

  for (const Couple* c : {&s3, &lazy, &klein}) {
    PathScope scope = c->is_finite() ? PathScope::all : PathScope::within_window;
    for (std::size_t n = 0; n <= 3; ++n) {
      for (const auto& z : cotensor_component(*c, n, scope, 1).elements()) {
        auto blocks = cotensor_comultiply(*c, n, z);
        REQUIRE(blocks.size() == (n == 0 ? 1 : n + 1));
        // counit on the H end factors
        LinN left(q), right(q);
        for (const auto& [ab, a] : blocks.front()) left.add(ab.second, a * c->hopf().counit(ab.first[0]));
        for (const auto& [ab, a] : blocks.back()) right.add(ab.first, a * c->hopf().counit(ab.second[0]));
        CHECK(left == z);
        CHECK(right == z);
        // coassociativity on each multidegree (i, j, k)
        for (std::size_t i = 0; i <= n; ++i)
          for (std::size_t j = 0; i + j <= n; ++j) {
            std::size_t k = n - i - j;
            if (n == 0 && (i || j)) continue;
            std::size_t ij = i + j, jk = j + k;
            Combination<std::vector<TensorKey>> lhs = refine(*c, blocks[n == 0 ? 0 : ij], ij, k, true, i);
            Combination<std::vector<TensorKey>> rhs = refine(*c, blocks[n == 0 ? 0 : i], i, jk, false, j);
            CHECK(lhs == rhs);
          }
      }
    }
  }

  LinN bad = LinN::basis(q, {klein.element({0, 0}, 0), klein.element({0, 0}, 0)});
  CHECK_FALSE(in_cotensor(klein, 2, bad));
  CHECK_THROWS_AS(cotensor_comultiply(klein, 2, bad), NotInComponent);
}

TEST_CASE("symmetrizer matches the permutation sum") {
  const Field q = Field::rationals();
  for (const auto& d : {a2(), klein_pair(q), rank_one({0}, q.from_int(3))}) {
    Couple c = build_diagonal_couple(d, q);
    auto t = make_tensor_model(c);
    const auto& fm = dynamic_cast<const FreeModel&>(*t);
    Symmetrizer omega(t);
    for (std::size_t n = 0; n <= 4; ++n)
      for (const auto& w : words(c.theta(), n)) {
        Key x = fm.word_key(c.hopf().identity(), w);
        if (n == 0) {
          CHECK(omega.apply(0, x) == LinN::basis(q, {x}));
          continue;
        }
        CHECK(omega.apply(n, x) == shuffle_oracle(c, w));
        CHECK(in_cotensor(c, n, omega.apply(n, x)));
      }
  }
}

TEST_CASE("symmetrizer on rank-one examples") {
  const Field q = Field::rationals();
  Couple minus = build_diagonal_couple(rank_one({2}, q.from_int(-1)), q);
  auto tm = make_tensor_model(minus);
  Symmetrizer om(tm);
  const auto& fm = dynamic_cast<const FreeModel&>(*tm);
  Key v2 = fm.word_key({0}, {0, 0});
  CHECK(om.apply(2, v2).empty());
  CHECK(om.apply(1, fm.word_key({0}, {0})) == LinN::basis(q, {minus.element({0}, 0)}));

  Couple one = build_diagonal_couple(rank_one({}, q.one()), q);
  auto t1 = make_tensor_model(one);
  Symmetrizer o1(t1);
  for (std::size_t n = 1; n <= 6; ++n) {
    auto m = o1.matrix(n, t1->basis(n));
    CHECK(rank(m.matrix) == 1);
    auto img = o1.apply(n, t1->basis(n).front());
    REQUIRE(img.size() == 1);
    std::int64_t fact = 1;
    for (std::size_t k = 2; k <= n; ++k) fact *= static_cast<std::int64_t>(k);
    CHECK(img.begin()->second == q.from_int(fact));
  }

  // non-diagonal couples go through the quotient model
  Couple s3 = regular_couple(build_group_algebra(s3_table(), q));
  auto ts = make_tensor_model(s3);
  Symmetrizer os(ts);
  for (std::size_t n = 1; n <= 3; ++n)
    for (const auto& x : ts->basis(n)) CHECK(in_cotensor(s3, n, os.apply(n, x)));
}

TEST_CASE("kernel of the symmetrizer is a two-sided ideal") {
  const Field q = Field::rationals();
  for (const auto& d : {a2(), klein_pair(q)}) {
    Couple c = build_diagonal_couple(d, q);
    auto t = make_tensor_model(c);
    Symmetrizer omega(t);
    std::vector<std::vector<Key>> gens(4);
    gens[0] = c.hopf().window(1);
    for (std::size_t n = 1; n < 4; ++n) gens[n] = t->reduced_basis(n);
    for (std::size_t b = 2; b <= 3; ++b) {
      auto m = omega.matrix(b, gens[b]);
      const Subspace ker = kernel(m.matrix);
      for (const auto& coeffs : ker.basis()) {
        Lin r(q);
        for (const auto& [i, a] : coeffs) r.add(gens[b][i], a);
        CHECK(omega.apply(b, r).empty());
        for (std::size_t a = 0; a + b <= 4; ++a)
          for (std::size_t e = 0; a + b + e <= 4; ++e)
            for (const auto& x : gens[a])
              for (const auto& y : gens[e]) {
                Lin xr = t->multiply(a, Lin::basis(q, x), b, r);
                Lin xry = t->multiply(a + b, xr, e, Lin::basis(q, y));
                CHECK(omega.apply(a + b + e, xry).empty());
              }
      }
    }
  }
}

TEST_CASE("wedge products of the coradical") {
  const Field q = Field::rationals();
  std::vector<Couple> couples = {build_diagonal_couple(rank_one({2}, q.from_int(-1)), q),
                                 regular_couple(build_group_algebra(s3_table(), q)),
                                 build_diagonal_couple(a2(), q)};
  for (const auto& c : couples) {
    GradedSubspace all = cotensor_truncation(c, 3, 1);
    auto cd = graded_dims(all);
    GradedSubspace coradical{{all.spans[0]}};
    GradedSubspace zero;
    auto hh = wedge(c, all, coradical, coradical);
    CHECK(graded_dims(hh) == std::vector<std::size_t>{cd[0], cd[1], 0, 0});
    CHECK(graded_dims(wedge(c, all, zero, zero)) == std::vector<std::size_t>{0, 0, 0, 0});
    CHECK(graded_dims(wedge(c, all, all, all)) == cd);
    // H wedge (H + M) reaches degree two
    GradedSubspace first{{all.spans[0], all.spans[1]}};
    CHECK(graded_dims(wedge(c, all, coradical, first)) == std::vector<std::size_t>{cd[0], cd[1], cd[2], 0});
  }
  auto lazy = build_diagonal_couple(a2(), q);
  auto dims = graded_dims(cotensor_truncation(lazy, 2, 1));
  CHECK(dims[0] == 9);
  CHECK(dims[1] == 12);
}
