#include <doctest.h>

#include <random>

#include "qsym/linalg.hpp"

using namespace qsym;

namespace {

// Plain O(n^3) elimination mod p on machine integers; shares no code with the library.
std::size_t naive_rank_mod_p(std::vector<std::vector<std::uint64_t>> a, std::uint64_t p) {
  auto inv = [p](std::uint64_t x) {
    std::uint64_t r = 1, b = x % p, e = p - 2;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  };
  std::size_t rank = 0;
  std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t piv = rank;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[rank]);
    std::uint64_t iv = inv(a[rank][c]);
    for (auto& x : a[rank]) x = x * iv % p;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == rank || a[r][c] == 0) continue;
      std::uint64_t f = a[r][c];
      for (std::size_t k = 0; k < cols; ++k) a[r][k] = (a[r][k] + p * p - f * a[rank][k] % p) % p;
    }
    ++rank;
  }
  return rank;
}

Subspace span_ints(Field f, std::size_t ambient, const std::vector<std::vector<std::int64_t>>& rows) {
  return row_space(Matrix::from_ints(f, rows));
}

}  // namespace

TEST_CASE("rank examples") {
  const Field q = Field::rationals();
  CHECK(rank(Matrix::identity(q, 2)) == 2);
  CHECK(rank(Matrix::from_ints(q, {{1, 1}})) == 1);
  CHECK(rank(Matrix::from_ints(Field::prime(5), {{1, 2}, {2, 4}})) == 1);
  CHECK(rank(Matrix::from_ints(q, {{1, 2}, {2, 5}})) == 2);
}

TEST_CASE("kernel examples") {
  const Field q = Field::rationals();
  Subspace k = kernel(Matrix::from_ints(q, {{1, 1}}));
  REQUIRE(k.dim() == 1);
  CHECK(k.basis()[0].get(0) == q.one());
  CHECK(k.basis()[0].get(1) == q.from_int(-1));
  CHECK(kernel(Matrix::from_ints(q, {{2, 1}, {1, 1}})).dim() == 0);
  CHECK(kernel(Matrix(q, 3, 3)) == Subspace::full(q, 3));
}

TEST_CASE("intersect examples") {
  const Field q = Field::rationals();
  Subspace a = span_ints(q, 3, {{1, 2, 0}, {0, 1, 1}});
  CHECK(intersect(a, a) == a);
  CHECK(intersect(span_ints(q, 2, {{1, 0}}), span_ints(q, 2, {{0, 1}})).dim() == 0);
  Subspace e12 = span_ints(q, 3, {{1, 0, 0}, {0, 1, 0}});
  Subspace e23 = span_ints(q, 3, {{0, 1, 0}, {0, 0, 1}});
  CHECK(intersect(e12, e23) == span_ints(q, 3, {{0, 1, 0}}));
  CHECK_THROWS_AS(intersect(e12, Subspace::full(q, 2)), DimensionMismatch);
}

TEST_CASE("preimage examples") {
  const Field q = Field::rationals();
  Matrix f = Matrix::from_ints(q, {{1, 2, 3}, {0, 1, 1}});
  CHECK(preimage(f, Subspace::full(q, 2)) == Subspace::full(q, 3));
  Subspace s = span_ints(q, 3, {{1, 1, 0}});
  CHECK(preimage(Matrix::identity(q, 3), s) == s);
  CHECK(preimage(Matrix(q, 2, 4), Subspace(q, 2)) == Subspace::full(q, 4));
  // x with f x in span{(1,0)}: second row must vanish.
  CHECK(preimage(f, span_ints(q, 2, {{1, 0}})) == kernel(Matrix::from_ints(q, {{0, 1, 1}})));
  CHECK_THROWS_AS(preimage(f, Subspace::full(q, 3)), DimensionMismatch);
}

TEST_CASE("mixed fields are rejected") {
  Matrix m(Field::rationals(), 1, 2);
  CHECK_THROWS_AS(m.set(0, 0, Field::prime(7).one()), FieldMismatch);
  SparseVector v(Field::prime(7));
  v.set(0, Field::prime(7).one());
  CHECK_THROWS_AS(rref(Field::rationals(), 2, {v}), FieldMismatch);
  CHECK_THROWS_AS(Field::prime(5).one() + Field::prime(7).one(), FieldMismatch);
}

TEST_CASE("random matrices over F_p agree with naive elimination; rank-nullity and idempotence") {
  std::mt19937_64 rng(20261019);
  for (std::uint64_t p : {2ULL, 5ULL, 101ULL}) {
    const Field f = Field::prime(p);
    for (int trial = 0; trial < 60; ++trial) {
      std::size_t rows = 1 + rng() % 20, cols = 1 + rng() % 20;
      int density = static_cast<int>(rng() % 100);
      std::vector<std::vector<std::uint64_t>> raw(rows, std::vector<std::uint64_t>(cols, 0));
      Matrix m(f, rows, cols);
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
          if (static_cast<int>(rng() % 100) < density) {
            raw[r][c] = rng() % p;
            m.set(r, c, f.from_int(static_cast<std::int64_t>(raw[r][c])));
          }
      std::size_t rk = rank(m);
      CHECK(rk == naive_rank_mod_p(raw, p));
      Subspace k = kernel(m);
      CHECK(rk + k.dim() == cols);
      for (const auto& v : k.basis()) CHECK(m.apply(v).empty());
      auto once = rref(f, cols, m.row_vectors());
      CHECK(rref(f, cols, once) == once);
      CHECK(rref_sparse(f, cols, m.row_vectors()) == rref_dense(f, cols, m.row_vectors()));
    }
  }
}

TEST_CASE("random rational matrices: rank-nullity, image dimension, preimage membership") {
  std::mt19937_64 rng(7);
  const Field q = Field::rationals();
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t rows = 1 + rng() % 8, cols = 1 + rng() % 8;
    Matrix m(q, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c)
        if (rng() % 3 == 0) m.set(r, c, q.from_fraction(static_cast<std::int64_t>(rng() % 7) - 3, 1 + rng() % 4));
    Subspace k = kernel(m);
    CHECK(rank(m) + k.dim() == cols);
    CHECK(image(m).dim() == rank(m));
    Subspace target = span_ints(q, rows, {std::vector<std::int64_t>(rows, 1)});
    Subspace pre = preimage(m, target);
    for (const auto& v : pre.basis()) CHECK(target.contains(m.apply(v)));
    CHECK(pre.dim() >= k.dim());
    CHECK(intersect(pre, k) == k);
  }
}
