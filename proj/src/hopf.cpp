#include "qsym/hopf.hpp"

#include <sstream>

namespace qsym {

const CheckResult& ValidationReport::at(std::string_view name) const {
  for (const auto& c : checks)
    if (c.name == name) return c;
  throw std::out_of_range("no check named " + std::string(name));
}

StructureConstants::StructureConstants(Field f, std::size_t d)
    : field(f),
      dim(d),
      mult(d, std::vector<SparseVector>(d, SparseVector(f))),
      unit(f),
      comult(d),
      counit(d, f.zero()),
      antipode(f, d, d) {}

namespace {

std::int64_t reduce_mod(std::int64_t x, std::int64_t n) {
  if (n == 0) return x;
  std::int64_t r = x % n;
  return r < 0 ? r + n : r;
}

Lin from_vector(const SparseVector& v) {
  Lin out(v.field());
  for (const auto& [i, s] : v) out.add(Key{static_cast<std::int64_t>(i)}, s);
  return out;
}

}  // namespace

HopfAlgebra HopfAlgebra::from_structure_constants(StructureConstants sc) {
  if (sc.mult.size() != sc.dim || sc.comult.size() != sc.dim || sc.counit.size() != sc.dim ||
      sc.antipode.rows() != sc.dim || sc.antipode.cols() != sc.dim)
    throw InvalidInput("structure constants have inconsistent sizes");
  for (const auto& row : sc.mult)
    if (row.size() != sc.dim) throw InvalidInput("multiplication table is not square");
  HopfAlgebra h;
  h.backend_ = Backend::structure_constants;
  h.field_ = sc.field;
  h.sc_ = std::make_shared<const StructureConstants>(std::move(sc));
  return h;
}

HopfAlgebra HopfAlgebra::abelian_group(Field f, std::vector<std::int64_t> moduli) {
  for (auto n : moduli)
    if (n < 0) throw InvalidInput("group moduli must be non-negative");
  HopfAlgebra h;
  h.backend_ = Backend::abelian_group;
  h.field_ = f;
  h.moduli_ = std::move(moduli);
  return h;
}

bool HopfAlgebra::is_finite() const {
  if (backend_ == Backend::structure_constants) return true;
  for (auto n : moduli_)
    if (n == 0) return false;
  return true;
}

std::size_t HopfAlgebra::dim() const {
  if (backend_ == Backend::structure_constants) return sc_->dim;
  if (!is_finite()) throw std::logic_error("infinite group algebra has no finite dimension");
  std::size_t d = 1;
  for (auto n : moduli_) d *= static_cast<std::size_t>(n);
  return d;
}

std::vector<Key> HopfAlgebra::basis() const {
  if (!is_finite()) throw std::logic_error("basis of an infinite group algebra requested");
  return window(0);
}

std::vector<Key> HopfAlgebra::window(std::int64_t radius) const {
  std::vector<Key> out;
  if (backend_ == Backend::structure_constants) {
    for (std::size_t i = 0; i < sc_->dim; ++i) out.push_back(Key{static_cast<std::int64_t>(i)});
    return out;
  }
  out.push_back(Key{});
  for (auto n : moduli_) {
    std::int64_t lo = n == 0 ? -radius : 0, hi = n == 0 ? radius : n - 1;
    std::vector<Key> next;
    for (const auto& k : out)
      for (std::int64_t x = lo; x <= hi; ++x) {
        Key e = k;
        e.push_back(x);
        next.push_back(std::move(e));
      }
    out = std::move(next);
  }
  return out;
}

void HopfAlgebra::require_key(const Key& k) const {
  if (backend_ == Backend::structure_constants) {
    if (k.size() != 1 || k[0] < 0 || static_cast<std::size_t>(k[0]) >= sc_->dim)
      throw DimensionMismatch("basis label " + key_string(k) + " outside structure-constant basis");
  } else {
    if (k.size() != moduli_.size()) throw DimensionMismatch("group element " + key_string(k) + " has wrong rank");
    for (std::size_t i = 0; i < k.size(); ++i)
      if (moduli_[i] != 0 && (k[i] < 0 || k[i] >= moduli_[i]))
        throw DimensionMismatch("group element " + key_string(k) + " is not reduced");
  }
}

Key HopfAlgebra::reduce(Key g) const {
  if (g.size() != moduli_.size()) throw DimensionMismatch("group element has wrong rank");
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = reduce_mod(g[i], moduli_[i]);
  return g;
}

Key HopfAlgebra::compose(const Key& a, const Key& b) const {
  if (a.size() != moduli_.size() || b.size() != moduli_.size()) throw DimensionMismatch("group element has wrong rank");
  Key c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = reduce_mod(a[i] + b[i], moduli_[i]);
  return c;
}

Key HopfAlgebra::invert(const Key& a) const {
  Key c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = -a[i];
  return reduce(std::move(c));
}

const StructureConstants& HopfAlgebra::structure() const {
  if (!sc_) throw std::logic_error("lazy group algebra has no structure constants; materialize first");
  return *sc_;
}

Lin HopfAlgebra::unit() const {
  if (backend_ == Backend::abelian_group) return Lin::basis(field_, identity());
  return from_vector(sc_->unit);
}

Lin HopfAlgebra::multiply(const Key& a, const Key& b) const {
  require_key(a);
  require_key(b);
  if (backend_ == Backend::abelian_group) return Lin::basis(field_, compose(a, b));
  return from_vector(sc_->mult[a[0]][b[0]]);
}

Lin HopfAlgebra::multiply(const Lin& a, const Lin& b) const {
  Lin out(field_);
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b) out.add(multiply(ka, kb), ca * cb);
  return out;
}

Lin2 HopfAlgebra::comultiply(const Key& a) const {
  require_key(a);
  Lin2 out(field_);
  if (backend_ == Backend::abelian_group) {
    out.add({a, a}, field_.one());
    return out;
  }
  for (const auto& [j, k, c] : sc_->comult[a[0]])
    out.add({Key{static_cast<std::int64_t>(j)}, Key{static_cast<std::int64_t>(k)}}, c);
  return out;
}

Lin2 HopfAlgebra::comultiply(const Lin& a) const {
  Lin2 out(field_);
  for (const auto& [k, c] : a) out.add(comultiply(k), c);
  return out;
}

Scalar HopfAlgebra::counit(const Key& a) const {
  require_key(a);
  if (backend_ == Backend::abelian_group) return field_.one();
  return sc_->counit[a[0]];
}

Scalar HopfAlgebra::counit(const Lin& a) const {
  Scalar s = field_.zero();
  for (const auto& [k, c] : a) s += c * counit(k);
  return s;
}

Lin HopfAlgebra::antipode(const Key& a) const {
  require_key(a);
  if (backend_ == Backend::abelian_group) return Lin::basis(field_, invert(a));
  return from_vector(sc_->antipode.row(a[0]));
}

Lin HopfAlgebra::antipode(const Lin& a) const {
  Lin out(field_);
  for (const auto& [k, c] : a) out.add(antipode(k), c);
  return out;
}

HopfAlgebra HopfAlgebra::materialize() const {
  if (backend_ == Backend::structure_constants) return *this;
  const auto keys = basis();
  KeyIndex<Key> index(keys);
  StructureConstants sc(field_, keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    for (std::size_t j = 0; j < keys.size(); ++j)
      sc.mult[i][j] = SparseVector::unit(field_, index.at(compose(keys[i], keys[j])));
    sc.comult[i].emplace_back(i, i, field_.one());
    sc.counit[i] = field_.one();
    sc.antipode.set(i, index.at(invert(keys[i])), field_.one());
  }
  sc.unit = SparseVector::unit(field_, index.at(identity()));
  return from_structure_constants(std::move(sc));
}

bool operator==(const HopfAlgebra& a, const HopfAlgebra& b) {
  if (a.backend_ != b.backend_ || !(a.field_ == b.field_)) return false;
  if (a.backend_ == HopfAlgebra::Backend::abelian_group) return a.moduli_ == b.moduli_;
  if (a.sc_ == b.sc_) return true;
  const auto &x = *a.sc_, &y = *b.sc_;
  return x.dim == y.dim && x.mult == y.mult && x.unit == y.unit && x.comult == y.comult && x.counit == y.counit &&
         x.antipode == y.antipode;
}

HopfAlgebra build_group_algebra(const std::vector<std::vector<std::size_t>>& table, Field f) {
  const std::size_t n = table.size();
  if (n == 0) throw GroupTableError("empty multiplication table");
  for (std::size_t i = 0; i < n; ++i) {
    if (table[i].size() != n) throw GroupTableError("row " + std::to_string(i) + " of the table has wrong length");
    for (std::size_t j = 0; j < n; ++j)
      if (table[i][j] >= n)
        throw GroupTableError("product (" + std::to_string(i) + ", " + std::to_string(j) + ") is out of range");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (table[table[i][j]][k] != table[i][table[j][k]])
          throw GroupTableError("associativity fails at (" + std::to_string(i) + ", " + std::to_string(j) + ", " +
                                std::to_string(k) + ")");
  std::size_t e = n;
  for (std::size_t c = 0; c < n && e == n; ++c) {
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j) ok = table[c][j] == j && table[j][c] == j;
    if (ok) e = c;
  }
  if (e == n) throw GroupTableError("table has no identity element");
  std::vector<std::size_t> inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      if (table[i][j] == e && table[j][i] == e) inv[i] = j;
    if (inv[i] == n) throw GroupTableError("element " + std::to_string(i) + " has no inverse");
  }
  StructureConstants sc(f, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) sc.mult[i][j] = SparseVector::unit(f, table[i][j]);
    sc.comult[i].emplace_back(i, i, f.one());
    sc.counit[i] = f.one();
    sc.antipode.set(i, inv[i], f.one());
  }
  sc.unit = SparseVector::unit(f, e);
  return HopfAlgebra::from_structure_constants(std::move(sc));
}

HopfAlgebra build_group_algebra(const std::vector<std::int64_t>& moduli, Field f) {
  return HopfAlgebra::abelian_group(f, moduli);
}

namespace {

using Lin3 = LinN;

Lin2 multiply2(const HopfAlgebra& h, const Lin2& a, const Lin2& b) {
  Lin2 out(h.field());
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b) out.add(tensor(h.multiply(ka.first, kb.first), h.multiply(ka.second, kb.second)), ca * cb);
  return out;
}

Lin3 coassoc_left(const HopfAlgebra& h, const Key& a) {
  Lin3 out(h.field());
  for (const auto& [k, c] : h.comultiply(a))
    for (const auto& [k2, c2] : h.comultiply(k.first)) out.add({k2.first, k2.second, k.second}, c * c2);
  return out;
}

Lin3 coassoc_right(const HopfAlgebra& h, const Key& a) {
  Lin3 out(h.field());
  for (const auto& [k, c] : h.comultiply(a))
    for (const auto& [k2, c2] : h.comultiply(k.second)) out.add({k.first, k2.first, k2.second}, c * c2);
  return out;
}

std::string keys_text(std::initializer_list<const Key*> ks) {
  std::string s;
  for (const Key* k : ks) s += (s.empty() ? "" : " ") + key_string(*k);
  return s;
}

}  // namespace

ValidationReport validate_hopf(const HopfAlgebra& h, std::int64_t radius) {
  ValidationReport rep;
  rep.subject = "hopf algebra";
  const Field f = h.field();
  const auto keys = h.window(radius);
  const Lin one = h.unit();

  auto& assoc = rep.add("associativity");
  for (const auto& a : keys)
    for (const auto& b : keys)
      for (const auto& c : keys) {
        Lin l = h.multiply(h.multiply(a, b), Lin::basis(f, c));
        Lin r = h.multiply(Lin::basis(f, a), h.multiply(b, c));
        assoc.record(l == r, [&] { return keys_text({&a, &b, &c}); });
      }

  auto& unit = rep.add("unit");
  for (const auto& a : keys) {
    Lin ea = Lin::basis(f, a);
    unit.record(h.multiply(one, ea) == ea && h.multiply(ea, one) == ea, [&] { return keys_text({&a}); });
  }

  auto& coassoc = rep.add("coassociativity");
  for (const auto& a : keys) coassoc.record(coassoc_left(h, a) == coassoc_right(h, a), [&] { return keys_text({&a}); });

  auto& counit = rep.add("counit");
  for (const auto& a : keys) {
    Lin l(f), r(f);
    for (const auto& [k, c] : h.comultiply(a)) {
      l.add(k.second, c * h.counit(k.first));
      r.add(k.first, c * h.counit(k.second));
    }
    Lin ea = Lin::basis(f, a);
    counit.record(l == ea && r == ea, [&] { return keys_text({&a}); });
  }

  auto& delta_alg = rep.add("comultiplication_multiplicative");
  delta_alg.record(h.comultiply(one) == tensor(one, one), [] { return std::string("(unit)"); });
  for (const auto& a : keys)
    for (const auto& b : keys)
      delta_alg.record(h.comultiply(h.multiply(a, b)) == multiply2(h, h.comultiply(a), h.comultiply(b)),
                       [&] { return keys_text({&a, &b}); });

  auto& eps_alg = rep.add("counit_multiplicative");
  eps_alg.record(h.counit(one).is_one(), [] { return std::string("(unit)"); });
  for (const auto& a : keys)
    for (const auto& b : keys)
      eps_alg.record(h.counit(h.multiply(a, b)) == h.counit(a) * h.counit(b), [&] { return keys_text({&a, &b}); });

  auto& anti = rep.add("antipode");
  for (const auto& a : keys) {
    Lin l(f), r(f);
    for (const auto& [k, c] : h.comultiply(a)) {
      l.add(h.multiply(h.antipode(k.first), Lin::basis(f, k.second)), c);
      r.add(h.multiply(Lin::basis(f, k.first), h.antipode(k.second)), c);
    }
    Lin expect = one.scaled(h.counit(a));
    anti.record(l == expect && r == expect, [&] { return keys_text({&a}); });
  }
  return rep;
}

HopfPairing HopfPairing::from_matrix(Matrix values) {
  Field f = values.field();
  return HopfPairing(f, std::move(values));
}

HopfPairing HopfPairing::bicharacter(Field f, std::vector<std::vector<Scalar>> q) {
  for (std::size_t k = 0; k < q.size(); ++k) {
    if (!q.empty() && q[k].size() != q[0].size()) throw InvalidInput("bicharacter matrix is ragged");
    for (const auto& s : q[k]) {
      if (!(s.field() == f)) throw FieldMismatch("bicharacter entry over " + s.field().name());
      if (s.is_zero()) throw InvalidInput("bicharacter entries must be nonzero");
    }
  }
  HopfPairing p(f, Matrix(f, 0, 0));
  p.bicharacter_ = true;
  p.q_ = std::move(q);
  return p;
}

Scalar HopfPairing::bicharacter_value(const Key& a, const Key& b) const {
  const std::size_t cols = q_.empty() ? 0 : q_[0].size();
  if (a.size() != q_.size() || b.size() != cols) throw DimensionMismatch("group element rank does not match bicharacter");
  Scalar s = field_.one();
  for (std::size_t k = 0; k < a.size(); ++k)
    for (std::size_t l = 0; l < b.size(); ++l)
      if (a[k] != 0 && b[l] != 0) s *= q_[k][l].pow(a[k] * b[l]);
  return s;
}

Scalar HopfPairing::operator()(const Key& h, const Key& b) const {
  if (bicharacter_) return bicharacter_value(h, b);
  if (h.size() != 1 || b.size() != 1 || h[0] < 0 || b[0] < 0 || static_cast<std::size_t>(h[0]) >= values_.rows() ||
      static_cast<std::size_t>(b[0]) >= values_.cols())
    throw DimensionMismatch("pairing argument outside the value matrix");
  return values_.get(h[0], b[0]);
}

Scalar HopfPairing::operator()(const Lin& h, const Lin& b) const {
  Scalar s = field_.zero();
  for (const auto& [kh, ch] : h)
    for (const auto& [kb, cb] : b) s += ch * cb * (*this)(kh, kb);
  return s;
}

HopfPairing HopfPairing::transposed() const {
  if (!bicharacter_) return HopfPairing(field_, values_.transpose());
  std::vector<std::vector<Scalar>> t(q_.empty() ? 0 : q_[0].size(), std::vector<Scalar>(q_.size()));
  for (std::size_t k = 0; k < q_.size(); ++k)
    for (std::size_t l = 0; l < q_[k].size(); ++l) t[l][k] = q_[k][l];
  return bicharacter(field_, std::move(t));
}

bool operator==(const HopfPairing& a, const HopfPairing& b) {
  return a.field_ == b.field_ && a.bicharacter_ == b.bicharacter_ && a.values_ == b.values_ && a.q_ == b.q_;
}

HopfPairing counit_pairing(const HopfAlgebra& h, const HopfAlgebra& b) {
  const auto hk = h.basis(), bk = b.basis();
  Matrix m(h.field(), hk.size(), bk.size());
  for (std::size_t i = 0; i < hk.size(); ++i)
    for (std::size_t j = 0; j < bk.size(); ++j) m.set(i, j, h.counit(hk[i]) * b.counit(bk[j]));
  return HopfPairing::from_matrix(std::move(m));
}

HopfPairing transpose_pairing(const HopfPairing& phi) { return phi.transposed(); }

ValidationReport validate_hopf_pairing(const HopfPairing& phi, const HopfAlgebra& h, const HopfAlgebra& b,
                                       std::int64_t radius) {
  if (!(phi.field() == h.field()) || !(phi.field() == b.field()))
    throw FieldMismatch("pairing and Hopf algebras live over different fields");
  ValidationReport rep;
  rep.subject = "hopf pairing";
  const Field f = phi.field();
  const auto hk = h.window(radius), bk = b.window(radius);

  if (phi.is_bicharacter()) {
    auto& wd = rep.add("bicharacter_well_defined");
    const auto& q = phi.q();
    if (q.size() != h.rank() || (!q.empty() && q[0].size() != b.rank())) {
      wd.record(false, [] { return std::string("bicharacter shape does not match group ranks"); });
      return rep;
    }
    for (std::size_t k = 0; k < q.size(); ++k)
      for (std::size_t l = 0; l < q[k].size(); ++l) {
        bool ok = (h.moduli()[k] == 0 || q[k][l].pow(h.moduli()[k]).is_one()) &&
                  (b.moduli()[l] == 0 || q[k][l].pow(b.moduli()[l]).is_one());
        wd.record(ok, [&] { return "q[" + std::to_string(k) + "][" + std::to_string(l) + "]"; });
      }
  }

  auto& ul = rep.add("unit_left");
  const Lin h1 = h.unit(), b1 = b.unit();
  for (const auto& y : bk) ul.record(phi(h1, Lin::basis(f, y)) == b.counit(y), [&] { return keys_text({&y}); });

  auto& ur = rep.add("unit_right");
  for (const auto& x : hk) ur.record(phi(Lin::basis(f, x), b1) == h.counit(x), [&] { return keys_text({&x}); });

  auto& pr = rep.add("product_right");
  for (const auto& x : hk) {
    const Lin2 dx = h.comultiply(x);
    for (const auto& y : bk)
      for (const auto& z : bk) {
        Scalar rhs = f.zero();
        for (const auto& [k, c] : dx) rhs += c * phi(k.first, y) * phi(k.second, z);
        pr.record(phi(Lin::basis(f, x), b.multiply(y, z)) == rhs, [&] { return keys_text({&x, &y, &z}); });
      }
  }

  auto& pl = rep.add("product_left");
  for (const auto& z : bk) {
    const Lin2 dz = b.comultiply(z);
    for (const auto& x : hk)
      for (const auto& y : hk) {
        Scalar rhs = f.zero();
        for (const auto& [k, c] : dz) rhs += c * phi(x, k.first) * phi(y, k.second);
        pl.record(phi(h.multiply(x, y), Lin::basis(f, z)) == rhs, [&] { return keys_text({&x, &y, &z}); });
      }
  }

  auto& an = rep.add("antipode");
  for (const auto& x : hk)
    for (const auto& y : bk)
      an.record(phi(h.antipode(x), Lin::basis(f, y)) == phi(Lin::basis(f, x), b.antipode(y)),
                [&] { return keys_text({&x, &y}); });
  return rep;
}

NondegeneracyResult nondegeneracy(const HopfPairing& phi, const HopfAlgebra& h, const HopfAlgebra& b, Side side,
                                  std::optional<std::int64_t> radius) {
  if ((!h.is_finite() || !b.is_finite()) && !radius)
    throw InvalidInput("non-degeneracy on an infinite group algebra needs a bound");
  const auto hk = h.window(radius.value_or(0)), bk = b.window(radius.value_or(0));
  Matrix v(phi.field(), hk.size(), bk.size());
  for (std::size_t i = 0; i < hk.size(); ++i)
    for (std::size_t j = 0; j < bk.size(); ++j) v.set(i, j, phi(hk[i], bk[j]));
  NondegeneracyResult out{false, Subspace(phi.field(), 0), {}};
  if (side == Side::left) {
    out.radical = kernel(v);
    out.keys = bk;
  } else {
    out.radical = kernel(v.transpose());
    out.keys = hk;
  }
  out.nondegenerate = out.radical.dim() == 0;
  return out;
}

}  // namespace qsym
