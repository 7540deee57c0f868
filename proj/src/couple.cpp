#include "qsym/couple.hpp"

namespace qsym {

RawBimodule::RawBimodule(Field f, std::size_t m, std::size_t h)
    : field(f),
      dim(m),
      hopf_dim(h),
      lact(h, std::vector<SparseVector>(m, SparseVector(f))),
      ract(m, std::vector<SparseVector>(h, SparseVector(f))),
      lcoact(m),
      rcoact(m) {}

namespace {

Key index_key(std::size_t i) { return Key{static_cast<std::int64_t>(i)}; }

Lin from_vector(const SparseVector& v) {
  Lin out(v.field());
  for (const auto& [i, s] : v) out.add(index_key(i), s);
  return out;
}

// g equals e_k reduced mod the moduli.
bool is_standard_generator(const Key& g, std::size_t k, const std::vector<std::int64_t>& moduli) {
  if (g.size() != moduli.size()) return false;
  for (std::size_t t = 0; t < g.size(); ++t) {
    std::int64_t e = (t == k && moduli[t] != 1) ? 1 : 0;
    if (g[t] != e) return false;
  }
  return true;
}

}  // namespace

Couple Couple::from_raw(HopfAlgebra h, RawBimodule m) {
  if (h.backend() != HopfAlgebra::Backend::structure_constants)
    throw InvalidInput("raw bimodules need a structure-constant Hopf algebra");
  if (!(h.field() == m.field)) throw FieldMismatch("bimodule and Hopf algebra over different fields");
  if (m.hopf_dim != h.dim() || m.lact.size() != h.dim() || m.ract.size() != m.dim || m.lcoact.size() != m.dim ||
      m.rcoact.size() != m.dim)
    throw DimensionMismatch("bimodule structure constants have inconsistent sizes");
  for (const auto& row : m.lact)
    if (row.size() != m.dim) throw DimensionMismatch("left action table has wrong shape");
  for (const auto& row : m.ract)
    if (row.size() != m.hopf_dim) throw DimensionMismatch("right action table has wrong shape");
  Couple c(std::move(h));
  c.kind_ = Kind::raw;
  c.raw_ = std::make_shared<const RawBimodule>(std::move(m));
  return c;
}

std::size_t Couple::dim() const {
  if (kind_ == Kind::raw) return raw_->dim;
  return h_.dim() * theta();
}

std::vector<Key> Couple::basis() const {
  if (!is_finite()) throw std::logic_error("basis of an infinite couple requested");
  return window(0);
}

std::vector<Key> Couple::window(std::int64_t radius) const {
  std::vector<Key> out;
  if (kind_ == Kind::raw) {
    for (std::size_t i = 0; i < raw_->dim; ++i) out.push_back(index_key(i));
    return out;
  }
  for (const auto& g : h_.window(radius))
    for (std::size_t i = 0; i < theta(); ++i) out.push_back(element(g, i));
  return out;
}

const DiagonalData& Couple::diagonal() const {
  if (kind_ != Kind::diagonal) throw std::logic_error("couple has no diagonal data");
  return diag_;
}

const RawBimodule& Couple::raw() const {
  if (kind_ != Kind::raw) throw std::logic_error("couple is not in raw form; materialize first");
  return *raw_;
}

Scalar Couple::character(std::size_t i, const Key& g) const {
  Scalar s = field().one();
  for (std::size_t k = 0; k < g.size(); ++k)
    if (g[k] != 0) s *= chi_.at(i).at(k).pow(g[k]);
  return s;
}

Key Couple::element(const Key& g, std::size_t letter) const {
  Key m = g;
  m.push_back(static_cast<std::int64_t>(letter));
  return m;
}

Key Couple::group_part(const Key& m) const { return Key(m.begin(), m.end() - 1); }

std::size_t Couple::letter(const Key& m) const { return static_cast<std::size_t>(m.back()); }

void Couple::require_key(const Key& m) const {
  if (kind_ == Kind::raw) {
    if (m.size() != 1 || m[0] < 0 || static_cast<std::size_t>(m[0]) >= raw_->dim)
      throw DimensionMismatch("module label " + key_string(m) + " outside the basis");
    return;
  }
  if (m.size() != h_.rank() + 1 || m.back() < 0 || static_cast<std::size_t>(m.back()) >= theta())
    throw DimensionMismatch("module label " + key_string(m) + " is not (group, letter)");
}

Lin Couple::left_act(const Key& h, const Key& m) const {
  require_key(m);
  if (kind_ == Kind::raw) {
    h_.counit(h);  // range check
    return from_vector(raw_->lact[h[0]][m[0]]);
  }
  return Lin::basis(field(), element(h_.compose(h, group_part(m)), letter(m)));
}

Lin Couple::right_act(const Key& m, const Key& h) const {
  require_key(m);
  if (kind_ == Kind::raw) {
    h_.counit(h);
    return from_vector(raw_->ract[m[0]][h[0]]);
  }
  return Lin::term(element(h_.compose(group_part(m), h), letter(m)), character(letter(m), h));
}

Lin Couple::left_act(const Lin& h, const Lin& m) const {
  Lin out(field());
  for (const auto& [kh, ch] : h)
    for (const auto& [km, cm] : m) out.add(left_act(kh, km), ch * cm);
  return out;
}

Lin Couple::right_act(const Lin& m, const Lin& h) const {
  Lin out(field());
  for (const auto& [km, cm] : m)
    for (const auto& [kh, ch] : h) out.add(right_act(km, kh), ch * cm);
  return out;
}

Lin2 Couple::left_coact(const Key& m) const {
  require_key(m);
  Lin2 out(field());
  if (kind_ == Kind::raw) {
    for (const auto& [h, mm, c] : raw_->lcoact[m[0]]) out.add({index_key(h), index_key(mm)}, c);
    return out;
  }
  out.add({group_part(m), m}, field().one());
  return out;
}

Lin2 Couple::right_coact(const Key& m) const {
  require_key(m);
  Lin2 out(field());
  if (kind_ == Kind::raw) {
    for (const auto& [mm, h, c] : raw_->rcoact[m[0]]) out.add({index_key(mm), index_key(h)}, c);
    return out;
  }
  out.add({m, h_.compose(group_part(m), degree(letter(m)))}, field().one());
  return out;
}

Couple Couple::materialize() const {
  if (kind_ == Kind::raw) return *this;
  const auto hk = h_.basis();
  const auto mk = basis();
  KeyIndex<Key> hi(hk), mi(mk);
  const Field f = field();
  RawBimodule r(f, mk.size(), hk.size());
  auto vec = [&](const Lin& l, const KeyIndex<Key>& idx) { return to_sparse(l, idx); };
  for (std::size_t m = 0; m < mk.size(); ++m) {
    for (std::size_t h = 0; h < hk.size(); ++h) {
      r.lact[h][m] = vec(left_act(hk[h], mk[m]), mi);
      r.ract[m][h] = vec(right_act(mk[m], hk[h]), mi);
    }
    for (const auto& [k, c] : left_coact(mk[m])) r.lcoact[m].emplace_back(hi.at(k.first), mi.at(k.second), c);
    for (const auto& [k, c] : right_coact(mk[m])) r.rcoact[m].emplace_back(mi.at(k.first), hi.at(k.second), c);
  }
  return from_raw(h_.materialize(), std::move(r));
}

namespace {

std::vector<std::vector<Scalar>> resolve_characters(const DiagonalData& d, std::size_t r) {
  const std::size_t theta = d.theta();
  if (d.characters) {
    if (d.characters->size() != theta) throw InvalidInput("characters must have one row per letter");
    for (const auto& row : *d.characters)
      if (row.size() != r) throw InvalidInput("each character row needs one entry per group coordinate");
    return *d.characters;
  }
  if (r == 0) return std::vector<std::vector<Scalar>>(theta);
  if (r != theta) throw InvalidInput("characters are required unless the degrees are the standard generators");
  for (std::size_t i = 0; i < theta; ++i)
    if (!is_standard_generator(d.degrees[i], i, d.moduli))
      throw InvalidInput("characters are required unless the degrees are the standard generators");
  std::vector<std::vector<Scalar>> chi(theta, std::vector<Scalar>(r));
  for (std::size_t i = 0; i < theta; ++i)
    for (std::size_t k = 0; k < r; ++k) chi[i][k] = d.q[k][i];
  return chi;
}

std::string pos(std::size_t i, std::size_t j) { return "[" + std::to_string(i) + "][" + std::to_string(j) + "]"; }

}  // namespace

Couple build_diagonal_couple_unchecked(const DiagonalData& diag, Field f) {
  HopfAlgebra h = HopfAlgebra::abelian_group(f, diag.moduli);
  const std::size_t theta = diag.theta();
  if (theta == 0) throw InvalidInput("a diagonal couple needs at least one letter");
  if (diag.q.size() != theta) throw InvalidInput("q must be theta x theta");
  for (const auto& row : diag.q) {
    if (row.size() != theta) throw InvalidInput("q must be theta x theta");
    for (const auto& s : row)
      if (!(s.field() == f)) throw FieldMismatch("q entry over " + s.field().name());
  }
  DiagonalData d = diag;
  for (auto& g : d.degrees) {
    if (g.size() != h.rank()) throw InvalidInput("degree " + key_string(g) + " has wrong rank");
    g = h.reduce(g);
  }
  Couple c(h);
  c.kind_ = Couple::Kind::diagonal;
  c.chi_ = resolve_characters(d, h.rank());
  for (const auto& row : c.chi_)
    for (const auto& s : row)
      if (!(s.field() == f)) throw FieldMismatch("character value over " + s.field().name());
  c.diag_ = std::move(d);
  return c;
}

Couple build_diagonal_couple(const DiagonalData& diag, Field f) {
  Couple c = build_diagonal_couple_unchecked(diag, f);
  const auto& d = c.diagonal();
  const auto& mod = d.moduli;
  for (std::size_t i = 0; i < d.theta(); ++i)
    for (std::size_t j = 0; j < d.theta(); ++j)
      if (d.q[i][j].is_zero()) throw InvalidInput("q" + pos(i, j) + " is zero");
  for (std::size_t i = 0; i < d.theta(); ++i)
    for (std::size_t k = 0; k < mod.size(); ++k) {
      Scalar x = c.character(i, [&] {
        Key e(mod.size(), 0);
        e[k] = 1;
        return e;
      }());
      if (x.is_zero()) throw InvalidInput("character " + std::to_string(i) + " vanishes");
      if (mod[k] != 0 && !x.pow(mod[k]).is_one())
        throw InvalidInput("character " + std::to_string(i) + " is not well defined on coordinate " +
                           std::to_string(k) + ": " + x.to_string() + "^" + std::to_string(mod[k]) + " != 1");
    }
  for (std::size_t i = 0; i < d.theta(); ++i)
    for (std::size_t j = 0; j < d.theta(); ++j)
      if (c.character(j, d.degrees[i]) != d.q[i][j])
        throw InvalidInput("q" + pos(i, j) + " = " + d.q[i][j].to_string() + " but chi_j(g_i) = " +
                           c.character(j, d.degrees[i]).to_string());
  return c;
}

Couple regular_couple(const HopfAlgebra& h0) {
  if (!h0.is_finite()) throw InvalidInput("regular couple needs a finite-dimensional Hopf algebra");
  HopfAlgebra h = h0.materialize();
  const auto& sc = h.structure();
  RawBimodule r(h.field(), sc.dim, sc.dim);
  for (std::size_t a = 0; a < sc.dim; ++a)
    for (std::size_t b = 0; b < sc.dim; ++b) {
      r.lact[a][b] = sc.mult[a][b];
      r.ract[b][a] = sc.mult[b][a];
    }
  for (std::size_t m = 0; m < sc.dim; ++m) {
    r.lcoact[m] = sc.comult[m];
    r.rcoact[m] = sc.comult[m];
  }
  return Couple::from_raw(std::move(h), std::move(r));
}

namespace {

std::string text(std::initializer_list<const Key*> ks) {
  std::string s;
  for (const Key* k : ks) s += (s.empty() ? "" : " ") + key_string(*k);
  return s;
}

// Small window for checks that range over pairs of Hopf elements.
std::vector<Key> pair_window(const HopfAlgebra& h, std::int64_t radius) {
  return h.window(h.is_finite() ? 0 : std::min<std::int64_t>(radius, 1));
}

}  // namespace

ValidationReport validate_hopf_bimodule(const Couple& c, std::int64_t radius) {
  ValidationReport rep;
  rep.subject = "hopf bimodule";
  const HopfAlgebra& h = c.hopf();
  const Field f = c.field();
  const auto hs = pair_window(h, radius), mw = c.window(radius);
  const Lin one = h.unit();

  if (c.is_diagonal()) {
    auto& wd = rep.add("character_well_defined");
    const auto& mod = h.moduli();
    for (std::size_t i = 0; i < c.theta(); ++i)
      for (std::size_t k = 0; k < mod.size(); ++k) {
        Key e(mod.size(), 0);
        e[k] = 1;
        Scalar x = c.character(i, e);
        wd.record(!x.is_zero() && (mod[k] == 0 || x.pow(mod[k]).is_one()),
                  [&] { return "chi_" + std::to_string(i) + " on coordinate " + std::to_string(k); });
      }
  }

  auto& lm = rep.add("left_module");
  auto& rm = rep.add("right_module");
  auto& bm = rep.add("bimodule");
  for (const auto& m : mw) {
    Lin em = Lin::basis(f, m);
    lm.record(c.left_act(one, em) == em, [&] { return text({&m}); });
    rm.record(c.right_act(em, one) == em, [&] { return text({&m}); });
    for (const auto& a : hs)
      for (const auto& b : hs) {
        Lin ea = Lin::basis(f, a), eb = Lin::basis(f, b);
        lm.record(c.left_act(ea, c.left_act(b, m)) == c.left_act(h.multiply(a, b), em),
                  [&] { return text({&a, &b, &m}); });
        rm.record(c.right_act(c.right_act(m, a), eb) == c.right_act(em, h.multiply(a, b)),
                  [&] { return text({&m, &a, &b}); });
        bm.record(c.right_act(c.left_act(a, m), eb) == c.left_act(ea, c.right_act(m, b)),
                  [&] { return text({&a, &m, &b}); });
      }
  }

  auto& lc = rep.add("left_comodule");
  auto& rc = rep.add("right_comodule");
  auto& bc = rep.add("bicomodule");
  for (const auto& m : mw) {
    const Lin2 l = c.left_coact(m), r = c.right_coact(m);
    LinN a1(f), a2(f), b1(f), b2(f), c1(f), c2(f);
    Lin el(f), er(f);
    for (const auto& [k, s] : l) {
      for (const auto& [k2, s2] : h.comultiply(k.first)) a1.add({k2.first, k2.second, k.second}, s * s2);
      for (const auto& [k2, s2] : c.left_coact(k.second)) a2.add({k.first, k2.first, k2.second}, s * s2);
      for (const auto& [k2, s2] : c.right_coact(k.second)) c2.add({k.first, k2.first, k2.second}, s * s2);
      el.add(k.second, s * h.counit(k.first));
    }
    for (const auto& [k, s] : r) {
      for (const auto& [k2, s2] : h.comultiply(k.second)) b1.add({k.first, k2.first, k2.second}, s * s2);
      for (const auto& [k2, s2] : c.right_coact(k.first)) b2.add({k2.first, k2.second, k.second}, s * s2);
      for (const auto& [k2, s2] : c.left_coact(k.first)) c1.add({k2.first, k2.second, k.second}, s * s2);
      er.add(k.first, s * h.counit(k.second));
    }
    const Lin em = Lin::basis(f, m);
    lc.record(a1 == a2 && el == em, [&] { return text({&m}); });
    rc.record(b1 == b2 && er == em, [&] { return text({&m}); });
    bc.record(c1 == c2, [&] { return text({&m}); });
  }

  auto& lcc = rep.add("left_coaction_compatible");
  auto& rcc = rep.add("right_coaction_compatible");
  for (const auto& a : hs)
    for (const auto& b : hs) {
      const Lin2 da = h.comultiply(a), db = h.comultiply(b);
      for (const auto& m : mw) {
        const Lin x = c.right_act(c.left_act(a, m), Lin::basis(f, b));
        Lin2 lhs_l(f), lhs_r(f), rhs_l(f), rhs_r(f);
        for (const auto& [k, s] : x) {
          lhs_l.add(c.left_coact(k), s);
          lhs_r.add(c.right_coact(k), s);
        }
        for (const auto& [ka, sa] : da)
          for (const auto& [kb, sb] : db) {
            const Scalar w = sa * sb;
            const Lin b1 = Lin::basis(f, kb.first), b2 = Lin::basis(f, kb.second);
            for (const auto& [km, sm] : c.left_coact(m))
              rhs_l.add(tensor(h.multiply(h.multiply(ka.first, km.first), b1),
                               c.right_act(c.left_act(ka.second, km.second), b2)),
                        w * sm);
            for (const auto& [km, sm] : c.right_coact(m))
              rhs_r.add(tensor(c.right_act(c.left_act(ka.first, km.first), b1),
                               h.multiply(h.multiply(ka.second, km.second), b2)),
                        w * sm);
          }
        lcc.record(lhs_l == rhs_l, [&] { return text({&a, &m, &b}); });
        rcc.record(lhs_r == rhs_r, [&] { return text({&a, &m, &b}); });
      }
    }
  return rep;
}

CouplePairing CouplePairing::explicit_matrix(HopfPairing phi0, Matrix phi1) {
  if (!(phi0.field() == phi1.field())) throw FieldMismatch("phi0 and phi1 over different fields");
  return CouplePairing(std::move(phi0), std::move(phi1), false);
}

CouplePairing CouplePairing::diagonal(HopfPairing phi0, Matrix letters) {
  if (!phi0.is_bicharacter()) throw InvalidInput("the diagonal pairing form needs a bicharacter phi0");
  if (!(phi0.field() == letters.field())) throw FieldMismatch("phi0 and phi1 over different fields");
  return CouplePairing(std::move(phi0), std::move(letters), true);
}

Scalar CouplePairing::phi1(const Key& m, const Key& n) const {
  if (!diagonal_) {
    if (m.size() != 1 || n.size() != 1 || m[0] < 0 || n[0] < 0 || static_cast<std::size_t>(m[0]) >= phi1_.rows() ||
        static_cast<std::size_t>(n[0]) >= phi1_.cols())
      throw DimensionMismatch("phi1 argument outside its matrix");
    return phi1_.get(m[0], n[0]);
  }
  if (m.empty() || n.empty()) throw DimensionMismatch("phi1 argument is not (group, letter)");
  const std::size_t i = static_cast<std::size_t>(m.back()), j = static_cast<std::size_t>(n.back());
  if (i >= phi1_.rows() || j >= phi1_.cols()) throw DimensionMismatch("letter outside the phi1 matrix");
  Scalar l = phi1_.get(i, j);
  if (l.is_zero()) return l;
  return l * phi0_(Key(m.begin(), m.end() - 1), Key(n.begin(), n.end() - 1));
}

Scalar CouplePairing::phi1(const Lin& m, const Lin& n) const {
  Scalar s = field().zero();
  for (const auto& [km, cm] : m)
    for (const auto& [kn, cn] : n) s += cm * cn * phi1(km, kn);
  return s;
}

CouplePairing CouplePairing::transposed() const {
  return CouplePairing(phi0_.transposed(), phi1_.transpose(), diagonal_);
}

ValidationReport validate_couple_pairing(const CouplePairing& p, const Couple& a, const Couple& b,
                                         std::int64_t radius) {
  if (!(p.field() == a.field()) || !(p.field() == b.field()))
    throw FieldMismatch("pairing and couples over different fields");
  ValidationReport rep;
  rep.subject = "couple pairing";
  const Field f = p.field();
  const HopfPairing& phi0 = p.phi0();
  const auto hs = pair_window(a.hopf(), radius), bs = pair_window(b.hopf(), radius);
  const auto mw = a.window(radius), nw = b.window(radius);

  // n_{-1} (x) n_0 (x) n_1, and likewise for m.
  auto triple = [&](const Couple& c, const Key& x) {
    LinN out(f);
    for (const auto& [k, s] : c.left_coact(x))
      for (const auto& [k2, s2] : c.right_coact(k.second)) out.add({k.first, k2.first, k2.second}, s * s2);
    return out;
  };
  std::vector<LinN> nt, mt;
  for (const auto& n : nw) nt.push_back(triple(b, n));
  for (const auto& m : mw) mt.push_back(triple(a, m));

  auto& first = rep.add("phi1_actions_first_argument");
  for (const auto& h : hs)
    for (const auto& g : hs)
      for (const auto& m : mw) {
        const Lin x = a.right_act(a.left_act(h, m), Lin::basis(f, g));
        for (std::size_t t = 0; t < nw.size(); ++t) {
          Scalar rhs = f.zero();
          for (const auto& [k, s] : nt[t]) rhs += s * phi0(h, k[0]) * p.phi1(m, k[1]) * phi0(g, k[2]);
          first.record(p.phi1(x, Lin::basis(f, nw[t])) == rhs, [&] { return text({&h, &m, &g, &nw[t]}); });
        }
      }

  auto& second = rep.add("phi1_actions_second_argument");
  for (const auto& bb : bs)
    for (const auto& cc : bs)
      for (const auto& n : nw) {
        const Lin y = b.right_act(b.left_act(bb, n), Lin::basis(f, cc));
        for (std::size_t t = 0; t < mw.size(); ++t) {
          Scalar rhs = f.zero();
          for (const auto& [k, s] : mt[t]) rhs += s * phi0(k[0], bb) * p.phi1(k[1], n) * phi0(k[2], cc);
          second.record(p.phi1(Lin::basis(f, mw[t]), y) == rhs, [&] { return text({&mw[t], &bb, &n, &cc}); });
        }
      }
  return rep;
}

SelfDualCouple build_self_dual_diagonal_pairing(const DiagonalData& diag, Field f) {
  const std::size_t theta = diag.theta();
  for (std::size_t i = 0; i < theta && i < diag.q.size(); ++i)
    for (std::size_t j = 0; j < i && j < diag.q[i].size(); ++j)
      if (diag.q[i][j] != diag.q[j][i])
        throw InvalidInput("a self-dual diagonal pairing needs symmetric q; q" + pos(i, j) + " != q" + pos(j, i));
  DiagonalData d = diag;
  const std::size_t r = d.moduli.size();
  std::vector<std::vector<Scalar>> beta;
  if (r == 0) {
    for (const auto& row : d.q)
      for (const auto& s : row)
        if (!s.is_one()) throw InvalidInput("over the trivial group every q entry must be 1");
  } else {
    if (r != theta) throw InvalidInput("self-dual pairing needs degrees e_1..e_theta");
    const HopfAlgebra g = HopfAlgebra::abelian_group(f, d.moduli);
    for (std::size_t i = 0; i < theta; ++i)
      if (!is_standard_generator(g.reduce(d.degrees.at(i)), i, d.moduli))
        throw InvalidInput("self-dual pairing needs degrees e_1..e_theta");
    beta = d.q;
  }
  // chi_i(e_k) = q_ki
  d.characters.reset();
  Couple c = build_diagonal_couple(d, f);
  HopfPairing phi0 = HopfPairing::bicharacter(f, beta);
  auto wd = validate_hopf_pairing(phi0, c.hopf(), c.hopf(), 1);
  if (!wd.passed()) throw InvalidInput("bicharacter is not well defined on the group");
  return {c, CouplePairing::diagonal(std::move(phi0), Matrix::identity(f, theta))};
}

}  // namespace qsym
