#include "qsym/pairing.hpp"

#include <random>

namespace qsym {

namespace {

std::vector<Key> module_keys(const Couple& c, std::optional<std::int64_t> radius) {
  if (c.is_finite()) return c.basis();
  if (!radius) throw InvalidInput("non-degeneracy on an infinite couple needs a bound");
  return c.window(*radius);
}

Subspace left_kernel(const Matrix& m) { return kernel(m.transpose()); }

std::string degree_text(std::size_t n) { return "degree " + std::to_string(n); }

// Independent columns of m, as indices.
std::vector<std::size_t> independent_columns(const Matrix& m) {
  return Subspace::span(m.field(), m.cols(), m.row_vectors()).pivots();
}

// Keys of T_n to sample from: the reduced basis shifted by a window of group
// elements for diagonal couples, the whole basis otherwise.
std::vector<Key> sample_keys(const TensorModel& t, std::size_t n, std::int64_t radius) {
  if (t.kind() != TensorModel::Kind::free) return t.basis(n);
  const auto& fm = static_cast<const FreeModel&>(t);
  const auto gs = t.couple().hopf().is_finite() ? t.couple().hopf().basis() : t.couple().hopf().window(radius);
  std::vector<Key> out;
  for (const auto& g : gs)
    for (const auto& w : t.reduced_basis(n)) out.push_back(fm.word_key(g, fm.letters(w)));
  return out;
}

std::string scalar_text(const Scalar& s) { return s.to_string(); }

}  // namespace

NondegeneracyResult nondegeneracy(const CouplePairing& p, const Couple& a, const Couple& b, Side side,
                                  std::optional<std::int64_t> radius) {
  const auto ak = module_keys(a, radius), bk = module_keys(b, radius);
  Matrix v(p.field(), ak.size(), bk.size());
  for (std::size_t i = 0; i < ak.size(); ++i)
    for (std::size_t j = 0; j < bk.size(); ++j) v.set(i, j, p.phi1(ak[i], bk[j]));
  NondegeneracyResult out{false, Subspace(p.field(), 0), {}};
  if (side == Side::left) {
    out.radical = kernel(v);
    out.keys = bk;
  } else {
    out.radical = left_kernel(v);
    out.keys = ak;
  }
  out.nondegenerate = out.radical.dim() == 0;
  return out;
}

bool two_sided_nondegenerate(const CouplePairing& p, const Couple& a, const Couple& b, std::int64_t radius) {
  for (Side s : {Side::left, Side::right}) {
    if (!nondegeneracy(p.phi0(), a.hopf(), b.hopf(), s, radius).nondegenerate) return false;
    if (!nondegeneracy(p, a, b, s, radius).nondegenerate) return false;
  }
  return true;
}

PairingEngine::PairingEngine(CouplePairing p, const Couple& a, const Couple& b, std::size_t cap,
                             std::int64_t radius)
    : p_(std::move(p)),
      a_(make_tensor_model(a, cap)),
      b_(make_tensor_model(b, cap)),
      oa_(a_),
      ob_(b_),
      radius_(radius) {
  if (!(a.field() == b.field()) || !(a.field() == p_.field())) throw FieldMismatch("pairing and couples over different fields");
  for (const auto& rep : {validate_hopf_pairing(p_.phi0(), a.hopf(), b.hopf(), radius),
                          validate_couple_pairing(p_, a, b, radius)})
    for (const auto& c : rep.checks)
      if (!c.passed) throw InvalidInput("pairing fails " + c.name + " at " + c.witness);
}

bool PairingEngine::reduced() const { return a_->kind() == TensorModel::Kind::free; }

Lin2 PairingEngine::block(std::size_t n, const Key& y) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = blocks_.find({n, y});
    if (it != blocks_.end()) return it->second;
  }
  Lin2 out = b_->coproduct_block(n, y, 1);
  std::lock_guard<std::mutex> lock(mu_);
  return blocks_.emplace(std::make_pair(n, y), std::move(out)).first->second;
}

Scalar PairingEngine::pair(std::size_t n, const Key& x, const Key& y) const {
  if (n == 0) return p_.phi0()(x, y);
  if (n == 1) return p_.phi1(x, y);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find({n, x, y});
    if (it != memo_.end()) return it->second;
  }
  // phi(m.x', y) = sum phi1(m, y_(1)) phi(x', y_(2)) over the (1, n-1) block
  Scalar s = p_.field().zero();
  const Lin2 yb = block(n, y);
  for (const auto& [m, rest] : a_->split_first(n, x))
    for (const auto& [ab, c] : yb) {
      Scalar head = p_.phi1(m, ab.first);
      if (head.is_zero()) continue;
      for (const auto& [r, d] : rest) s += head * c * d * pair(n - 1, r, ab.second);
    }
  std::lock_guard<std::mutex> lock(mu_);
  memo_.emplace(std::make_tuple(n, x, y), s);
  return s;
}

Scalar PairingEngine::pair(std::size_t n, const Lin& x, const Lin& y) const {
  Scalar s = p_.field().zero();
  for (const auto& [xk, a] : x)
    for (const auto& [yk, b] : y) s += a * b * pair(n, xk, yk);
  return s;
}

GramMatrix PairingEngine::gram(std::size_t n) const {
  GramMatrix g{n, Provenance::tensor_tensor, a_->reduced_basis(n), b_->reduced_basis(n), {},
               Matrix(p_.field(), 0, 0)};
  g.matrix = Matrix(p_.field(), g.rows.size(), g.cols.size());
  for (std::size_t i = 0; i < g.rows.size(); ++i)
    for (std::size_t j = 0; j < g.cols.size(); ++j) g.matrix.set(i, j, pair(n, g.rows[i], g.cols[j]));
  return g;
}

GramMatrix PairingEngine::gram_vs_cotensor(std::size_t n) const {
  const Couple& cb = b_->couple();
  PathScope scope = cb.is_diagonal() ? PathScope::from_identity : PathScope::all;
  GramMatrix g{n, Provenance::tensor_cotensor, a_->reduced_basis(n), {},
               cotensor_component(cb, n, scope, 0, b_->cap()).elements(), Matrix(p_.field(), 0, 0)};
  g.matrix = Matrix(p_.field(), g.rows.size(), g.cot_cols.size());
  for (std::size_t i = 0; i < g.rows.size(); ++i) {
    LinN x = n == 0 ? LinN::basis(p_.field(), {g.rows[i]}) : a_->lift(n, g.rows[i]);
    for (std::size_t j = 0; j < g.cot_cols.size(); ++j) {
      Scalar s = p_.field().zero();
      for (const auto& [t, a] : x)
        for (const auto& [u, b] : g.cot_cols[j]) {
          Scalar prod = a * b;
          for (std::size_t k = 0; k < t.size() && !prod.is_zero(); ++k)
            prod *= n == 0 ? p_.phi0()(t[k], u[k]) : p_.phi1(t[k], u[k]);
          s += prod;
        }
      g.matrix.set(i, j, s);
    }
  }
  return g;
}

GramMatrix PairingEngine::induced_gram(std::size_t n) const {
  const auto ra = independent_columns(symmetrizer_matrix(oa_, n).matrix);
  const auto rb = independent_columns(symmetrizer_matrix(ob_, n).matrix);
  const auto wa = a_->reduced_basis(n), wb = b_->reduced_basis(n);
  GramMatrix g{n, Provenance::symmetric_induced, {}, {}, {}, Matrix(p_.field(), ra.size(), rb.size())};
  for (auto i : ra) g.rows.push_back(wa[i]);
  for (auto j : rb) g.cols.push_back(wb[j]);
  for (std::size_t i = 0; i < g.rows.size(); ++i)
    for (std::size_t j = 0; j < g.cols.size(); ++j) g.matrix.set(i, j, pair(n, g.rows[i], g.cols[j]));
  return g;
}

bool PairingEngine::nondegenerate_inputs() const {
  std::lock_guard<std::mutex> lock(mu_);
  if (!nondegenerate_) nondegenerate_ = two_sided_nondegenerate(p_, a_->couple(), b_->couple(), radius_);
  return *nondegenerate_;
}

Symmetrizer::Matrix_ symmetrizer_matrix(const Symmetrizer& omega, std::size_t n) {
  return omega.matrix(n, omega.model().reduced_basis(n));
}

Relations relations(const Symmetrizer& omega, std::size_t n) {
  auto m = symmetrizer_matrix(omega, n);
  Relations out{n, m.domain, {}};
  const Subspace ker = kernel(m.matrix);
  for (const auto& v : ker.basis()) {
    Lin r(omega.model().field());
    for (const auto& [i, a] : v) r.add(m.domain[i], a);
    out.basis.push_back(std::move(r));
  }
  return out;
}

HilbertSeries hilbert(const Symmetrizer& omega, const PairingEngine* engine, std::size_t max_degree) {
  HilbertSeries h{max_degree,
                  omega.model().kind() == TensorModel::Kind::free ? HilbertSeries::Mode::reduced
                                                                   : HilbertSeries::Mode::full,
                  {},
                  std::nullopt,
                  false};
  if (engine) h.gram_dims.emplace();
  for (std::size_t n = 0; n <= max_degree; ++n) {
    try {
      std::size_t d = rank(symmetrizer_matrix(omega, n).matrix);
      std::optional<std::size_t> gd;
      if (engine) gd = rank(engine->gram(n).matrix);
      h.dims.push_back(d);
      if (gd) h.gram_dims->push_back(*gd);
    } catch (const ResourceLimit&) {
      h.truncated = true;
      break;
    }
  }
  return h;
}

ValidationReport pairing_axioms(const PairingEngine& e, std::size_t max_degree, std::size_t samples,
                                std::uint64_t seed) {
  const TensorModel& a = e.first();
  const TensorModel& b = e.second();
  const Field& f = a.field();
  std::vector<std::vector<Key>> ka, kb;
  for (std::size_t n = 0; n <= max_degree; ++n) {
    ka.push_back(sample_keys(a, n, e.radius()));
    kb.push_back(sample_keys(b, n, e.radius()));
  }
  std::mt19937_64 rng(seed);
  auto pick = [&](const std::vector<Key>& ks) {
    return ks[std::uniform_int_distribution<std::size_t>(0, ks.size() - 1)(rng)];
  };
  auto pick_deg = [&](std::size_t hi) { return std::uniform_int_distribution<std::size_t>(0, hi)(rng); };

  ValidationReport rep{"hopf pairing identities", {}};
  auto& unit_l = rep.add("unit_left");
  auto& unit_r = rep.add("unit_right");
  auto& prod_r = rep.add("product_right");
  auto& prod_l = rep.add("product_left");
  auto& anti = rep.add("antipode");
  const Lin one_a = a.couple().hopf().unit(), one_b = b.couple().hopf().unit();

  for (std::size_t s = 0; s < samples; ++s) {
    std::size_t n = pick_deg(max_degree), i = pick_deg(n);
    const Key x = pick(ka[n]), y = pick(kb[n]);
    const Key x1 = pick(ka[i]), x2 = pick(ka[n - i]);
    const Key y1 = pick(kb[i]), y2 = pick(kb[n - i]);
    const Lin lx = Lin::basis(f, x), ly = Lin::basis(f, y);
    auto text = [&](std::initializer_list<Key> ks) {
      std::string t = degree_text(n) + ":";
      for (const auto& k : ks) t += " " + key_string(k);
      return t;
    };

    Scalar lhs = n == 0 ? e.pair(0, one_a, ly) : f.zero();
    unit_l.record(lhs == b.counit(n, y), [&] { return text({y}); });
    lhs = n == 0 ? e.pair(0, lx, one_b) : f.zero();
    unit_r.record(lhs == a.counit(n, x), [&] { return text({x}); });

    // phi(x, y1 y2) = sum phi(x_(1), y1) phi(x_(2), y2)
    Lin yy = b.multiply(i, Lin::basis(f, y1), n - i, Lin::basis(f, y2));
    Scalar rhs = f.zero();
    for (const auto& [xs, c] : a.coproduct_block(n, x, i)) rhs += c * e.pair(i, xs.first, y1) * e.pair(n - i, xs.second, y2);
    lhs = e.pair(n, lx, yy);
    prod_r.record(lhs == rhs, [&] { return text({x, y1, y2}) + " gives " + scalar_text(lhs) + " vs " + scalar_text(rhs); });

    // phi(x1 x2, y) = sum phi(x1, y_(1)) phi(x2, y_(2))
    Lin xx = a.multiply(i, Lin::basis(f, x1), n - i, Lin::basis(f, x2));
    rhs = f.zero();
    for (const auto& [ys, c] : b.coproduct_block(n, y, i)) rhs += c * e.pair(i, x1, ys.first) * e.pair(n - i, x2, ys.second);
    lhs = e.pair(n, xx, ly);
    prod_l.record(lhs == rhs, [&] { return text({x1, x2, y}) + " gives " + scalar_text(lhs) + " vs " + scalar_text(rhs); });

    lhs = e.pair(n, a.antipode(n, x), ly);
    rhs = e.pair(n, lx, b.antipode(n, y));
    anti.record(lhs == rhs, [&] { return text({x, y}) + " gives " + scalar_text(lhs) + " vs " + scalar_text(rhs); });
  }
  return rep;
}

ValidationReport verify_theorem31(const PairingEngine& e, std::size_t max_degree, std::size_t samples,
                                  std::uint64_t seed) {
  ValidationReport rep{"induced pairing on S", {}};
  const bool nondeg = e.nondegenerate_inputs();
  for (std::size_t n = 0; n <= max_degree; ++n) {
    const std::string tag = "[" + std::to_string(n) + "]";
    GramMatrix g = e.gram(n);
    auto ka = kernel(symmetrizer_matrix(e.first_symmetrizer(), n).matrix);
    auto kb = kernel(symmetrizer_matrix(e.second_symmetrizer(), n).matrix);
    Matrix gt = g.matrix.transpose();

    auto& first = rep.add("vanishes_on_kernel_first" + tag);
    for (const auto& v : ka.basis()) first.record(gt.apply(v).empty(), [&] { return degree_text(n); });
    auto& second = rep.add("vanishes_on_kernel_second" + tag);
    for (const auto& v : kb.basis()) second.record(g.matrix.apply(v).empty(), [&] { return degree_text(n); });

    auto& full = rep.add("induced_full_rank" + tag);
    if (!nondeg) {
      full.skip("phi0 or phi1 is degenerate");
      continue;
    }
    GramMatrix s = e.induced_gram(n);
    std::size_t r = rank(s.matrix);
    full.record(r == s.rows.size() && r == s.cols.size(), [&] {
      return degree_text(n) + ": rank " + std::to_string(r) + " with dim S " + std::to_string(s.rows.size()) + " and " +
             std::to_string(s.cols.size());
    });
  }
  for (auto& c : pairing_axioms(e, max_degree, samples, seed).checks) {
    c.name = "axiom_" + c.name;
    rep.checks.push_back(std::move(c));
  }
  return rep;
}

ValidationReport verify_theorem32(const PairingEngine& e, std::size_t max_degree) {
  ValidationReport rep{"radicals are the symmetrizer kernels", {}};
  auto& pre = rep.add("precondition");
  pre.record(e.nondegenerate_inputs(), [] { return std::string("phi0 or phi1 is not two-sided non-degenerate"); });
  if (!pre.passed) return rep;
  for (std::size_t n = 0; n <= max_degree; ++n) {
    const std::string tag = "[" + std::to_string(n) + "]";
    GramMatrix g = e.gram(n);
    auto ka = kernel(symmetrizer_matrix(e.first_symmetrizer(), n).matrix);
    auto kb = kernel(symmetrizer_matrix(e.second_symmetrizer(), n).matrix);
    Subspace rl = left_kernel(g.matrix), rr = kernel(g.matrix);
    rep.add("first_radical" + tag).record(rl == ka, [&] {
      return degree_text(n) + ": radical dim " + std::to_string(rl.dim()) + ", kernel dim " + std::to_string(ka.dim());
    });
    rep.add("second_radical" + tag).record(rr == kb, [&] {
      return degree_text(n) + ": radical dim " + std::to_string(rr.dim()) + ", kernel dim " + std::to_string(kb.dim());
    });
  }
  return rep;
}

ValidationReport self_dual_check(const Couple& c, const CouplePairing& p, std::size_t max_degree, std::size_t cap,
                                 std::int64_t radius) {
  ValidationReport rep{"self-duality", {}};
  auto& p0 = rep.add("phi0_two_sided");
  for (Side s : {Side::left, Side::right}) {
    auto r = nondegeneracy(p.phi0(), c.hopf(), c.hopf(), s, radius);
    p0.record(r.nondegenerate, [&] { return std::string(s == Side::left ? "left" : "right") + " radical of dim " + std::to_string(r.radical.dim()); });
  }
  auto& p1 = rep.add("phi1_two_sided");
  if (!p0.passed) {
    p1.skip("phi0 failed");
    return rep;
  }
  for (Side s : {Side::left, Side::right}) {
    auto r = nondegeneracy(p, c, c, s, radius);
    p1.record(r.nondegenerate, [&] { return std::string(s == Side::left ? "left" : "right") + " radical of dim " + std::to_string(r.radical.dim()); });
  }
  if (!p1.passed) return rep;
  PairingEngine e(p, c, c, cap, radius);
  for (std::size_t n = 0; n <= max_degree; ++n) {
    GramMatrix s = e.induced_gram(n);
    std::size_t r = rank(s.matrix);
    rep.add("induced_nondegenerate[" + std::to_string(n) + "]").record(r == s.rows.size() && r == s.cols.size(), [&] {
      return degree_text(n) + ": rank " + std::to_string(r) + " of " + std::to_string(s.rows.size());
    });
  }
  return rep;
}

ValidationReport verify_wedge_fact(const Couple& c, std::size_t max_degree, std::int64_t radius, std::size_t cap) {
  ValidationReport rep{"coradical wedge", {}};
  GradedSubspace all = cotensor_truncation(c, max_degree, radius, cap);
  GradedSubspace h{{all.spans[0]}};
  GradedSubspace w = wedge(c, all, h, h);
  for (std::size_t n = 0; n <= max_degree; ++n) {
    // expected: all of C_n for n <= 1, zero above
    std::vector<LinN> expected = n <= 1 ? all.spans[n] : std::vector<LinN>{};
    GradedSubspace joined{{w.spans[n]}};
    joined.spans[0].insert(joined.spans[0].end(), expected.begin(), expected.end());
    auto dw = graded_dims(GradedSubspace{{w.spans[n]}})[0];
    auto de = graded_dims(GradedSubspace{{expected}})[0];
    auto dj = graded_dims(joined)[0];
    rep.add("wedge[" + std::to_string(n) + "]").record(dw == de && dj == de, [&] {
      return degree_text(n) + ": wedge dim " + std::to_string(dw) + ", expected " + std::to_string(de);
    });
  }
  return rep;
}

}  // namespace qsym
