#include "qsym/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace qsym {

namespace {

std::vector<std::vector<std::size_t>> all_words(std::size_t theta, std::size_t n) {
  std::vector<std::vector<std::size_t>> out{{}};
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<std::vector<std::size_t>> next;
    next.reserve(out.size() * theta);
    for (const auto& w : out)
      for (std::size_t i = 0; i < theta; ++i) {
        auto v = w;
        v.push_back(i);
        next.push_back(std::move(v));
      }
    out = std::move(next);
  }
  return out;
}

using LegPair = std::pair<TensorKey, TensorKey>;

}  // namespace

void TensorModel::guard(std::size_t n, long double count, const char* what) const {
  if (count > static_cast<long double>(cap_))
    throw ResourceLimit(std::string(what) + " in degree " + std::to_string(n) + " has dimension " +
                        std::to_string(static_cast<unsigned long long>(std::min<long double>(count, 1e18L))) +
                        ", above the cap " + std::to_string(cap_));
}

Lin TensorModel::multiply(std::size_t a, const Lin& x, std::size_t b, const Lin& y) const {
  Lin out(field());
  for (const auto& [kx, cx] : x)
    for (const auto& [ky, cy] : y) out.add(multiply(a, kx, b, ky), cx * cy);
  return out;
}

GradedElement TensorModel::multiply(const GradedElement& x, const GradedElement& y) const {
  return {x.degree + y.degree, multiply(x.degree, x.value, y.degree, y.value)};
}

LinN TensorModel::lift(std::size_t n, const Lin& x) const {
  LinN out(field());
  for (const auto& [k, c] : x) out.add(lift(n, k), c);
  return out;
}

Lin TensorModel::finish_leg(const LinN& leg) const {
  Lin out(field());
  std::map<std::size_t, LinN> by_degree;
  for (const auto& [k, c] : leg) {
    if (k.size() == 1) {
      out.add(k[0], c);
      continue;
    }
    // Leading H element acts on the first module factor.
    LinN& t = by_degree.try_emplace(k.size() - 1, field()).first->second;
    for (const auto& [m, cm] : couple_.left_act(k[0], k[1])) {
      TensorKey r(k.begin() + 1, k.end());
      r[0] = m;
      t.add(r, c * cm);
    }
  }
  for (const auto& [deg, t] : by_degree) out += project(deg, t);
  return out;
}

Lin2 TensorModel::coproduct_block(std::size_t n, const Key& x, std::size_t i) const {
  return generic_coproduct_block(n, x, i);
}

Lin2 TensorModel::coproduct_block(std::size_t n, const Lin& x, std::size_t i) const {
  Lin2 out(field());
  for (const auto& [k, c] : x) out.add(coproduct_block(n, k, i), c);
  return out;
}

Lin2 TensorModel::generic_coproduct_block(std::size_t n, const Key& x, std::size_t i) const {
  if (i > n) throw DimensionMismatch("coproduct block outside the degree");
  const HopfAlgebra& h = couple_.hopf();
  const Field f = field();
  if (n == 0) return h.comultiply(x);

  // Leg = (leading H label, module labels...); H elements after a module
  // factor are absorbed into it by the right action.
  auto push_h = [&](const TensorKey& leg, const Key& g, const Scalar& c, Combination<TensorKey>& out) {
    if (leg.size() == 1) {
      for (const auto& [k, s] : h.multiply(leg[0], g)) out.add(TensorKey{k}, c * s);
      return;
    }
    for (const auto& [k, s] : couple_.right_act(leg.back(), g)) {
      TensorKey r = leg;
      r.back() = k;
      out.add(r, c * s);
    }
  };

  Lin2 out(f);
  for (const auto& [tk, tc] : lift(n, x)) {
    Combination<LegPair> state(f);
    for (const auto& [ul, cl] : h.unit())
      for (const auto& [ur, cr] : h.unit()) state.add({TensorKey{ul}, TensorKey{ur}}, tc * cl * cr);
    for (std::size_t p = 0; p < n; ++p) {
      Combination<LegPair> next(f);
      for (const auto& [legs, s] : state) {
        const auto& [lk, rk] = legs;
        if (rk.size() - 1 < n - i)
          for (const auto& [hm, c2] : couple_.left_coact(tk[p])) {
            Combination<TensorKey> l(f);
            push_h(lk, hm.first, s * c2, l);
            TensorKey r = rk;
            r.push_back(hm.second);
            for (const auto& [k, c] : l) next.add({k, r}, c);
          }
        if (lk.size() - 1 < i)
          for (const auto& [mh, c2] : couple_.right_coact(tk[p])) {
            TensorKey l = lk;
            l.push_back(mh.first);
            Combination<TensorKey> r(f);
            push_h(rk, mh.second, s * c2, r);
            for (const auto& [k, c] : r) next.add({l, k}, c);
          }
      }
      state = std::move(next);
    }
    for (const auto& [legs, s] : state) {
      Lin l = finish_leg(LinN::term(legs.first, s));
      Lin r = finish_leg(LinN::basis(f, legs.second));
      out.add(tensor(l, r), f.one());
    }
  }
  return out;
}

LinN TensorModel::coproduct_component(std::size_t n, const Key& x, const std::vector<std::size_t>& shape) const {
  std::size_t total = 0;
  for (auto d : shape) total += d;
  if (shape.empty() || total != n) throw DimensionMismatch("coproduct shape does not sum to the degree");
  if (shape.size() == 1) return LinN::basis(field(), TensorKey{x});
  const std::vector<std::size_t> tail(shape.begin() + 1, shape.end());
  LinN out(field());
  for (const auto& [ab, c] : coproduct_block(n, x, shape[0]))
    for (const auto& [rest, c2] : coproduct_component(n - shape[0], ab.second, tail)) {
      TensorKey k{ab.first};
      k.insert(k.end(), rest.begin(), rest.end());
      out.add(k, c * c2);
    }
  return out;
}

Scalar TensorModel::counit(std::size_t n, const Key& x) const {
  return n == 0 ? couple_.hopf().counit(x) : field().zero();
}

Scalar TensorModel::counit(std::size_t n, const Lin& x) const {
  Scalar s = field().zero();
  for (const auto& [k, c] : x) s += c * counit(n, k);
  return s;
}

Lin TensorModel::antipode(std::size_t n, const Key& x) const {
  const HopfAlgebra& h = couple_.hopf();
  if (n == 0) return h.antipode(x);
  const Field f = field();
  std::map<Key, Lin> s1;
  auto single = [&](const Key& m) -> const Lin& {
    auto it = s1.find(m);
    if (it != s1.end()) return it->second;
    Lin v(f);
    for (const auto& [hm, c] : couple_.left_coact(m))
      for (const auto& [mh, c2] : couple_.right_coact(hm.second))
        v.add(couple_.left_act(h.antipode(hm.first), couple_.right_act(Lin::basis(f, mh.first), h.antipode(mh.second))),
              -(c * c2));
    return s1.emplace(m, std::move(v)).first->second;
  };
  LinN t(f);
  for (const auto& [tk, c] : lift(n, x)) {
    LinN term = LinN::basis(f, TensorKey{});
    for (std::size_t p = n; p-- > 0;) {
      LinN factor(f);
      for (const auto& [k, s] : single(tk[p])) factor.add(TensorKey{k}, s);
      term = concat(term, factor);
    }
    t.add(term, c);
  }
  return project(n, t);
}

Lin TensorModel::antipode(std::size_t n, const Lin& x) const {
  Lin out(field());
  for (const auto& [k, c] : x) out.add(antipode(n, k), c);
  return out;
}

std::vector<std::pair<Key, Lin>> TensorModel::split_first(std::size_t n, const Key& x) const {
  if (n == 0) throw DimensionMismatch("split_first needs positive degree");
  std::map<Key, LinN> tails;
  for (const auto& [tk, c] : lift(n, x))
    tails.try_emplace(tk[0], field()).first->second.add(TensorKey(tk.begin() + 1, tk.end()), c);
  std::vector<std::pair<Key, Lin>> out;
  for (const auto& [m, t] : tails) {
    Lin rest(field());
    if (n == 1) {
      for (const auto& [k, c] : t) rest.add(couple_.hopf().unit(), c);
    } else {
      rest = project(n - 1, t);
    }
    if (!rest.empty()) out.emplace_back(m, std::move(rest));
  }
  return out;
}

// Quotient model.

QuotientModel::QuotientModel(Couple c, std::size_t cap)
    : TensorModel(Kind::quotient, c.is_finite() ? c.materialize() : c, cap) {
  if (!couple().is_finite()) throw InvalidInput("the quotient model needs a finite couple");
  m_ = couple().dim();
}

std::size_t QuotientModel::ambient_dim(std::size_t n) const {
  guard(n, std::pow(static_cast<long double>(m_), static_cast<long double>(n)), "M tensor power");
  std::size_t d = 1;
  for (std::size_t k = 0; k < n; ++k) d *= m_;
  return d;
}

std::size_t QuotientModel::flat(const TensorKey& t) const {
  std::size_t idx = 0;
  for (const auto& k : t) idx = idx * m_ + static_cast<std::size_t>(k.at(0));
  return idx;
}

TensorKey QuotientModel::unflat(std::size_t n, std::size_t idx) const {
  TensorKey t(n);
  for (std::size_t k = n; k-- > 0;) {
    t[k] = Key{static_cast<std::int64_t>(idx % m_)};
    idx /= m_;
  }
  return t;
}

const QuotientModel::Level& QuotientModel::level(std::size_t n) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = levels_.find(n);
    if (it != levels_.end()) return *it->second;
  }
  const std::size_t dim = ambient_dim(n);
  const Field f = field();
  const auto hk = couple().hopf().basis();
  std::vector<SparseVector> gens;
  for (std::size_t x = 0; x < dim; ++x) {
    const TensorKey t = unflat(n, x);
    for (std::size_t s = 0; s + 1 < n; ++s)
      for (const auto& h : hk) {
        SparseVector v(f);
        TensorKey u = t;
        for (const auto& [k, c] : couple().right_act(t[s], h)) {
          u[s] = k;
          v.axpy(c, SparseVector::unit(f, flat(u)));
        }
        u = t;
        for (const auto& [k, c] : couple().left_act(h, t[s + 1])) {
          u[s + 1] = k;
          v.axpy(-c, SparseVector::unit(f, flat(u)));
        }
        if (!v.empty()) gens.push_back(std::move(v));
      }
  }
  auto lv = std::make_shared<Level>(Level{Subspace::span(f, dim, gens), {}});
  std::vector<bool> pivot(dim, false);
  for (auto p : lv->balancing.pivots()) pivot[p] = true;
  for (std::size_t i = 0; i < dim; ++i)
    if (!pivot[i]) lv->section.push_back(i);
  std::lock_guard<std::mutex> lock(mu_);
  return *levels_.emplace(n, std::move(lv)).first->second;
}

const Subspace& QuotientModel::balancing(std::size_t n) const {
  if (n < 2) throw DimensionMismatch("balancing subspaces start in degree 2");
  return level(n).balancing;
}

std::vector<Key> QuotientModel::basis(std::size_t n) const {
  if (n == 0) return couple().hopf().basis();
  if (n == 1) return couple().basis();
  std::vector<Key> out;
  for (auto i : level(n).section) out.push_back(Key{static_cast<std::int64_t>(i)});
  return out;
}

LinN QuotientModel::lift(std::size_t n, const Key& x) const {
  if (n == 0) throw DimensionMismatch("degree 0 has no tensor lift");
  if (n == 1) return LinN::basis(field(), TensorKey{x});
  if (x.size() != 1 || x[0] < 0 || static_cast<std::size_t>(x[0]) >= ambient_dim(n))
    throw DimensionMismatch("label outside the tensor component");
  return LinN::basis(field(), unflat(n, static_cast<std::size_t>(x[0])));
}

Lin QuotientModel::project(std::size_t n, const LinN& t) const {
  Lin out(field());
  if (n == 1) {
    for (const auto& [k, c] : t) out.add(k.at(0), c);
    return out;
  }
  SparseVector v(field());
  for (const auto& [k, c] : t) {
    if (k.size() != n) throw DimensionMismatch("tensor of the wrong degree");
    v.axpy(c, SparseVector::unit(field(), flat(k)));
  }
  for (const auto& [i, c] : level(n).balancing.reduce(v)) out.add(Key{static_cast<std::int64_t>(i)}, c);
  return out;
}

Lin QuotientModel::multiply(std::size_t a, const Key& x, std::size_t b, const Key& y) const {
  const Couple& c = couple();
  if (a == 0 && b == 0) return c.hopf().multiply(x, y);
  const Field f = field();
  if (a == 0 || b == 0) {
    LinN t = lift(a == 0 ? b : a, a == 0 ? y : x);
    LinN r(f);
    for (const auto& [k, s] : t) {
      const std::size_t pos = a == 0 ? 0 : k.size() - 1;
      Lin acted = a == 0 ? c.left_act(x, k[pos]) : c.right_act(k[pos], y);
      for (const auto& [m, s2] : acted) {
        TensorKey u = k;
        u[pos] = m;
        r.add(u, s * s2);
      }
    }
    return project(a + b, r);
  }
  return project(a + b, concat(lift(a, x), lift(b, y)));
}

// Free model.

FreeModel::FreeModel(Couple c, std::size_t cap) : TensorModel(Kind::free, std::move(c), cap) {
  if (!couple().is_diagonal()) throw InvalidInput("the free model needs a diagonal couple");
  r_ = couple().hopf().rank();
}

Key FreeModel::word_key(const Key& g, const std::vector<std::size_t>& w) const {
  Key k = g;
  for (auto i : w) k.push_back(static_cast<std::int64_t>(i));
  return k;
}

Key FreeModel::group_part(const Key& x) const { return Key(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(r_)); }

std::vector<std::size_t> FreeModel::letters(const Key& x) const {
  std::vector<std::size_t> w;
  for (std::size_t k = r_; k < x.size(); ++k) w.push_back(static_cast<std::size_t>(x[k]));
  return w;
}

Scalar FreeModel::character(const std::vector<std::size_t>& w, const Key& h) const {
  Scalar s = field().one();
  for (auto i : w) s *= couple().character(i, h);
  return s;
}

std::vector<Key> FreeModel::basis(std::size_t n) const {
  const auto gs = couple().hopf().basis();
  guard(n, static_cast<long double>(gs.size()) * std::pow(static_cast<long double>(couple().theta()), n),
        "tensor component");
  std::vector<Key> out;
  const auto ws = all_words(couple().theta(), n);
  for (const auto& g : gs)
    for (const auto& w : ws) out.push_back(word_key(g, w));
  return out;
}

std::vector<Key> FreeModel::reduced_basis(std::size_t n) const {
  guard(n, std::pow(static_cast<long double>(couple().theta()), n), "tensor component");
  std::vector<Key> out;
  const Key e = couple().hopf().identity();
  for (const auto& w : all_words(couple().theta(), n)) out.push_back(word_key(e, w));
  return out;
}

Lin FreeModel::multiply(std::size_t a, const Key& x, std::size_t b, const Key& y) const {
  if (x.size() != r_ + a || y.size() != r_ + b) throw DimensionMismatch("word label of the wrong degree");
  const Key g = group_part(x), h = group_part(y);
  auto w = letters(x);
  const Scalar c = character(w, h);
  for (auto i : letters(y)) w.push_back(i);
  return Lin::term(word_key(couple().hopf().compose(g, h), w), c);
}

LinN FreeModel::lift(std::size_t n, const Key& x) const {
  if (n == 0) throw DimensionMismatch("degree 0 has no tensor lift");
  if (x.size() != r_ + n) throw DimensionMismatch("word label of the wrong degree");
  const auto w = letters(x);
  const Key e = couple().hopf().identity();
  TensorKey t;
  t.push_back(couple().element(group_part(x), w[0]));
  for (std::size_t k = 1; k < n; ++k) t.push_back(couple().element(e, w[k]));
  return LinN::basis(field(), t);
}

Lin FreeModel::project(std::size_t n, const LinN& t) const {
  const HopfAlgebra& h = couple().hopf();
  Lin out(field());
  for (const auto& [k, c] : t) {
    if (k.size() != n) throw DimensionMismatch("tensor of the wrong degree");
    Scalar s = c;
    Key g = h.identity();
    std::vector<std::size_t> w;
    // Moving h_t to the front passes every earlier letter.
    for (std::size_t p = 0; p < n; ++p) {
      const Key hp = couple().group_part(k[p]);
      s *= character(w, hp);
      g = h.compose(g, hp);
      w.push_back(couple().letter(k[p]));
    }
    out.add(word_key(g, w), s);
  }
  return out;
}

Lin2 FreeModel::coproduct_block(std::size_t n, const Key& x, std::size_t i) const {
  if (i > n) throw DimensionMismatch("coproduct block outside the degree");
  if (x.size() != r_ + n) throw DimensionMismatch("word label of the wrong degree");
  if (n > 40) throw ResourceLimit("coproduct of a word longer than 40 letters");
  const HopfAlgebra& h = couple().hopf();
  const Key g = group_part(x);
  const auto w = letters(x);
  Lin2 out(field());
  // Letters in `left` send v to the left leg and their degree to the right leg.
  std::vector<bool> left(n, false);
  std::fill(left.begin(), left.begin() + static_cast<std::ptrdiff_t>(i), true);
  std::reverse(left.begin(), left.end());
  do {
    std::vector<std::size_t> wl, wr;
    Key gr = g;
    Scalar s = field().one();
    for (std::size_t j = 0; j < n; ++j) {
      if (left[j]) {
        wl.push_back(w[j]);
        const Key& d = couple().degree(w[j]);
        for (std::size_t t = 0; t < j; ++t)
          if (!left[t]) s *= couple().character(w[t], d);
        gr = h.compose(gr, d);
      } else {
        wr.push_back(w[j]);
      }
    }
    out.add({word_key(g, wl), word_key(gr, wr)}, s);
  } while (std::next_permutation(left.begin(), left.end()));
  return out;
}

std::shared_ptr<const TensorModel> make_tensor_model(const Couple& c, std::size_t cap) {
  if (c.is_diagonal()) return std::make_shared<FreeModel>(c, cap);
  return std::make_shared<QuotientModel>(c, cap);
}

TensorComponent tensor_component(const TensorModel& t, std::size_t n) { return {n, t.basis(n)}; }

}  // namespace qsym
