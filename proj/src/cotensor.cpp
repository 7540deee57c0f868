#include "qsym/cotensor.hpp"

#include <algorithm>
#include <cmath>

namespace qsym {

namespace {

TensorKey replaced(const TensorKey& t, std::size_t s, const Key& m) {
  TensorKey out = t;
  out[s] = m;
  return out;
}

// (rho_r (x) id - id (x) rho_l) on slots (s, s+1); the H factor is inserted
// between them.
LinN balance_defect(const Couple& c, const LinN& z, std::size_t s) {
  LinN out(c.field());
  for (const auto& [t, coef] : z) {
    for (const auto& [mh, a] : c.right_coact(t[s])) {
      TensorKey k = replaced(t, s, mh.first);
      k.insert(k.begin() + static_cast<std::ptrdiff_t>(s) + 1, mh.second);
      out.add(k, coef * a);
    }
    for (const auto& [hm, a] : c.left_coact(t[s + 1])) {
      TensorKey k = replaced(t, s + 1, hm.second);
      k.insert(k.begin() + static_cast<std::ptrdiff_t>(s) + 1, hm.first);
      out.add(k, -(coef * a));
    }
  }
  return out;
}

void guard(std::size_t cap, std::size_t n, long double count, const char* what) {
  if (count > static_cast<long double>(cap))
    throw ResourceLimit(std::string(what) + " in degree " + std::to_string(n) + " exceeds the cap of " +
                        std::to_string(cap));
}

std::vector<TensorKey> diagonal_paths(const Couple& c, std::size_t n, PathScope scope, std::int64_t radius,
                                      std::size_t cap) {
  const HopfAlgebra& h = c.hopf();
  std::vector<Key> starts;
  std::map<Key, bool> allowed;
  bool windowed = scope == PathScope::within_window;
  switch (scope) {
    case PathScope::all:
      if (!h.is_finite()) throw InvalidInput("all paths requested over an infinite group; use a window");
      starts = h.basis();
      break;
    case PathScope::from_identity:
      starts = {h.identity()};
      break;
    case PathScope::within_window:
      starts = h.window(radius);
      for (const auto& g : starts) allowed[g] = true;
      break;
  }
  guard(cap, n, static_cast<long double>(starts.size()) * std::pow(static_cast<long double>(c.theta()), n),
        "cotensor component");
  std::vector<TensorKey> out;
  if (n == 0) {
    for (const auto& g : starts) out.push_back({g});
    return out;
  }
  // depth-first over letters, tracking the current vertex
  std::vector<std::pair<TensorKey, Key>> frontier;
  for (const auto& g : starts) frontier.emplace_back(TensorKey{}, g);
  for (std::size_t step = 0; step < n; ++step) {
    std::vector<std::pair<TensorKey, Key>> next;
    for (const auto& [path, v] : frontier) {
      for (std::size_t a = 0; a < c.theta(); ++a) {
        Key w = h.compose(v, c.degree(a));
        if (windowed && !allowed.count(w)) continue;
        TensorKey p = path;
        p.push_back(c.element(v, a));
        next.emplace_back(std::move(p), std::move(w));
      }
    }
    frontier = std::move(next);
  }
  for (auto& [p, v] : frontier) out.push_back(std::move(p));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<TensorKey> all_tensors(const std::vector<Key>& basis, std::size_t n) {
  std::vector<TensorKey> out{TensorKey{}};
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<TensorKey> next;
    next.reserve(out.size() * basis.size());
    for (const auto& t : out)
      for (const auto& m : basis) {
        TensorKey u = t;
        u.push_back(m);
        next.push_back(std::move(u));
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace

std::vector<LinN> CotensorComponent::elements() const {
  std::vector<LinN> out;
  out.reserve(space.dim());
  for (const auto& v : space.basis()) out.push_back(from_sparse(v, ambient));
  return out;
}

CotensorComponent cotensor_component(const Couple& c, std::size_t n, PathScope scope, std::int64_t radius,
                                     std::size_t cap) {
  const Field& f = c.field();
  if (c.is_diagonal()) {
    KeyIndex<TensorKey> idx(diagonal_paths(c, n, scope, radius, cap));
    std::size_t d = idx.size();
    return {n, std::move(idx), Subspace::full(f, d)};
  }
  if (scope != PathScope::all) throw InvalidInput("path scopes apply to diagonal couples only");
  if (n == 0) {
    std::vector<TensorKey> keys;
    for (const auto& h : c.hopf().basis()) keys.push_back({h});
    KeyIndex<TensorKey> idx(std::move(keys));
    std::size_t d = idx.size();
    return {0, std::move(idx), Subspace::full(f, d)};
  }
  guard(cap, n, std::pow(static_cast<long double>(c.dim()), n), "M tensor power");
  KeyIndex<TensorKey> idx(all_tensors(c.basis(), n));
  if (n == 1) return {1, idx, Subspace::full(f, idx.size())};
  KeyIndex<TensorKey> target;
  std::vector<SparseVector> columns;
  columns.reserve(idx.size());
  for (const auto& t : idx.keys()) {
    LinN img(f);
    LinN x = LinN::basis(f, t);
    // distinct slots land in distinct targets: H sits at different positions
    for (std::size_t s = 0; s + 1 < n; ++s) {
      for (const auto& [k, a] : balance_defect(c, x, s)) {
        TensorKey tagged = k;
        tagged.push_back(Key{static_cast<std::int64_t>(s)});
        img.add(tagged, a);
      }
    }
    for (const auto& [k, a] : img) target.insert(k);
    columns.push_back(to_sparse(img, target));
  }
  Matrix m = Matrix::from_rows(f, target.size(), std::move(columns)).transpose();
  return {n, std::move(idx), kernel(m)};
}

bool in_cotensor(const Couple& c, std::size_t n, const LinN& z) {
  for (const auto& [t, a] : z)
    if (t.size() != std::max<std::size_t>(n, 1)) return false;
  for (std::size_t s = 0; s + 1 < n; ++s)
    if (!balance_defect(c, z, s).empty()) return false;
  return true;
}

std::vector<Combination<std::pair<TensorKey, TensorKey>>> cotensor_comultiply(const Couple& c, std::size_t n,
                                                                               const LinN& z) {
  using Block = Combination<std::pair<TensorKey, TensorKey>>;
  const Field& f = c.field();
  if (!in_cotensor(c, n, z)) throw NotInComponent("element is not in the degree " + std::to_string(n) + " component");
  if (n == 0) {
    Block b(f);
    for (const auto& [t, a] : z)
      for (const auto& [hk, s] : c.hopf().comultiply(t[0])) b.add({TensorKey{hk.first}, TensorKey{hk.second}}, a * s);
    return {b};
  }
  std::vector<Block> out(n + 1, Block(f));
  for (const auto& [t, a] : z) {
    for (const auto& [hm, s] : c.left_coact(t.front())) out[0].add({TensorKey{hm.first}, replaced(t, 0, hm.second)}, a * s);
    for (std::size_t i = 1; i < n; ++i)
      out[i].add({TensorKey(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(i)),
                  TensorKey(t.begin() + static_cast<std::ptrdiff_t>(i), t.end())},
                 a);
    for (const auto& [mh, s] : c.right_coact(t.back())) out[n].add({replaced(t, n - 1, mh.first), TensorKey{mh.second}}, a * s);
  }
  return out;
}

LinN Symmetrizer::apply(std::size_t n, const Key& x) const {
  const Field& f = t_->field();
  if (n <= 1) return LinN::basis(f, {x});
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find({n, x});
    if (it != memo_.end()) return it->second;
  }
  LinN out(f);
  for (const auto& [my, a] : t_->coproduct_block(n, x, 1)) {
    LinN head = LinN::basis(f, {my.first});
    out.add(concat(head, apply(n - 1, my.second)), a);
  }
  std::lock_guard<std::mutex> lock(mu_);
  memo_.emplace(std::make_pair(n, x), out);
  return out;
}

LinN Symmetrizer::apply(std::size_t n, const Lin& x) const {
  LinN out(t_->field());
  for (const auto& [k, a] : x) out.add(apply(n, k), a);
  return out;
}

Symmetrizer::Matrix_ Symmetrizer::matrix(std::size_t n, const std::vector<Key>& domain) const {
  const Field& f = t_->field();
  KeyIndex<TensorKey> codomain;
  std::vector<LinN> images;
  images.reserve(domain.size());
  for (const auto& x : domain) {
    images.push_back(apply(n, x));
    for (const auto& [k, a] : images.back()) codomain.insert(k);
  }
  std::vector<SparseVector> cols;
  cols.reserve(images.size());
  for (const auto& img : images) cols.push_back(to_sparse(img, codomain));
  Matrix m = Matrix::from_rows(f, codomain.size(), std::move(cols)).transpose();
  return {domain, std::move(codomain), std::move(m)};
}

GradedSubspace cotensor_truncation(const Couple& c, std::size_t max_degree, std::int64_t radius, std::size_t cap) {
  GradedSubspace out;
  PathScope scope = c.is_finite() ? PathScope::all : PathScope::within_window;
  for (std::size_t n = 0; n <= max_degree; ++n)
    out.spans.push_back(cotensor_component(c, n, scope, radius, cap).elements());
  return out;
}

namespace {

const std::vector<LinN>& degree_of(const GradedSubspace& s, std::size_t n) {
  static const std::vector<LinN> none;
  return n < s.spans.size() ? s.spans[n] : none;
}

struct Level {
  KeyIndex<TensorKey> ambient;
  Subspace v, w;
  std::map<TensorKey, SparseVector> rv, rw;

  Level(Field f, const std::vector<LinN>& c, const std::vector<LinN>& vs, const std::vector<LinN>& ws)
      : v(f, 0), w(f, 0) {
    for (const auto* part : {&c, &vs, &ws})
      for (const auto& x : *part)
        for (const auto& [k, a] : x) ambient.insert(k);
    auto span = [&](const std::vector<LinN>& xs) {
      std::vector<SparseVector> rows;
      for (const auto& x : xs) rows.push_back(to_sparse(x, ambient));
      return Subspace::span(f, ambient.size(), rows);
    };
    v = span(vs);
    w = span(ws);
  }

  const SparseVector& residual(bool left, const TensorKey& k) {
    auto& memo = left ? rv : rw;
    auto it = memo.find(k);
    if (it != memo.end()) return it->second;
    if (!ambient.contains(k)) throw InvalidInput("truncation is not closed under comultiplication");
    const Subspace& s = left ? v : w;
    return memo.emplace(k, s.reduce(SparseVector::unit(s.field(), ambient.at(k)))).first->second;
  }
};

}  // namespace

GradedSubspace wedge(const Couple& c, const GradedSubspace& truncation, const GradedSubspace& v,
                     const GradedSubspace& w) {
  const Field& f = c.field();
  std::size_t top = truncation.spans.empty() ? 0 : truncation.spans.size() - 1;
  std::vector<Level> levels;
  for (std::size_t k = 0; k <= top && !truncation.spans.empty(); ++k)
    levels.emplace_back(f, degree_of(truncation, k), degree_of(v, k), degree_of(w, k));

  GradedSubspace out;
  for (std::size_t n = 0; n < levels.size(); ++n) {
    const auto& basis = truncation.spans[n];
    KeyIndex<Key> target;
    std::vector<LinN> images;
    for (const auto& x : basis) {
      auto blocks = cotensor_comultiply(c, n, x);
      LinN img(f);
      for (std::size_t i = 0; i < blocks.size(); ++i) {
        std::size_t j = n == 0 ? 0 : n - i;
        for (const auto& [ab, a] : blocks[i]) {
          const SparseVector& ra = levels[i].residual(true, ab.first);
          const SparseVector& rb = levels[j].residual(false, ab.second);
          for (const auto& [p, s] : ra)
            for (const auto& [q, u] : rb)
              img.add({Key{static_cast<std::int64_t>(i), static_cast<std::int64_t>(p), static_cast<std::int64_t>(q)}},
                      a * s * u);
        }
      }
      for (const auto& [k, a] : img) target.insert(k[0]);
      images.push_back(std::move(img));
    }
    std::vector<SparseVector> cols;
    for (const auto& img : images) {
      SparseVector col(f);
      for (const auto& [k, a] : img) col.set(target.at(k[0]), a);
      cols.push_back(std::move(col));
    }
    Matrix m = Matrix::from_rows(f, target.size(), std::move(cols)).transpose();
    std::vector<SparseVector> members;
    const Subspace ker = kernel(m);
    for (const auto& coeffs : ker.basis()) {
      LinN y(f);
      for (const auto& [i, a] : coeffs) y.add(basis[i], a);
      members.push_back(to_sparse(y, levels[n].ambient));
    }
    std::vector<LinN> span;
    const Subspace wn = Subspace::span(f, levels[n].ambient.size(), members);
    for (const auto& r : wn.basis())
      span.push_back(from_sparse(r, levels[n].ambient));
    out.spans.push_back(std::move(span));
  }
  return out;
}

std::vector<std::size_t> graded_dims(const GradedSubspace& s) {
  std::vector<std::size_t> out;
  for (const auto& xs : s.spans) {
    if (xs.empty()) {
      out.push_back(0);
      continue;
    }
    KeyIndex<TensorKey> idx;
    for (const auto& x : xs)
      for (const auto& [k, a] : x) idx.insert(k);
    std::vector<SparseVector> rows;
    for (const auto& x : xs) rows.push_back(to_sparse(x, idx));
    out.push_back(Subspace::span(xs.front().field(), idx.size(), rows).dim());
  }
  return out;
}

}  // namespace qsym
