#include "qsym/linalg.hpp"

#include <algorithm>

namespace qsym {

Scalar SparseVector::get(std::size_t i) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), i, [](const Entry& e, std::size_t k) { return e.first < k; });
  return it != entries_.end() && it->first == i ? it->second : field_.zero();
}

void SparseVector::set(std::size_t i, const Scalar& s) {
  if (!(s.field() == field_)) throw FieldMismatch("entry field " + s.field().name() + " vs " + field_.name());
  auto it = std::lower_bound(entries_.begin(), entries_.end(), i, [](const Entry& e, std::size_t k) { return e.first < k; });
  bool present = it != entries_.end() && it->first == i;
  if (s.is_zero()) {
    if (present) entries_.erase(it);
  } else if (present) {
    it->second = s;
  } else {
    entries_.insert(it, Entry{i, s});
  }
}

void SparseVector::axpy(const Scalar& s, const SparseVector& o) {
  if (!(o.field_ == field_)) throw FieldMismatch("axpy across fields");
  if (s.is_zero() || o.entries_.empty()) return;
  std::vector<Entry> out;
  out.reserve(entries_.size() + o.entries_.size());
  auto a = entries_.begin();
  auto b = o.entries_.begin();
  while (a != entries_.end() || b != o.entries_.end()) {
    if (b == o.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      out.push_back(std::move(*a++));
    } else if (a == entries_.end() || b->first < a->first) {
      out.emplace_back(b->first, s * b->second);
      ++b;
    } else {
      Scalar v = a->second + s * b->second;
      if (!v.is_zero()) out.emplace_back(a->first, std::move(v));
      ++a;
      ++b;
    }
  }
  entries_ = std::move(out);
}

void SparseVector::scale(const Scalar& s) {
  if (s.is_zero()) {
    entries_.clear();
    return;
  }
  for (auto& e : entries_) e.second *= s;
}

bool operator==(const SparseVector& a, const SparseVector& b) {
  if (!(a.field_ == b.field_) || a.entries_.size() != b.entries_.size()) return false;
  for (std::size_t i = 0; i < a.entries_.size(); ++i) {
    if (a.entries_[i].first != b.entries_[i].first || a.entries_[i].second != b.entries_[i].second) return false;
  }
  return true;
}

Matrix::Matrix(Field f, std::size_t rows, std::size_t cols) : field_(f), cols_(cols), rows_(rows, SparseVector(f)) {}

Matrix Matrix::identity(Field f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, f.one());
  return m;
}

Matrix Matrix::from_ints(Field f, const std::vector<std::vector<std::int64_t>>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(f, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DimensionMismatch("ragged integer matrix");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, f.from_int(rows[r][c]));
  }
  return m;
}

Matrix Matrix::from_rows(Field f, std::size_t cols, std::vector<SparseVector> rows) {
  Matrix m(f, 0, cols);
  for (auto& r : rows) {
    if (!(r.field() == f)) throw FieldMismatch("row field mismatch");
    if (r.extent() > cols) throw DimensionMismatch("row longer than column count");
  }
  m.rows_ = std::move(rows);
  return m;
}

std::size_t Matrix::nnz() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.nnz();
  return n;
}

Scalar Matrix::get(std::size_t r, std::size_t c) const {
  if (c >= cols_) throw DimensionMismatch("column out of range");
  return rows_.at(r).get(c);
}

void Matrix::set(std::size_t r, std::size_t c, const Scalar& s) {
  if (c >= cols_) throw DimensionMismatch("column out of range");
  rows_.at(r).set(c, s);
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (const auto& [c, s] : rows_[r]) t.rows_[c].set(r, s);
  return t;
}

SparseVector Matrix::apply(const SparseVector& x) const {
  if (x.extent() > cols_) throw DimensionMismatch("vector longer than column count");
  SparseVector y(field_);
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    Scalar acc = field_.zero();
    auto a = rows_[r].begin();
    auto b = x.begin();
    while (a != rows_[r].end() && b != x.end()) {
      if (a->first < b->first) {
        ++a;
      } else if (b->first < a->first) {
        ++b;
      } else {
        acc += a->second * b->second;
        ++a;
        ++b;
      }
    }
    if (!acc.is_zero()) y.set(r, acc);
  }
  return y;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows()) throw DimensionMismatch("matrix product shape mismatch");
  Matrix out(field_, rows_.size(), o.cols_);
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    SparseVector acc(field_);
    for (const auto& [k, s] : rows_[r]) acc.axpy(s, o.rows_[k]);
    out.rows_[r] = std::move(acc);
  }
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.field_ == b.field_ && a.cols_ == b.cols_ && a.rows_ == b.rows_;
}

std::vector<SparseVector> rref_sparse(Field f, std::size_t cols, std::vector<SparseVector> rows) {
  std::map<std::size_t, SparseVector> basis;
  for (auto& v : rows) {
    if (!(v.field() == f)) throw FieldMismatch("row field mismatch in elimination");
    if (v.extent() > cols) throw DimensionMismatch("row longer than column count");
    // Basis rows vanish on every other pivot, so one pass clears all pivots of v.
    std::vector<std::pair<std::size_t, Scalar>> hits;
    for (const auto& [i, s] : v)
      if (basis.count(i)) hits.emplace_back(i, s);
    for (const auto& [p, s] : hits) v.axpy(-s, basis.at(p));
    if (v.empty()) continue;
    std::size_t lead = v.begin()->first;
    v.scale(v.begin()->second.inverse());
    for (auto& [p, b] : basis) {
      Scalar c = b.get(lead);
      if (!c.is_zero()) b.axpy(-c, v);
    }
    basis.emplace(lead, std::move(v));
  }
  std::vector<SparseVector> out;
  out.reserve(basis.size());
  for (auto& [p, b] : basis) out.push_back(std::move(b));
  return out;
}

std::vector<SparseVector> rref_dense(Field f, std::size_t cols, const std::vector<SparseVector>& rows) {
  std::vector<std::vector<Scalar>> a(rows.size(), std::vector<Scalar>(cols, f.zero()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!(rows[r].field() == f)) throw FieldMismatch("row field mismatch in elimination");
    if (rows[r].extent() > cols) throw DimensionMismatch("row longer than column count");
    for (const auto& [c, s] : rows[r]) a[r][c] = s;
  }
  std::size_t lead_row = 0;
  for (std::size_t c = 0; c < cols && lead_row < a.size(); ++c) {
    // First nonzero in column order.
    std::size_t pr = lead_row;
    while (pr < a.size() && a[pr][c].is_zero()) ++pr;
    if (pr == a.size()) continue;
    std::swap(a[pr], a[lead_row]);
    Scalar inv = a[lead_row][c].inverse();
    for (std::size_t k = c; k < cols; ++k) a[lead_row][k] *= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == lead_row || a[r][c].is_zero()) continue;
      Scalar factor = a[r][c];
      for (std::size_t k = c; k < cols; ++k)
        if (!a[lead_row][k].is_zero()) a[r][k] -= factor * a[lead_row][k];
    }
    ++lead_row;
  }
  std::vector<SparseVector> out;
  for (std::size_t r = 0; r < lead_row; ++r) {
    SparseVector v(f);
    for (std::size_t c = 0; c < cols; ++c)
      if (!a[r][c].is_zero()) v.set(c, a[r][c]);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<SparseVector> rref(Field f, std::size_t cols, std::vector<SparseVector> rows) {
  std::size_t nnz = 0;
  for (const auto& r : rows) nnz += r.nnz();
  double cells = static_cast<double>(rows.size()) * static_cast<double>(cols);
  if (cells > 0 && static_cast<double>(nnz) > kDenseFillThreshold * cells) return rref_dense(f, cols, rows);
  return rref_sparse(f, cols, std::move(rows));
}

Subspace rref_subspace(Field f, std::size_t ambient, std::vector<SparseVector> rows) {
  Subspace s(f, ambient);
  s.basis_ = rref(f, ambient, std::move(rows));
  return s;
}

Subspace Subspace::span(Field f, std::size_t ambient, const std::vector<SparseVector>& vectors) {
  return rref_subspace(f, ambient, vectors);
}

Subspace Subspace::full(Field f, std::size_t ambient) {
  std::vector<SparseVector> rows;
  for (std::size_t i = 0; i < ambient; ++i) rows.push_back(SparseVector::unit(f, i));
  return rref_subspace(f, ambient, std::move(rows));
}

std::vector<std::size_t> Subspace::pivots() const {
  std::vector<std::size_t> p;
  for (const auto& b : basis_) p.push_back(b.begin()->first);
  return p;
}

SparseVector Subspace::reduce(const SparseVector& v) const {
  if (!(v.field() == field_)) throw FieldMismatch("vector field mismatch");
  if (v.extent() > ambient_) throw DimensionMismatch("vector outside ambient space");
  SparseVector r = v;
  for (const auto& b : basis_) {
    Scalar c = v.get(b.begin()->first);
    if (!c.is_zero()) r.axpy(-c, b);
  }
  return r;
}

bool Subspace::contains(const SparseVector& v) const { return reduce(v).empty(); }

bool operator==(const Subspace& a, const Subspace& b) {
  return a.field_ == b.field_ && a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
}

std::size_t rank(const Matrix& m) { return rref(m.field(), m.cols(), m.row_vectors()).size(); }

Subspace kernel(const Matrix& m) {
  auto r = rref(m.field(), m.cols(), m.row_vectors());
  std::vector<bool> is_pivot(m.cols(), false);
  for (const auto& row : r) is_pivot[row.begin()->first] = true;
  const Field& f = m.field();
  std::vector<SparseVector> gens;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    SparseVector x = SparseVector::unit(f, free);
    for (const auto& row : r) {
      Scalar c = row.get(free);
      if (!c.is_zero()) x.set(row.begin()->first, -c);
    }
    gens.push_back(std::move(x));
  }
  Subspace k = Subspace::span(f, m.cols(), gens);
  if (k.dim() + r.size() != m.cols()) throw std::logic_error("rank-nullity violated");
  return k;
}

Subspace image(const Matrix& m) { return row_space(m.transpose()); }

Subspace row_space(const Matrix& m) { return Subspace::span(m.field(), m.cols(), m.row_vectors()); }

Subspace annihilator(const Subspace& s) {
  return kernel(Matrix::from_rows(s.field(), s.ambient(), s.basis()));
}

Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw DimensionMismatch("subspaces of different ambient spaces");
  if (!(a.field() == b.field())) throw FieldMismatch("subspaces over different fields");
  std::vector<SparseVector> rows = a.basis();
  rows.insert(rows.end(), b.basis().begin(), b.basis().end());
  return Subspace::span(a.field(), a.ambient(), rows);
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw DimensionMismatch("subspaces of different ambient spaces");
  return annihilator(sum(annihilator(a), annihilator(b)));
}

Subspace preimage(const Matrix& f, const Subspace& s) {
  if (f.rows() != s.ambient()) throw DimensionMismatch("map codomain differs from subspace ambient");
  if (!(f.field() == s.field())) throw FieldMismatch("map and subspace over different fields");
  Matrix columns = f.transpose();
  std::vector<SparseVector> residuals;
  residuals.reserve(columns.rows());
  for (const auto& c : columns.row_vectors()) residuals.push_back(s.reduce(c));
  return kernel(Matrix::from_rows(f.field(), f.rows(), std::move(residuals)).transpose());
}

}  // namespace qsym
