#include "cychom/linalg.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace cychom {

namespace {

// Zero-filled scratch shared by all eliminations on this thread. Kept
// all-zero between uses; grows monotonically.
std::vector<Rational>& scratch_pool(Index need) {
  thread_local std::vector<Rational> pool;
  if (pool.size() < need) pool.resize(need);
  return pool;
}

void check_field(const FieldSpec& a, const FieldSpec& b) {
  if (a != b) {
    throw FieldError("field mismatch: " + a.to_string() + " vs " + b.to_string());
  }
}

}  // namespace

SparseVec DenseVector::sparse() const {
  SparseVec out;
  for (Index i = 0; i < coords.size(); ++i) {
    if (coords[i] != 0) out.emplace_back(i, coords[i]);
  }
  return out;
}

DenseVector DenseVector::from_sparse(const FieldSpec& field, Index length, const SparseVec& v) {
  DenseVector out{field, std::vector<Rational>(length, Rational(0))};
  for (const auto& [i, c] : v) {
    if (i >= length) throw DimensionError("sparse index out of range");
    out.coords[i] = c;
  }
  return out;
}

bool DenseVector::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](const Rational& c) { return c == 0; });
}

bool DenseVector::operator==(const DenseVector& other) const {
  return field == other.field && coords == other.coords;
}

SparseMatrix SparseMatrix::from_triplets(
    Index rows, Index cols, const FieldSpec& field,
    const std::vector<std::tuple<Index, Index, Rational>>& entries) {
  SparseMatrix m(rows, cols, field);
  std::vector<std::vector<Entry>>& columns = m.columns_;
  for (const auto& [r, c, v] : entries) {
    if (r >= rows || c >= cols) throw DimensionError("matrix entry out of bounds");
    Rational reduced = field.reduce(v);
    if (reduced == 0) continue;
    columns[c].emplace_back(r, std::move(reduced));
  }
  for (auto& col : columns) {
    std::sort(col.begin(), col.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < col.size(); ++i) {
      if (col[i].first == col[i - 1].first) {
        throw DimensionError("duplicate matrix entry at row " + std::to_string(col[i].first));
      }
    }
  }
  return m;
}

SparseMatrix SparseMatrix::identity(Index n, const FieldSpec& field) {
  return scalar(n, field, Rational(1));
}

SparseMatrix SparseMatrix::scalar(Index n, const FieldSpec& field, const Rational& value) {
  SparseMatrix m(n, n, field);
  Rational reduced = field.reduce(value);
  if (reduced != 0) {
    for (Index i = 0; i < n; ++i) m.columns_[i].emplace_back(i, reduced);
  }
  return m;
}

std::size_t SparseMatrix::nnz() const {
  std::size_t total = 0;
  for (const auto& col : columns_) total += col.size();
  return total;
}

Rational SparseMatrix::at(Index r, Index c) const {
  if (r >= rows_ || c >= cols_) throw DimensionError("matrix index out of bounds");
  const SparseVec& col = columns_[c];
  auto it = std::lower_bound(col.begin(), col.end(), r,
                             [](const Entry& e, Index key) { return e.first < key; });
  if (it != col.end() && it->first == r) return it->second;
  return Rational(0);
}

SparseVec SparseMatrix::apply(const SparseVec& x) const {
  std::vector<Rational>& scratch = scratch_pool(rows_);
  std::vector<Index> touched;
  for (const auto& [j, xj] : x) {
    if (j >= cols_) throw DimensionError("vector index exceeds matrix columns");
    for (const auto& [i, mij] : columns_[j]) {
      if (scratch[i] == 0) touched.push_back(i);
      scratch[i] += mij * xj;
    }
  }
  std::sort(touched.begin(), touched.end());
  SparseVec out;
  for (Index i : touched) {
    field_.normalize(scratch[i]);
    if (scratch[i] != 0) out.emplace_back(i, scratch[i]);
    scratch[i] = 0;
  }
  return out;
}

DenseVector SparseMatrix::apply(const DenseVector& x) const {
  check_field(field_, x.field);
  if (x.length() != cols_) throw DimensionError("dimension mismatch in matrix apply");
  return DenseVector::from_sparse(field_, rows_, apply(x.sparse()));
}

SparseMatrix SparseMatrix::multiply(const SparseMatrix& rhs) const {
  check_field(field_, rhs.field_);
  if (cols_ != rhs.rows_) throw DimensionError("dimension mismatch in matrix multiply");
  SparseMatrix out(rows_, rhs.cols_, field_);
  for (Index j = 0; j < rhs.cols_; ++j) out.columns_[j] = apply(rhs.columns_[j]);
  return out;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix out(cols_, rows_, field_);
  for (Index j = 0; j < cols_; ++j) {
    for (const auto& [i, v] : columns_[j]) out.columns_[i].emplace_back(j, v);
  }
  return out;
}

SparseMatrix SparseMatrix::add(const SparseMatrix& rhs) const {
  check_field(field_, rhs.field_);
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
    throw DimensionError("dimension mismatch in matrix add");
  }
  SparseMatrix out(rows_, cols_, field_);
  for (Index j = 0; j < cols_; ++j) {
    out.columns_[j] = sparse_add(field_, columns_[j], rhs.columns_[j]);
  }
  return out;
}

SparseMatrix SparseMatrix::scale(const Rational& c) const {
  SparseMatrix out(rows_, cols_, field_);
  for (Index j = 0; j < cols_; ++j) out.columns_[j] = sparse_scale(field_, c, columns_[j]);
  return out;
}

bool SparseMatrix::is_zero() const {
  return std::all_of(columns_.begin(), columns_.end(),
                     [](const SparseVec& c) { return c.empty(); });
}

bool SparseMatrix::operator==(const SparseMatrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && field_ == other.field_ &&
         columns_ == other.columns_;
}

SparseVec sparse_axpy(const FieldSpec& f, const SparseVec& a, const Rational& c,
                      const SparseVec& b) {
  SparseVec out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j >= b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i >= a.size() || b[j].first < a[i].first) {
      Rational v = f.mul(c, b[j].second);
      if (v != 0) out.emplace_back(b[j].first, std::move(v));
      ++j;
    } else {
      Rational v = f.add(a[i].second, f.mul(c, b[j].second));
      if (v != 0) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

SparseVec sparse_add(const FieldSpec& f, const SparseVec& a, const SparseVec& b) {
  return sparse_axpy(f, a, Rational(1), b);
}

SparseVec sparse_scale(const FieldSpec& f, const Rational& c, const SparseVec& a) {
  SparseVec out;
  Rational cr = f.reduce(c);
  if (cr == 0) return out;
  out.reserve(a.size());
  for (const auto& [i, v] : a) {
    Rational w = f.mul(cr, v);
    if (w != 0) out.emplace_back(i, std::move(w));
  }
  return out;
}

SparseVec sparse_neg(const FieldSpec& f, const SparseVec& a) {
  return sparse_scale(f, Rational(-1), a);
}

EchelonBasis::EchelonBasis(Index ambient_dim, FieldSpec field)
    : ambient_dim_(ambient_dim), field_(field) {}

EchelonBasis::Reduced EchelonBasis::reduce(const SparseVec& v, SparseVec aug) const {
  std::vector<Rational>& scratch = scratch_pool(ambient_dim_);
  std::set<Index> touched;
  for (const auto& [i, c] : v) {
    if (i >= ambient_dim_) throw DimensionError("vector index exceeds ambient dimension");
    scratch[i] = c;
    touched.insert(i);
  }
  Reduced out;
  out.aug = std::move(aug);
  for (auto it = touched.begin(); it != touched.end(); ++it) {
    Index idx = *it;
    field_.normalize(scratch[idx]);
    if (scratch[idx] == 0) continue;
    auto pivot = rows_.find(idx);
    if (pivot == rows_.end()) continue;  // remainder entry, gathered below
    Rational c = scratch[idx];
    scratch[idx] = 0;
    const Row& row = pivot->second;
    // Pivot entry of row.vec is at idx with coefficient 1; the tail has
    // strictly larger indices, so set iteration stays valid.
    for (std::size_t k = 1; k < row.vec.size(); ++k) {
      const auto& [i2, v2] = row.vec[k];
      scratch[i2] -= c * v2;
      touched.insert(i2);
    }
    if (!row.aug.empty()) out.aug = sparse_axpy(field_, out.aug, field_.neg(c), row.aug);
  }
  for (Index idx : touched) {
    field_.normalize(scratch[idx]);
    if (scratch[idx] != 0) out.remainder.emplace_back(idx, scratch[idx]);
    scratch[idx] = 0;
  }
  return out;
}

bool EchelonBasis::insert(const SparseVec& v, SparseVec aug) {
  Reduced r = reduce(v, std::move(aug));
  if (r.remainder.empty()) return false;
  const Index lead = r.remainder.front().first;
  const Rational pivot = r.remainder.front().second;
  Row row;
  row.vec = sparse_scale(field_, field_.inv(pivot), r.remainder);
  row.aug = sparse_scale(field_, field_.inv(pivot), r.aug);
  rows_.emplace(lead, std::move(row));
  return true;
}

std::vector<SparseVec> EchelonBasis::vectors() const {
  std::vector<SparseVec> out;
  out.reserve(rows_.size());
  for (const auto& [lead, row] : rows_) out.push_back(row.vec);
  return out;
}

Index rank(const SparseMatrix& m) {
  // Rows are processed in natural order; each surviving row pivots at
  // its leading column (smallest row, then smallest column).
  SparseMatrix t = m.transpose();
  EchelonBasis ech(m.cols(), m.field());
  for (Index r = 0; r < t.cols(); ++r) ech.insert(t.column(r));
  return static_cast<Index>(ech.size());
}

namespace {

// Kernel vectors as sparse coordinate lists, ordered by free column.
std::vector<SparseVec> kernel_basis_sparse(const SparseMatrix& m) {
  EchelonBasis ech(m.rows(), m.field());
  std::vector<SparseVec> kernel;
  for (Index j = 0; j < m.cols(); ++j) {
    EchelonBasis::Reduced r = ech.reduce(m.column(j), SparseVec{{j, Rational(1)}});
    if (r.remainder.empty()) {
      kernel.push_back(std::move(r.aug));
    } else {
      ech.insert(r.remainder, r.aug);  // already reduced, so this just normalizes
    }
  }
  return kernel;
}

}  // namespace

std::vector<DenseVector> kernel_basis(const SparseMatrix& m) {
  std::vector<DenseVector> out;
  for (const SparseVec& v : kernel_basis_sparse(m)) {
    out.push_back(DenseVector::from_sparse(m.field(), m.cols(), v));
  }
  return out;
}

std::optional<DenseVector> preimage(const SparseMatrix& m, const DenseVector& v) {
  check_field(m.field(), v.field);
  if (v.length() != m.rows()) throw DimensionError("preimage target has wrong length");
  EchelonBasis ech(m.rows(), m.field());
  for (Index j = 0; j < m.cols(); ++j) ech.insert(m.column(j), SparseVec{{j, Rational(1)}});
  EchelonBasis::Reduced r = ech.reduce(v.sparse());
  if (!r.remainder.empty()) return std::nullopt;
  std::sort(r.aug.begin(), r.aug.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  return DenseVector::from_sparse(m.field(), m.cols(), sparse_neg(m.field(), r.aug));
}

Subquotient subquotient(const SparseMatrix& d_in, const SparseMatrix& d_out) {
  check_field(d_in.field(), d_out.field());
  if (d_out.cols() != d_in.rows()) {
    throw DimensionError("subquotient: d_out.cols must equal d_in.rows");
  }
  if (!d_out.multiply(d_in).is_zero()) {
    throw CompositionError("subquotient: d_out * d_in is nonzero");
  }
  const Index ambient = d_out.cols();
  const FieldSpec field = d_in.field();

  EchelonBasis combined(ambient, field);
  for (Index j = 0; j < d_in.cols(); ++j) combined.insert(d_in.column(j));

  Subquotient result(field, ambient, d_out, std::move(combined));
  Index rep_index = 0;
  for (const SparseVec& kv : kernel_basis_sparse(d_out)) {
    EchelonBasis::Reduced r = result.combined_.reduce(kv);
    if (r.remainder.empty()) continue;
    SparseVec rep = sparse_scale(field, field.inv(r.remainder.front().second), r.remainder);
    result.combined_.insert(rep, SparseVec{{rep_index, Rational(1)}});
    result.representatives_.push_back(std::move(rep));
    ++rep_index;
  }
  return result;
}

bool Subquotient::is_cycle(const SparseVec& v) const {
  return d_out_.apply(v).empty();
}

DenseVector Subquotient::coords(const SparseVec& cycle) const {
  if (!is_cycle(cycle)) {
    throw CompositionError("coords: input chain is not a cycle");
  }
  EchelonBasis::Reduced r = combined_.reduce(cycle);
  if (!r.remainder.empty()) {
    throw CompositionError("coords: cycle outside computed kernel (internal error)");
  }
  DenseVector out{field_, std::vector<Rational>(representatives_.size(), Rational(0))};
  for (const auto& [i, c] : r.aug) out.coords[i] = field_.neg(c);
  return out;
}

}  // namespace cychom
