#ifndef CYCHOM_LINALG_HPP
#define CYCHOM_LINALG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "cychom/field.hpp"

namespace cychom {

using Index = std::uint32_t;

// Sorted by index, all scalars nonzero.
using Entry = std::pair<Index, Rational>;
using SparseVec = std::vector<Entry>;

struct DimensionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CompositionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DenseVector {
  FieldSpec field;
  std::vector<Rational> coords;

  Index length() const { return static_cast<Index>(coords.size()); }
  SparseVec sparse() const;
  static DenseVector from_sparse(const FieldSpec& field, Index length, const SparseVec& v);
  bool is_zero() const;
  bool operator==(const DenseVector& other) const;
};

// Immutable sparse matrix over a fixed field, stored column-major.
class SparseMatrix {
 public:
  SparseMatrix(Index rows, Index cols, FieldSpec field)
      : rows_(rows), cols_(cols), field_(field), columns_(cols) {}

  // Entries are reduced into the field; entries reducing to zero are
  // dropped. Throws DimensionError on out-of-bounds or duplicate (r, c).
  static SparseMatrix from_triplets(Index rows, Index cols, const FieldSpec& field,
                                    const std::vector<std::tuple<Index, Index, Rational>>& entries);

  static SparseMatrix zero(Index rows, Index cols, const FieldSpec& field) {
    return SparseMatrix(rows, cols, field);
  }
  static SparseMatrix identity(Index n, const FieldSpec& field);
  static SparseMatrix scalar(Index n, const FieldSpec& field, const Rational& value);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  const FieldSpec& field() const { return field_; }
  const SparseVec& column(Index j) const { return columns_[j]; }
  std::size_t nnz() const;

  Rational at(Index r, Index c) const;

  SparseVec apply(const SparseVec& x) const;
  DenseVector apply(const DenseVector& x) const;

  SparseMatrix multiply(const SparseMatrix& rhs) const;
  SparseMatrix transpose() const;
  SparseMatrix add(const SparseMatrix& rhs) const;
  SparseMatrix scale(const Rational& c) const;

  bool is_zero() const;
  bool operator==(const SparseMatrix& other) const;

 private:
  friend class EchelonBasis;

  Index rows_;
  Index cols_;
  FieldSpec field_;
  std::vector<SparseVec> columns_;
};

// Incremental echelon basis over a fixed ambient index space with
// optional augmentation tracking. Every stored vector has leading
// coefficient 1 and is fully reduced against the others; insertion
// order determines the pivot order, so results are deterministic.
class EchelonBasis {
 public:
  EchelonBasis(Index ambient_dim, FieldSpec field);

  struct Reduced {
    SparseVec remainder;
    SparseVec aug;  // tracked augmentation after the same row operations
  };

  // Fully reduces (v, aug) against the basis.
  Reduced reduce(const SparseVec& v, SparseVec aug = {}) const;

  // Reduces and, when the remainder is nonzero, normalizes and inserts
  // it. Returns true when the vector enlarged the basis.
  bool insert(const SparseVec& v, SparseVec aug = {});

  std::size_t size() const { return rows_.size(); }
  Index ambient_dim() const { return ambient_dim_; }

  // Stored vectors in ascending leading-index order.
  std::vector<SparseVec> vectors() const;

 private:
  struct Row {
    SparseVec vec;
    SparseVec aug;
  };

  Index ambient_dim_;
  FieldSpec field_;
  std::map<Index, Row> rows_;  // keyed by leading index
  mutable std::vector<Rational> scratch_;
};

// Result of a kernel/image subquotient computation: dim, deterministic
// representative cycles, and the coordinate map onto them.
class Subquotient {
 public:
  std::size_t dim() const { return representatives_.size(); }
  const FieldSpec& field() const { return field_; }
  Index ambient_dim() const { return ambient_dim_; }
  const std::vector<SparseVec>& representatives() const { return representatives_; }

  // Class coordinates of a cycle. Throws CompositionError when the
  // input is not a cycle of d_out.
  DenseVector coords(const SparseVec& cycle) const;

  bool is_cycle(const SparseVec& v) const;

 private:
  friend Subquotient subquotient(const SparseMatrix& d_in, const SparseMatrix& d_out);

  Subquotient(FieldSpec field, Index ambient_dim, SparseMatrix d_out, EchelonBasis combined)
      : field_(field), ambient_dim_(ambient_dim), d_out_(std::move(d_out)),
        combined_(std::move(combined)) {}

  FieldSpec field_;
  Index ambient_dim_;
  SparseMatrix d_out_;
  EchelonBasis combined_;  // image echelon plus representatives, reps carry unit augs
  std::vector<SparseVec> representatives_;
};

Index rank(const SparseMatrix& m);

// Basis of ker(m); size is always cols - rank. Vectors are the reduced
// free-column basis, ordered by free column index.
std::vector<DenseVector> kernel_basis(const SparseMatrix& m);

// Some x with m x = v, or nullopt when v is outside the image.
std::optional<DenseVector> preimage(const SparseMatrix& m, const DenseVector& v);

// Homology ker(d_out) / im(d_in). Checks d_out * d_in = 0.
Subquotient subquotient(const SparseMatrix& d_in, const SparseMatrix& d_out);

// Sparse vector helpers (field-aware exact arithmetic).
SparseVec sparse_add(const FieldSpec& f, const SparseVec& a, const SparseVec& b);
SparseVec sparse_axpy(const FieldSpec& f, const SparseVec& a, const Rational& c,
                      const SparseVec& b);  // a + c*b
SparseVec sparse_scale(const FieldSpec& f, const Rational& c, const SparseVec& a);
SparseVec sparse_neg(const FieldSpec& f, const SparseVec& a);

}  // namespace cychom

#endif  // CYCHOM_LINALG_HPP
