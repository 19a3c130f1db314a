#ifndef CYCHOM_ALGEBRA_HPP
#define CYCHOM_ALGEBRA_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cychom/linalg.hpp"

namespace cychom {

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

struct AlgebraError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One violated law found by validate().
struct ValidationReport {
  // (i, j, l) with (b_i b_j) b_l != b_i (b_j b_l)
  std::vector<std::tuple<Index, Index, Index>> associativity_violations;
  // ('l' or 'r', i) with unit * b_i != b_i (resp. b_i * unit != b_i)
  std::vector<std::pair<char, Index>> unit_violations;

  bool ok() const {
    return associativity_violations.empty() && unit_violations.empty();
  }
  std::string to_string() const;
};

// Finite-dimensional unital associative algebra given by structure
// constants over an exact field. Immutable once built.
class Algebra : public std::enable_shared_from_this<Algebra> {
 public:
  struct MatrixInfo {
    AlgebraPtr inner;
    Index size;
  };

  const std::string& name() const { return name_; }
  const FieldSpec& field() const { return field_; }
  Index dim() const { return dim_; }
  const std::vector<std::string>& basis_labels() const { return labels_; }
  const SparseVec& unit() const { return unit_; }

  // Coordinates of b_i * b_j; empty means zero.
  const SparseVec& structure(Index i, Index j) const { return structure_[i * dim_ + j]; }

  // Bilinear product of coordinate vectors.
  SparseVec multiply(const SparseVec& x, const SparseVec& y) const;

  // Present exactly when this algebra was built as matrix(inner, r).
  const std::optional<MatrixInfo>& matrix_info() const { return matrix_info_; }

  ValidationReport validate() const;

  // Constructions. All validate the result; literal() reports the
  // violations of bad input via AlgebraError.
  static AlgebraPtr ground_field(const FieldSpec& field);
  static AlgebraPtr dual_numbers(const FieldSpec& field);
  static AlgebraPtr truncated_poly(const FieldSpec& field, Index m);
  static AlgebraPtr matrix(const AlgebraPtr& inner, Index r);
  static AlgebraPtr product(const AlgebraPtr& left, const AlgebraPtr& right);
  static AlgebraPtr upper_triangular(const AlgebraPtr& inner);
  static AlgebraPtr literal(std::string name, const FieldSpec& field, Index dim,
                            std::vector<std::string> labels, SparseVec unit,
                            std::vector<std::tuple<Index, Index, SparseVec>> products,
                            bool check = true);

 private:
  Algebra() = default;

  static std::shared_ptr<Algebra> make(std::string name, const FieldSpec& field, Index dim,
                                       std::vector<std::string> labels, SparseVec unit,
                                       std::vector<std::tuple<Index, Index, SparseVec>> products,
                                       bool check);

  std::string name_;
  FieldSpec field_;
  Index dim_ = 0;
  std::vector<std::string> labels_;
  SparseVec unit_;
  std::vector<SparseVec> structure_;  // (i * dim + j) -> coords of b_i b_j
  std::optional<MatrixInfo> matrix_info_;
};

// Structural identity check good enough for carrier validation:
// pointer equality, or equal name, field, and dimension.
bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b);

// Parses a construction expression such as
//   upper_triangular(product(ground_field, dual_numbers))
// over the given field. Throws AlgebraError on malformed input.
AlgebraPtr parse_construction(const std::string& text, const FieldSpec& field);

// Tensor index bookkeeping; basis of A^{otimes arity} ordered
// lexicographically, leftmost factor most significant.
std::uint64_t tensor_dim(Index algebra_dim, Index arity);
Index tensor_encode(Index algebra_dim, const std::vector<Index>& tuple);
std::vector<Index> tensor_decode(Index algebra_dim, Index arity, Index index);

// Element of A^{otimes arity} in sparse coordinates.
struct TensorElement {
  AlgebraPtr algebra;
  Index arity = 0;
  SparseVec coords;

  bool is_zero() const { return coords.empty(); }
  bool operator==(const TensorElement& other) const;
};

TensorElement tensor_scale(const Rational& c, const TensorElement& x);
TensorElement tensor_add(const TensorElement& x, const TensorElement& y);

// x^{otimes arity} for an element x of A.
TensorElement tensor_power(const AlgebraPtr& algebra, const SparseVec& x, Index arity);

// r x r matrix with entries in A.
struct MatrixOverA {
  AlgebraPtr algebra;
  Index size = 0;
  std::vector<SparseVec> entries;  // row-major, size*size coordinate vectors

  const SparseVec& at(Index i, Index j) const { return entries[i * size + j]; }
  SparseVec& at(Index i, Index j) { return entries[i * size + j]; }

  static MatrixOverA zero(const AlgebraPtr& algebra, Index size);
  MatrixOverA multiply(const MatrixOverA& rhs) const;
  bool operator==(const MatrixOverA& other) const;

  // Coordinates of this matrix as an element of matrix(algebra, size).
  SparseVec as_element(const AlgebraPtr& matrix_algebra) const;
};

// Generalized trace M_r(A)^{otimes m} -> A^{otimes m}: sums the entry
// tensors over cyclic index tuples. Requires x.algebra to be a
// matrix(inner, r) construction.
TensorElement generalized_trace(const TensorElement& x);

}  // namespace cychom

#endif  // CYCHOM_ALGEBRA_HPP
