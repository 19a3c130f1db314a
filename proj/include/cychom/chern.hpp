#ifndef CYCHOM_CHERN_HPP
#define CYCHOM_CHERN_HPP

#include "cychom/complex.hpp"

namespace cychom {

// Canonical generator coefficients: y_i = (-1)^i (2i)!/i! and
// z_i = (-1)^{i-1} (2i)!/(2 i!), both integers.
Rational u_y_coeff(Index i);
Rational u_z_coeff(Index i);

// The canonical cycle u^n in Tot CC(k)_{2n}: y_i at (column 2(n-i),
// row 2i), z_i at (column 2(n-i)+1, row 2i-1). `ground` must be
// one-dimensional.
Chain u_generator(const AlgebraPtr& ground, Index n);

// Truncation of u^infty to the window rows 0..2M: y_i at row 2i,
// z_i at row 2i-1.
MinusChain u_generator_minus(const AlgebraPtr& ground, Index window_m);

// An r x r matrix e over A with e*e = e, checked at construction.
class Idempotent {
 public:
  // Throws AlgebraError when e*e != e.
  static Idempotent checked(MatrixOverA e, std::string name = "e");

  const AlgebraPtr& inner_algebra() const { return matrix_.algebra; }
  Index size() const { return matrix_.size; }
  const MatrixOverA& matrix() const { return matrix_; }
  const AlgebraPtr& matrix_algebra() const { return matrix_algebra_; }
  bool verified() const { return verified_; }
  const std::string& name() const { return name_; }

  // e as an element of matrix(A, r).
  const SparseVec& element() const { return element_; }

 private:
  Idempotent() = default;

  MatrixOverA matrix_;
  AlgebraPtr matrix_algebra_;
  SparseVec element_;
  bool verified_ = false;
  std::string name_;
};

MatrixOverA identity_matrix_over(const AlgebraPtr& algebra, Index r);

// g e g^{-1}; checks that g_inv really is a two-sided inverse of g.
Idempotent conjugated(const Idempotent& e, const MatrixOverA& g, const MatrixOverA& g_inv);

// Formal difference of idempotent lists over one inner algebra.
struct K0Witness {
  std::vector<Idempotent> plus;
  std::vector<Idempotent> minus;
};

// ch_n(e) as a chain: coefficient y_i times the generalized trace of
// e^{otimes(2i+1)} in the y_i slot, z_i times the trace of
// e^{otimes 2i} in the z_i slot. Verified to be a cycle.
Chain chern_chain(const Idempotent& e, Index n, const GuardConfig& guard = {});

// Truncated ch^-(e): same coefficients in the window placement;
// verified to be a cycle in the window interior.
MinusChain chern_minus_chain(const Idempotent& e, Index window_m, const GuardConfig& guard = {});

struct ChernResult {
  Chain chain;
  HomologyResult homology;  // HC_{2n}(A)
  DenseVector class_coords;
};

struct ChernMinusResult {
  MinusChain chain;
  HomologyResult homology;  // windowed HC^-_0(A)
  DenseVector class_coords;
};

ChernResult chern(const Idempotent& e, Index n, const GuardConfig& guard = {});
ChernMinusResult chern_minus(const Idempotent& e, Index window_m, const GuardConfig& guard = {});

// Signed sum of chern chains over the witness. All components must
// share the inner algebra.
ChernResult chern_k0(const K0Witness& w, Index n, const GuardConfig& guard = {});

// Coordinate of a degree-2n class against the canonical generator
// [u^n]. The homology result must be a one-dimensional group of a
// one-dimensional algebra with the generator recognized (always the
// case over the rationals).
Rational psi(const HomologyResult& hc_2n, const DenseVector& class_coords);
Rational psi(const HomologyResult& hc_2n, const Chain& cycle);

// Same against the truncated [u^infty] in a windowed HC^-_0 result.
Rational psi_minus(const HomologyResult& minus0, const DenseVector& class_coords);
Rational psi_minus(const HomologyResult& minus0, const MinusChain& cycle);

// True iff c1 - c2 is a boundary of the degree-(m+1) total space.
// Throws CompositionError when either input is not a cycle.
bool class_equal(const AlgebraPtr& algebra, Index degree, const Chain& c1, const Chain& c2,
                 const GuardConfig& guard = {});

// Chain arithmetic.
Chain chain_add(const Chain& a, const Chain& b);
Chain chain_scale(const Rational& c, const Chain& a);
MinusChain minus_chain_add(const MinusChain& a, const MinusChain& b);
MinusChain minus_chain_scale(const Rational& c, const MinusChain& a);

}  // namespace cychom

#endif  // CYCHOM_CHERN_HPP
