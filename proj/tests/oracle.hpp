#ifndef CYCHOM_TESTS_ORACLE_HPP
#define CYCHOM_TESTS_ORACLE_HPP

#include <vector>

#include "cychom/algebra.hpp"

// Independent dense-vector reimplementation of the cyclic-bicomplex
// differentials, used only by the test suites to compute expected
// homology dimensions and boundary memberships from first principles.
// Nothing here touches the sparse engine: operators are applied
// directly to dense coordinate arrays and ranks come from a plain
// incremental Gaussian elimination with first-nonzero pivoting.
namespace cychom::oracle {

using Dense = std::vector<Rational>;

struct Cell {
  int col;
  Index row;  // tensor arity is row + 1
  Index offset;
  Index dim;
};

struct Space {
  std::vector<Cell> cells;
  Index dim = 0;
};

// First-quadrant total space of one degree (columns 0..max_col, rows
// 0..max_row) and the degree-0/±1 spaces of the minus window (rows
// 0..2M, interior truncation at degree -1).
Space quadrant_space(const AlgebraPtr& a, Index max_col, Index max_row, int degree);
Space minus_window_space(const AlgebraPtr& a, Index window_m, int degree);

// x must live in the `from` space of the stated degree; the result
// lives in the degree-1-lower space.
Dense apply_total(const AlgebraPtr& a, const Space& from, const Space& to, const Dense& x);

// Plain dense row-echelon accumulator.
class DenseEchelon {
 public:
  DenseEchelon(Index dim, FieldSpec field) : dim_(dim), field_(field) {}

  // Returns true when the vector enlarged the span.
  bool insert(Dense v);
  bool in_span(Dense v) const;
  std::size_t rank() const { return rows_.size(); }

 private:
  void reduce(Dense& v) const;

  Index dim_;
  FieldSpec field_;
  std::vector<std::pair<Index, Dense>> rows_;  // (pivot index, unit-pivot row)
};

// rank of d: Tot_degree -> Tot_{degree-1} in the given truncation.
Index rank_total(const AlgebraPtr& a, Index max_col, Index max_row, int degree);

std::size_t hc_dim(const AlgebraPtr& a, Index n);
std::size_t hh_dim(const AlgebraPtr& a, Index n);
std::size_t minus0_dim(const AlgebraPtr& a, Index window_m);

// True iff v (a degree-`degree` vector in the (max_col, max_row)
// truncation) is a boundary.
bool is_boundary(const AlgebraPtr& a, Index max_col, Index max_row, int degree, const Dense& v);
bool is_cycle(const AlgebraPtr& a, Index max_col, Index max_row, int degree, const Dense& v);

// dim of the image of the composite chain-level truncation
// Z_{2 n_max} -> HC_0: the oracle stand-in for the eventual image of
// the S-tower at the bottom.
std::size_t tower_image_dim(const AlgebraPtr& a, Index n_max);

}  // namespace cychom::oracle

#endif  // CYCHOM_TESTS_ORACLE_HPP
