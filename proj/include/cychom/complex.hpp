#ifndef CYCHOM_COMPLEX_HPP
#define CYCHOM_COMPLEX_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cychom/algebra.hpp"

namespace cychom {

struct GuardrailError : std::runtime_error {
  GuardrailError(std::uint64_t estimated, std::uint64_t cap)
      : std::runtime_error("guardrail: ambient tensor dimension " + std::to_string(estimated) +
                           " exceeds cap " + std::to_string(cap) + " (use --force to override)"),
        estimated_dim(estimated), cap(cap) {}
  std::uint64_t estimated_dim;
  std::uint64_t cap;
};

struct TruncationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GuardConfig {
  std::uint64_t cap = 20000;
  bool force = false;

  // Throws GuardrailError when dim^arity exceeds the cap and force is unset.
  void admit(Index algebra_dim, Index max_arity) const;
};

// First-quadrant truncation of the cyclic bicomplex: columns 0..max_col,
// rows 0..max_row, cell (p, q) = A^{otimes(q+1)}. Vertical differential
// is b on even columns and -b' on odd ones; the horizontal differential
// into column p-1 is (1-t) for p odd and N for p even.
struct BicomplexLayout {
  AlgebraPtr algebra;
  Index max_col = 0;
  Index max_row = 0;

  bool operator==(const BicomplexLayout& other) const {
    return algebra == other.algebra && max_col == other.max_col && max_row == other.max_row;
  }
};

// Window of the negative cyclic complex: the quotient by the columns
// left of -2M. Degree 0 is rows 0..2M, row j in column -j carrying
// A^{otimes(j+1)}.
struct MinusWindow {
  AlgebraPtr algebra;
  Index m = 0;  // window parameter M

  Index max_row() const { return 2 * m; }
  bool operator==(const MinusWindow& other) const {
    return algebra == other.algebra && m == other.m;
  }
};

// Ordered cell enumeration of one total degree, with coordinate offsets.
struct TotalSpace {
  struct Cell {
    int col;    // bicomplex column (negative in the minus window)
    Index row;  // bicomplex row; the tensor arity is row + 1
    Index offset;
    Index dim;
  };
  std::vector<Cell> cells;
  Index dim = 0;

  std::optional<std::size_t> find(int col) const;
};

// Element of Tot_m of a first-quadrant layout, stored per column.
struct Chain {
  BicomplexLayout layout;
  int degree = 0;
  std::map<Index, TensorElement> components;  // column -> tensor at row degree-column

  bool is_zero() const;
  bool operator==(const Chain& other) const;
};

// Degree-0 element of the minus window, stored per row.
struct MinusChain {
  MinusWindow window;
  std::map<Index, TensorElement> components;  // row j -> tensor of arity j+1

  bool is_zero() const;
  bool operator==(const MinusChain& other) const;
};

// Hochschild boundary b: A^{otimes(n+1)} -> A^{otimes n}, n >= 1.
SparseMatrix hochschild_b(const AlgebraPtr& algebra, Index n);

// Bar boundary b' (no wrap-around term): same shape as b.
SparseMatrix bar_bprime(const AlgebraPtr& algebra, Index n);

// Signed cyclic permutation t and norm N = 1 + t + ... + t^n on
// A^{otimes(n+1)}, n >= 0.
std::pair<SparseMatrix, SparseMatrix> cyclic_ops(const AlgebraPtr& algebra, Index n);

TotalSpace total_space(const BicomplexLayout& layout, int degree);

// d: Tot_m -> Tot_{m-1} restricted to the layout.
SparseMatrix total_differential(const BicomplexLayout& layout, int degree);

// Degrees -1, 0, 1 of the minus window. The column truncation keeps
// rows 0..2M+degree, so degree -1 stops at row 2M-1 (the boundary-row
// defect at row 2M is dropped) and degree 1 reaches row 2M+1.
TotalSpace minus_space(const MinusWindow& window, int degree);
SparseMatrix minus_total_differential(const MinusWindow& window, int degree);

// Row-2M component of the untruncated differential of a degree-0 chain
// (the part the interior truncation discards).
TensorElement minus_boundary_defect(const MinusChain& chain);

SparseVec chain_to_vec(const TotalSpace& space, const Chain& chain);
Chain vec_to_chain(const BicomplexLayout& layout, int degree, const SparseVec& v);
SparseVec minus_chain_to_vec(const TotalSpace& space, const MinusChain& chain);
MinusChain vec_to_minus_chain(const MinusWindow& window, const SparseVec& v);

// Componentwise generalized trace of a chain over matrix(A, r).
Chain chain_trace(const Chain& chain);

// Deletes columns 0 and 1 and shifts column p to p-2: the chain-level
// periodicity operation. Input must have degree >= 2.
Chain s_truncate(const Chain& chain);

// Rows 0..2m of a minus chain reinterpreted as a first-quadrant chain
// of degree 2m (row j lands in column 2m - j).
Chain minus_project(const MinusChain& chain, Index m);

// One homology group with deterministic representatives and the
// coordinate map onto them.
class HomologyResult {
 public:
  enum class Kind { FirstQuadrant, Minus };

  const std::string& group() const { return group_; }
  const AlgebraPtr& algebra() const { return algebra_; }
  const FieldSpec& field() const { return field_; }
  Kind kind() const { return kind_; }
  int degree() const { return degree_; }
  std::size_t dim() const { return sub_.dim(); }
  const BicomplexLayout& layout() const { return layout_; }
  const MinusWindow& window() const { return window_; }
  const Subquotient& subquotient() const { return sub_; }
  std::optional<bool> stabilized() const { return stabilized_; }

  Chain representative(std::size_t i) const;
  MinusChain representative_minus(std::size_t i) const;

  DenseVector coords(const Chain& cycle) const;
  DenseVector coords(const MinusChain& cycle) const;

 private:
  friend HomologyResult hc(const AlgebraPtr&, Index, const GuardConfig&);
  friend HomologyResult hh(const AlgebraPtr&, Index, const GuardConfig&);
  friend HomologyResult hc_minus0(const AlgebraPtr&, Index, const GuardConfig&);

  HomologyResult(std::string group, AlgebraPtr algebra, Kind kind, int degree,
                 BicomplexLayout layout, MinusWindow window, Subquotient sub)
      : group_(std::move(group)), algebra_(std::move(algebra)), field_(algebra_->field()),
        kind_(kind), degree_(degree), layout_(std::move(layout)), window_(std::move(window)),
        sub_(std::move(sub)) {}

  std::string group_;
  AlgebraPtr algebra_;
  FieldSpec field_;
  Kind kind_;
  int degree_;
  BicomplexLayout layout_;
  MinusWindow window_;
  Subquotient sub_;
  std::optional<bool> stabilized_;
};

// HC_n(A) over the layout with columns and rows 0..n+1.
HomologyResult hc(const AlgebraPtr& algebra, Index n, const GuardConfig& guard = {});

// HH_n(A): homology of the b-column (the max_col = 0 layout).
HomologyResult hh(const AlgebraPtr& algebra, Index n, const GuardConfig& guard = {});

// Matrix of S: HC_{2n} -> HC_{2n-2} in the representative bases.
SparseMatrix s_map(const AlgebraPtr& algebra, Index n, const HomologyResult& hc_2n,
                   const HomologyResult& hc_2n_minus_2);

// Degree-0 homology of the minus window; recomputes at M+1 and flags
// whether the dimension stabilized.
HomologyResult hc_minus0(const AlgebraPtr& algebra, Index window_m,
                         const GuardConfig& guard = {});

// Finite S-tower approximation of the degree-0 periodic group.
struct PeriodicApprox {
  AlgebraPtr algebra;
  Index n_max = 0;
  std::vector<std::size_t> hc_dims;      // dim HC_{2j}, j = 0..n_max
  std::vector<SparseMatrix> s_matrices;  // S: HC_{2j} -> HC_{2j-2}, j = 1..n_max
  std::size_t dim = 0;                   // eventual-image dimension
  Index stable_from = 0;                 // all S above this level are isomorphisms
  bool stabilized = false;
};

PeriodicApprox hc_per0(const AlgebraPtr& algebra, Index n_max, const GuardConfig& guard = {});

}  // namespace cychom

#endif  // CYCHOM_COMPLEX_HPP
