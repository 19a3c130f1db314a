#include "cychom/complex.hpp"

#include <algorithm>

namespace cychom {

namespace {

std::uint64_t pow_u64(Index base, Index exp) {
  std::uint64_t out = 1;
  for (Index i = 0; i < exp; ++i) out *= base;
  return out;
}

int par(int c) { return ((c % 2) + 2) % 2; }

using Triplets = std::vector<std::tuple<Index, Index, Rational>>;

void add_block(Triplets& trips, const SparseMatrix& block, Index row_off, Index col_off) {
  for (Index j = 0; j < block.cols(); ++j) {
    for (const auto& [i, v] : block.column(j)) {
      trips.emplace_back(row_off + i, col_off + j, v);
    }
  }
}

// b (wrap = true) or b' (wrap = false) on A^{otimes(n+1)}.
SparseMatrix boundary_matrix(const AlgebraPtr& a, Index n, bool wrap) {
  if (n < 1) throw DimensionError("boundary requires arity index n >= 1");
  const Index d = a->dim();
  const FieldSpec& field = a->field();
  const Index src_dim = static_cast<Index>(tensor_dim(d, n + 1));
  const Index dst_dim = static_cast<Index>(tensor_dim(d, n));
  std::vector<std::uint64_t> pw(n + 1);
  for (Index e = 0; e <= n; ++e) pw[e] = pow_u64(d, e);

  Triplets trips;
  std::vector<Index> tuple;
  for (Index col = 0; col < src_dim; ++col) {
    tuple = tensor_decode(d, n + 1, col);
    std::map<Index, Rational> acc;
    for (Index i = 0; i < n; ++i) {
      const SparseVec& prod = a->structure(tuple[i], tuple[i + 1]);
      if (prod.empty()) continue;
      std::uint64_t base = 0;
      for (Index k = 0; k < i; ++k) base += tuple[k] * pw[n - 1 - k];
      for (Index k = i + 2; k <= n; ++k) base += tuple[k] * pw[n - k];
      const int sign = (i % 2 == 0) ? 1 : -1;
      for (const auto& [l, c] : prod) {
        acc[static_cast<Index>(base + l * pw[n - 1 - i])] += sign * c;
      }
    }
    if (wrap) {
      const SparseVec& prod = a->structure(tuple[n], tuple[0]);
      if (!prod.empty()) {
        std::uint64_t base = 0;
        for (Index k = 1; k < n; ++k) base += tuple[k] * pw[n - 1 - k];
        const int sign = (n % 2 == 0) ? 1 : -1;
        for (const auto& [l, c] : prod) {
          acc[static_cast<Index>(base + l * pw[n - 1])] += sign * c;
        }
      }
    }
    for (auto& [row, v] : acc) {
      field.normalize(v);
      if (v != 0) trips.emplace_back(row, col, v);
    }
  }
  return SparseMatrix::from_triplets(dst_dim, src_dim, field, trips);
}

}  // namespace

void GuardConfig::admit(Index algebra_dim, Index max_arity) const {
  std::uint64_t dim = 1;
  for (Index i = 0; i < max_arity; ++i) {
    dim *= algebra_dim;
    if (dim > cap) {
      if (force) return;  // still subject to the hard tensor_dim overflow guard
      throw GuardrailError(dim, cap);
    }
  }
}

SparseMatrix hochschild_b(const AlgebraPtr& algebra, Index n) {
  return boundary_matrix(algebra, n, true);
}

SparseMatrix bar_bprime(const AlgebraPtr& algebra, Index n) {
  return boundary_matrix(algebra, n, false);
}

std::pair<SparseMatrix, SparseMatrix> cyclic_ops(const AlgebraPtr& algebra, Index n) {
  const Index d = algebra->dim();
  const FieldSpec& field = algebra->field();
  const Index dim = static_cast<Index>(tensor_dim(d, n + 1));
  const std::uint64_t top = pow_u64(d, n);

  Triplets t_trips;
  for (Index col = 0; col < dim; ++col) {
    const Index last = col % d;
    const Index row = static_cast<Index>(last * top + (col - last) / d);
    t_trips.emplace_back(row, col, Rational(n % 2 == 0 ? 1 : -1));
  }
  SparseMatrix t = SparseMatrix::from_triplets(dim, dim, field, t_trips);

  Triplets n_trips;
  for (Index col = 0; col < dim; ++col) {
    std::map<Index, Rational> acc;
    Index cur = col;
    int sign = 1;
    for (Index i = 0; i <= n; ++i) {
      acc[cur] += sign;
      const Index last = cur % d;
      cur = static_cast<Index>(last * top + (cur - last) / d);
      if (n % 2 == 1) sign = -sign;
    }
    for (auto& [row, v] : acc) {
      field.normalize(v);
      if (v != 0) n_trips.emplace_back(row, col, v);
    }
  }
  SparseMatrix norm = SparseMatrix::from_triplets(dim, dim, field, n_trips);
  return {std::move(t), std::move(norm)};
}

std::optional<std::size_t> TotalSpace::find(int col) const {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].col == col) return i;
  }
  return std::nullopt;
}

TotalSpace total_space(const BicomplexLayout& layout, int degree) {
  TotalSpace space;
  if (degree < 0) return space;
  const Index d = layout.algebra->dim();
  for (Index p = 0; p <= layout.max_col && p <= static_cast<Index>(degree); ++p) {
    const Index q = static_cast<Index>(degree) - p;
    if (q > layout.max_row) continue;
    TotalSpace::Cell cell;
    cell.col = static_cast<int>(p);
    cell.row = q;
    cell.offset = space.dim;
    cell.dim = static_cast<Index>(tensor_dim(d, q + 1));
    space.dim += cell.dim;
    space.cells.push_back(cell);
  }
  return space;
}

namespace {

// Shared block assembly for the first-quadrant and minus-window cases.
// The vertical block at column c is b (c even) or -b' (c odd); the
// horizontal block out of column c is (1-t) (c odd) or N (c even).
SparseMatrix assemble_differential(const AlgebraPtr& algebra, const TotalSpace& src,
                                   const TotalSpace& dst) {
  const FieldSpec& field = algebra->field();
  Triplets trips;
  for (const auto& cell : src.cells) {
    const Index q = cell.row;
    // vertical: (c, q) -> (c, q-1)
    if (q >= 1) {
      if (auto ti = dst.find(cell.col)) {
        const auto& target = dst.cells[*ti];
        if (target.row != q - 1) throw TruncationError("inconsistent target row");
        SparseMatrix block = par(cell.col) == 0 ? hochschild_b(algebra, q)
                                                : bar_bprime(algebra, q).scale(Rational(-1));
        add_block(trips, block, target.offset, cell.offset);
      }
    }
    // horizontal: (c, q) -> (c-1, q)
    if (auto ti = dst.find(cell.col - 1)) {
      const auto& target = dst.cells[*ti];
      if (target.row != q) throw TruncationError("inconsistent target row");
      auto [t, norm] = cyclic_ops(algebra, q);
      SparseMatrix block = par(cell.col) == 1
                               ? SparseMatrix::identity(t.rows(), field).add(t.scale(Rational(-1)))
                               : norm;
      add_block(trips, block, target.offset, cell.offset);
    }
  }
  return SparseMatrix::from_triplets(dst.dim, src.dim, field, trips);
}

}  // namespace

SparseMatrix total_differential(const BicomplexLayout& layout, int degree) {
  const TotalSpace src = total_space(layout, degree);
  const TotalSpace dst = total_space(layout, degree - 1);
  return assemble_differential(layout.algebra, src, dst);
}

TotalSpace minus_space(const MinusWindow& window, int degree) {
  // Column truncation: the quotient of the minus bicomplex by the
  // columns left of -2M. Cell (degree - j, j) is kept iff its column
  // is >= -2M, i.e. j <= 2M + degree.
  TotalSpace space;
  const Index d = window.algebra->dim();
  const int row_lo = std::max(0, degree);
  const int row_hi = static_cast<int>(window.max_row()) + degree;
  for (int j = row_lo; j <= row_hi; ++j) {
    TotalSpace::Cell cell;
    cell.col = degree - j;
    cell.row = static_cast<Index>(j);
    cell.offset = space.dim;
    cell.dim = static_cast<Index>(tensor_dim(d, cell.row + 1));
    space.dim += cell.dim;
    space.cells.push_back(cell);
  }
  return space;
}

SparseMatrix minus_total_differential(const MinusWindow& window, int degree) {
  const TotalSpace src = minus_space(window, degree);
  const TotalSpace dst = minus_space(window, degree - 1);
  return assemble_differential(window.algebra, src, dst);
}

TensorElement minus_boundary_defect(const MinusChain& chain) {
  const Index top = chain.window.max_row();
  const AlgebraPtr& a = chain.window.algebra;
  auto it = chain.components.find(top);
  TensorElement zero{a, top + 1, {}};
  if (it == chain.components.end()) return zero;
  // Only the horizontal block out of column -2M is dropped by the
  // interior truncation; -2M is even, so it is the norm N.
  auto [t, norm] = cyclic_ops(a, top);
  return TensorElement{a, top + 1, norm.apply(it->second.coords)};
}

bool Chain::is_zero() const {
  return std::all_of(components.begin(), components.end(),
                     [](const auto& kv) { return kv.second.is_zero(); });
}

namespace {

template <typename Map>
Map normalized_components(const Map& components) {
  Map out;
  for (const auto& [key, tensor] : components) {
    if (!tensor.is_zero()) out.emplace(key, tensor);
  }
  return out;
}

}  // namespace

bool Chain::operator==(const Chain& other) const {
  return degree == other.degree &&
         normalized_components(components) == normalized_components(other.components);
}

bool MinusChain::is_zero() const {
  return std::all_of(components.begin(), components.end(),
                     [](const auto& kv) { return kv.second.is_zero(); });
}

bool MinusChain::operator==(const MinusChain& other) const {
  return normalized_components(components) == normalized_components(other.components);
}

SparseVec chain_to_vec(const TotalSpace& space, const Chain& chain) {
  SparseVec out;
  for (const auto& [col, tensor] : chain.components) {
    if (tensor.is_zero()) continue;
    auto ci = space.find(static_cast<int>(col));
    if (!ci) throw TruncationError("chain component at column " + std::to_string(col) +
                                   " falls outside the layout");
    const auto& cell = space.cells[*ci];
    if (tensor.arity != cell.row + 1) throw DimensionError("chain component arity mismatch");
    for (const auto& [i, v] : tensor.coords) out.emplace_back(cell.offset + i, v);
  }
  std::sort(out.begin(), out.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  return out;
}

Chain vec_to_chain(const BicomplexLayout& layout, int degree, const SparseVec& v) {
  const TotalSpace space = total_space(layout, degree);
  Chain chain{layout, degree, {}};
  if (space.cells.empty() && !v.empty()) throw DimensionError("vector in empty total space");
  std::size_t ci = 0;
  for (const auto& [i, c] : v) {
    while (ci + 1 < space.cells.size() && space.cells[ci + 1].offset <= i) ++ci;
    const auto& cell = space.cells[ci];
    if (i < cell.offset || i >= cell.offset + cell.dim) {
      throw DimensionError("vector index outside total space");
    }
    auto [it, inserted] = chain.components.try_emplace(
        static_cast<Index>(cell.col), TensorElement{layout.algebra, cell.row + 1, {}});
    it->second.coords.emplace_back(i - cell.offset, c);
  }
  return chain;
}

SparseVec minus_chain_to_vec(const TotalSpace& space, const MinusChain& chain) {
  SparseVec out;
  for (const auto& [row, tensor] : chain.components) {
    if (tensor.is_zero()) continue;
    auto ci = space.find(-static_cast<int>(row));
    if (!ci) throw TruncationError("minus-chain component at row " + std::to_string(row) +
                                   " falls outside the window");
    const auto& cell = space.cells[*ci];
    if (tensor.arity != cell.row + 1) throw DimensionError("chain component arity mismatch");
    for (const auto& [i, v] : tensor.coords) out.emplace_back(cell.offset + i, v);
  }
  std::sort(out.begin(), out.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  return out;
}

MinusChain vec_to_minus_chain(const MinusWindow& window, const SparseVec& v) {
  const TotalSpace space = minus_space(window, 0);
  MinusChain chain{window, {}};
  if (space.cells.empty() && !v.empty()) throw DimensionError("vector in empty window space");
  std::size_t ci = 0;
  for (const auto& [i, c] : v) {
    while (ci + 1 < space.cells.size() && space.cells[ci + 1].offset <= i) ++ci;
    const auto& cell = space.cells[ci];
    if (i < cell.offset || i >= cell.offset + cell.dim) {
      throw DimensionError("vector index outside window space");
    }
    auto [it, inserted] = chain.components.try_emplace(
        cell.row, TensorElement{window.algebra, cell.row + 1, {}});
    it->second.coords.emplace_back(i - cell.offset, c);
  }
  return chain;
}

Chain chain_trace(const Chain& chain) {
  const auto& info = chain.layout.algebra->matrix_info();
  if (!info) throw AlgebraError("chain_trace requires a chain over a matrix(A, r) algebra");
  BicomplexLayout inner_layout{info->inner, chain.layout.max_col, chain.layout.max_row};
  Chain out{inner_layout, chain.degree, {}};
  for (const auto& [col, tensor] : chain.components) {
    TensorElement traced = generalized_trace(tensor);
    if (!traced.is_zero()) out.components.emplace(col, std::move(traced));
  }
  return out;
}

Chain s_truncate(const Chain& chain) {
  if (chain.degree < 2) throw TruncationError("s_truncate requires degree >= 2");
  BicomplexLayout layout{chain.layout.algebra,
                         chain.layout.max_col >= 2 ? chain.layout.max_col - 2 : 0,
                         chain.layout.max_row};
  Chain out{layout, chain.degree - 2, {}};
  for (const auto& [col, tensor] : chain.components) {
    if (col < 2) continue;
    if (!tensor.is_zero()) out.components.emplace(col - 2, tensor);
  }
  return out;
}

Chain minus_project(const MinusChain& chain, Index m) {
  if (2 * m > chain.window.max_row()) {
    throw TruncationError("minus_project: window shorter than requested degree");
  }
  BicomplexLayout layout{chain.window.algebra, 2 * m + 1, 2 * m + 1};
  Chain out{layout, static_cast<int>(2 * m), {}};
  for (const auto& [row, tensor] : chain.components) {
    if (row > 2 * m || tensor.is_zero()) continue;
    out.components.emplace(2 * m - row, tensor);
  }
  return out;
}

Chain HomologyResult::representative(std::size_t i) const {
  if (kind_ != Kind::FirstQuadrant) throw TruncationError("representative: not a layout group");
  return vec_to_chain(layout_, degree_, sub_.representatives().at(i));
}

MinusChain HomologyResult::representative_minus(std::size_t i) const {
  if (kind_ != Kind::Minus) throw TruncationError("representative_minus: not a minus group");
  return vec_to_minus_chain(window_, sub_.representatives().at(i));
}

DenseVector HomologyResult::coords(const Chain& cycle) const {
  if (kind_ != Kind::FirstQuadrant) throw TruncationError("coords: not a layout group");
  if (cycle.degree != degree_) throw DimensionError("coords: degree mismatch");
  if (!same_algebra(cycle.layout.algebra, algebra_)) {
    throw AlgebraError("coords: chain over a different algebra");
  }
  return sub_.coords(chain_to_vec(total_space(layout_, degree_), cycle));
}

DenseVector HomologyResult::coords(const MinusChain& cycle) const {
  if (kind_ != Kind::Minus) throw TruncationError("coords: not a minus group");
  if (!same_algebra(cycle.window.algebra, algebra_)) {
    throw AlgebraError("coords: chain over a different algebra");
  }
  return sub_.coords(minus_chain_to_vec(minus_space(window_, 0), cycle));
}

HomologyResult hc(const AlgebraPtr& algebra, Index n, const GuardConfig& guard) {
  guard.admit(algebra->dim(), n + 2);
  BicomplexLayout layout{algebra, n + 1, n + 1};
  SparseMatrix d_in = total_differential(layout, static_cast<int>(n) + 1);
  SparseMatrix d_out = total_differential(layout, static_cast<int>(n));
  return HomologyResult("HC_" + std::to_string(n), algebra, HomologyResult::Kind::FirstQuadrant,
                        static_cast<int>(n), layout, MinusWindow{algebra, 0},
                        subquotient(d_in, d_out));
}

HomologyResult hh(const AlgebraPtr& algebra, Index n, const GuardConfig& guard) {
  guard.admit(algebra->dim(), n + 2);
  BicomplexLayout layout{algebra, 0, n + 1};
  SparseMatrix d_in = total_differential(layout, static_cast<int>(n) + 1);
  SparseMatrix d_out = total_differential(layout, static_cast<int>(n));
  return HomologyResult("HH_" + std::to_string(n), algebra, HomologyResult::Kind::FirstQuadrant,
                        static_cast<int>(n), layout, MinusWindow{algebra, 0},
                        subquotient(d_in, d_out));
}

SparseMatrix s_map(const AlgebraPtr& algebra, Index n, const HomologyResult& hc_2n,
                   const HomologyResult& hc_2n_minus_2) {
  if (n < 1) throw TruncationError("s_map requires n >= 1");
  if (hc_2n.degree() != static_cast<int>(2 * n) ||
      hc_2n_minus_2.degree() != static_cast<int>(2 * n - 2)) {
    throw DimensionError("s_map: homology results have unexpected degrees");
  }
  Triplets trips;
  for (std::size_t j = 0; j < hc_2n.dim(); ++j) {
    Chain truncated = s_truncate(hc_2n.representative(j));
    DenseVector target = hc_2n_minus_2.coords(truncated);
    for (Index i = 0; i < target.length(); ++i) {
      if (target.coords[i] != 0) {
        trips.emplace_back(i, static_cast<Index>(j), target.coords[i]);
      }
    }
  }
  return SparseMatrix::from_triplets(static_cast<Index>(hc_2n_minus_2.dim()),
                                     static_cast<Index>(hc_2n.dim()), algebra->field(), trips);
}

HomologyResult hc_minus0(const AlgebraPtr& algebra, Index window_m, const GuardConfig& guard) {
  guard.admit(algebra->dim(), 2 * window_m + 2);  // degree 1 reaches row 2M+1
  MinusWindow window{algebra, window_m};
  SparseMatrix d_in = minus_total_differential(window, 1);
  SparseMatrix d_out = minus_total_differential(window, 0);
  HomologyResult result("HC^-_0", algebra, HomologyResult::Kind::Minus, 0,
                        BicomplexLayout{algebra, 0, 0}, window, subquotient(d_in, d_out));
  // Stabilization probe at M+1; left unknown when the larger window is
  // not admitted by the guardrail.
  try {
    guard.admit(algebra->dim(), 2 * (window_m + 1) + 2);
    MinusWindow bigger{algebra, window_m + 1};
    SparseMatrix bd_in = minus_total_differential(bigger, 1);
    SparseMatrix bd_out = minus_total_differential(bigger, 0);
    result.stabilized_ = subquotient(bd_in, bd_out).dim() == result.dim();
  } catch (const GuardrailError&) {
    result.stabilized_ = std::nullopt;
  }
  return result;
}

PeriodicApprox hc_per0(const AlgebraPtr& algebra, Index n_max, const GuardConfig& guard) {
  PeriodicApprox approx;
  approx.algebra = algebra;
  approx.n_max = n_max;
  std::vector<HomologyResult> groups;
  groups.reserve(n_max + 1);
  for (Index j = 0; j <= n_max; ++j) groups.push_back(hc(algebra, 2 * j, guard));
  for (Index j = 0; j <= n_max; ++j) approx.hc_dims.push_back(groups[j].dim());
  for (Index j = 1; j <= n_max; ++j) {
    approx.s_matrices.push_back(s_map(algebra, j, groups[j], groups[j - 1]));
  }
  // stable_from = least level above which every S step is invertible.
  Index stable_from = n_max;
  while (stable_from > 0) {
    const SparseMatrix& s = approx.s_matrices[stable_from - 1];
    const bool iso = s.rows() == s.cols() && rank(s) == s.rows();
    if (!iso) break;
    --stable_from;
  }
  approx.stable_from = stable_from;
  approx.stabilized = stable_from < n_max;
  // Eventual image: rank of the full composite HC_{2 n_max} -> HC_0.
  SparseMatrix composite =
      SparseMatrix::identity(static_cast<Index>(groups[n_max].dim()), algebra->field());
  for (Index j = n_max; j >= 1; --j) {
    composite = approx.s_matrices[j - 1].multiply(composite);
  }
  approx.dim = rank(composite);
  return approx;
}

}  // namespace cychom
