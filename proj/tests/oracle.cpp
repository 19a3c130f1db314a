#include "oracle.hpp"

#include <algorithm>

namespace cychom::oracle {

namespace {

Index dpow(Index d, Index e) {
  Index out = 1;
  while (e--) out *= d;
  return out;
}

std::vector<Index> decode(Index d, Index arity, Index idx) {
  std::vector<Index> t(arity);
  for (Index i = arity; i-- > 0;) {
    t[i] = idx % d;
    idx /= d;
  }
  return t;
}

int parity(int c) { return ((c % 2) + 2) % 2; }

// b (wrap) or b' (no wrap) applied to a dense vector of arity n+1.
Dense apply_boundary(const AlgebraPtr& a, Index n, const Dense& x, bool wrap) {
  const Index d = a->dim();
  const FieldSpec& field = a->field();
  Dense out(dpow(d, n), Rational(0));
  for (Index idx = 0; idx < x.size(); ++idx) {
    if (x[idx] == 0) continue;
    const std::vector<Index> t = decode(d, n + 1, idx);
    for (Index i = 0; i < n; ++i) {
      const int sign = (i % 2 == 0) ? 1 : -1;
      for (const auto& [l, c] : a->structure(t[i], t[i + 1])) {
        Index tgt = 0;
        for (Index k = 0; k < n; ++k) {
          tgt = tgt * d + (k < i ? t[k] : (k == i ? l : t[k + 1]));
        }
        out[tgt] += sign * c * x[idx];
      }
    }
    if (wrap) {
      const int sign = (n % 2 == 0) ? 1 : -1;
      for (const auto& [l, c] : a->structure(t[n], t[0])) {
        Index tgt = l;
        for (Index k = 1; k < n; ++k) tgt = tgt * d + t[k];
        out[tgt] += sign * c * x[idx];
      }
    }
  }
  for (Rational& v : out) field.normalize(v);
  return out;
}

Dense apply_one_minus_t(const AlgebraPtr& a, Index n, const Dense& x) {
  const Index d = a->dim();
  const FieldSpec& field = a->field();
  Dense out(x.size(), Rational(0));
  const int sign = (n % 2 == 0) ? 1 : -1;
  for (Index idx = 0; idx < x.size(); ++idx) {
    if (x[idx] == 0) continue;
    const std::vector<Index> t = decode(d, n + 1, idx);
    Index rot = t[n];
    for (Index k = 0; k < n; ++k) rot = rot * d + t[k];
    out[idx] += x[idx];
    out[rot] -= sign * x[idx];
  }
  for (Rational& v : out) field.normalize(v);
  return out;
}

Dense apply_norm(const AlgebraPtr& a, Index n, const Dense& x) {
  const Index d = a->dim();
  const FieldSpec& field = a->field();
  Dense out(x.size(), Rational(0));
  const int step_sign = (n % 2 == 0) ? 1 : -1;
  for (Index idx = 0; idx < x.size(); ++idx) {
    if (x[idx] == 0) continue;
    std::vector<Index> t = decode(d, n + 1, idx);
    int sign = 1;
    for (Index r = 0; r <= n; ++r) {
      Index enc = 0;
      for (Index k = 0; k <= n; ++k) enc = enc * d + t[k];
      out[enc] += sign * x[idx];
      std::rotate(t.rbegin(), t.rbegin() + 1, t.rend());
      sign *= step_sign;
    }
  }
  for (Rational& v : out) field.normalize(v);
  return out;
}

}  // namespace

Space quadrant_space(const AlgebraPtr& a, Index max_col, Index max_row, int degree) {
  Space sp;
  if (degree < 0) return sp;
  const Index d = a->dim();
  for (Index p = 0; p <= max_col && p <= static_cast<Index>(degree); ++p) {
    const Index q = static_cast<Index>(degree) - p;
    if (q > max_row) continue;
    sp.cells.push_back({static_cast<int>(p), q, sp.dim, dpow(d, q + 1)});
    sp.dim += sp.cells.back().dim;
  }
  return sp;
}

Space minus_window_space(const AlgebraPtr& a, Index window_m, int degree) {
  // Column truncation at -2M: keep cell (degree - j, j) iff j <= 2M + degree.
  Space sp;
  const Index d = a->dim();
  const int lo = std::max(0, degree);
  const int hi = 2 * static_cast<int>(window_m) + degree;
  for (int j = lo; j <= hi; ++j) {
    sp.cells.push_back({degree - j, static_cast<Index>(j), sp.dim,
                        dpow(d, static_cast<Index>(j) + 1)});
    sp.dim += sp.cells.back().dim;
  }
  return sp;
}

Dense apply_total(const AlgebraPtr& a, const Space& from, const Space& to, const Dense& x) {
  Dense out(to.dim, Rational(0));
  auto find_to = [&to](int col) -> const Cell* {
    for (const Cell& c : to.cells) {
      if (c.col == col) return &c;
    }
    return nullptr;
  };
  for (const Cell& cell : from.cells) {
    Dense slice(x.begin() + cell.offset, x.begin() + cell.offset + cell.dim);
    bool any = false;
    for (const Rational& v : slice) {
      if (v != 0) {
        any = true;
        break;
      }
    }
    if (!any) continue;
    const Index q = cell.row;
    if (q >= 1) {
      if (const Cell* tgt = find_to(cell.col)) {
        Dense img = parity(cell.col) == 0 ? apply_boundary(a, q, slice, true)
                                          : apply_boundary(a, q, slice, false);
        if (parity(cell.col) == 1) {
          for (Rational& v : img) v = -v;
        }
        for (Index i = 0; i < img.size(); ++i) out[tgt->offset + i] += img[i];
      }
    }
    if (const Cell* tgt = find_to(cell.col - 1)) {
      Dense img = parity(cell.col) == 1 ? apply_one_minus_t(a, q, slice)
                                        : apply_norm(a, q, slice);
      for (Index i = 0; i < img.size(); ++i) out[tgt->offset + i] += img[i];
    }
  }
  for (Rational& v : out) a->field().normalize(v);
  return out;
}

void DenseEchelon::reduce(Dense& v) const {
  for (const auto& [pivot, row] : rows_) {
    field_.normalize(v[pivot]);
    if (v[pivot] == 0) continue;
    const Rational c = v[pivot];
    for (Index i = pivot; i < dim_; ++i) {
      if (row[i] != 0) v[i] -= c * row[i];
    }
  }
  for (Rational& x : v) field_.normalize(x);
}

bool DenseEchelon::insert(Dense v) {
  if (v.size() != dim_) throw DimensionError("oracle echelon dimension mismatch");
  reduce(v);
  Index pivot = dim_;
  for (Index i = 0; i < dim_; ++i) {
    if (v[i] != 0) {
      pivot = i;
      break;
    }
  }
  if (pivot == dim_) return false;
  const Rational inv = field_.inv(v[pivot]);
  for (Index i = pivot; i < dim_; ++i) {
    if (v[i] != 0) v[i] = field_.mul(inv, v[i]);
  }
  auto it = std::lower_bound(rows_.begin(), rows_.end(), pivot,
                             [](const auto& row, Index key) { return row.first < key; });
  rows_.insert(it, {pivot, std::move(v)});
  return true;
}

bool DenseEchelon::in_span(Dense v) const {
  reduce(v);
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

Index rank_total(const AlgebraPtr& a, Index max_col, Index max_row, int degree) {
  const Space from = quadrant_space(a, max_col, max_row, degree);
  const Space to = quadrant_space(a, max_col, max_row, degree - 1);
  DenseEchelon ech(to.dim, a->field());
  Dense unit(from.dim, Rational(0));
  for (Index j = 0; j < from.dim; ++j) {
    unit[j] = 1;
    ech.insert(apply_total(a, from, to, unit));
    unit[j] = 0;
  }
  return static_cast<Index>(ech.rank());
}

std::size_t hc_dim(const AlgebraPtr& a, Index n) {
  const Index bound = n + 1;
  const Space tot_n = quadrant_space(a, bound, bound, static_cast<int>(n));
  const Index r_out = rank_total(a, bound, bound, static_cast<int>(n));
  const Index r_in = rank_total(a, bound, bound, static_cast<int>(n) + 1);
  return tot_n.dim - r_out - r_in;
}

std::size_t hh_dim(const AlgebraPtr& a, Index n) {
  const Space tot_n = quadrant_space(a, 0, n + 1, static_cast<int>(n));
  const Index r_out = rank_total(a, 0, n + 1, static_cast<int>(n));
  const Index r_in = rank_total(a, 0, n + 1, static_cast<int>(n) + 1);
  return tot_n.dim - r_out - r_in;
}

std::size_t minus0_dim(const AlgebraPtr& a, Index window_m) {
  const Space w0 = minus_window_space(a, window_m, 0);
  const Space w_minus = minus_window_space(a, window_m, -1);
  const Space w_plus = minus_window_space(a, window_m, 1);
  DenseEchelon out_ech(w_minus.dim, a->field());
  Dense unit(w0.dim, Rational(0));
  for (Index j = 0; j < w0.dim; ++j) {
    unit[j] = 1;
    out_ech.insert(apply_total(a, w0, w_minus, unit));
    unit[j] = 0;
  }
  DenseEchelon in_ech(w0.dim, a->field());
  Dense unit1(w_plus.dim, Rational(0));
  for (Index j = 0; j < w_plus.dim; ++j) {
    unit1[j] = 1;
    in_ech.insert(apply_total(a, w_plus, w0, unit1));
    unit1[j] = 0;
  }
  return w0.dim - out_ech.rank() - in_ech.rank();
}

bool is_boundary(const AlgebraPtr& a, Index max_col, Index max_row, int degree,
                 const Dense& v) {
  const Space from = quadrant_space(a, max_col, max_row, degree + 1);
  const Space to = quadrant_space(a, max_col, max_row, degree);
  DenseEchelon ech(to.dim, a->field());
  Dense unit(from.dim, Rational(0));
  for (Index j = 0; j < from.dim; ++j) {
    unit[j] = 1;
    ech.insert(apply_total(a, from, to, unit));
    unit[j] = 0;
  }
  return ech.in_span(v);
}

bool is_cycle(const AlgebraPtr& a, Index max_col, Index max_row, int degree, const Dense& v) {
  const Space from = quadrant_space(a, max_col, max_row, degree);
  const Space to = quadrant_space(a, max_col, max_row, degree - 1);
  Dense img = apply_total(a, from, to, v);
  return std::all_of(img.begin(), img.end(), [](const Rational& x) { return x == 0; });
}

std::size_t tower_image_dim(const AlgebraPtr& a, Index n_max) {
  const Index bound = 2 * n_max + 1;
  const int top = static_cast<int>(2 * n_max);
  const Space tot_top = quadrant_space(a, bound, bound, top);
  const Space tot_below = quadrant_space(a, bound, bound, top - 1);
  const Space tot_1 = quadrant_space(a, bound, bound, 1);
  const Space tot_0 = quadrant_space(a, bound, bound, 0);

  // Kernel of d at the top degree via augmented elimination. Rows are
  // kept sorted by pivot so one ascending pass reduces fully.
  std::vector<Dense> kernel;
  {
    struct AugRow {
      Index pivot;
      Dense row;
      Dense aug;
    };
    std::vector<AugRow> rows;
    Dense unit(tot_top.dim, Rational(0));
    for (Index j = 0; j < tot_top.dim; ++j) {
      unit[j] = 1;
      Dense img = apply_total(a, tot_top, tot_below, unit);
      Dense aug(tot_top.dim, Rational(0));
      aug[j] = 1;
      for (const AugRow& r : rows) {
        a->field().normalize(img[r.pivot]);
        if (img[r.pivot] == 0) continue;
        const Rational c = img[r.pivot];
        for (Index i = r.pivot; i < tot_below.dim; ++i) {
          if (r.row[i] != 0) img[i] -= c * r.row[i];
        }
        for (Index i = 0; i < tot_top.dim; ++i) {
          if (r.aug[i] != 0) aug[i] -= c * r.aug[i];
        }
      }
      for (Rational& x : img) a->field().normalize(x);
      Index pivot = tot_below.dim;
      for (Index i = 0; i < tot_below.dim; ++i) {
        if (img[i] != 0) {
          pivot = i;
          break;
        }
      }
      if (pivot == tot_below.dim) {
        for (Rational& x : aug) a->field().normalize(x);
        kernel.push_back(std::move(aug));
      } else {
        const Rational inv = a->field().inv(img[pivot]);
        for (Index i = pivot; i < tot_below.dim; ++i) img[i] = a->field().mul(inv, img[i]);
        for (Index i = 0; i < tot_top.dim; ++i) aug[i] = a->field().mul(inv, aug[i]);
        auto it = std::lower_bound(rows.begin(), rows.end(), pivot,
                                   [](const AugRow& r, Index key) { return r.pivot < key; });
        rows.insert(it, AugRow{pivot, std::move(img), std::move(aug)});
      }
      unit[j] = 0;
    }
  }

  // Boundaries in degree 0, then adjoin the column-(2 n_max) slice of
  // every kernel vector (the chain-level S^{n_max} image).
  DenseEchelon bottom(tot_0.dim, a->field());
  {
    Dense unit(tot_1.dim, Rational(0));
    for (Index j = 0; j < tot_1.dim; ++j) {
      unit[j] = 1;
      bottom.insert(apply_total(a, tot_1, tot_0, unit));
      unit[j] = 0;
    }
  }
  const std::size_t boundary_rank = bottom.rank();
  const Cell* last_cell = nullptr;
  for (const Cell& c : tot_top.cells) {
    if (c.col == top) last_cell = &c;
  }
  if (last_cell == nullptr) throw DimensionError("oracle: missing top column cell");
  for (const Dense& z : kernel) {
    Dense slice(z.begin() + last_cell->offset, z.begin() + last_cell->offset + last_cell->dim);
    bottom.insert(std::move(slice));
  }
  return bottom.rank() - boundary_rank;
}

}  // namespace cychom::oracle
