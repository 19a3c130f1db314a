#include "cychom/chern.hpp"

namespace cychom {

namespace {

mpz_class rising_product(Index lo, Index hi) {
  mpz_class v = 1;
  for (Index j = lo; j <= hi; ++j) v *= j;
  return v;
}

void require_ground(const AlgebraPtr& a, const char* what) {
  if (a->dim() != 1) {
    throw AlgebraError(std::string(what) + " is defined over the ground field only, got " +
                       a->name());
  }
}

void require_cycle(const Chain& chain) {
  const BicomplexLayout& layout = chain.layout;
  const SparseMatrix d = total_differential(layout, chain.degree);
  if (!d.apply(chain_to_vec(total_space(layout, chain.degree), chain)).empty()) {
    throw CompositionError("chern chain is not a cycle (operator convention mismatch)");
  }
}

void require_interior_cycle(const MinusChain& chain) {
  const SparseMatrix d = minus_total_differential(chain.window, 0);
  if (!d.apply(minus_chain_to_vec(minus_space(chain.window, 0), chain)).empty()) {
    throw CompositionError("chern minus-chain is not an interior cycle");
  }
}

}  // namespace

Rational u_y_coeff(Index i) {
  mpz_class v = rising_product(i + 1, 2 * i);  // (2i)!/i!
  if (i % 2 == 1) v = -v;
  return Rational(v);
}

Rational u_z_coeff(Index i) {
  if (i < 1) throw DimensionError("z_i is defined for i >= 1");
  mpz_class v = rising_product(i + 1, 2 * i) / 2;  // (2i)!/(2 i!)
  if (i % 2 == 0) v = -v;
  return Rational(v);
}

Chain u_generator(const AlgebraPtr& ground, Index n) {
  require_ground(ground, "u_generator");
  const FieldSpec& field = ground->field();
  BicomplexLayout layout{ground, 2 * n + 1, 2 * n + 1};
  Chain chain{layout, static_cast<int>(2 * n), {}};
  for (Index i = 0; i <= n; ++i) {
    Rational y = field.reduce(u_y_coeff(i));
    if (y != 0) {
      chain.components.emplace(2 * (n - i), TensorElement{ground, 2 * i + 1, {{0, y}}});
    }
    if (i >= 1) {
      Rational z = field.reduce(u_z_coeff(i));
      if (z != 0) {
        chain.components.emplace(2 * (n - i) + 1, TensorElement{ground, 2 * i, {{0, z}}});
      }
    }
  }
  return chain;
}

MinusChain u_generator_minus(const AlgebraPtr& ground, Index window_m) {
  require_ground(ground, "u_generator_minus");
  const FieldSpec& field = ground->field();
  MinusChain chain{MinusWindow{ground, window_m}, {}};
  for (Index i = 0; i <= window_m; ++i) {
    Rational y = field.reduce(u_y_coeff(i));
    if (y != 0) chain.components.emplace(2 * i, TensorElement{ground, 2 * i + 1, {{0, y}}});
    if (i >= 1) {
      Rational z = field.reduce(u_z_coeff(i));
      if (z != 0) chain.components.emplace(2 * i - 1, TensorElement{ground, 2 * i, {{0, z}}});
    }
  }
  return chain;
}

Idempotent Idempotent::checked(MatrixOverA e, std::string name) {
  if (e.size < 1) throw AlgebraError("idempotent must have size >= 1");
  if (!(e.multiply(e) == e)) {
    throw AlgebraError("matrix '" + name + "' is not idempotent (e*e != e)");
  }
  Idempotent out;
  out.matrix_algebra_ = Algebra::matrix(e.algebra, e.size);
  out.element_ = e.as_element(out.matrix_algebra_);
  out.matrix_ = std::move(e);
  out.verified_ = true;
  out.name_ = std::move(name);
  return out;
}

MatrixOverA identity_matrix_over(const AlgebraPtr& algebra, Index r) {
  MatrixOverA m = MatrixOverA::zero(algebra, r);
  for (Index i = 0; i < r; ++i) m.at(i, i) = algebra->unit();
  return m;
}

Idempotent conjugated(const Idempotent& e, const MatrixOverA& g, const MatrixOverA& g_inv) {
  const MatrixOverA id = identity_matrix_over(e.inner_algebra(), e.size());
  if (!(g.multiply(g_inv) == id) || !(g_inv.multiply(g) == id)) {
    throw AlgebraError("conjugated: g_inv is not a two-sided inverse of g");
  }
  return Idempotent::checked(g.multiply(e.matrix()).multiply(g_inv),
                             "conj(" + e.name() + ")");
}

Chain chern_chain(const Idempotent& e, Index n, const GuardConfig& guard) {
  if (!e.verified()) throw AlgebraError("chern requires a verified idempotent");
  const AlgebraPtr& inner = e.inner_algebra();
  guard.admit(inner->dim(), 2 * n + 1);
  const FieldSpec& field = inner->field();
  BicomplexLayout layout{inner, 2 * n + 1, 2 * n + 1};
  Chain chain{layout, static_cast<int>(2 * n), {}};
  for (Index i = 0; i <= n; ++i) {
    TensorElement ty = generalized_trace(tensor_power(e.matrix_algebra(), e.element(), 2 * i + 1));
    TensorElement y = tensor_scale(field.reduce(u_y_coeff(i)), ty);
    if (!y.is_zero()) chain.components.emplace(2 * (n - i), std::move(y));
    if (i >= 1) {
      TensorElement tz = generalized_trace(tensor_power(e.matrix_algebra(), e.element(), 2 * i));
      TensorElement z = tensor_scale(field.reduce(u_z_coeff(i)), tz);
      if (!z.is_zero()) chain.components.emplace(2 * (n - i) + 1, std::move(z));
    }
  }
  require_cycle(chain);
  return chain;
}

MinusChain chern_minus_chain(const Idempotent& e, Index window_m, const GuardConfig& guard) {
  if (!e.verified()) throw AlgebraError("chern requires a verified idempotent");
  const AlgebraPtr& inner = e.inner_algebra();
  guard.admit(inner->dim(), 2 * window_m + 1);
  const FieldSpec& field = inner->field();
  MinusChain chain{MinusWindow{inner, window_m}, {}};
  for (Index i = 0; i <= window_m; ++i) {
    TensorElement ty = generalized_trace(tensor_power(e.matrix_algebra(), e.element(), 2 * i + 1));
    TensorElement y = tensor_scale(field.reduce(u_y_coeff(i)), ty);
    if (!y.is_zero()) chain.components.emplace(2 * i, std::move(y));
    if (i >= 1) {
      TensorElement tz = generalized_trace(tensor_power(e.matrix_algebra(), e.element(), 2 * i));
      TensorElement z = tensor_scale(field.reduce(u_z_coeff(i)), tz);
      if (!z.is_zero()) chain.components.emplace(2 * i - 1, std::move(z));
    }
  }
  require_interior_cycle(chain);
  return chain;
}

ChernResult chern(const Idempotent& e, Index n, const GuardConfig& guard) {
  Chain chain = chern_chain(e, n, guard);
  HomologyResult homology = hc(e.inner_algebra(), 2 * n, guard);
  DenseVector cls = homology.coords(chain);
  return ChernResult{std::move(chain), std::move(homology), std::move(cls)};
}

ChernMinusResult chern_minus(const Idempotent& e, Index window_m, const GuardConfig& guard) {
  MinusChain chain = chern_minus_chain(e, window_m, guard);
  HomologyResult homology = hc_minus0(e.inner_algebra(), window_m, guard);
  DenseVector cls = homology.coords(chain);
  return ChernMinusResult{std::move(chain), std::move(homology), std::move(cls)};
}

ChernResult chern_k0(const K0Witness& w, Index n, const GuardConfig& guard) {
  AlgebraPtr inner;
  auto note_algebra = [&inner](const Idempotent& e) {
    if (!inner) {
      inner = e.inner_algebra();
    } else if (!same_algebra(inner, e.inner_algebra())) {
      throw AlgebraError("chern_k0: witness mixes inner algebras");
    }
  };
  for (const auto& e : w.plus) note_algebra(e);
  for (const auto& e : w.minus) note_algebra(e);
  if (!inner) throw AlgebraError("chern_k0: empty witness");
  Chain total{BicomplexLayout{inner, 2 * n + 1, 2 * n + 1}, static_cast<int>(2 * n), {}};
  for (const auto& e : w.plus) total = chain_add(total, chern_chain(e, n, guard));
  for (const auto& e : w.minus) {
    total = chain_add(total, chain_scale(Rational(-1), chern_chain(e, n, guard)));
  }
  HomologyResult homology = hc(inner, 2 * n, guard);
  DenseVector cls = homology.coords(total);
  return ChernResult{std::move(total), std::move(homology), std::move(cls)};
}

namespace {

Rational psi_against(const HomologyResult& group, const SparseVec& generator_vec,
                     const DenseVector& class_coords, const char* what) {
  require_ground(group.algebra(), what);
  if (group.dim() != 1) {
    throw DimensionError(std::string(what) + ": group " + group.group() + " has dimension " +
                         std::to_string(group.dim()) + ", expected 1");
  }
  if (class_coords.length() != 1) {
    throw DimensionError(std::string(what) + ": class coordinate length mismatch");
  }
  DenseVector gen = group.subquotient().coords(generator_vec);
  if (gen.coords[0] == 0) {
    throw AlgebraError(std::string(what) + ": canonical generator is degenerate over " +
                       group.field().to_string());
  }
  return group.field().div(class_coords.coords[0], gen.coords[0]);
}

}  // namespace

Rational psi(const HomologyResult& hc_2n, const DenseVector& class_coords) {
  if (hc_2n.degree() % 2 != 0) throw DimensionError("psi: group degree must be even");
  const Index n = static_cast<Index>(hc_2n.degree()) / 2;
  Chain u = u_generator(hc_2n.algebra(), n);
  return psi_against(hc_2n, chain_to_vec(total_space(hc_2n.layout(), hc_2n.degree()), u),
                     class_coords, "psi");
}

Rational psi(const HomologyResult& hc_2n, const Chain& cycle) {
  return psi(hc_2n, hc_2n.coords(cycle));
}

Rational psi_minus(const HomologyResult& minus0, const DenseVector& class_coords) {
  if (minus0.kind() != HomologyResult::Kind::Minus) {
    throw DimensionError("psi_minus: expected a windowed HC^-_0 result");
  }
  MinusChain u = u_generator_minus(minus0.algebra(), minus0.window().m);
  return psi_against(minus0, minus_chain_to_vec(minus_space(minus0.window(), 0), u),
                     class_coords, "psi_minus");
}

Rational psi_minus(const HomologyResult& minus0, const MinusChain& cycle) {
  return psi_minus(minus0, minus0.coords(cycle));
}

bool class_equal(const AlgebraPtr& algebra, Index degree, const Chain& c1, const Chain& c2,
                 const GuardConfig& guard) {
  guard.admit(algebra->dim(), degree + 2);
  BicomplexLayout layout{algebra, degree + 1, degree + 1};
  const TotalSpace space = total_space(layout, static_cast<int>(degree));
  const SparseMatrix d_out = total_differential(layout, static_cast<int>(degree));
  const SparseVec v1 = chain_to_vec(space, c1);
  const SparseVec v2 = chain_to_vec(space, c2);
  if (!d_out.apply(v1).empty() || !d_out.apply(v2).empty()) {
    throw CompositionError("class_equal: input chain is not a cycle");
  }
  const SparseMatrix d_in = total_differential(layout, static_cast<int>(degree) + 1);
  EchelonBasis image(space.dim, algebra->field());
  for (Index j = 0; j < d_in.cols(); ++j) image.insert(d_in.column(j));
  SparseVec diff = sparse_axpy(algebra->field(), v1, Rational(-1), v2);
  return image.reduce(diff).remainder.empty();
}

Chain chain_add(const Chain& a, const Chain& b) {
  if (a.degree != b.degree || !same_algebra(a.layout.algebra, b.layout.algebra)) {
    throw DimensionError("chain_add: shape mismatch");
  }
  Chain out{a.layout, a.degree, a.components};
  for (const auto& [col, tensor] : b.components) {
    auto it = out.components.find(col);
    if (it == out.components.end()) {
      out.components.emplace(col, tensor);
    } else {
      it->second = tensor_add(it->second, tensor);
      if (it->second.is_zero()) out.components.erase(it);
    }
  }
  return out;
}

Chain chain_scale(const Rational& c, const Chain& a) {
  Chain out{a.layout, a.degree, {}};
  for (const auto& [col, tensor] : a.components) {
    TensorElement scaled = tensor_scale(c, tensor);
    if (!scaled.is_zero()) out.components.emplace(col, std::move(scaled));
  }
  return out;
}

MinusChain minus_chain_add(const MinusChain& a, const MinusChain& b) {
  if (!same_algebra(a.window.algebra, b.window.algebra)) {
    throw DimensionError("minus_chain_add: shape mismatch");
  }
  MinusChain out{a.window, a.components};
  for (const auto& [row, tensor] : b.components) {
    auto it = out.components.find(row);
    if (it == out.components.end()) {
      out.components.emplace(row, tensor);
    } else {
      it->second = tensor_add(it->second, tensor);
      if (it->second.is_zero()) out.components.erase(it);
    }
  }
  return out;
}

MinusChain minus_chain_scale(const Rational& c, const MinusChain& a) {
  MinusChain out{a.window, {}};
  for (const auto& [row, tensor] : a.components) {
    TensorElement scaled = tensor_scale(c, tensor);
    if (!scaled.is_zero()) out.components.emplace(row, std::move(scaled));
  }
  return out;
}

}  // namespace cychom
