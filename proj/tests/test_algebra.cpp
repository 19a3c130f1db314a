#include <doctest.h>

#include "cychom/complex.hpp"
#include "generators.hpp"

using namespace cychom;

namespace {

const FieldSpec Q = FieldSpec::rationals();

SparseVec basis(Index i) { return SparseVec{{i, Rational(1)}}; }

}  // namespace

TEST_CASE("ground field: dim 1, b0 * b0 = b0") {
  AlgebraPtr k = Algebra::ground_field(Q);
  CHECK(k->dim() == 1);
  CHECK(k->unit() == basis(0));
  CHECK(k->multiply(basis(0), basis(0)) == basis(0));
  CHECK(k->validate().ok());
}

TEST_CASE("upper_triangular(ground_field): the 3-dimensional T(k)") {
  AlgebraPtr t = Algebra::upper_triangular(Algebra::ground_field(Q));
  CHECK(t->dim() == 3);
  CHECK(t->basis_labels() == std::vector<std::string>{"e11", "e12", "e22"});
  // e11 e12 = e12, e12 e22 = e12, e12 e12 = 0, unit = e11 + e22
  CHECK(t->multiply(basis(0), basis(1)) == basis(1));
  CHECK(t->multiply(basis(1), basis(2)) == basis(1));
  CHECK(t->multiply(basis(1), basis(1)).empty());
  CHECK(t->multiply(basis(1), basis(0)).empty());
  CHECK(t->unit() == SparseVec{{0, Rational(1)}, {2, Rational(1)}});
  CHECK(t->validate().ok());
}

TEST_CASE("matrix(ground_field, 2): matrix units") {
  AlgebraPtr m = Algebra::matrix(Algebra::ground_field(Q), 2);
  CHECK(m->dim() == 4);
  REQUIRE(m->matrix_info().has_value());
  CHECK(m->matrix_info()->size == 2);
  auto unit_idx = [](Index i, Index j) { return i * 2 + j; };
  for (Index i = 0; i < 2; ++i) {
    for (Index j = 0; j < 2; ++j) {
      for (Index l = 0; l < 2; ++l) {
        for (Index p = 0; p < 2; ++p) {
          SparseVec prod = m->multiply(basis(unit_idx(i, j)), basis(unit_idx(l, p)));
          if (j == l) {
            CHECK(prod == basis(unit_idx(i, p)));
          } else {
            CHECK(prod.empty());
          }
        }
      }
    }
  }
}

TEST_CASE("construction dimensions") {
  AlgebraPtr k = Algebra::ground_field(Q);
  AlgebraPtr dual = Algebra::dual_numbers(Q);
  CHECK(Algebra::upper_triangular(dual)->dim() == 3 * dual->dim());
  CHECK(Algebra::matrix(dual, 3)->dim() == 9 * dual->dim());
  CHECK(Algebra::product(dual, k)->dim() == 3);
  CHECK(Algebra::truncated_poly(Q, 5)->dim() == 5);
}

TEST_CASE("truncated polynomials and dual numbers") {
  AlgebraPtr t3 = Algebra::truncated_poly(Q, 3);
  CHECK(t3->multiply(basis(1), basis(1)) == basis(2));
  CHECK(t3->multiply(basis(2), basis(1)).empty());
  AlgebraPtr dual = Algebra::dual_numbers(Q);
  CHECK(dual->multiply(basis(1), basis(1)).empty());  // eps^2 = 0
  CHECK(dual->multiply(dual->unit(), basis(1)) == basis(1));
}

TEST_CASE("validate reports unit-law violations") {
  // b1 b1 = b0 with the unit claimed to be b1: associative, not unital
  AlgebraPtr bad = Algebra::literal("bad", Q, 2, {"b0", "b1"}, basis(1),
                                    {{1, 1, basis(0)}}, /*check=*/false);
  ValidationReport report = bad->validate();
  CHECK(report.associativity_violations.empty());
  CHECK(!report.unit_violations.empty());
  CHECK(!report.ok());
  CHECK_THROWS_AS(Algebra::literal("bad", Q, 2, {"b0", "b1"}, basis(1), {{1, 1, basis(0)}}),
                  AlgebraError);
}

TEST_CASE("validate reports associativity violations") {
  // b1 b1 = b0 but b1 b0 = 0: (b1 b1) b0 = b0 while b1 (b1 b0) = 0
  AlgebraPtr nonassoc = Algebra::literal(
      "nonassoc", Q, 2, {"b0", "b1"}, basis(0),
      {{0, 0, basis(0)}, {0, 1, basis(1)}, {1, 1, basis(0)}},
      /*check=*/false);
  ValidationReport report = nonassoc->validate();
  CHECK(!report.associativity_violations.empty());
}

TEST_CASE("construction parser") {
  AlgebraPtr a = parse_construction("upper_triangular( product(ground_field, dual_numbers) )", Q);
  CHECK(a->dim() == 9);
  CHECK(a->name() == "upper_triangular(product(ground_field,dual_numbers))");
  CHECK(parse_construction("matrix(truncated_poly(3), 2)", Q)->dim() == 12);
  CHECK_THROWS_AS(parse_construction("unknown_thing", Q), AlgebraError);
  CHECK_THROWS_AS(parse_construction("ground_field extra", Q), AlgebraError);
  CHECK_THROWS_AS(parse_construction("matrix(ground_field)", Q), AlgebraError);
  CHECK_THROWS_AS(parse_construction("truncated_poly(1)", Q), AlgebraError);
  CHECK_THROWS_AS(parse_construction("matrix(ground_field, 0)", Q), AlgebraError);
}

TEST_CASE("tensor index encode/decode roundtrip") {
  auto g = testgen::rng(23);
  for (Index d : {2u, 3u, 5u}) {
    for (Index arity : {1u, 2u, 3u, 4u}) {
      std::uniform_int_distribution<Index> pick(0, d - 1);
      for (int trial = 0; trial < 20; ++trial) {
        std::vector<Index> tuple(arity);
        for (auto& t : tuple) t = pick(g);
        CHECK(tensor_decode(d, arity, tensor_encode(d, tuple)) == tuple);
      }
    }
  }
}

TEST_CASE("tensor_power expands pure tensors") {
  AlgebraPtr dual = Algebra::dual_numbers(Q);
  SparseVec x{{0, Rational(1)}, {1, Rational(2)}};  // 1 + 2 eps
  TensorElement t = tensor_power(dual, x, 2);
  // (1 + 2e)(x)(1 + 2e) = 1(x)1 + 2 1(x)e + 2 e(x)1 + 4 e(x)e
  REQUIRE(t.coords.size() == 4);
  CHECK(t.coords[0] == Entry{0, Rational(1)});
  CHECK(t.coords[1] == Entry{1, Rational(2)});
  CHECK(t.coords[2] == Entry{2, Rational(2)});
  CHECK(t.coords[3] == Entry{3, Rational(4)});
}

TEST_CASE("generalized trace: identity at r=1 and matrix-unit cycles") {
  AlgebraPtr k = Algebra::ground_field(Q);
  AlgebraPtr m1 = Algebra::matrix(k, 1);
  auto g = testgen::rng(5);
  TensorElement x = testgen::random_tensor(g, m1, 3);
  TensorElement tr = generalized_trace(x);
  CHECK(tr.arity == 3);
  CHECK(tr.coords == x.coords);

  AlgebraPtr m2 = Algebra::matrix(k, 2);
  // E11 (x) E11 (x) E11 -> 1 (x) 1 (x) 1
  const Index e11 = 0, e12 = 1, e21 = 2;
  TensorElement cube{m2, 3, {{(e11 * 4 + e11) * 4 + e11, Rational(1)}}};
  TensorElement traced = generalized_trace(cube);
  CHECK(traced.algebra->dim() == 1);
  CHECK(traced.coords == SparseVec{{0, Rational(1)}});

  // E12 (x) E21 -> 1 (x) 1 ; E12 (x) E12 -> 0
  TensorElement pair{m2, 2, {{e12 * 4 + e21, Rational(1)}}};
  CHECK(generalized_trace(pair).coords == SparseVec{{0, Rational(1)}});
  TensorElement bad{m2, 2, {{e12 * 4 + e12, Rational(1)}}};
  CHECK(generalized_trace(bad).is_zero());

  CHECK_THROWS_AS(generalized_trace(TensorElement{k, 2, {}}), AlgebraError);
}

TEST_CASE("generalized trace commutes with the cyclic operators") {
  AlgebraPtr k = Algebra::ground_field(Q);
  AlgebraPtr m2 = Algebra::matrix(k, 2);
  auto g = testgen::rng(29);
  int checked = 0;
  for (Index arity = 2; arity <= 4; ++arity) {
    const Index n = arity - 1;
    auto [t_m, n_m] = cyclic_ops(m2, n);
    auto [t_k, n_k] = cyclic_ops(k, n);
    SparseMatrix b_m = hochschild_b(m2, n);
    SparseMatrix b_k = hochschild_b(k, n);
    SparseMatrix bp_m = bar_bprime(m2, n);
    SparseMatrix bp_k = bar_bprime(k, n);
    for (int trial = 0; trial < 8; ++trial) {
      TensorElement x = testgen::random_tensor(g, m2, arity);
      TensorElement tr_x = generalized_trace(x);
      auto traced = [&](const SparseMatrix& op, Index out_arity) {
        return generalized_trace(TensorElement{m2, out_arity, op.apply(x.coords)});
      };
      CHECK(traced(t_m, arity).coords == t_k.apply(tr_x.coords));
      CHECK(traced(n_m, arity).coords == n_k.apply(tr_x.coords));
      CHECK(traced(b_m, arity - 1).coords == b_k.apply(tr_x.coords));
      CHECK(traced(bp_m, arity - 1).coords == bp_k.apply(tr_x.coords));
      ++checked;
    }
  }
  CHECK(checked >= 20);
}

TEST_CASE("matrix over algebra arithmetic and embedding") {
  AlgebraPtr k = Algebra::ground_field(Q);
  MatrixOverA a = MatrixOverA::zero(k, 2);
  a.at(0, 0) = basis(0);
  a.at(0, 1) = basis(0);
  MatrixOverA b = a.multiply(a);
  CHECK(b.at(0, 0) == basis(0));
  CHECK(b.at(0, 1) == basis(0));
  CHECK(b.at(1, 0).empty());

  AlgebraPtr m2 = Algebra::matrix(k, 2);
  SparseVec elem = a.as_element(m2);
  CHECK(elem == SparseVec{{0, Rational(1)}, {1, Rational(1)}});
  CHECK_THROWS_AS(a.as_element(k), AlgebraError);
}
