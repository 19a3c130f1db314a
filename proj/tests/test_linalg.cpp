#include <doctest.h>

#include "cychom/linalg.hpp"
#include "generators.hpp"

using namespace cychom;

namespace {

SparseMatrix mat(Index rows, Index cols, const FieldSpec& f,
                 std::vector<std::tuple<Index, Index, Rational>> trips) {
  return SparseMatrix::from_triplets(rows, cols, f, trips);
}

const FieldSpec Q = FieldSpec::rationals();

}  // namespace

TEST_CASE("rank: identity, zero, scalar mod p") {
  CHECK(rank(SparseMatrix::identity(2, Q)) == 2);
  CHECK(rank(SparseMatrix::zero(3, 3, Q)) == 0);
  // [n+1] over F_p with p | n+1: the N-operator degeneration
  FieldSpec f5 = FieldSpec::prime_field(5);
  CHECK(rank(mat(1, 1, f5, {{0, 0, Rational(5)}})) == 0);
  CHECK(rank(mat(1, 1, f5, {{0, 0, Rational(6)}})) == 1);
}

TEST_CASE("kernel_basis: zero map, identity, one relation") {
  auto k1 = kernel_basis(SparseMatrix::zero(3, 3, Q));
  CHECK(k1.size() == 3);
  CHECK(kernel_basis(SparseMatrix::identity(2, Q)).empty());
  auto k2 = kernel_basis(mat(1, 2, Q, {{0, 0, 1}, {0, 1, 1}}));
  REQUIRE(k2.size() == 1);
  // proportional to (1, -1)
  CHECK(k2[0].coords[0] == -k2[0].coords[1]);
  CHECK(k2[0].coords[0] != 0);
}

TEST_CASE("preimage: identity, zero map, scalar division") {
  DenseVector v{Q, {Rational(3), Rational(-2)}};
  auto x = preimage(SparseMatrix::identity(2, Q), v);
  REQUIRE(x.has_value());
  CHECK(*x == v);

  DenseVector w{Q, {Rational(1)}};
  CHECK(!preimage(SparseMatrix::zero(1, 1, Q), w).has_value());

  auto half = preimage(mat(1, 1, Q, {{0, 0, 2}}), w);
  REQUIRE(half.has_value());
  CHECK(half->coords[0] == Rational(1, 2));
}

TEST_CASE("subquotient: trivial examples and representatives") {
  auto zero2 = SparseMatrix::zero(2, 2, Q);
  CHECK(subquotient(zero2, zero2).dim() == 2);
  CHECK(subquotient(SparseMatrix::identity(2, Q), SparseMatrix::zero(1, 2, Q)).dim() == 0);
  auto s = subquotient(SparseMatrix::zero(2, 2, Q), mat(1, 2, Q, {{0, 0, 1}, {0, 1, 1}}));
  CHECK(s.dim() == 1);

  // representatives are cycles, coords(rep_i) = e_i
  for (std::size_t i = 0; i < s.dim(); ++i) {
    const SparseVec& rep = s.representatives()[i];
    CHECK(s.is_cycle(rep));
    DenseVector c = s.coords(rep);
    for (Index j = 0; j < c.length(); ++j) {
      CHECK(c.coords[j] == (j == i ? 1 : 0));
    }
  }
  // coords rejects non-cycles
  CHECK_THROWS_AS(s.coords(SparseVec{{0, Rational(1)}}), CompositionError);
}

TEST_CASE("subquotient preconditions") {
  auto d_in = SparseMatrix::identity(2, Q);
  auto d_out = SparseMatrix::identity(2, Q);
  CHECK_THROWS_AS(subquotient(d_in, d_out), CompositionError);  // d_out d_in != 0
  CHECK_THROWS_AS(subquotient(SparseMatrix::zero(3, 2, Q), SparseMatrix::zero(2, 2, Q)),
                  DimensionError);
}

TEST_CASE("matrix construction errors") {
  CHECK_THROWS_AS(mat(1, 1, Q, {{0, 0, 1}, {0, 0, 1}}), DimensionError);  // duplicate
  CHECK_THROWS_AS(mat(1, 1, Q, {{1, 0, 1}}), DimensionError);             // out of bounds
  // entries reducing to zero are dropped
  FieldSpec f3 = FieldSpec::prime_field(3);
  CHECK(mat(1, 1, f3, {{0, 0, Rational(3)}}).is_zero());
}

TEST_CASE("field mismatch is detected") {
  FieldSpec f7 = FieldSpec::prime_field(7);
  SparseMatrix m = SparseMatrix::identity(2, Q);
  DenseVector v{f7, {Rational(1), Rational(0)}};
  CHECK_THROWS_AS(m.apply(v), FieldError);
  CHECK_THROWS_AS(m.multiply(SparseMatrix::identity(2, f7)), FieldError);
  CHECK_THROWS_AS(preimage(m, v), FieldError);
}

TEST_CASE("random exactness: rank-nullity, kernel, preimage, determinism") {
  for (const FieldSpec& field : {Q, FieldSpec::prime_field(7)}) {
    auto g = testgen::rng(field.kind() == FieldSpec::Kind::Rationals ? 11 : 13);
    for (int trial = 0; trial < 60; ++trial) {
      SparseMatrix m = testgen::random_matrix(g, field);

      const Index r = rank(m);
      auto kernel = kernel_basis(m);
      CHECK(r + kernel.size() == m.cols());
      for (const DenseVector& kv : kernel) {
        CHECK(m.apply(kv).is_zero());
      }

      // a vector already in the image has an exact preimage
      DenseVector x = testgen::random_vector(g, field, m.cols());
      DenseVector v = m.apply(x);
      auto back = preimage(m, v);
      REQUIRE(back.has_value());
      CHECK(m.apply(*back) == v);

      // absence certificate: rank grows when the target is adjoined
      DenseVector w = testgen::random_vector(g, field, m.rows());
      auto pre = preimage(m, w);
      if (pre.has_value()) {
        CHECK(m.apply(*pre) == w);
      } else {
        std::vector<std::tuple<Index, Index, Rational>> trips;
        for (Index j = 0; j < m.cols(); ++j) {
          for (const auto& [i, c] : m.column(j)) trips.emplace_back(i, j, c);
        }
        for (Index i = 0; i < w.length(); ++i) {
          if (w.coords[i] != 0) trips.emplace_back(i, m.cols(), w.coords[i]);
        }
        SparseMatrix augmented = mat(m.rows(), m.cols() + 1, field, trips);
        CHECK(rank(augmented) == r + 1);
      }

      // determinism: identical inputs, identical outputs
      CHECK(rank(m) == r);
      auto kernel2 = kernel_basis(m);
      REQUIRE(kernel2.size() == kernel.size());
      for (std::size_t i = 0; i < kernel.size(); ++i) CHECK(kernel2[i] == kernel[i]);
    }
  }
}

TEST_CASE("subquotient representatives are independent modulo the image") {
  auto g = testgen::rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    SparseMatrix d_in = testgen::random_matrix(g, Q, 7);
    // choose d_out = 0 so every vector is a cycle; homology = coker(d_in)
    SparseMatrix d_out = SparseMatrix::zero(1, d_in.rows(), Q);
    Subquotient s = subquotient(d_in, d_out);
    CHECK(s.dim() + rank(d_in) == d_in.rows());
    EchelonBasis image(d_in.rows(), Q);
    for (Index j = 0; j < d_in.cols(); ++j) image.insert(d_in.column(j));
    for (const SparseVec& rep : s.representatives()) {
      CHECK(!image.reduce(rep).remainder.empty());
      CHECK(image.insert(rep));
    }
  }
}
