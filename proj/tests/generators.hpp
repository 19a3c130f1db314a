#ifndef CYCHOM_TESTS_GENERATORS_HPP
#define CYCHOM_TESTS_GENERATORS_HPP

#include <random>

#include "cychom/algebra.hpp"

// Hand-rolled deterministic generators for the property suites.
namespace cychom::testgen {

inline std::mt19937 rng(unsigned seed) { return std::mt19937(seed); }

inline Rational random_scalar(std::mt19937& g, const FieldSpec& field) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 4);
  Rational r(num(g), field.kind() == FieldSpec::Kind::Rationals ? den(g) : 1);
  return field.reduce(r);
}

inline SparseMatrix random_matrix(std::mt19937& g, const FieldSpec& field, Index max_dim = 10) {
  std::uniform_int_distribution<Index> dim(1, max_dim);
  std::uniform_real_distribution<double> density(0.0, 1.0);
  const Index rows = dim(g);
  const Index cols = dim(g);
  std::vector<std::tuple<Index, Index, Rational>> trips;
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      if (density(g) < 0.35) {
        Rational v = random_scalar(g, field);
        if (v != 0) trips.emplace_back(i, j, v);
      }
    }
  }
  return SparseMatrix::from_triplets(rows, cols, field, trips);
}

inline DenseVector random_vector(std::mt19937& g, const FieldSpec& field, Index length) {
  DenseVector v{field, std::vector<Rational>(length, Rational(0))};
  for (Index i = 0; i < length; ++i) v.coords[i] = random_scalar(g, field);
  return v;
}

inline SparseVec random_element(std::mt19937& g, const AlgebraPtr& a) {
  SparseVec out;
  std::uniform_real_distribution<double> density(0.0, 1.0);
  for (Index i = 0; i < a->dim(); ++i) {
    if (density(g) < 0.5) {
      Rational v = random_scalar(g, a->field());
      if (v != 0) out.emplace_back(i, v);
    }
  }
  return out;
}

inline TensorElement random_tensor(std::mt19937& g, const AlgebraPtr& a, Index arity,
                                   std::size_t terms = 6) {
  const Index dim = static_cast<Index>(tensor_dim(a->dim(), arity));
  std::uniform_int_distribution<Index> pick(0, dim - 1);
  std::map<Index, Rational> acc;
  for (std::size_t t = 0; t < terms; ++t) {
    Rational v = random_scalar(g, a->field());
    if (v != 0) acc[pick(g)] += v;
  }
  SparseVec coords;
  for (auto& [i, v] : acc) {
    a->field().normalize(v);
    if (v != 0) coords.emplace_back(i, v);
  }
  return TensorElement{a, arity, std::move(coords)};
}

}  // namespace cychom::testgen

#endif  // CYCHOM_TESTS_GENERATORS_HPP
