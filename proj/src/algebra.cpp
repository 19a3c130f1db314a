#include "cychom/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace cychom {

namespace {

SparseVec unit_coord(Index i) { return SparseVec{{i, Rational(1)}}; }

}  // namespace

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (a == b) return true;
  return a && b && a->name() == b->name() && a->field() == b->field() && a->dim() == b->dim();
}

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  if (ok()) {
    os << "valid";
    return os.str();
  }
  for (const auto& [i, j, l] : associativity_violations) {
    os << "associativity violated at (" << i << "," << j << "," << l << ")\n";
  }
  for (const auto& [side, i] : unit_violations) {
    os << "unit law violated: " << (side == 'l' ? "unit*b_" : "b_") << i
       << (side == 'l' ? "" : "*unit") << " != b_" << i << "\n";
  }
  return os.str();
}

SparseVec Algebra::multiply(const SparseVec& x, const SparseVec& y) const {
  std::map<Index, Rational> acc;
  for (const auto& [i, xi] : x) {
    if (i >= dim_) throw DimensionError("element index out of range");
    for (const auto& [j, yj] : y) {
      if (j >= dim_) throw DimensionError("element index out of range");
      const SparseVec& prod = structure(i, j);
      if (prod.empty()) continue;
      Rational c = field_.mul(xi, yj);
      for (const auto& [l, pl] : prod) acc[l] += c * pl;
    }
  }
  SparseVec out;
  for (auto& [l, v] : acc) {
    field_.normalize(v);
    if (v != 0) out.emplace_back(l, v);
  }
  return out;
}

ValidationReport Algebra::validate() const {
  ValidationReport report;
  for (Index i = 0; i < dim_; ++i) {
    for (Index j = 0; j < dim_; ++j) {
      for (Index l = 0; l < dim_; ++l) {
        SparseVec left = multiply(structure(i, j), unit_coord(l));
        SparseVec right = multiply(unit_coord(i), structure(j, l));
        if (left != right) report.associativity_violations.emplace_back(i, j, l);
      }
    }
  }
  for (Index i = 0; i < dim_; ++i) {
    if (multiply(unit_, unit_coord(i)) != unit_coord(i)) {
      report.unit_violations.emplace_back('l', i);
    }
    if (multiply(unit_coord(i), unit_) != unit_coord(i)) {
      report.unit_violations.emplace_back('r', i);
    }
  }
  return report;
}

AlgebraPtr Algebra::literal(std::string name, const FieldSpec& field, Index dim,
                            std::vector<std::string> labels, SparseVec unit,
                            std::vector<std::tuple<Index, Index, SparseVec>> products,
                            bool check) {
  return make(std::move(name), field, dim, std::move(labels), std::move(unit),
              std::move(products), check);
}

std::shared_ptr<Algebra> Algebra::make(std::string name, const FieldSpec& field, Index dim,
                                       std::vector<std::string> labels, SparseVec unit,
                                       std::vector<std::tuple<Index, Index, SparseVec>> products,
                                       bool check) {
  if (dim < 1) throw AlgebraError("algebra dimension must be at least 1");
  if (labels.size() != dim) throw AlgebraError("label count does not match dimension");
  auto a = std::shared_ptr<Algebra>(new Algebra());
  a->name_ = std::move(name);
  a->field_ = field;
  a->dim_ = dim;
  a->labels_ = std::move(labels);
  a->structure_.assign(static_cast<std::size_t>(dim) * dim, SparseVec{});
  for (auto& [i, j, coords] : products) {
    if (i >= dim || j >= dim) throw AlgebraError("product index out of range");
    SparseVec reduced;
    for (auto& [l, c] : coords) {
      if (l >= dim) throw AlgebraError("product coordinate out of range");
      Rational v = field.reduce(c);
      if (v != 0) reduced.emplace_back(l, std::move(v));
    }
    std::sort(reduced.begin(), reduced.end(),
              [](const Entry& x, const Entry& y) { return x.first < y.first; });
    if (!a->structure_[i * dim + j].empty()) {
      throw AlgebraError("duplicate product record for (" + std::to_string(i) + "," +
                         std::to_string(j) + ")");
    }
    a->structure_[i * dim + j] = std::move(reduced);
  }
  {
    SparseVec reduced;
    for (auto& [l, c] : unit) {
      if (l >= dim) throw AlgebraError("unit coordinate out of range");
      Rational v = field.reduce(c);
      if (v != 0) reduced.emplace_back(l, std::move(v));
    }
    std::sort(reduced.begin(), reduced.end(),
              [](const Entry& x, const Entry& y) { return x.first < y.first; });
    a->unit_ = std::move(reduced);
  }
  if (check) {
    ValidationReport report = a->validate();
    if (!report.ok()) {
      throw AlgebraError("algebra '" + a->name_ + "' fails validation:\n" + report.to_string());
    }
  }
  return a;
}

AlgebraPtr Algebra::ground_field(const FieldSpec& field) {
  return literal("ground_field", field, 1, {"1"}, unit_coord(0),
                 {{0, 0, unit_coord(0)}});
}

AlgebraPtr Algebra::truncated_poly(const FieldSpec& field, Index m) {
  if (m < 2) throw AlgebraError("truncated_poly requires m >= 2");
  std::vector<std::string> labels;
  for (Index a = 0; a < m; ++a) {
    labels.push_back(a == 0 ? "1" : (a == 1 ? "x" : "x^" + std::to_string(a)));
  }
  std::vector<std::tuple<Index, Index, SparseVec>> products;
  for (Index a = 0; a < m; ++a) {
    for (Index b = 0; b < m; ++b) {
      if (a + b < m) products.emplace_back(a, b, unit_coord(a + b));
    }
  }
  return literal("truncated_poly(" + std::to_string(m) + ")", field, m, std::move(labels),
                 unit_coord(0), std::move(products));
}

AlgebraPtr Algebra::dual_numbers(const FieldSpec& field) {
  return literal("dual_numbers", field, 2, {"1", "eps"}, unit_coord(0),
                 {{0, 0, unit_coord(0)}, {0, 1, unit_coord(1)}, {1, 0, unit_coord(1)}});
}

AlgebraPtr Algebra::matrix(const AlgebraPtr& inner, Index r) {
  if (!inner) throw AlgebraError("matrix construction requires an inner algebra");
  if (r < 1) throw AlgebraError("matrix construction requires r >= 1");
  const Index di = inner->dim();
  const Index dim = r * r * di;
  std::vector<std::string> labels;
  for (Index i = 0; i < r; ++i) {
    for (Index j = 0; j < r; ++j) {
      for (Index s = 0; s < di; ++s) {
        std::string label = "E" + std::to_string(i + 1) + std::to_string(j + 1);
        if (di > 1) label += "*" + inner->basis_labels()[s];
        labels.push_back(std::move(label));
      }
    }
  }
  auto slot = [&](Index i, Index j, Index s) { return (i * r + j) * di + s; };
  std::vector<std::tuple<Index, Index, SparseVec>> products;
  for (Index i = 0; i < r; ++i) {
    for (Index j = 0; j < r; ++j) {
      for (Index m = 0; m < r; ++m) {
        for (Index s = 0; s < di; ++s) {
          for (Index t = 0; t < di; ++t) {
            const SparseVec& st = inner->structure(s, t);
            if (st.empty()) continue;
            SparseVec coords;
            for (const auto& [l, c] : st) coords.emplace_back(slot(i, m, l), c);
            products.emplace_back(slot(i, j, s), slot(j, m, t), std::move(coords));
          }
        }
      }
    }
  }
  SparseVec unit;
  for (Index i = 0; i < r; ++i) {
    for (const auto& [s, c] : inner->unit()) unit.emplace_back(slot(i, i, s), c);
  }
  std::sort(unit.begin(), unit.end(),
            [](const Entry& x, const Entry& y) { return x.first < y.first; });
  std::string name = "matrix(" + inner->name() + "," + std::to_string(r) + ")";
  auto a = make(std::move(name), inner->field(), dim, std::move(labels), std::move(unit),
                std::move(products), true);
  a->matrix_info_ = MatrixInfo{inner, r};
  return a;
}

AlgebraPtr Algebra::product(const AlgebraPtr& left, const AlgebraPtr& right) {
  if (!left || !right) throw AlgebraError("product construction requires two algebras");
  if (left->field() != right->field()) {
    throw FieldError("product of algebras over different fields");
  }
  const Index dl = left->dim();
  const Index dim = dl + right->dim();
  std::vector<std::string> labels;
  for (const auto& l : left->basis_labels()) labels.push_back("l:" + l);
  for (const auto& l : right->basis_labels()) labels.push_back("r:" + l);
  std::vector<std::tuple<Index, Index, SparseVec>> products;
  for (Index i = 0; i < dl; ++i) {
    for (Index j = 0; j < dl; ++j) {
      const SparseVec& p = left->structure(i, j);
      if (!p.empty()) products.emplace_back(i, j, p);
    }
  }
  for (Index i = 0; i < right->dim(); ++i) {
    for (Index j = 0; j < right->dim(); ++j) {
      SparseVec shifted;
      for (const auto& [l, c] : right->structure(i, j)) shifted.emplace_back(dl + l, c);
      if (!shifted.empty()) products.emplace_back(dl + i, dl + j, std::move(shifted));
    }
  }
  SparseVec unit = left->unit();
  for (const auto& [l, c] : right->unit()) unit.emplace_back(dl + l, c);
  std::string name = "product(" + left->name() + "," + right->name() + ")";
  return literal(std::move(name), left->field(), dim, std::move(labels), std::move(unit),
                 std::move(products));
}

AlgebraPtr Algebra::upper_triangular(const AlgebraPtr& inner) {
  if (!inner) throw AlgebraError("upper_triangular construction requires an inner algebra");
  const Index di = inner->dim();
  // Slots e11, e12, e22 of the 2x2 upper-triangular matrix algebra;
  // pairs below are the nonzero slot products.
  static constexpr struct { Index a, b, out; } kSlotProducts[] = {
      {0, 0, 0}, {0, 1, 1}, {1, 2, 1}, {2, 2, 2}};
  static const char* kSlotNames[] = {"e11", "e12", "e22"};
  std::vector<std::string> labels;
  for (Index slot = 0; slot < 3; ++slot) {
    for (Index s = 0; s < di; ++s) {
      std::string label = kSlotNames[slot];
      if (di > 1) label += "*" + inner->basis_labels()[s];
      labels.push_back(std::move(label));
    }
  }
  std::vector<std::tuple<Index, Index, SparseVec>> products;
  for (const auto& sp : kSlotProducts) {
    for (Index s = 0; s < di; ++s) {
      for (Index t = 0; t < di; ++t) {
        const SparseVec& st = inner->structure(s, t);
        if (st.empty()) continue;
        SparseVec coords;
        for (const auto& [l, c] : st) coords.emplace_back(sp.out * di + l, c);
        products.emplace_back(sp.a * di + s, sp.b * di + t, std::move(coords));
      }
    }
  }
  SparseVec unit;
  for (const auto& [s, c] : inner->unit()) unit.emplace_back(0 * di + s, c);
  for (const auto& [s, c] : inner->unit()) unit.emplace_back(2 * di + s, c);
  std::string name = "upper_triangular(" + inner->name() + ")";
  return literal(std::move(name), inner->field(), 3 * di, std::move(labels), std::move(unit),
                 std::move(products));
}

namespace {

struct ConstructionParser {
  const std::string& text;
  const FieldSpec& field;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  [[noreturn]] void fail(const std::string& what) {
    throw AlgebraError("construction parse error at position " + std::to_string(pos) + ": " +
                       what);
  }

  bool consume(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!consume(c)) fail(std::string("expected '") + c + "'");
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
      ++pos;
    }
    if (start == pos) fail("expected identifier");
    return text.substr(start, pos - start);
  }

  Index natural() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) fail("expected natural number");
    return static_cast<Index>(std::stoul(text.substr(start, pos - start)));
  }

  AlgebraPtr expr() {
    std::string head = ident();
    if (head == "ground_field") return Algebra::ground_field(field);
    if (head == "dual_numbers") return Algebra::dual_numbers(field);
    if (head == "truncated_poly") {
      expect('(');
      Index m = natural();
      expect(')');
      return Algebra::truncated_poly(field, m);
    }
    if (head == "matrix") {
      expect('(');
      AlgebraPtr inner = expr();
      expect(',');
      Index r = natural();
      expect(')');
      return Algebra::matrix(inner, r);
    }
    if (head == "product") {
      expect('(');
      AlgebraPtr left = expr();
      expect(',');
      AlgebraPtr right = expr();
      expect(')');
      return Algebra::product(left, right);
    }
    if (head == "upper_triangular") {
      expect('(');
      AlgebraPtr inner = expr();
      expect(')');
      return Algebra::upper_triangular(inner);
    }
    fail("unknown construction '" + head + "'");
  }
};

}  // namespace

AlgebraPtr parse_construction(const std::string& text, const FieldSpec& field) {
  ConstructionParser p{text, field};
  AlgebraPtr result = p.expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return result;
}

std::uint64_t tensor_dim(Index algebra_dim, Index arity) {
  std::uint64_t out = 1;
  for (Index i = 0; i < arity; ++i) {
    out *= algebra_dim;
    if (out > (std::uint64_t(1) << 31)) {
      throw DimensionError("tensor power dimension overflow");
    }
  }
  return out;
}

Index tensor_encode(Index algebra_dim, const std::vector<Index>& tuple) {
  std::uint64_t idx = 0;
  for (Index t : tuple) {
    if (t >= algebra_dim) throw DimensionError("tensor factor index out of range");
    idx = idx * algebra_dim + t;
  }
  return static_cast<Index>(idx);
}

std::vector<Index> tensor_decode(Index algebra_dim, Index arity, Index index) {
  std::vector<Index> tuple(arity);
  std::uint64_t rest = index;
  for (Index i = arity; i-- > 0;) {
    tuple[i] = static_cast<Index>(rest % algebra_dim);
    rest /= algebra_dim;
  }
  if (rest != 0) throw DimensionError("tensor index out of range");
  return tuple;
}

bool TensorElement::operator==(const TensorElement& other) const {
  return arity == other.arity && coords == other.coords &&
         same_algebra(algebra, other.algebra);
}

TensorElement tensor_scale(const Rational& c, const TensorElement& x) {
  return TensorElement{x.algebra, x.arity, sparse_scale(x.algebra->field(), c, x.coords)};
}

TensorElement tensor_add(const TensorElement& x, const TensorElement& y) {
  if (x.arity != y.arity || !same_algebra(x.algebra, y.algebra)) {
    throw DimensionError("tensor addition shape mismatch");
  }
  return TensorElement{x.algebra, x.arity, sparse_add(x.algebra->field(), x.coords, y.coords)};
}

TensorElement tensor_power(const AlgebraPtr& algebra, const SparseVec& x, Index arity) {
  if (arity < 1) throw DimensionError("tensor power arity must be at least 1");
  const Index d = algebra->dim();
  tensor_dim(d, arity);  // overflow guard
  const FieldSpec& field = algebra->field();
  SparseVec coords{{0, Rational(1)}};
  for (Index step = 0; step < arity; ++step) {
    SparseVec next;
    next.reserve(coords.size() * x.size());
    for (const auto& [idx, c] : coords) {
      for (const auto& [t, xt] : x) {
        Rational v = field.mul(c, xt);
        if (v != 0) next.emplace_back(idx * d + t, std::move(v));
      }
    }
    std::sort(next.begin(), next.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    coords = std::move(next);
  }
  return TensorElement{algebra, arity, std::move(coords)};
}

MatrixOverA MatrixOverA::zero(const AlgebraPtr& algebra, Index size) {
  MatrixOverA m;
  m.algebra = algebra;
  m.size = size;
  m.entries.assign(static_cast<std::size_t>(size) * size, SparseVec{});
  return m;
}

MatrixOverA MatrixOverA::multiply(const MatrixOverA& rhs) const {
  if (size != rhs.size || !same_algebra(algebra, rhs.algebra)) {
    throw DimensionError("matrix-over-algebra shape mismatch");
  }
  MatrixOverA out = zero(algebra, size);
  for (Index i = 0; i < size; ++i) {
    for (Index j = 0; j < size; ++j) {
      SparseVec acc;
      for (Index k = 0; k < size; ++k) {
        acc = sparse_add(algebra->field(), acc, algebra->multiply(at(i, k), rhs.at(k, j)));
      }
      out.at(i, j) = std::move(acc);
    }
  }
  return out;
}

bool MatrixOverA::operator==(const MatrixOverA& other) const {
  return size == other.size && entries == other.entries && same_algebra(algebra, other.algebra);
}

SparseVec MatrixOverA::as_element(const AlgebraPtr& matrix_algebra) const {
  const auto& info = matrix_algebra->matrix_info();
  if (!info || info->size != size || !same_algebra(info->inner, algebra)) {
    throw AlgebraError("matrix element embedding: algebra is not matrix(" + algebra->name() +
                       "," + std::to_string(size) + ")");
  }
  const Index di = algebra->dim();
  SparseVec out;
  for (Index i = 0; i < size; ++i) {
    for (Index j = 0; j < size; ++j) {
      for (const auto& [s, c] : at(i, j)) out.emplace_back((i * size + j) * di + s, c);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  return out;
}

TensorElement generalized_trace(const TensorElement& x) {
  const auto& info = x.algebra->matrix_info();
  if (!info) {
    throw AlgebraError("generalized trace requires a matrix(A, r) construction, got " +
                       x.algebra->name());
  }
  const AlgebraPtr inner = info->inner;
  const Index r = info->size;
  const Index di = inner->dim();
  const Index d = x.algebra->dim();
  const FieldSpec& field = x.algebra->field();
  std::map<Index, Rational> acc;
  std::vector<Index> rows(x.arity), cols(x.arity), inner_tuple(x.arity);
  for (const auto& [idx, c] : x.coords) {
    std::vector<Index> tuple = tensor_decode(d, x.arity, idx);
    for (Index m = 0; m < x.arity; ++m) {
      const Index s = tuple[m] % di;
      const Index ij = tuple[m] / di;
      rows[m] = ij / r;
      cols[m] = ij % r;
      inner_tuple[m] = s;
    }
    bool cyclic = true;
    for (Index m = 0; m < x.arity; ++m) {
      if (cols[m] != rows[(m + 1) % x.arity]) {
        cyclic = false;
        break;
      }
    }
    if (!cyclic) continue;
    acc[tensor_encode(di, inner_tuple)] += c;
  }
  SparseVec coords;
  for (auto& [idx, c] : acc) {
    field.normalize(c);
    if (c != 0) coords.emplace_back(idx, c);
  }
  return TensorElement{inner, x.arity, std::move(coords)};
}

}  // namespace cychom
