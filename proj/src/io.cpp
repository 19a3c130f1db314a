#include "cychom/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cychom {

namespace {

using Json = nlohmann::ordered_json;

Json parse_json(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Rational scalar_field(const Json& j, const std::string& origin) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) return scalar_from_string(j.get<std::string>());
  throw ParseError(origin + ": scalar must be an integer or a \"p/q\" string");
}

SparseVec coords_from_json(const Json& j, Index dim, const std::string& origin) {
  if (!j.is_array() || j.size() != dim) {
    throw ParseError(origin + ": expected a coordinate list of length " + std::to_string(dim));
  }
  SparseVec out;
  for (Index i = 0; i < dim; ++i) {
    Rational v = scalar_field(j[i], origin);
    if (v != 0) out.emplace_back(i, std::move(v));
  }
  return out;
}

Json coords_to_json(const SparseVec& v) {
  Json out = Json::array();
  for (const auto& [i, c] : v) out.push_back(Json::array({i, scalar_to_string(c)}));
  return out;
}

Json chain_to_json(const Chain& chain) {
  Json comps = Json::array();
  for (const auto& [col, tensor] : chain.components) {
    if (tensor.is_zero()) continue;
    Json comp;
    comp["col"] = col;
    comp["row"] = tensor.arity - 1;
    comp["coords"] = coords_to_json(tensor.coords);
    comps.push_back(std::move(comp));
  }
  return comps;
}

Json minus_chain_to_json(const MinusChain& chain) {
  Json comps = Json::array();
  for (const auto& [row, tensor] : chain.components) {
    if (tensor.is_zero()) continue;
    Json comp;
    comp["row"] = row;
    comp["coords"] = coords_to_json(tensor.coords);
    comps.push_back(std::move(comp));
  }
  return comps;
}

constexpr std::size_t kTextTermCap = 12;

void print_tensor_terms(std::ostringstream& os, const AlgebraPtr& algebra,
                        const TensorElement& tensor, const std::string& indent) {
  std::size_t shown = 0;
  for (const auto& [i, c] : tensor.coords) {
    if (shown == kTextTermCap) {
      os << indent << "... (" << tensor.coords.size() - shown << " more terms)\n";
      break;
    }
    os << indent << scalar_to_string(c) << " * " << tensor_label(algebra, tensor.arity, i)
       << "\n";
    ++shown;
  }
}

Json class_to_json(const DenseVector& cls) {
  Json out = Json::array();
  for (const Rational& c : cls.coords) out.push_back(scalar_to_string(c));
  return out;
}

std::string class_to_text(const DenseVector& cls) {
  std::string out = "[";
  for (Index i = 0; i < cls.length(); ++i) {
    if (i) out += ", ";
    out += scalar_to_string(cls.coords[i]);
  }
  return out + "]";
}

}  // namespace

AlgebraPtr load_algebra_json(const std::string& text, const std::string& origin) {
  Json doc = parse_json(text, origin);
  try {
    const std::string name = doc.at("name").get<std::string>();
    const FieldSpec field = FieldSpec::parse(doc.at("field").get<std::string>());
    const Index dim = doc.at("dim").get<Index>();
    std::vector<std::string> labels;
    if (doc.contains("basis")) {
      labels = doc.at("basis").get<std::vector<std::string>>();
    } else {
      for (Index i = 0; i < dim; ++i) labels.push_back("b" + std::to_string(i));
    }
    SparseVec unit = coords_from_json(doc.at("unit"), dim, origin + ": unit");
    std::vector<std::tuple<Index, Index, SparseVec>> products;
    if (doc.contains("products")) {
      for (const Json& rec : doc.at("products")) {
        const Index i = rec.at("i").get<Index>();
        const Index j = rec.at("j").get<Index>();
        products.emplace_back(
            i, j,
            coords_from_json(rec.at("coords"), dim,
                             origin + ": product (" + std::to_string(i) + "," +
                                 std::to_string(j) + ")"));
      }
    }
    return Algebra::literal(name, field, dim, std::move(labels), std::move(unit),
                            std::move(products));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(origin + ": " + e.what());
  }
}

AlgebraPtr load_algebra_file(const std::string& path) {
  return load_algebra_json(read_file(path), path);
}

AlgebraPtr resolve_algebra(const std::string& expr_or_path, const FieldSpec& field) {
  if (std::filesystem::exists(expr_or_path)) return load_algebra_file(expr_or_path);
  try {
    return parse_construction(expr_or_path, field);
  } catch (const AlgebraError& e) {
    throw ParseError("'" + expr_or_path + "' is neither a file nor a construction expression (" +
                     e.what() + ")");
  }
}

Idempotent load_idempotent_file(const std::string& path, const FieldSpec& field,
                                const AlgebraPtr& algebra) {
  Json doc = parse_json(read_file(path), path);
  try {
    AlgebraPtr a = algebra;
    if (doc.contains("algebra")) {
      AlgebraPtr declared = resolve_algebra(doc.at("algebra").get<std::string>(), field);
      if (a && !same_algebra(a, declared)) {
        throw ParseError(path + ": declared algebra '" + declared->name() +
                         "' does not match '" + a->name() + "'");
      }
      a = declared;
    }
    if (!a) throw ParseError(path + ": no algebra given (document or command line)");
    const Index size = doc.at("size").get<Index>();
    const Json& entries = doc.at("entries");
    if (!entries.is_array() || entries.size() != size) {
      throw ParseError(path + ": entries must be a " + std::to_string(size) + "x" +
                       std::to_string(size) + " array");
    }
    MatrixOverA m = MatrixOverA::zero(a, size);
    for (Index i = 0; i < size; ++i) {
      const Json& row = entries[i];
      if (!row.is_array() || row.size() != size) {
        throw ParseError(path + ": entries row " + std::to_string(i) + " has wrong length");
      }
      for (Index j = 0; j < size; ++j) {
        m.at(i, j) = coords_from_json(row[j], a->dim(),
                                      path + ": entry (" + std::to_string(i) + "," +
                                          std::to_string(j) + ")");
        for (auto& [idx, c] : m.at(i, j)) c = a->field().reduce(c);
      }
    }
    std::string name = doc.contains("name") ? doc.at("name").get<std::string>()
                                            : std::filesystem::path(path).stem().string();
    return Idempotent::checked(std::move(m), std::move(name));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string tensor_label(const AlgebraPtr& algebra, Index arity, Index index) {
  const std::vector<Index> tuple = tensor_decode(algebra->dim(), arity, index);
  std::string out;
  for (Index i = 0; i < arity; ++i) {
    if (i) out += "(x)";
    out += algebra->basis_labels()[tuple[i]];
  }
  return out;
}

namespace {

std::string truncation_text(const HomologyResult& result) {
  if (result.kind() == HomologyResult::Kind::Minus) {
    return "window rows 0.." + std::to_string(result.window().max_row()) +
           " (M=" + std::to_string(result.window().m) + ")";
  }
  return "columns 0.." + std::to_string(result.layout().max_col) + ", rows 0.." +
         std::to_string(result.layout().max_row);
}

Json truncation_json(const HomologyResult& result) {
  Json out;
  if (result.kind() == HomologyResult::Kind::Minus) {
    out["window_m"] = result.window().m;
  } else {
    out["max_col"] = result.layout().max_col;
    out["max_row"] = result.layout().max_row;
  }
  return out;
}

}  // namespace

std::string render_homology(const HomologyResult& result, OutputFormat format) {
  if (format == OutputFormat::Structured) {
    Json doc;
    doc["version"] = kVersionString;
    doc["kind"] = "homology";
    doc["group"] = result.group();
    doc["algebra"] = result.algebra()->name();
    doc["field"] = result.field().to_string();
    doc["truncation"] = truncation_json(result);
    doc["dim"] = result.dim();
    if (result.kind() == HomologyResult::Kind::Minus) {
      doc["stabilized"] =
          result.stabilized() ? Json(*result.stabilized()) : Json(nullptr);
    }
    Json reps = Json::array();
    for (std::size_t i = 0; i < result.dim(); ++i) {
      reps.push_back(result.kind() == HomologyResult::Kind::Minus
                         ? minus_chain_to_json(result.representative_minus(i))
                         : chain_to_json(result.representative(i)));
    }
    doc["representatives"] = std::move(reps);
    return doc.dump(2) + "\n";
  }

  std::ostringstream os;
  os << result.group() << "(" << result.algebra()->name() << ") over "
     << result.field().to_string() << "\n";
  os << "truncation: " << truncation_text(result) << "\n";
  if (result.kind() == HomologyResult::Kind::Minus) {
    os << "stabilized at M+1: "
       << (result.stabilized() ? (*result.stabilized() ? "yes" : "no") : "unknown (guardrail)")
       << "\n";
  }
  os << "dim " << result.dim() << "\n";
  for (std::size_t i = 0; i < result.dim(); ++i) {
    os << "representative r" << i << ":\n";
    if (result.kind() == HomologyResult::Kind::Minus) {
      MinusChain rep = result.representative_minus(i);
      for (const auto& [row, tensor] : rep.components) {
        os << "  row " << row << ":\n";
        print_tensor_terms(os, result.algebra(), tensor, "    ");
      }
    } else {
      Chain rep = result.representative(i);
      for (const auto& [col, tensor] : rep.components) {
        os << "  (col " << col << ", row " << tensor.arity - 1 << "):\n";
        print_tensor_terms(os, result.algebra(), tensor, "    ");
      }
    }
  }
  return os.str();
}

namespace {

// Slot name of a u^n / chern component: column 2(n-i) row 2i is y_i,
// column 2(n-i)+1 row 2i-1 is z_i.
std::string slot_name(Index n, Index col, Index row) {
  if (row % 2 == 0 && col == 2 * (n - row / 2)) return "y_" + std::to_string(row / 2);
  const Index i = (row + 1) / 2;
  if (row % 2 == 1 && col == 2 * (n - i) + 1) return "z_" + std::to_string(i);
  return "component";
}

}  // namespace

std::string render_u_generator(const Chain& u, Index n, OutputFormat format) {
  if (format == OutputFormat::Structured) {
    Json doc;
    doc["version"] = kVersionString;
    doc["kind"] = "u_generator";
    doc["n"] = n;
    doc["field"] = u.layout.algebra->field().to_string();
    doc["components"] = chain_to_json(u);
    return doc.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "u^" << n << " in Tot CC(k)_" << 2 * n << " over "
     << u.layout.algebra->field().to_string() << "\n";
  for (const auto& [col, tensor] : u.components) {
    const Index row = tensor.arity - 1;
    os << "  " << slot_name(n, col, row) << " (col " << col << ", row " << row
       << ") = " << scalar_to_string(tensor.coords.front().second) << "\n";
  }
  return os.str();
}

std::string render_chern(const ChernResult& result, const std::string& idempotent_name,
                         Index n, OutputFormat format) {
  const AlgebraPtr& a = result.homology.algebra();
  std::optional<Rational> psi_value;
  if (a->dim() == 1 && result.homology.dim() == 1) {
    psi_value = psi(result.homology, result.class_coords);
  }
  if (format == OutputFormat::Structured) {
    Json doc;
    doc["version"] = kVersionString;
    doc["kind"] = "chern";
    doc["idempotent"] = idempotent_name;
    doc["n"] = n;
    doc["algebra"] = a->name();
    doc["field"] = a->field().to_string();
    doc["chain"] = chain_to_json(result.chain);
    doc["group"] = result.homology.group();
    doc["class"] = class_to_json(result.class_coords);
    doc["psi"] = psi_value ? Json(scalar_to_string(*psi_value)) : Json(nullptr);
    return doc.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "ch_" << n << "(" << idempotent_name << ") over " << a->name() << ", "
     << a->field().to_string() << "\n";
  os << "chain:\n";
  for (const auto& [col, tensor] : result.chain.components) {
    const Index row = tensor.arity - 1;
    os << "  " << slot_name(n, col, row) << " (col " << col << ", row " << row << "):\n";
    print_tensor_terms(os, a, tensor, "    ");
  }
  if (result.chain.components.empty()) os << "  0\n";
  os << "class in " << result.homology.group() << "(" << a->name()
     << "): " << class_to_text(result.class_coords) << "\n";
  if (psi_value) os << "psi_" << n << " = " << scalar_to_string(*psi_value) << "\n";
  return os.str();
}

std::string render_chern_minus(const ChernMinusResult& result,
                               const std::string& idempotent_name, Index window_m,
                               OutputFormat format) {
  const AlgebraPtr& a = result.homology.algebra();
  std::optional<Rational> psi_value;
  if (a->dim() == 1 && result.homology.dim() == 1) {
    psi_value = psi_minus(result.homology, result.class_coords);
  }
  if (format == OutputFormat::Structured) {
    Json doc;
    doc["version"] = kVersionString;
    doc["kind"] = "chern_minus";
    doc["idempotent"] = idempotent_name;
    doc["window_m"] = window_m;
    doc["algebra"] = a->name();
    doc["field"] = a->field().to_string();
    doc["chain"] = minus_chain_to_json(result.chain);
    doc["group"] = result.homology.group();
    doc["stabilized"] = result.homology.stabilized() ? Json(*result.homology.stabilized())
                                                     : Json(nullptr);
    doc["class"] = class_to_json(result.class_coords);
    doc["psi"] = psi_value ? Json(scalar_to_string(*psi_value)) : Json(nullptr);
    return doc.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "ch^-(" << idempotent_name << ") truncated at M=" << window_m << " over " << a->name()
     << ", " << a->field().to_string() << "\n";
  os << "chain:\n";
  for (const auto& [row, tensor] : result.chain.components) {
    os << "  row " << row << ":\n";
    print_tensor_terms(os, a, tensor, "    ");
  }
  if (result.chain.components.empty()) os << "  0\n";
  os << "class in " << result.homology.group() << "(" << a->name()
     << "): " << class_to_text(result.class_coords) << "\n";
  if (psi_value) os << "psi^- = " << scalar_to_string(*psi_value) << "\n";
  return os.str();
}

std::string render_s_matrix(const SparseMatrix& s, const AlgebraPtr& algebra, Index n,
                            OutputFormat format) {
  if (format == OutputFormat::Structured) {
    Json doc;
    doc["version"] = kVersionString;
    doc["kind"] = "smap";
    doc["algebra"] = algebra->name();
    doc["field"] = algebra->field().to_string();
    doc["from"] = "HC_" + std::to_string(2 * n);
    doc["to"] = "HC_" + std::to_string(2 * n - 2);
    doc["rows"] = s.rows();
    doc["cols"] = s.cols();
    Json entries = Json::array();
    for (Index j = 0; j < s.cols(); ++j) {
      for (const auto& [i, v] : s.column(j)) {
        entries.push_back(Json::array({i, j, scalar_to_string(v)}));
      }
    }
    doc["entries"] = std::move(entries);
    return doc.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "S: HC_" << 2 * n << "(" << algebra->name() << ") -> HC_" << 2 * n - 2 << "("
     << algebra->name() << ") in canonical representative bases\n";
  os << "matrix " << s.rows() << "x" << s.cols() << ":\n";
  for (Index i = 0; i < s.rows(); ++i) {
    os << "  [";
    for (Index j = 0; j < s.cols(); ++j) {
      if (j) os << " ";
      os << scalar_to_string(s.at(i, j));
    }
    os << "]\n";
  }
  if (s.rows() == 0 || s.cols() == 0) os << "  (empty map)\n";
  return os.str();
}

std::string render_suite(const SuiteResult& result, OutputFormat format) {
  if (format == OutputFormat::Structured) {
    Json doc;
    doc["version"] = kVersionString;
    doc["kind"] = "verify";
    Json checks = Json::array();
    for (const CheckReport& r : result.reports) {
      Json c;
      c["name"] = r.name;
      c["inputs"] = r.inputs;
      c["verdict"] = verdict_to_string(r.verdict);
      c["witness"] = r.witness;
      checks.push_back(std::move(c));
    }
    doc["checks"] = std::move(checks);
    doc["summary"] = {{"checks", result.reports.size()},
                      {"pass", result.passes},
                      {"fail", result.fails},
                      {"approx", result.approximate}};
    return doc.dump(2) + "\n";
  }
  std::ostringstream os;
  for (const CheckReport& r : result.reports) {
    os << "check " << r.name << " [" << r.inputs << "]: " << verdict_to_string(r.verdict)
       << "\n";
    for (const std::string& w : r.witness) os << "  " << w << "\n";
  }
  os << result.summary() << "\n";
  return os.str();
}

}  // namespace cychom
