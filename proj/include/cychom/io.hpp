#ifndef CYCHOM_IO_HPP
#define CYCHOM_IO_HPP

#include <iosfwd>

#include "cychom/lab.hpp"

namespace cychom {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kVersionString = "cychom 0.1.0";

enum class OutputFormat { Text, Structured };

// Algebra description document; see README for the schema. The field
// declared in the document is authoritative for the loaded algebra.
AlgebraPtr load_algebra_json(const std::string& text, const std::string& origin);
AlgebraPtr load_algebra_file(const std::string& path);

// A construction expression (tried first) or a path to an algebra file.
AlgebraPtr resolve_algebra(const std::string& expr_or_path, const FieldSpec& field);

// Idempotent document. When the document names its own algebra it must
// agree with `algebra` (when non-null); entries are checked for e*e = e.
Idempotent load_idempotent_file(const std::string& path, const FieldSpec& field,
                                const AlgebraPtr& algebra);

std::string tensor_label(const AlgebraPtr& algebra, Index arity, Index index);

std::string render_homology(const HomologyResult& result, OutputFormat format);
std::string render_u_generator(const Chain& u, Index n, OutputFormat format);
std::string render_chern(const ChernResult& result, const std::string& idempotent_name,
                         Index n, OutputFormat format);
std::string render_chern_minus(const ChernMinusResult& result,
                               const std::string& idempotent_name, Index window_m,
                               OutputFormat format);
std::string render_s_matrix(const SparseMatrix& s, const AlgebraPtr& algebra, Index n,
                            OutputFormat format);
std::string render_suite(const SuiteResult& result, OutputFormat format);

}  // namespace cychom

#endif  // CYCHOM_IO_HPP
