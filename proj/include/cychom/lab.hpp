#ifndef CYCHOM_LAB_HPP
#define CYCHOM_LAB_HPP

#include "cychom/chern.hpp"

namespace cychom {

enum class Verdict { Pass, Fail, Approximate };

std::string verdict_to_string(Verdict v);

struct CheckReport {
  std::string name;
  std::string inputs;
  Verdict verdict = Verdict::Fail;
  std::vector<std::string> witness;

  bool passed() const { return verdict == Verdict::Pass; }
};

// The four closed-form operator tables on k^{otimes(n+1)} for all
// n <= n_max: b and -b' by parity, (1-t) and N by parity.
CheckReport verify_operator_tables(const FieldSpec& field, Index n_max);

enum class InvariantKind { HH, HC, Minus0, TowerLimit };

std::string invariant_to_string(InvariantKind kind, Index param);

// dim E(T(A)) = 2 dim E(A) for the selected invariant; param is the
// degree n for HH/HC, the window M for Minus0, and n_max for the
// tower limit.
CheckReport verify_additivity(const AlgebraPtr& a, InvariantKind kind, Index param,
                              const GuardConfig& guard = {});

// dim HC_n(M_r(k)) = dim HC_n(k); for even n additionally checks that
// the trace of the rank-one-idempotent Chern class is [u^{n/2}] and
// that traced generator classes are nonzero multiples of it.
CheckReport verify_matrix_agreement(const FieldSpec& field, Index r, Index n,
                                    const GuardConfig& guard = {});

// S^{(n-m)} ch_n = ch_m at chain/class level; for the unit over the
// ground field also the constant-1 psi trail.
CheckReport verify_s_compat(const Idempotent& e, Index n, Index m,
                            const GuardConfig& guard = {});

// Projection of ch^-(e) onto rows 0..2m is class-equal to ch_m(e).
CheckReport verify_minus_compat(const Idempotent& e, Index m, Index window_m,
                                const GuardConfig& guard = {});

// k, dual numbers, k[x]/(x^3), M_2(k), T(k), T(dual numbers), k x k.
std::vector<AlgebraPtr> bundled_corpus(const FieldSpec& field);

// Unit of M_1(k), E11 in M_2(k), and conjugates of diag(1, 0).
std::vector<Idempotent> theorem_b_idempotents(const FieldSpec& field);

// Invertible 2x2 scalar matrices with exact inverses, for conjugation
// checks. Returns (g, g^{-1}) pairs.
std::vector<std::pair<MatrixOverA, MatrixOverA>> conjugator_pool(const AlgebraPtr& ground,
                                                                 std::size_t count);

struct SuiteConfig {
  std::vector<std::string> suites;  // subset of operators/additivity/morita/theoremB
  FieldSpec field;
  std::vector<AlgebraPtr> corpus;  // defaults to bundled_corpus(field) when empty
  GuardConfig guard;
  Index table_n_max = 8;
  Index degree_max = 3;
  Index window_m = 3;
};

struct SuiteResult {
  std::vector<CheckReport> reports;  // sorted by (name, inputs)
  std::size_t passes = 0;
  std::size_t fails = 0;
  std::size_t approximate = 0;

  std::string summary() const;
  bool all_passed() const { return fails == 0; }
};

SuiteResult run_suite(const SuiteConfig& config);

}  // namespace cychom

#endif  // CYCHOM_LAB_HPP
