#include "cychom/lab.hpp"

#include <algorithm>
#include <sstream>

namespace cychom {

namespace {

std::string dim_line(const std::string& label, std::size_t got, std::size_t expected) {
  std::ostringstream os;
  os << label << ": got " << got << ", expected " << expected;
  return os.str();
}

SparseVec scalar_element(const AlgebraPtr& ground, long v) {
  Rational r = ground->field().from_int(v);
  if (r == 0) return {};
  return SparseVec{{0, r}};
}

MatrixOverA scalar_matrix_2x2(const AlgebraPtr& ground, long a, long b, long c, long d) {
  MatrixOverA m = MatrixOverA::zero(ground, 2);
  m.at(0, 0) = scalar_element(ground, a);
  m.at(0, 1) = scalar_element(ground, b);
  m.at(1, 0) = scalar_element(ground, c);
  m.at(1, 1) = scalar_element(ground, d);
  return m;
}

}  // namespace

std::string verdict_to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Approximate: return "approximate";
  }
  return "?";
}

std::string invariant_to_string(InvariantKind kind, Index param) {
  switch (kind) {
    case InvariantKind::HH: return "HH_" + std::to_string(param);
    case InvariantKind::HC: return "HC_" + std::to_string(param);
    case InvariantKind::Minus0: return "HC^-_0[M=" + std::to_string(param) + "]";
    case InvariantKind::TowerLimit: return "tower-limit[n_max=" + std::to_string(param) + "]";
  }
  return "?";
}

CheckReport verify_operator_tables(const FieldSpec& field, Index n_max) {
  CheckReport report;
  report.name = "verify_operator_tables";
  report.inputs = "field=" + field.to_string() + " n_max=" + std::to_string(n_max);
  report.verdict = Verdict::Pass;
  const AlgebraPtr k = Algebra::ground_field(field);
  for (Index n = 0; n <= n_max; ++n) {
    const bool odd = (n % 2 == 1);
    if (n >= 1) {
      SparseMatrix b = hochschild_b(k, n);
      SparseMatrix expected_b = SparseMatrix::scalar(1, field, Rational(odd ? 0 : 1));
      if (!(b == expected_b)) {
        report.verdict = Verdict::Fail;
        report.witness.push_back("b mismatch at n=" + std::to_string(n));
      }
      SparseMatrix minus_bp = bar_bprime(k, n).scale(Rational(-1));
      SparseMatrix expected_bp = SparseMatrix::scalar(1, field, Rational(odd ? -1 : 0));
      if (!(minus_bp == expected_bp)) {
        report.verdict = Verdict::Fail;
        report.witness.push_back("-b' mismatch at n=" + std::to_string(n));
      }
    }
    auto [t, norm] = cyclic_ops(k, n);
    SparseMatrix one_minus_t = SparseMatrix::identity(1, field).add(t.scale(Rational(-1)));
    SparseMatrix expected_1mt = SparseMatrix::scalar(1, field, Rational(odd ? 2 : 0));
    if (!(one_minus_t == expected_1mt)) {
      report.verdict = Verdict::Fail;
      report.witness.push_back("(1-t) mismatch at n=" + std::to_string(n));
    }
    SparseMatrix expected_n = SparseMatrix::scalar(1, field, Rational(odd ? 0 : n + 1));
    if (!(norm == expected_n)) {
      report.verdict = Verdict::Fail;
      report.witness.push_back("N mismatch at n=" + std::to_string(n));
    }
  }
  if (report.verdict == Verdict::Pass) {
    report.witness.push_back("all four closed forms match for n <= " + std::to_string(n_max));
  }
  return report;
}

CheckReport verify_additivity(const AlgebraPtr& a, InvariantKind kind, Index param,
                              const GuardConfig& guard) {
  CheckReport report;
  report.name = "verify_additivity";
  report.inputs = "algebra=" + a->name() + " invariant=" + invariant_to_string(kind, param);
  const AlgebraPtr t_a = Algebra::upper_triangular(a);

  std::size_t dim_a = 0, dim_ta = 0;
  std::optional<bool> stab_a, stab_ta;
  bool approximate = false;
  switch (kind) {
    case InvariantKind::HH:
      dim_a = hh(a, param, guard).dim();
      dim_ta = hh(t_a, param, guard).dim();
      break;
    case InvariantKind::HC:
      dim_a = hc(a, param, guard).dim();
      dim_ta = hc(t_a, param, guard).dim();
      break;
    case InvariantKind::Minus0: {
      HomologyResult ra = hc_minus0(a, param, guard);
      HomologyResult rta = hc_minus0(t_a, param, guard);
      dim_a = ra.dim();
      dim_ta = rta.dim();
      stab_a = ra.stabilized();
      stab_ta = rta.stabilized();
      approximate = !(stab_a.value_or(false) && stab_ta.value_or(false));
      break;
    }
    case InvariantKind::TowerLimit: {
      PeriodicApprox pa = hc_per0(a, param, guard);
      PeriodicApprox pta = hc_per0(t_a, param, guard);
      dim_a = pa.dim;
      dim_ta = pta.dim;
      approximate = !(pa.stabilized && pta.stabilized);
      break;
    }
  }
  report.witness.push_back(dim_line("dim E(T(A))", dim_ta, 2 * dim_a));
  if (dim_ta == 2 * dim_a) {
    report.verdict = approximate ? Verdict::Approximate : Verdict::Pass;
    if (approximate) report.witness.push_back("tower/window not confirmed stable");
  } else {
    report.verdict = Verdict::Fail;
  }
  return report;
}

CheckReport verify_matrix_agreement(const FieldSpec& field, Index r, Index n,
                                    const GuardConfig& guard) {
  CheckReport report;
  report.name = "verify_matrix_agreement";
  report.inputs = "r=" + std::to_string(r) + " n=" + std::to_string(n) +
                  " field=" + field.to_string();
  const AlgebraPtr k = Algebra::ground_field(field);
  const AlgebraPtr m_r = Algebra::matrix(k, r);
  HomologyResult h_k = hc(k, n, guard);
  HomologyResult h_m = hc(m_r, n, guard);
  report.witness.push_back(dim_line("dim HC_" + std::to_string(n) + "(M_" + std::to_string(r) +
                                        "(k))",
                                    h_m.dim(), h_k.dim()));
  report.verdict = h_m.dim() == h_k.dim() ? Verdict::Pass : Verdict::Fail;
  if (report.verdict != Verdict::Pass || n % 2 != 0) return report;

  // Even degree: traced generator classes must hit nonzero multiples of
  // the canonical generator, and the rank-one idempotent traces to it
  // on the nose.
  const Index m = n / 2;
  for (std::size_t j = 0; j < h_m.dim(); ++j) {
    Chain traced = chain_trace(h_m.representative(j));
    Rational value = psi(h_k, traced);
    report.witness.push_back("trace of generator " + std::to_string(j) + " -> " +
                             scalar_to_string(value) + " * [u^" + std::to_string(m) + "]");
    if (value == 0) report.verdict = Verdict::Fail;
  }
  MatrixOverA rank_one = MatrixOverA::zero(m_r, 1);
  rank_one.at(0, 0) = SparseVec{{0, Rational(1)}};  // E11 as element of M_r(k)
  Idempotent e = Idempotent::checked(std::move(rank_one), "E11@M_" + std::to_string(r));
  Chain traced = chain_trace(chern_chain(e, m, guard));
  Rational value = psi(h_k, traced);
  report.witness.push_back("trace of ch_" + std::to_string(m) + "(E11) -> " +
                           scalar_to_string(value) + " * [u^" + std::to_string(m) + "]");
  if (value != field.reduce(Rational(1))) report.verdict = Verdict::Fail;
  return report;
}

CheckReport verify_s_compat(const Idempotent& e, Index n, Index m, const GuardConfig& guard) {
  if (m >= n) throw DimensionError("verify_s_compat requires m < n");
  CheckReport report;
  report.name = "verify_s_compat";
  report.inputs = "e=" + e.name() + " n=" + std::to_string(n) + " m=" + std::to_string(m);
  const AlgebraPtr& a = e.inner_algebra();
  Chain c_n = chern_chain(e, n, guard);
  Chain c_m = chern_chain(e, m, guard);
  Chain truncated = c_n;
  for (Index step = 0; step < n - m; ++step) truncated = s_truncate(truncated);
  const bool chain_match = truncated == c_m;
  report.witness.push_back(std::string("chain-level truncation equals ch_m: ") +
                           (chain_match ? "yes" : "no"));
  report.verdict = class_equal(a, 2 * m, truncated, c_m, guard) ? Verdict::Pass : Verdict::Fail;

  const bool is_unit_over_ground =
      a->dim() == 1 && e.size() == 1 && e.matrix().at(0, 0) == a->unit();
  if (is_unit_over_ground && report.verdict == Verdict::Pass) {
    std::string trail = "psi trail (";
    Chain cur = c_n;
    for (Index j = n + 1; j-- > m;) {
      HomologyResult h = hc(a, 2 * j, guard);
      Rational v = psi(h, cur);
      trail += scalar_to_string(v);
      trail += j == m ? ")" : ",";
      if (v != a->field().reduce(Rational(1))) report.verdict = Verdict::Fail;
      if (j > m) cur = s_truncate(cur);
    }
    report.witness.push_back(trail);
  }
  return report;
}

CheckReport verify_minus_compat(const Idempotent& e, Index m, Index window_m,
                                const GuardConfig& guard) {
  if (window_m < m) throw DimensionError("verify_minus_compat requires M >= m");
  CheckReport report;
  report.name = "verify_minus_compat";
  report.inputs =
      "e=" + e.name() + " m=" + std::to_string(m) + " M=" + std::to_string(window_m);
  const AlgebraPtr& a = e.inner_algebra();
  MinusChain minus = chern_minus_chain(e, window_m, guard);
  Chain projected = minus_project(minus, m);
  Chain direct = chern_chain(e, m, guard);
  const bool chain_match = projected == direct;
  report.witness.push_back(std::string("projected rows 0..") + std::to_string(2 * m) +
                           " equal ch_m componentwise: " + (chain_match ? "yes" : "no"));
  report.verdict =
      class_equal(a, 2 * m, projected, direct, guard) ? Verdict::Pass : Verdict::Fail;
  return report;
}

std::vector<AlgebraPtr> bundled_corpus(const FieldSpec& field) {
  const AlgebraPtr k = Algebra::ground_field(field);
  const AlgebraPtr dual = Algebra::dual_numbers(field);
  return {
      k,
      dual,
      Algebra::truncated_poly(field, 3),
      Algebra::matrix(k, 2),
      Algebra::upper_triangular(k),
      Algebra::upper_triangular(dual),
      Algebra::product(k, k),
  };
}

std::vector<std::pair<MatrixOverA, MatrixOverA>> conjugator_pool(const AlgebraPtr& ground,
                                                                 std::size_t count) {
  if (ground->dim() != 1) throw AlgebraError("conjugator_pool expects the ground field");
  // (a, b, c, d) with ad - bc = +-1, so the inverse is integral.
  static constexpr long kUnimodular[][4] = {
      {1, 1, 0, 1}, {1, 0, 1, 1}, {2, 1, 1, 1}, {1, 2, 3, 7},
      {0, 1, 1, 0}, {3, 1, 2, 1}, {5, 2, 2, 1}, {1, 3, 2, 7},
  };
  std::vector<std::pair<MatrixOverA, MatrixOverA>> out;
  for (const auto& g : kUnimodular) {
    if (out.size() >= count) break;
    const long det = g[0] * g[3] - g[1] * g[2];
    MatrixOverA mat = scalar_matrix_2x2(ground, g[0], g[1], g[2], g[3]);
    MatrixOverA inv = scalar_matrix_2x2(ground, g[3] / det, -g[1] / det, -g[2] / det,
                                        g[0] / det);
    out.emplace_back(std::move(mat), std::move(inv));
  }
  return out;
}

std::vector<Idempotent> theorem_b_idempotents(const FieldSpec& field) {
  const AlgebraPtr k = Algebra::ground_field(field);
  std::vector<Idempotent> out;
  out.push_back(Idempotent::checked(identity_matrix_over(k, 1), "1@M_1(k)"));
  MatrixOverA e11 = MatrixOverA::zero(k, 2);
  e11.at(0, 0) = k->unit();
  Idempotent diag = Idempotent::checked(std::move(e11), "diag(1,0)");
  out.push_back(diag);
  for (const auto& [g, g_inv] : conjugator_pool(k, 3)) {
    out.push_back(conjugated(diag, g, g_inv));
  }
  return out;
}

namespace {

bool admits(const GuardConfig& guard, Index dim, Index arity) {
  try {
    guard.admit(dim, arity);
    return true;
  } catch (const GuardrailError&) {
    return false;
  }
}

bool wants(const SuiteConfig& config, const std::string& suite) {
  return std::find(config.suites.begin(), config.suites.end(), suite) != config.suites.end() ||
         std::find(config.suites.begin(), config.suites.end(), "all") != config.suites.end();
}

}  // namespace

std::string SuiteResult::summary() const {
  std::ostringstream os;
  os << "checks=" << reports.size() << " pass=" << passes << " fail=" << fails
     << " approx=" << approximate;
  return os.str();
}

SuiteResult run_suite(const SuiteConfig& config) {
  SuiteResult result;
  const std::vector<AlgebraPtr> corpus =
      config.corpus.empty() ? bundled_corpus(config.field) : config.corpus;

  if (wants(config, "operators")) {
    result.reports.push_back(verify_operator_tables(config.field, config.table_n_max));
  }

  if (wants(config, "additivity")) {
    for (const AlgebraPtr& a : corpus) {
      const Index d = a->dim();
      const Index d_t = 3 * d;
      for (Index n = 0; n <= config.degree_max; ++n) {
        if (!admits(config.guard, d, n + 2) || !admits(config.guard, d_t, n + 2)) continue;
        result.reports.push_back(verify_additivity(a, InvariantKind::HH, n, config.guard));
        result.reports.push_back(verify_additivity(a, InvariantKind::HC, n, config.guard));
      }
      if (admits(config.guard, d, 4) && admits(config.guard, d_t, 4)) {
        result.reports.push_back(verify_additivity(a, InvariantKind::Minus0, 1, config.guard));
      }
      if (admits(config.guard, d, 4) && admits(config.guard, d_t, 4)) {
        result.reports.push_back(
            verify_additivity(a, InvariantKind::TowerLimit, 1, config.guard));
      }
    }
  }

  if (wants(config, "morita")) {
    for (Index r = 1; r <= 3; ++r) {
      for (Index n = 0; n <= config.degree_max; ++n) {
        if (!admits(config.guard, r * r, n + 2)) continue;
        result.reports.push_back(verify_matrix_agreement(config.field, r, n, config.guard));
      }
    }
  }

  if (wants(config, "theoremB")) {
    for (const Idempotent& e : theorem_b_idempotents(config.field)) {
      for (Index n = 1; n <= config.degree_max; ++n) {
        for (Index m = 0; m < n; ++m) {
          result.reports.push_back(verify_s_compat(e, n, m, config.guard));
        }
      }
      for (Index m = 0; m <= std::min<Index>(2, config.window_m); ++m) {
        result.reports.push_back(verify_minus_compat(e, m, config.window_m, config.guard));
      }
    }
  }

  std::sort(result.reports.begin(), result.reports.end(),
            [](const CheckReport& a, const CheckReport& b) {
              return std::tie(a.name, a.inputs) < std::tie(b.name, b.inputs);
            });
  for (const CheckReport& r : result.reports) {
    switch (r.verdict) {
      case Verdict::Pass: ++result.passes; break;
      case Verdict::Fail: ++result.fails; break;
      case Verdict::Approximate: ++result.approximate; break;
    }
  }
  return result;
}

}  // namespace cychom
