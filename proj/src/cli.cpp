#include "cychom/cli.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "cychom/io.hpp"

namespace cychom {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;
constexpr int kExitGuardrail = 3;

struct GlobalOptions {
  std::string field_text = "rat";
  std::uint64_t cap = 20000;
  std::string format_text = "text";
  bool force = false;

  FieldSpec field() const { return FieldSpec::parse(field_text); }
  GuardConfig guard() const { return GuardConfig{cap, force}; }
  OutputFormat format() const {
    if (format_text == "text") return OutputFormat::Text;
    if (format_text == "structured") return OutputFormat::Structured;
    throw ParseError("unknown output format '" + format_text + "'");
  }
};

}  // namespace

int cli_main(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact cyclic/Hochschild homology and Chern character checks "
               "for finite-dimensional algebras"};
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--field", global.field_text, "Scalar field: rat or fp:<p>")
      ->capture_default_str();
  app.add_option("--cap", global.cap,
                 "Guardrail cap on the largest tensor-power dimension")
      ->envname("CYCHOM_CAP")
      ->capture_default_str();
  app.add_option("--format", global.format_text, "Report format: text or structured")
      ->check(CLI::IsMember({"text", "structured"}))
      ->capture_default_str();
  app.add_flag("--force", global.force, "Override the guardrail");

  // hc / hh
  std::string hc_algebra;
  Index hc_n = 0;
  CLI::App* cmd_hc = app.add_subcommand("hc", "Cyclic homology HC_n of an algebra");
  cmd_hc->add_option("algebra", hc_algebra, "Construction expression or algebra file")
      ->required();
  cmd_hc->add_option("--n", hc_n, "Homology degree")->required();

  std::string hh_algebra;
  Index hh_n = 0;
  CLI::App* cmd_hh = app.add_subcommand("hh", "Hochschild homology HH_n of an algebra");
  cmd_hh->add_option("algebra", hh_algebra, "Construction expression or algebra file")
      ->required();
  cmd_hh->add_option("--n", hh_n, "Homology degree")->required();

  // un
  Index un_n = 0;
  CLI::App* cmd_un = app.add_subcommand("un", "Print the canonical cycle u^n exactly");
  cmd_un->add_option("--n", un_n, "Generator index")->required();

  // chern
  std::string chern_algebra;
  std::string chern_idempotent;
  Index chern_n = 0;
  bool chern_minus_flag = false;
  Index chern_window = 3;
  CLI::App* cmd_chern =
      app.add_subcommand("chern", "Chern character of an idempotent matrix");
  cmd_chern->add_option("algebra", chern_algebra, "Construction expression or algebra file")
      ->required();
  cmd_chern->add_option("--idempotent", chern_idempotent, "Idempotent description file")
      ->required();
  CLI::Option* opt_n = cmd_chern->add_option("--n", chern_n, "Character degree index");
  CLI::Option* opt_minus =
      cmd_chern->add_flag("--minus", chern_minus_flag, "Compute the truncated ch^- instead");
  cmd_chern->add_option("--window", chern_window, "Window parameter M for --minus")
      ->capture_default_str();
  opt_n->excludes(opt_minus);

  // smap
  std::string smap_algebra;
  Index smap_n = 0;
  CLI::App* cmd_smap =
      app.add_subcommand("smap", "Matrix of S: HC_2n -> HC_2n-2 on homology");
  cmd_smap->add_option("algebra", smap_algebra, "Construction expression or algebra file")
      ->required();
  cmd_smap->add_option("--n", smap_n, "Periodicity level (n >= 1)")->required();

  // verify
  std::vector<std::string> verify_suites{"all"};
  std::vector<std::string> verify_corpus;
  bool verify_strict = false;
  Index verify_degree_max = 3;
  Index verify_window = 3;
  Index verify_tables_nmax = 8;
  CLI::App* cmd_verify = app.add_subcommand("verify", "Run the verification check suites");
  cmd_verify
      ->add_option("--suite", verify_suites,
                   "all, operators, additivity, morita, theoremB (repeatable)")
      ->check(CLI::IsMember({"all", "operators", "additivity", "morita", "theoremB"}))
      ->capture_default_str();
  cmd_verify->add_option("--corpus", verify_corpus,
                         "Override the bundled algebra corpus (construction expressions "
                         "or files; repeatable)");
  cmd_verify->add_flag("--strict", verify_strict,
                       "Treat approximate verdicts as failures");
  cmd_verify->add_option("--degree-max", verify_degree_max, "Largest homology degree checked")
      ->capture_default_str();
  cmd_verify->add_option("--window", verify_window, "Window parameter M for minus checks")
      ->capture_default_str();
  cmd_verify->add_option("--tables-nmax", verify_tables_nmax,
                         "Largest arity index for the operator tables")
      ->capture_default_str();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitInputError;
  }

  try {
    const FieldSpec field = global.field();
    const GuardConfig guard = global.guard();
    const OutputFormat format = global.format();

    if (*cmd_hc) {
      AlgebraPtr a = resolve_algebra(hc_algebra, field);
      out << render_homology(hc(a, hc_n, guard), format);
      return kExitOk;
    }
    if (*cmd_hh) {
      AlgebraPtr a = resolve_algebra(hh_algebra, field);
      out << render_homology(hh(a, hh_n, guard), format);
      return kExitOk;
    }
    if (*cmd_un) {
      AlgebraPtr k = Algebra::ground_field(field);
      out << render_u_generator(u_generator(k, un_n), un_n, format);
      return kExitOk;
    }
    if (*cmd_chern) {
      AlgebraPtr a = resolve_algebra(chern_algebra, field);
      Idempotent e = load_idempotent_file(chern_idempotent, field, a);
      if (chern_minus_flag) {
        out << render_chern_minus(chern_minus(e, chern_window, guard), e.name(), chern_window,
                                  format);
      } else {
        if (opt_n->count() == 0) throw ParseError("chern requires --n (or --minus)");
        out << render_chern(chern(e, chern_n, guard), e.name(), chern_n, format);
      }
      return kExitOk;
    }
    if (*cmd_smap) {
      if (smap_n < 1) throw ParseError("smap requires --n >= 1");
      AlgebraPtr a = resolve_algebra(smap_algebra, field);
      HomologyResult top = hc(a, 2 * smap_n, guard);
      HomologyResult bottom = hc(a, 2 * smap_n - 2, guard);
      out << render_s_matrix(s_map(a, smap_n, top, bottom), a, smap_n, format);
      return kExitOk;
    }
    if (*cmd_verify) {
      SuiteConfig config;
      config.suites = verify_suites;
      config.field = field;
      config.guard = guard;
      config.degree_max = verify_degree_max;
      config.window_m = verify_window;
      config.table_n_max = verify_tables_nmax;
      for (const std::string& c : verify_corpus) {
        config.corpus.push_back(resolve_algebra(c, field));
      }
      SuiteResult result = run_suite(config);
      out << render_suite(result, format);
      if (result.fails > 0) return kExitCheckFailed;
      if (result.approximate > 0) {
        if (verify_strict) return kExitCheckFailed;
        if (format == OutputFormat::Text) {
          out << "warning: " << result.approximate
              << " approximate verdict(s) from non-stabilized towers\n";
        }
      }
      return kExitOk;
    }
    err << "error: no subcommand selected\n";
    return kExitInputError;
  } catch (const GuardrailError& e) {
    err << "error: " << e.what() << "\n";
    return kExitGuardrail;
  } catch (const CompositionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const FieldError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const AlgebraError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const TruncationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace cychom
