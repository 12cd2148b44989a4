// Command-line front end: pattern computation, sparsification, diagnostics,
// test-matrix generation, and parameter sweeps over Matrix Market files.

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sparsix/sparsix.hpp"

namespace {

using sparsix::Index;
using sparsix::Matrix;

double parse_p_value(const std::string& text) {
  std::string t = text;
  std::transform(t.begin(), t.end(), t.begin(), ::tolower);
  if (t == "inf" || t == "infinity") {
    return std::numeric_limits<double>::infinity();
  }
  try {
    size_t pos = 0;
    const double v = std::stod(t, &pos);
    if (pos != t.size()) throw std::invalid_argument(t);
    return v;
  } catch (const std::exception&) {
    throw sparsix::invalid_parameter_error("cannot parse '" + text +
                                           "' as a p value (use a number or 'inf')");
  }
}

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(parse_p_value(item));
  }
  if (out.empty()) {
    throw sparsix::invalid_parameter_error(std::string("empty ") + what +
                                           " list");
  }
  return out;
}

std::string sig4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::string sig4(const std::optional<double>& v) {
  return v ? sig4(*v) : std::string("n/a");
}

std::string full(double v) {
  return sparsix::detail::format_double(v);
}

std::string full(const std::optional<double>& v) {
  return v ? full(*v) : std::string("nan");
}

struct PipelineOpts {
  std::string input;
  std::string output;
  std::string pattern_out;
  std::string report;
  std::string p_text = "1";
  double q = 0.8;
  std::optional<double> rank_tol;
  std::optional<Index> n_row, n_col;
  double cond_warn = 1e8;
};

void add_param_flags(CLI::App* cmd, PipelineOpts& o) {
  cmd->add_option("--p", o.p_text, "Lp parameter in [0, inf]; spell infinity as 'inf'")
      ->capture_default_str();
  cmd->add_option("--q", o.q, "sparsity parameter in [0, 1]")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--rank-tol", o.rank_tol,
                  "relative rank truncation tolerance (default max(m,n)*eps)");
  cmd->add_option("--n-row", o.n_row, "minimum kept nonzeros per row");
  cmd->add_option("--n-col", o.n_col, "minimum kept nonzeros per column");
}

sparsix::SparsifyParams make_params(const PipelineOpts& o) {
  sparsix::SparsifyParams params;
  params.p = parse_p_value(o.p_text);
  params.q = o.q;
  params.rank_tol = o.rank_tol;
  params.n_row_override = o.n_row;
  params.n_col_override = o.n_col;
  return params;
}

void warn_if_ill_conditioned(const sparsix::Report& rep, double threshold) {
  if (rep.kappa_a && *rep.kappa_a > threshold) {
    std::cerr << "warning: input condition number " << sig4(*rep.kappa_a)
              << " exceeds " << sig4(threshold)
              << "; sparsification quality may degrade\n";
  }
}

void print_summary(const sparsix::Report& rep) {
  std::cout << "nnz_x=" << rep.nnz_x << " density=" << sig4(rep.density_x)
            << " j_min=" << sig4(rep.j_min) << " cond_x=" << sig4(rep.cond_x)
            << " cond_pinva_x=" << sig4(rep.cond_pinva_x)
            << " cond_x_pinva=" << sig4(rep.cond_x_pinva) << "\n";
}

int run_gen(const std::string& kind, Index size, uint64_t seed,
            Index rank_deficiency, const std::string& output,
            const std::string& format) {
  sparsix::GenSpec spec;
  spec.kind = sparsix::kind_from_string(kind);
  spec.size = size;
  spec.seed = seed;
  spec.rank_deficiency = rank_deficiency;
  const Matrix a = sparsix::random_member(spec);
  sparsix::write_matrix(a, output,
                        format == "coordinate"
                            ? sparsix::MatrixMarketMode::coordinate
                            : sparsix::MatrixMarketMode::dense);
  std::cout << "wrote " << a.rows() << "x" << a.cols() << " " << kind
            << " matrix to " << output << "\n";
  return 0;
}

int run_pattern(const PipelineOpts& o) {
  const Matrix a = sparsix::read_matrix(o.input);
  const double p = parse_p_value(o.p_text);
  const double rank_tol =
      o.rank_tol ? *o.rank_tol : sparsix::default_rank_tol(a);
  const sparsix::SpectralData f = sparsix::factorize(a, rank_tol);
  const auto [def_row, def_col] = sparsix::default_min_nonzeros(f);
  sparsix::LpParams lp;
  lp.p = p;
  lp.q = o.q;
  lp.n_row = o.n_row ? *o.n_row : def_row;
  lp.n_col = o.n_col ? *o.n_col : def_col;
  const sparsix::Pattern z = sparsix::matrix_pattern(a, lp);
  sparsix::write_pattern(z, o.output);
  std::cout << "nnz=" << z.nnz() << " density=" << sig4(z.density()) << "\n";
  return 0;
}

int run_sparsify(const PipelineOpts& o, bool write_x_required) {
  const Matrix a = sparsix::read_matrix(o.input);
  const sparsix::SparsifyParams params = make_params(o);
  const sparsix::SparsifyOutcome outcome = sparsix::sparsify(a, params);
  const sparsix::Report rep = sparsix::build_report(a, outcome, params);
  warn_if_ill_conditioned(rep, o.cond_warn);
  if (write_x_required || !o.output.empty()) {
    sparsix::write_matrix(outcome.x, o.output,
                          sparsix::MatrixMarketMode::coordinate);
  }
  if (!o.pattern_out.empty()) {
    sparsix::write_pattern(outcome.pattern, o.pattern_out);
  }
  if (!o.report.empty()) sparsix::write_report(rep, o.report);
  print_summary(rep);
  return 0;
}

int run_sweep(const PipelineOpts& o, const std::string& p_list,
              const std::string& q_list) {
  const Matrix a = sparsix::read_matrix(o.input);
  const std::vector<double> ps = parse_list(p_list, "p");
  const std::vector<double> qs = parse_list(q_list, "q");

  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!o.output.empty()) {
    file.open(o.output);
    if (!file) throw sparsix::io_error("cannot open " + o.output);
    os = &file;
  }
  *os << "p,q,nnz_x,cond_pinva_x,cond_x_pinva,rel_inv_diff,j_min\n";
  for (const double p : ps) {
    for (const double q : qs) {
      sparsix::SparsifyParams params;
      params.p = p;
      params.q = q;
      params.rank_tol = o.rank_tol;
      params.n_row_override = o.n_row;
      params.n_col_override = o.n_col;
      const sparsix::SparsifyOutcome outcome = sparsix::sparsify(a, params);
      const sparsix::Report rep = sparsix::build_report(a, outcome, params);
      *os << full(p) << "," << full(q) << "," << rep.nnz_x << ","
          << full(rep.cond_pinva_x) << "," << full(rep.cond_x_pinva) << ","
          << full(rep.rel_inv_diff) << "," << full(rep.j_min) << "\n";
    }
  }
  if (!*os) throw sparsix::io_error("sweep output write failed");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "sparsix: matrix sparsification with exact null-space preservation"};
  app.require_subcommand(1);

  // gen
  std::string gen_kind, gen_output, gen_format = "dense";
  Index gen_size = 40, gen_rank_def = 0;
  uint64_t gen_seed = 0;
  auto* gen = app.add_subcommand("gen", "generate a test or structured matrix");
  gen->add_option("--kind", gen_kind,
                  "matrix kind (cos40, exchange, symplectic, cyclic-plus, "
                  "cyclic-minus, hermitian, circulant, ..., general)")
      ->required();
  gen->add_option("--size", gen_size, "matrix dimension")
      ->capture_default_str();
  gen->add_option("--seed", gen_seed, "random seed for the seeded kinds")
      ->capture_default_str();
  gen->add_option("--rank-deficiency", gen_rank_def,
                  "zero out this many trailing singular values")
      ->capture_default_str();
  gen->add_option("--output", gen_output, "output Matrix Market path")
      ->required();
  gen->add_option("--format", gen_format, "dense | coordinate")
      ->check(CLI::IsMember({"dense", "coordinate"}))
      ->capture_default_str();

  // pattern
  PipelineOpts pat_opts;
  auto* pattern =
      app.add_subcommand("pattern", "compute an Lp sparsity pattern");
  pattern->add_option("--input", pat_opts.input, "input matrix (.mtx)")
      ->required();
  pattern->add_option("--output", pat_opts.output, "output pattern (.mtx)")
      ->required();
  add_param_flags(pattern, pat_opts);

  // sparsify
  PipelineOpts sp_opts;
  auto* sparsify_cmd =
      app.add_subcommand("sparsify", "sparsify a matrix (pattern + solve)");
  sparsify_cmd->add_option("--input", sp_opts.input, "input matrix (.mtx)")
      ->required();
  sparsify_cmd
      ->add_option("--output", sp_opts.output, "output sparse X (.mtx)")
      ->required();
  sparsify_cmd->add_option("--pattern-out", sp_opts.pattern_out,
                           "also write the pattern used");
  sparsify_cmd->add_option("--report", sp_opts.report,
                           "write the JSON diagnostics report");
  add_param_flags(sparsify_cmd, sp_opts);
  sparsify_cmd
      ->add_option("--cond-warn", sp_opts.cond_warn,
                   "warn when the input condition number exceeds this")
      ->capture_default_str();

  // diagnose
  PipelineOpts diag_opts;
  auto* diagnose = app.add_subcommand(
      "diagnose", "run the pipeline and emit the JSON report only");
  diagnose->add_option("--input", diag_opts.input, "input matrix (.mtx)")
      ->required();
  diagnose->add_option("--report", diag_opts.report, "JSON report path")
      ->required();
  diagnose->add_option("--output", diag_opts.output,
                       "optionally also write X (.mtx)");
  add_param_flags(diagnose, diag_opts);
  diagnose
      ->add_option("--cond-warn", diag_opts.cond_warn,
                   "warn when the input condition number exceeds this")
      ->capture_default_str();

  // sweep
  PipelineOpts sweep_opts;
  std::string p_list, q_list;
  auto* sweep = app.add_subcommand(
      "sweep", "sparsify over a (p, q) grid and emit CSV quality data");
  sweep->add_option("--input", sweep_opts.input, "input matrix (.mtx)")
      ->required();
  sweep->add_option("--p-list", p_list, "comma-separated p values")
      ->required();
  sweep->add_option("--q-list", q_list, "comma-separated q values")
      ->required();
  sweep->add_option("--output", sweep_opts.output,
                    "CSV path (default: stdout)");
  sweep->add_option("--rank-tol", sweep_opts.rank_tol,
                    "relative rank truncation tolerance");
  sweep->add_option("--n-row", sweep_opts.n_row,
                    "minimum kept nonzeros per row");
  sweep->add_option("--n-col", sweep_opts.n_col,
                    "minimum kept nonzeros per column");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (gen->parsed()) {
      return run_gen(gen_kind, gen_size, gen_seed, gen_rank_def, gen_output,
                     gen_format);
    }
    if (pattern->parsed()) return run_pattern(pat_opts);
    if (sparsify_cmd->parsed()) return run_sparsify(sp_opts, true);
    if (diagnose->parsed()) return run_sparsify(diag_opts, false);
    if (sweep->parsed()) return run_sweep(sweep_opts, p_list, q_list);
  } catch (const sparsix::numeric_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const sparsix::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
