// Command-line surface for the accurate Lagrange-basis least squares library:
// bidiagonal decomposition export, fitting, pseudoinverse / projection export,
// barycentric evaluation, and offline reproduction of the bundled accuracy
// demonstrations against a structure-blind QR comparator.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tplag/tplag.hpp"

namespace {

using namespace tplag;

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open output file: " + path);
  return out;
}

void emit(const std::string& output, const std::string& text) {
  if (output.empty()) {
    std::cout << text;
  } else {
    open_out(output) << text;
  }
}

std::optional<ChangeOfVariable> cov_override(const ProblemFile& pf, const CLI::Option* a0_opt,
                                             const CLI::Option* a1_opt, double a0, double a1) {
  if (a0_opt->count() || a1_opt->count()) {
    ChangeOfVariable cov{a0, a1, true};
    return cov;
  }
  if (pf.change_of_variable) {
    ChangeOfVariable cov = *pf.change_of_variable;
    cov.applied = true;
    return cov;
  }
  return std::nullopt;
}

int cmd_decompose(const std::string& input, const std::string& output, bool autoshift) {
  const ProblemFile pf = load_problem(input);
  NodeConfig cfg = pf.config();
  if (!cfg.ordered_flag) {
    if (!autoshift) throw NotOrdered();
    cfg = apply_change_of_variable(cfg, make_change_of_variable(cfg));
  }
  const BDMatrix bd = tnbdlr(cfg);
  std::ostringstream os;
  write_bd_csv(os, bd);
  emit(output, os.str());
  return 0;
}

int cmd_fit(const std::string& input, const std::string& output,
            std::optional<ChangeOfVariable> cov) {
  const ProblemFile pf = load_problem(input);
  if (pf.b.empty()) throw Error("fit: input file has no data vector 'b'");
  const NodeConfig cfg = pf.config();
  const FitModel model = fit(cfg, pf.b, cov);
  emit(output, fit_to_json(model).dump(2) + "\n");
  std::fprintf(stdout, "residual_norm %s\n", format_double(model.residual_norm()).c_str());
  std::fprintf(stdout, "change_of_variable %s\n",
               model.change_of_variable().applied ? "applied" : "identity");
  return 0;
}

int cmd_pinv(const std::string& input, const std::string& output) {
  const ProblemFile pf = load_problem(input);
  const NodeConfig cfg = pf.config();
  const Matrix<double> pinv = mp_inverse_L(cfg);
  std::ostringstream os;
  write_matrix_csv(os, pinv);
  emit(output, os.str());
  if (cfg.x.size() == cfg.t.size()) {
    const Matrix<double> prod = matmul(pinv, build_L(cfg));
    double worst = 0;
    for (std::size_t i = 0; i < prod.rows(); ++i)
      for (std::size_t j = 0; j < prod.cols(); ++j)
        worst = std::max(worst, std::abs(prod(i, j) - (i == j ? 1.0 : 0.0)));
    std::fprintf(stdout, "square case: max |pinv(L)*L - I| = %.3e\n", worst);
  }
  return 0;
}

int cmd_project(const std::string& input, const std::string& output) {
  const ProblemFile pf = load_problem(input);
  NodeConfig cfg = pf.config();
  cfg = apply_change_of_variable(cfg, make_change_of_variable(cfg));
  const Matrix<double> h = projection_matrix(cfg);
  std::ostringstream os;
  write_matrix_csv(os, h);
  emit(output, os.str());
  return 0;
}

int cmd_eval(const std::string& input, const std::string& points,
             std::optional<ChangeOfVariable> cov) {
  const ProblemFile pf = load_problem(input);
  if (pf.b.empty()) throw Error("eval: input file has no data vector 'b'");
  const FitModel model = fit(pf.config(), pf.b, cov);
  std::stringstream ps(points);
  std::string tok;
  while (std::getline(ps, tok, ',')) {
    const double t_star = parse_number(tok);
    const double value = evaluate(model, t_star);
    std::fprintf(stdout, "%s %s%s\n", format_double(t_star).c_str(),
                 format_double(value).c_str(),
                 model.is_extrapolation(t_star) ? " extrapolation" : "");
  }
  return 0;
}

ProblemFile load_bundled(const std::string& path) {
  try {
    return load_problem(path);
  } catch (const Error&) {
    throw MissingReference("MissingReference: cannot open " + path);
  }
}

int cmd_repro(int example_id) {
  const std::string dir = refdata_dir();
  if (example_id == 1) {
    const ProblemFile pf1 = load_bundled(dir + "/example1.json");
    const ProblemFile pf2 = load_bundled(dir + "/example1_b2.json");
    const Example1Ref ref = load_example1_ref(dir);
    const NodeConfig cfg = pf1.config();
    const Matrix<double> l = build_L(cfg);

    std::printf("instance 1: degree %zu fit at %zu sample nodes, kappa2(L) = %.2e\n",
                cfg.degree(), cfg.t.size(), ref.kappa2);
    std::printf("%-28s %-14s %-14s\n", "quantity", "decomposition", "naive-qr");
    const double e_acc1 = rel_error_2norm(ls_solve_L(cfg, pf1.b).c_bar, ref.c_bar_1);
    const double e_naive1 = rel_error_2norm(naive_ls_solve(l, pf1.b), ref.c_bar_1);
    std::printf("%-28s %-14.3e %-14.3e\n", "least squares (data 1)", e_acc1, e_naive1);
    const double e_acc2 = rel_error_2norm(ls_solve_L(cfg, pf2.b).c_bar, ref.c_bar_2);
    const double e_naive2 = rel_error_2norm(naive_ls_solve(l, pf2.b), ref.c_bar_2);
    std::printf("%-28s %-14.3e %-14.3e\n", "least squares (data 2)", e_acc2, e_naive2);
    const double p_acc = rel_error_2norm(mp_inverse_L(cfg), ref.mp_inverse_L);
    const double p_naive = rel_error_2norm(naive_pinv(l), ref.mp_inverse_L);
    std::printf("%-28s %-14.3e %-14.3e\n", "moore-penrose inverse", p_acc, p_naive);
    const double h_acc = rel_error_2norm(projection_matrix(cfg), ref.projection);
    const double h_naive = rel_error_2norm(naive_projection(l), ref.projection);
    std::printf("%-28s %-14.3e %-14.3e\n", "projection matrix", h_acc, h_naive);
    return 0;
  }
  if (example_id == 2) {
    const ProblemFile pf = load_bundled(dir + "/example2.json");
    const Example2Ref ref = load_example2_ref(dir);
    const NodeConfig cfg = pf.config();
    if (!pf.change_of_variable) throw Error("instance 2 file lacks its change of variable");
    const FitModel model = fit(cfg, pf.b, pf.change_of_variable);

    const NodeConfig mapped = model.fitted_config();
    const Matrix<double> m = build_A(mapped);
    std::printf("instance 2: degree %zu fit at %zu sample nodes (translated by %s)\n",
                cfg.degree(), cfg.t.size(), format_double(model.change_of_variable().a0).c_str());
    std::printf("%-28s %-14s %-14s\n", "quantity", "decomposition", "naive-qr");
    const double y_acc = rel_error_2norm(model.y_bar(), ref.y_bar);
    const double y_naive = rel_error_2norm(naive_ls_solve(m, pf.b), ref.y_bar);
    std::printf("%-28s %-14.3e %-14.3e\n", "transformed ls solution", y_acc, y_naive);
    const double hb_acc = rel_error_2norm(project_data(cfg, pf.b), ref.projection_vector);
    const double hb_naive =
        rel_error_2norm(matvec(naive_projection(m), pf.b), ref.projection_vector);
    std::printf("%-28s %-14.3e %-14.3e\n", "projection vector", hb_acc, hb_naive);
    return 0;
  }
  throw Error("repro: example id must be 1 or 2");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"accurate polynomial least squares in the Lagrange basis"};
  app.require_subcommand(1);

  std::string input, output, points;
  bool autoshift = false;
  double a0 = 0.0, a1 = 1.0;
  int example_id = 0;

  auto* dec = app.add_subcommand("decompose", "write the bidiagonal decomposition as CSV");
  dec->add_option("--input", input)->required();
  dec->add_option("--output", output);
  dec->add_flag("--autoshift", autoshift, "translate samples above the basis first");

  auto* fitc = app.add_subcommand("fit", "least squares fit; writes the model as JSON");
  fitc->add_option("--input", input)->required();
  fitc->add_option("--output", output);
  auto* fit_a0 = fitc->add_option("--a0", a0, "explicit change-of-variable offset");
  auto* fit_a1 = fitc->add_option("--a1", a1, "explicit change-of-variable scale");

  auto* pinvc = app.add_subcommand("pinv", "write the Moore-Penrose inverse as CSV");
  pinvc->add_option("--input", input)->required();
  pinvc->add_option("--output", output);

  auto* projc = app.add_subcommand("project", "write the projection matrix as CSV");
  projc->add_option("--input", input)->required();
  projc->add_option("--output", output);

  auto* evalc = app.add_subcommand("eval", "evaluate the fitted polynomial");
  evalc->add_option("--input", input)->required();
  evalc->add_option("--points", points, "comma-separated evaluation points")->required();
  auto* eval_a0 = evalc->add_option("--a0", a0);
  auto* eval_a1 = evalc->add_option("--a1", a1);

  auto* repro = app.add_subcommand("repro", "reproduce a bundled accuracy demonstration");
  repro->add_option("example_id", example_id)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (dec->parsed()) return cmd_decompose(input, output, autoshift);
    if (fitc->parsed()) {
      const ProblemFile pf = load_problem(input);
      return cmd_fit(input, output, cov_override(pf, fit_a0, fit_a1, a0, a1));
    }
    if (pinvc->parsed()) return cmd_pinv(input, output);
    if (projc->parsed()) return cmd_project(input, output);
    if (evalc->parsed()) {
      const ProblemFile pf = load_problem(input);
      return cmd_eval(input, points, cov_override(pf, eval_a0, eval_a1, a0, a1));
    }
    if (repro->parsed()) return cmd_repro(example_id);
  } catch (const MissingReference& e) {
    std::cerr << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }
  return 0;
}
