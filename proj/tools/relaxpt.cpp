// relaxpt: command-line runner for relaxed iterative perturbation theory.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "relaxpt/errors.hpp"
#include "relaxpt/experiment.hpp"
#include "relaxpt/matrix_market.hpp"
#include "relaxpt/models.hpp"
#include "relaxpt/oracle.hpp"
#include "relaxpt/trace_io.hpp"

namespace {

using namespace relaxpt;

// Raw flag values; only the ones given on the command line are applied on top
// of the config file.
struct Flags {
  std::string config;
  std::string model;
  std::string s, g, n, b, l, h, seed;
  bool periodic = false, open = false, sz0 = false;
  std::string matrix;
  std::vector<std::string> pencil;
  std::string partition;
  double alpha = 0, tol = 0;
  std::size_t max_iter = 0, memory = 0;
  std::string mode, accel, precision, target;
  std::string trace_csv, trace_json;
  bool allow_partial = false;
  // sweep
  std::string param, summary, trace_dir;
  std::vector<std::string> values;
  // export / oracle
  std::string out_prefix;
  std::string method = "auto";
  std::size_t count = 1;
};

void add_common(CLI::App* app, Flags& f) {
  app->set_help_flag("--help", "print this help and exit");
  app->add_option("--config", f.config, "JSON experiment config (flags override it)");
  app->add_option("--model", f.model, "anharmonic | herbst-simon | zeeman | heisenberg");
  app->add_option("--s", f.s, "anharmonic order: potential g x^(2s)");
  app->add_option("--g", f.g, "coupling; accepts tokens such as sqrt0.3");
  app->add_option("--N", f.n, "basis size");
  app->add_option("--B", f.b, "Zeeman magnetic field");
  app->add_option("--L", f.l, "number of spins");
  app->add_option("--h", f.h, "disorder strength");
  app->add_option("--seed", f.seed, "disorder seed");
  app->add_flag("--periodic", f.periodic, "periodic chain");
  app->add_flag("--open", f.open, "open chain");
  app->add_flag("--sz0", f.sz0, "restrict the chain to total S^z = 0");
  app->add_option("--matrix", f.matrix, "Matrix Market operator instead of a model");
  app->add_option("--pencil", f.pencil, "Matrix Market pencil A S")->expected(2);
}

void add_solver(CLI::App* app, Flags& f) {
  app->add_option("--partition", f.partition, "en | natural");
  app->add_option("--alpha", f.alpha, "relaxation parameter in (0, 1]");
  app->add_option("--tol", f.tol, "residual-norm tolerance");
  app->add_option("--max-iter", f.max_iter, "iteration cap");
  app->add_option("--mode", f.mode, "ipt | rs");
  app->add_option("--accel", f.accel, "none | anderson");
  app->add_option("--memory", f.memory, "Anderson memory M");
  app->add_option("--precision", f.precision, "double | extended");
  app->add_option("--target", f.target, "target basis index or auto");
  app->add_option("--trace-csv", f.trace_csv, "write the convergence trace as CSV");
  app->add_option("--trace-json", f.trace_json, "write the convergence trace as JSON");
  app->add_flag("--allow-partial", f.allow_partial, "exit 0 even without convergence");
}

ExperimentConfig assemble(const CLI::App& app, const Flags& f) {
  ExperimentConfig c;
  if (!f.config.empty()) {
    std::ifstream is(f.config);
    if (!is) throw ConfigError("cannot open config " + f.config);
    c = nlohmann::json::parse(is).get<ExperimentConfig>();
  }
  auto given = [&](const char* name) {
    const auto* opt = app.get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };

  bool explicit_n = !f.config.empty() && c.model.kind() == "anharmonic";
  if (given("--model") && f.model != c.model.kind()) {
    if (f.model == "anharmonic") c.model = ModelSpec::anharmonic(2, "1");
    else if (f.model == "herbst-simon") c.model = ModelSpec::herbst_simon("sqrt0.3");
    else if (f.model == "zeeman") c.model = ModelSpec::zeeman("1");
    else if (f.model == "heisenberg") c.model = ModelSpec::heisenberg(12, 1.0, 7);
    else throw ConfigError("unknown model '" + f.model + "'");
    explicit_n = false;
  }
  auto set = [&](const char* flag, const char* name, const std::string& v) {
    if (given(flag) && !set_model_parameter(c.model, name, v)) {
      throw ConfigError(std::string(flag) + " does not apply to model " + c.model.kind());
    }
  };
  set("--s", "s", f.s);
  set("--g", "g", f.g);
  set("--B", "B", f.b);
  set("--L", "L", f.l);
  set("--h", "h", f.h);
  set("--seed", "seed", f.seed);
  set("--N", "N", f.n);
  if (auto* a = std::get_if<AnharmonicSpec>(&c.model.variant); a && !explicit_n && !given("--N")) {
    a->n = std::get<AnharmonicSpec>(ModelSpec::anharmonic(a->s, a->g).variant).n;
  }
  if (auto* hb = std::get_if<HeisenbergSpec>(&c.model.variant)) {
    if (f.periodic && f.open) throw ConfigError("--periodic and --open are mutually exclusive");
    if (f.periodic) hb->periodic = true;
    if (f.open) hb->periodic = false;
    if (f.sz0) hb->sz0_sector = true;
  } else if (f.periodic || f.open || f.sz0) {
    throw ConfigError("--periodic/--open/--sz0 apply to the heisenberg model only");
  }
  if (given("--matrix")) c.matrix = f.matrix;
  if (given("--pencil")) c.pencil = std::make_pair(f.pencil.at(0), f.pencil.at(1));

  if (given("--partition")) {
    if (f.partition == "en") c.partition = PartitionKind::en;
    else if (f.partition == "natural") c.partition = PartitionKind::natural;
    else throw ConfigError("unknown partitioning '" + f.partition + "'");
  }
  if (given("--alpha")) c.solver.alpha = f.alpha;
  if (given("--tol")) c.solver.tol = f.tol;
  if (given("--max-iter")) c.solver.max_iter = f.max_iter;
  if (given("--mode")) c.solver.mode = parse_mode(f.mode);
  if (given("--accel")) c.solver.acceleration = parse_acceleration(f.accel);
  if (given("--memory")) c.solver.memory = f.memory;
  if (given("--precision")) c.solver.precision = parse_precision(f.precision);
  if (given("--target")) {
    if (f.target == "auto") c.target.reset();
    else c.target = std::stoull(f.target);
  }
  if (given("--trace-csv")) c.outputs.trace_csv = f.trace_csv;
  if (given("--trace-json")) c.outputs.trace_json = f.trace_json;
  return c;
}

int cmd_run(const CLI::App& app, const Flags& f) {
  const auto c = assemble(app, f);
  const auto s = run_experiment(c);
  std::printf("model     %s\n", s.model.c_str());
  std::printf("target    %zu\n", s.target);
  std::printf("E         %.15g\n", s.energy);
  if (s.model == "herbst-simon") std::printf("(E-1)/2   %.13e\n", (s.energy - 1.0) / 2.0);
  std::printf("residual  %.3e\n", s.residual);
  std::printf("k         %zu\n", s.k);
  std::printf("status    %s\n", to_string(s.status).c_str());
  if (c.solver.acceleration == Acceleration::anderson) {
    std::printf("anderson  %zu fallback steps, %zu steps with negative beta\n", s.anderson_fallbacks,
                s.negative_beta_steps);
  }
  return s.status == Status::converged || f.allow_partial ? 0 : 2;
}

int cmd_sweep(const CLI::App& app, const Flags& f) {
  auto c = assemble(app, f);
  if (app.count("--param") || app.count("--values")) {
    if (f.param.empty() || f.values.empty()) throw ConfigError("sweep needs both --param and --values");
    c.sweep = SweepSpec{f.param, f.values};
  }
  if (!c.sweep) throw ConfigError("no sweep given (use --param/--values or a sweep block in --config)");
  if (app.count("--summary")) c.outputs.summary_csv = f.summary;
  if (app.count("--trace-dir")) c.outputs.trace_dir = f.trace_dir;
  const auto rows = run_sweep(c, sweep_threads_from_env());
  write_sweep_summary(rows, std::cout);
  bool ok = true;
  for (const auto& r : rows) {
    if (!r.error.empty()) std::fprintf(stderr, "%s=%s: %s\n", r.parameter.c_str(), r.value.c_str(), r.error.c_str());
    ok = ok && r.result && r.result->status == Status::converged;
  }
  return ok || f.allow_partial ? 0 : 2;
}

int cmd_export(const CLI::App& app, const Flags& f) {
  const auto c = assemble(app, f);
  c.model.validate();
  if (c.model.is_pencil()) {
    const auto p = build_pencil<double>(c.model);
    write_pencil(p, f.out_prefix + "_A.mtx", f.out_prefix + "_S.mtx");
    std::printf("wrote %s_A.mtx and %s_S.mtx (dim %zu)\n", f.out_prefix.c_str(), f.out_prefix.c_str(), p.dim());
  } else {
    const auto h = build_operator<double>(c.model);
    write_matrix_market(h, f.out_prefix + ".mtx");
    std::printf("wrote %s.mtx (dim %zu, nnz %zu)\n", f.out_prefix.c_str(), h.dim(), h.nnz());
  }
  return 0;
}

int cmd_oracle(const CLI::App& app, const Flags& f) {
  const auto c = assemble(app, f);
  const bool pencil = c.pencil || (!c.matrix && c.model.is_pencil());
  const double offset = !c.pencil && !c.matrix && c.model.is_pencil() ? kZeemanEnergyOffset : 0.0;
  std::string method = f.method;
  if (method == "auto") {
    if (pencil || c.matrix) method = "dense";
    else if (c.model.kind() == "heisenberg") method = "blocks";
    else method = "banded";
  }
  if (pencil) {
    if (method != "dense") throw ConfigError("pencils support --method dense only");
    const auto p = c.pencil ? read_pencil(c.pencil->first, c.pencil->second) : build_pencil<double>(c.model);
    const auto sp = dense_eig_generalized(p);
    for (Eigen::Index i = 0; i < std::min<Eigen::Index>(sp.eigenvalues.size(), static_cast<Eigen::Index>(f.count)); ++i) {
      std::printf("%.15g\n", sp.eigenvalues(i) + offset);
    }
    return 0;
  }
  const auto h = c.matrix ? read_matrix_market(*c.matrix) : build_operator<double>(c.model);
  if (method == "dense") {
    const auto sp = dense_eig(h);
    for (Eigen::Index i = 0; i < std::min<Eigen::Index>(sp.eigenvalues.size(), static_cast<Eigen::Index>(f.count)); ++i) {
      std::printf("%.15g\n", sp.eigenvalues(i));
    }
  } else if (method == "banded" || method == "blocks") {
    const auto gs = method == "banded" ? ground_state_banded(h) : ground_state_blocks(h);
    std::printf("%.15g\n", gs.energy);
    std::printf("ipr %.6g\n", ipr<double>(gs.vector));
  } else {
    throw ConfigError("unknown oracle method '" + method + "'");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relaxpt: relaxed iterative perturbation theory"};
  app.require_subcommand(1);
  app.set_help_flag("-h,--help", "print this help and exit");
  Flags f;

  auto* run = app.add_subcommand("run", "solve one configuration");
  add_common(run, f);
  add_solver(run, f);

  auto* sweep = app.add_subcommand("sweep", "solve a parameter grid");
  add_common(sweep, f);
  add_solver(sweep, f);
  sweep->add_option("--param", f.param, "parameter to sweep");
  sweep->add_option("--values", f.values, "grid values")->delimiter(',');
  sweep->add_option("--summary", f.summary, "summary CSV path");
  sweep->add_option("--trace-dir", f.trace_dir, "directory for per-point traces");

  auto* exp = app.add_subcommand("export", "write a model as Matrix Market");
  add_common(exp, f);
  exp->add_option("--out", f.out_prefix, "output path prefix")->required();

  auto* orc = app.add_subcommand("oracle", "reference eigenvalues");
  add_common(orc, f);
  orc->add_option("--method", f.method, "auto | dense | banded | blocks");
  orc->add_option("--count", f.count, "number of eigenvalues (dense)");

  CLI11_PARSE(app, argc, argv);
  try {
    if (run->parsed()) return cmd_run(*run, f);
    if (sweep->parsed()) return cmd_sweep(*sweep, f);
    if (exp->parsed()) return cmd_export(*exp, f);
    if (orc->parsed()) return cmd_oracle(*orc, f);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
