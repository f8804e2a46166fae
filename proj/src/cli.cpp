#include "approxsym/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "approxsym/afp.hpp"
#include "approxsym/brain.hpp"
#include "approxsym/error.hpp"
#include "approxsym/harness.hpp"
#include "approxsym/metrics.hpp"
#include "approxsym/qsa.hpp"
#include "approxsym/report.hpp"
#include "approxsym/rng.hpp"
#include "approxsym/text_io.hpp"

namespace approxsym {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt_g10(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

bool given(const CLI::Option* o) { return o->count() > 0; }

struct SolverFlags {
  int max_iters = 200;
  double rel_tol = 1e-8;
  double blend = 0.0;
  double penalty = 0.0;
  int max_fp = 0;
  std::int64_t budget = 0;
  double sched_c = 0.0;
  double sched_d = 2.0;
  CLI::Option* o_max_iters = nullptr;
  CLI::Option* o_rel_tol = nullptr;
  CLI::Option* o_blend = nullptr;
  CLI::Option* o_penalty = nullptr;
  CLI::Option* o_max_fp = nullptr;
  CLI::Option* o_budget = nullptr;
  CLI::Option* o_sched_c = nullptr;
  CLI::Option* o_sched_d = nullptr;

  void add(CLI::App* app) {
    o_max_iters = app->add_option("--max-iters", max_iters, "QSA iteration cap")->check(CLI::PositiveNumber);
    o_rel_tol = app->add_option("--rel-tol", rel_tol, "QSA relative-decrease stopping tolerance");
    o_blend = app->add_option("--blend", blend, "QSA start blend toward the barycenter")->check(CLI::Range(0.0, 1.0));
    o_penalty = app->add_option("--penalty", penalty, "QSA uniform fixed-point penalty c")->check(CLI::NonNegativeNumber);
    o_max_fp = app->add_option("--max-fp", max_fp, "AFP fixed-point cap K (default n/2)")->check(CLI::NonNegativeNumber);
    o_budget = app->add_option("--budget", budget, "AFP proposal count (default 100 n^2)")->check(CLI::NonNegativeNumber);
    o_sched_c = app->add_option("--sched-c", sched_c, "AFP cooling numerator (default: calibrated)")->check(CLI::PositiveNumber);
    o_sched_d = app->add_option("--sched-d", sched_d, "AFP cooling offset d in c / ln(t + d)");
  }

  void check_method(const std::string& method) const {
    const bool qsa = method == "qsa";
    for (const auto* o : {o_max_iters, o_rel_tol, o_blend, o_penalty}) {
      if (given(o) && !qsa) throw UsageError(o->get_name() + " only applies to --method qsa");
    }
    for (const auto* o : {o_max_fp, o_budget, o_sched_c, o_sched_d}) {
      if (given(o) && qsa) throw UsageError(o->get_name() + " only applies to --method afp");
    }
  }
};

InitExpr parse_init_flag(const std::string& text) {
  try {
    return parse_init_expr(text);
  } catch (const ParseError& e) {
    throw UsageError(std::string("bad --init: ") + e.what());
  }
}

SolverReport run_solver(const std::string& method, const Graph& g, const InitExpr& expr,
                        const std::optional<Permutation>& lr, std::uint64_t seed, const SolverFlags& f) {
  const int n = g.n();
  if (n < 2) throw InvalidInput("graph needs at least 2 nodes");
  if (method == "afp") {
    AfpOptions o;
    if (given(f.o_max_fp)) o.max_fixed_points = f.max_fp;
    o.budget = f.budget;
    if (given(f.o_sched_c)) o.sched_c = f.sched_c;
    o.sched_d = f.sched_d;
    o.seed = derive_seed(seed, "afp");
    const int k = o.max_fixed_points.value_or(n / 2);
    o.init = resolve_init(expr, InitContext{n, std::clamp(k, 0, n - 2), derive_seed(seed, "init"), lr});
    return afp_solve(g, o);
  }
  QsaOptions o;
  o.max_iters = f.max_iters;
  o.rel_tol = f.rel_tol;
  o.init = resolve_init(expr, InitContext{n, std::clamp(n / 2, 0, n - 2), derive_seed(seed, "init"), lr});
  if (given(f.o_blend)) {
    o.init.blend = f.blend;
  } else if (o.init.kind == InitSpec::Kind::kGiven && expr.is_random_based()) {
    o.init.blend = kRandomInitBlend;
  }
  if (given(f.o_penalty)) o.penalty = PenaltyVector::uniform(n, f.penalty);
  return qsa_solve(g, o, derive_seed(seed, "qsa"));
}

// ---- gen ----------------------------------------------------------------

struct GenArgs {
  std::string model;
  int n = 0, m = 0, k = 0, r = 0, t = 0;
  double p = 0.0, q = 0.0;
  std::vector<int> dims, sizes;
  std::string probs;
  std::uint64_t seed = 0;
  std::string out;
  std::map<std::string, CLI::Option*> opts;
};

void add_gen(CLI::App& app, GenArgs& a) {
  auto* s = app.add_subcommand("gen", "Generate a random graph from one of the test models");
  s->add_option("--model", a.model, "grid | er | ba | sbm | lrm | lrm-rewired | lrm-distorted")
      ->required()
      ->check(CLI::IsMember(model_names()));
  a.opts["n"] = s->add_option("--n", a.n, "node count (lrm variants: base LRM size)");
  a.opts["p"] = s->add_option("--p", a.p, "edge probability");
  a.opts["q"] = s->add_option("--q", a.q, "LRM cross-edge probability");
  a.opts["m"] = s->add_option("--m", a.m, "BA edges per new node");
  a.opts["k"] = s->add_option("--k", a.k, "number of rewires");
  a.opts["r"] = s->add_option("--r", a.r, "anchor set size");
  a.opts["t"] = s->add_option("--t", a.t, "twins per side (even)");
  a.opts["dims"] = s->add_option("--dims", a.dims, "grid side lengths")->delimiter(',');
  a.opts["sizes"] = s->add_option("--sizes", a.sizes, "SBM block sizes")->delimiter(',');
  a.opts["probs"] = s->add_option("--probs", a.probs, "SBM probability matrix as JSON, e.g. [[0.5,0.1],[0.1,0.5]]");
  s->add_option("--seed", a.seed, "random seed");
  s->add_option("--out", a.out, "graph output path")->required();
}

int cmd_gen(const GenArgs& a, std::ostream& out, std::ostream& err) {
  ordered_json params = ordered_json::object();
  for (const auto& [key, opt] : a.opts) {
    if (!given(opt)) continue;
    if (key == "n") params["n"] = a.n;
    if (key == "p") params["p"] = a.p;
    if (key == "q") params["q"] = a.q;
    if (key == "m") params["m"] = a.m;
    if (key == "k") params["k"] = a.k;
    if (key == "r") params["r"] = a.r;
    if (key == "t") params["t"] = a.t;
    if (key == "dims") params["dims"] = a.dims;
    if (key == "sizes") params["sizes"] = a.sizes;
    if (key == "probs") {
      try {
        params["probs"] = ordered_json::parse(a.probs);
      } catch (const nlohmann::json::parse_error&) {
        throw UsageError("--probs must be a JSON list of lists");
      }
    }
  }
  const GeneratedInstance inst = generate_model(a.model, params, a.seed);
  write_graph(a.out, inst.graph);
  if (inst.lr) write_permutation(a.out + ".lr", *inst.lr);
  if (inst.automorphism) write_permutation(a.out + ".aut", *inst.automorphism);
  out << a.model << ' ' << inst.graph.n() << ' ' << inst.graph.edge_count() << '\n';
  err << "wrote " << a.out << (inst.lr ? " and " + a.out + ".lr" : std::string()) << '\n';
  return kExitOk;
}

// ---- solve --------------------------------------------------------------

struct SolveArgs {
  std::string method;
  std::string graph;
  std::string init = "random";
  std::string lr;
  std::uint64_t seed = 0;
  std::string report;
  std::string perm;
  bool timing = false;
  SolverFlags flags;
};

void add_solve(CLI::App& app, SolveArgs& a) {
  auto* s = app.add_subcommand("solve", "Search for an approximate symmetry of one graph");
  s->add_option("--method", a.method, "qsa | afp")->required()->check(CLI::IsMember({"qsa", "afp"}));
  s->add_option("--graph", a.graph, "graph file")->required();
  s->add_option("--init", a.init, "identity | random | lr | lr-file:<path> | reshuffle:<init>:l=<k>:seed=<s>");
  s->add_option("--lr", a.lr, "permutation file that `lr` refers to");
  s->add_option("--seed", a.seed, "random seed");
  s->add_option("--report", a.report, "JSON report output path")->required();
  s->add_option("--perm", a.perm, "permutation output path (default <report>.perm)");
  s->add_flag("--timing", a.timing, "record wall-clock time (makes the report nondeterministic)");
  a.flags.add(s);
}

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream&) {
  a.flags.check_method(a.method);
  const InitExpr expr = parse_init_flag(a.init);
  const Graph g = read_graph(a.graph);
  std::optional<Permutation> lr;
  if (!a.lr.empty()) lr = lr_from_file(a.lr, g.n());
  const auto t0 = std::chrono::steady_clock::now();
  SolverReport rep = run_solver(a.method, g, expr, lr, a.seed, a.flags);
  const auto t1 = std::chrono::steady_clock::now();
  rep.wall_ms = a.timing ? std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count() : 0;
  write_text_file(a.report, report_to_json(rep));
  write_permutation(a.perm.empty() ? a.report + ".perm" : a.perm, rep.final);
  out << a.method << ' ' << fmt_g10(rep.S) << ' ' << rep.epsilon << ' ' << rep.fixed_point_count << '\n';
  return kExitOk;
}

// ---- experiment ---------------------------------------------------------

struct ExperimentArgs {
  std::string config;
  std::string out;
  int workers = 0;
  CLI::Option* o_workers = nullptr;
};

void add_experiment(CLI::App& app, ExperimentArgs& a) {
  auto* s = app.add_subcommand("experiment", "Run a paired AFP/QSA experiment from a JSON config");
  s->add_option("--config", a.config, "experiment config (JSON)")->required();
  s->add_option("--out", a.out, "CSV output path")->required();
  a.o_workers = s->add_option("--workers", a.workers, "worker threads (default: config, else all cores)")
                    ->check(CLI::PositiveNumber);
}

int cmd_experiment(const ExperimentArgs& a, std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg = load_experiment_config(a.config);
  if (given(a.o_workers)) cfg.workers = a.workers;
  std::size_t last_pct = 0;
  const auto records = run_experiment(cfg, [&](std::size_t done, std::size_t total) {
    const std::size_t pct = done * 10 / total;
    if (pct != last_pct || done == total) {
      last_pct = pct;
      err << "experiment: " << done << '/' << total << " tasks\n";
    }
  });
  std::size_t errors = 0;
  for (const auto& r : records) {
    if (r.error.empty()) continue;
    ++errors;
    err << "error: " << r.method << ' ' << r.params << " seed " << r.seed << ": " << r.error << '\n';
  }
  write_text_file(a.out, records_to_csv(records));
  out << records.size() << " records, " << errors << " errors\n";
  return kExitOk;
}

// ---- brain --------------------------------------------------------------

struct BrainArgs {
  std::string matrix;
  double density = 0.05;
  std::string lr_map = "halves";
  std::string method = "both";
  std::string init = "random";
  int runs = 1;
  std::uint64_t seed = 0;
  std::string graph_out;
  std::string out;
  SolverFlags flags;
};

void add_brain(CLI::App& app, BrainArgs& a) {
  auto* s = app.add_subcommand("brain", "Binarize a connectivity matrix and measure its approximate symmetry");
  s->add_option("--matrix", a.matrix, "n x n weighted matrix (comma or whitespace separated)")->required();
  s->add_option("--density", a.density, "fraction of strongest pairs kept as edges")->check(CLI::Range(0.0, 1.0));
  s->add_option("--lr-map", a.lr_map, "`halves` or a permutation file mapping each region to its mirror");
  s->add_option("--method", a.method, "qsa | afp | both")->check(CLI::IsMember({"qsa", "afp", "both"}));
  s->add_option("--init", a.init, "random | lr | reshuffle:lr:l=<k>:seed=<s> | ...");
  s->add_option("--runs", a.runs, "runs per method; the best one is reported")->check(CLI::PositiveNumber);
  s->add_option("--seed", a.seed, "random seed");
  s->add_option("--graph-out", a.graph_out, "write the binarized graph here");
  s->add_option("--out", a.out, "write the result table here instead of standard output");
  a.flags.add(s);
}

int cmd_brain(const BrainArgs& a, std::ostream& out, std::ostream& err) {
  const std::vector<std::string> methods =
      a.method == "both" ? std::vector<std::string>{"afp", "qsa"} : std::vector<std::string>{a.method};
  if (methods.size() == 1) a.flags.check_method(methods.front());
  const InitExpr expr = parse_init_flag(a.init);
  const WeightedMatrix wm = load_matrix(a.matrix);
  const Graph g = binarize_density(wm, a.density);
  const Permutation lr = a.lr_map == "halves" ? lr_halves(g.n()) : lr_from_file(a.lr_map, g.n());
  err << "binarized: n=" << g.n() << " edges=" << g.edge_count() << " density=" << fmt_g10(g.density())
      << " connected=" << (g.is_connected() ? "yes" : "no") << '\n';
  if (!a.graph_out.empty()) write_graph(a.graph_out, g);

  const std::int64_t eps_lr = epsilon(g, lr);
  const double s_lr = symmetry_from_epsilon(eps_lr, g.n());
  std::string table = "method,runs,S_final,S_lr,S_diff,epsilon,fixed_points,hd_to_lr\n";
  for (const auto& m : methods) {
    std::optional<SolverReport> best;
    for (int r = 0; r < a.runs; ++r) {
      const std::uint64_t run_seed = derive_seed(a.seed, static_cast<std::uint64_t>(r));
      SolverReport rep = run_solver(m, g, reseed_init_expr(expr, run_seed), lr, run_seed, a.flags);
      if (!best || rep.S < best->S) best = std::move(rep);
    }
    table += m + ',' + std::to_string(a.runs) + ',' + fmt_g10(best->S) + ',' + fmt_g10(s_lr) + ',' +
             fmt_g10(best->S - s_lr) + ',' + std::to_string(best->epsilon) + ',' +
             std::to_string(best->fixed_point_count) + ',' + std::to_string(hamming(best->final, lr)) + '\n';
  }
  if (a.out.empty()) {
    out << table;
  } else {
    write_text_file(a.out, table);
  }
  return kExitOk;
}

// ---- compare ------------------------------------------------------------

struct CompareArgs {
  std::string csv;
  std::string x = "afp";
  std::string y = "qsa";
  double alpha = 0.05;
  std::string out;
};

void add_compare(CLI::App& app, CompareArgs& a) {
  auto* s = app.add_subcommand("compare", "Paired t-test of S between two methods per parameter cell");
  s->add_option("--csv", a.csv, "experiment CSV")->required();
  s->add_option("--x", a.x, "first method (positive t: it has larger S)");
  s->add_option("--y", a.y, "second method");
  s->add_option("--alpha", a.alpha, "family-wise significance level")->check(CLI::Range(0.0, 1.0));
  s->add_option("--out", a.out, "write the table here instead of standard output");
}

int cmd_compare(const CompareArgs& a, std::ostream& out, std::ostream&) {
  if (!(a.alpha > 0.0 && a.alpha < 1.0)) throw UsageError("--alpha must lie in (0, 1)");
  const auto records = records_from_csv(read_text_file(a.csv));
  const std::string table = comparisons_to_csv(compare_methods(records, a.x, a.y, a.alpha));
  if (a.out.empty()) {
    out << table;
  } else {
    write_text_file(a.out, table);
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Approximate symmetries of undirected graphs", "approxsym"};
  app.require_subcommand(1);
  GenArgs gen;
  SolveArgs solve;
  ExperimentArgs experiment;
  BrainArgs brain;
  CompareArgs compare;
  add_gen(app, gen);
  add_solve(app, solve);
  add_experiment(app, experiment);
  add_brain(app, brain);
  add_compare(app, compare);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (app.got_subcommand("gen")) return cmd_gen(gen, out, err);
    if (app.got_subcommand("solve")) return cmd_solve(solve, out, err);
    if (app.got_subcommand("experiment")) return cmd_experiment(experiment, out, err);
    if (app.got_subcommand("brain")) return cmd_brain(brain, out, err);
    if (app.got_subcommand("compare")) return cmd_compare(compare, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace approxsym
