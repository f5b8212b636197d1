#include "curvflow/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <random>

#include "curvflow/curvature.hpp"
#include "curvflow/error.hpp"
#include "curvflow/evolution.hpp"
#include "curvflow/generators.hpp"
#include "curvflow/json_io.hpp"
#include "curvflow/theorems.hpp"

namespace curvflow::cli {

namespace {

using nlohmann::ordered_json;

constexpr const char* kTheorems[] = {"gradient", "monotone",         "semigroup",    "l1",
                                     "li-yau",   "harnack",          "hamilton",
                                     "hamilton-harnack", "lin-gradient", "doubling"};

ordered_json number_or_string(double value) {
  if (std::isfinite(value)) return value;
  return value > 0 ? "inf" : "-inf";
}

ordered_json function_json(const Graph& g, const VertexFunction& f) {
  ordered_json obj = ordered_json::object();
  for (Vertex x = 0; x < g.size(); ++x) obj[g.id(x)] = f[x];
  return obj;
}

struct Common {
  std::string output;
  bool csv = false;
};

class Emitter {
 public:
  Emitter(const Common& common, std::ostream& out) : common_(common), out_(out) {}
  void emit(const std::string& text) const {
    if (common_.output.empty()) {
      out_ << text;
    } else {
      write_file(common_.output, text);
    }
  }

 private:
  const Common& common_;
  std::ostream& out_;
};

Graph load_graph(const std::string& path) { return parse_graph(read_file(path)); }

std::vector<double> with_zero(const std::vector<double>& times) {
  std::vector<double> grid{0.0};
  for (double t : times) {
    if (t != 0.0) grid.push_back(t);
  }
  return grid;
}

int exit_for(Outcome outcome) {
  switch (outcome) {
    case Outcome::kHolds: return kOk;
    case Outcome::kViolated: return kViolated;
    default: return kNotApplicable;
  }
}

struct GenOptions {
  std::string family;
  std::size_t size = 4;
  std::size_t dim = 3;
  double rate = 1.0;
  double eps = 1.0;
  double up = 1.0;
  double down = 1.0;
};

int do_gen(const GenOptions& o, const Emitter& emit) {
  std::optional<Graph> g;
  if (o.family == "remark") g = remark_graph();
  else if (o.family == "g-eps") g = g_eps(o.eps);
  else if (o.family == "path") g = path_graph(o.size, o.rate);
  else if (o.family == "cycle") g = cycle_graph(o.size, o.rate);
  else if (o.family == "complete") g = complete_graph(o.size, o.rate);
  else if (o.family == "hypercube") g = hypercube_graph(o.dim, o.rate);
  else if (o.family == "birth-death") g = birth_death_graph(o.size, o.up, o.down);
  else throw Error("unknown family '" + o.family + "'");
  emit.emit(serialize_graph(*g));
  return kOk;
}

int do_measure(const std::string& path, const Emitter& emit) {
  Graph g = load_graph(path);
  auto result = reversible_measure(g);
  ordered_json doc;
  if (const auto* m = std::get_if<Measure>(&result)) {
    doc["reversible"] = true;
    doc["measure"] = function_json(g, VertexFunction(m->values()));
    emit.emit(doc.dump(2) + "\n");
    return kOk;
  }
  const auto& nr = std::get<NotReversible>(result);
  doc["reversible"] = false;
  doc["reason"] = nr.reason == NotReversible::Reason::kOneDirectionalEdge ? "one-directional edge"
                                                                          : "cycle product";
  ordered_json cycle = ordered_json::array();
  for (Vertex v : nr.cycle) cycle.push_back(g.id(v));
  doc["cycle"] = std::move(cycle);
  emit.emit(doc.dump(2) + "\n");
  return kNotApplicable;
}

struct CurvatureOptions {
  std::string graph;
  std::string n = "inf";
  std::string vertex;
};

int do_curvature(const CurvatureOptions& o, const Common& common, const Emitter& emit) {
  Graph g = load_graph(o.graph);
  const Dimension n = Dimension::parse(o.n);
  std::vector<CurvatureResult> results;
  double global = std::numeric_limits<double>::infinity();
  if (!o.vertex.empty()) {
    results.push_back(curvature_at(g, g.index_of(o.vertex), n));
    global = results.back().optimal_k;
  } else {
    CurvatureReport report = curvature_function(g, n);
    results = std::move(report.vertices);
    global = report.global_k;
  }
  if (common.csv) {
    std::string text = "vertex,n,optimal_k\n";
    for (const auto& r : results) {
      text += g.id(r.vertex) + "," + n.to_string() + "," +
              number_or_string(r.optimal_k).dump() + "\n";
    }
    emit.emit(text);
    return kOk;
  }
  ordered_json doc;
  doc["n"] = n.to_string();
  ordered_json list = ordered_json::array();
  for (const auto& r : results) {
    ordered_json item;
    item["vertex"] = g.id(r.vertex);
    item["n"] = n.to_string();
    item["optimal_k"] = number_or_string(r.optimal_k);
    item["witness"] = function_json(g, r.witness);
    list.push_back(std::move(item));
  }
  doc["vertices"] = std::move(list);
  doc["global_k"] = number_or_string(global);
  emit.emit(doc.dump(2) + "\n");
  return kOk;
}

struct EvolveOptions {
  std::string graph;
  std::string u0;
  std::optional<double> t;
  std::vector<double> grid;
  double rel_tol = SolverConfig{}.rel_tol;
  bool linear = false;
};

int do_evolve(const EvolveOptions& o, const Common& common, const Emitter& emit,
              std::ostream& err) {
  Graph g = load_graph(o.graph);
  VertexFunction u0 = parse_vertex_function(g, read_file(o.u0));
  SolverConfig cfg;
  cfg.rel_tol = o.rel_tol;
  cfg.validate();
  if (o.grid.empty() && !common.csv) {
    if (!o.t) throw Error("evolve needs --t or --grid");
    if (o.linear) {
      emit.emit(serialize_vertex_function(g, heat_semigroup(g, u0, *o.t, cfg)));
      return kOk;
    }
    FlowOutcome outcome = nonlinear_flow(g, u0, *o.t, cfg);
    if (!outcome.completed()) {
      err << "flow stopped: " << outcome.status.to_string() << " at t = " << outcome.time
          << "; emitting the last valid state\n";
    }
    emit.emit(serialize_vertex_function(g, outcome.state));
    return kOk;
  }
  std::vector<double> times = o.grid;
  if (o.t && (times.empty() || *o.t > times.back())) times.push_back(*o.t);
  if (times.empty()) throw Error("evolve needs --t or --grid");
  const auto grid = with_zero(times);
  FlowTrace trace = o.linear ? heat_trace(g, u0, grid, cfg) : flow_trace(g, u0, grid, cfg);
  if (!trace.status.completed()) {
    err << "flow stopped: " << trace.status.to_string() << " at t = " << trace.status.time << "\n";
  }
  emit.emit(common.csv ? trace_to_csv(g, trace) : trace_to_json_lines(g, trace));
  return kOk;
}

struct VerifyOptions {
  std::string theorem;
  std::string graph;
  std::string u0;
  std::string h;
  std::optional<std::string> n;
  std::optional<double> k;
  std::optional<double> alpha;
  std::optional<double> alpha_lo;
  std::vector<double> grid;
  double rel_tol = SolverConfig{}.rel_tol;
  std::uint64_t seed = 1;
  bool rate_claim = false;
};

double finite_dimension(const VerifyOptions& o) {
  if (!o.n) throw Error("--n is required for theorem '" + o.theorem + "'");
  return Dimension::parse(*o.n).value();
}

int do_verify(const VerifyOptions& o, const Emitter& emit) {
  Graph g = load_graph(o.graph);
  SolverConfig cfg;
  cfg.rel_tol = o.rel_tol;
  cfg.validate();
  const std::vector<double> grid = o.grid.empty() ? default_time_grid() : o.grid;
  std::mt19937_64 rng(o.seed);
  const bool nonpositive = o.theorem == "hamilton" || o.theorem == "hamilton-harnack";
  VertexFunction u0 = o.u0.empty() ? admissible_initial(g, rng, 0.9, nonpositive)
                                   : parse_vertex_function(g, read_file(o.u0));

  Verdict v;
  if (o.theorem == "gradient") {
    DecayOptions options;
    options.rate_claim = o.rate_claim;
    v = verify_gradient_decay(g, u0, o.k, grid, cfg, options);
  } else if (o.theorem == "monotone") {
    VertexFunction h = u0;
    if (!o.h.empty()) {
      h = parse_vertex_function(g, read_file(o.h));
    } else {
      std::uniform_real_distribution<double> bump(0.0, 0.5);
      std::vector<double> values(g.size());
      for (Vertex x = 0; x < g.size(); ++x) values[x] = u0[x] + bump(rng);
      h = VertexFunction(std::move(values));
    }
    v = verify_monotonicity(g, u0, h, grid, cfg);
  } else if (o.theorem == "semigroup") {
    v = verify_semigroup_comparison(g, u0, o.alpha.value_or(1.60), o.alpha_lo.value_or(0.76), grid,
                                    cfg);
  } else if (o.theorem == "l1") {
    v = verify_l1_comparison(g, u0, o.alpha.value_or(std::log(3.0)), o.alpha_lo.value_or(1.0),
                             grid, cfg);
  } else if (o.theorem == "li-yau") {
    v = verify_li_yau(g, u0, finite_dimension(o), grid, cfg);
  } else if (o.theorem == "harnack") {
    std::vector<std::pair<double, double>> pairs;
    if (o.grid.empty()) {
      pairs = default_time_pairs();
    } else {
      for (std::size_t i = 0; i < o.grid.size(); ++i) {
        for (std::size_t j = i + 1; j < o.grid.size(); ++j) pairs.emplace_back(o.grid[i], o.grid[j]);
      }
    }
    v = verify_harnack(g, u0, finite_dimension(o), {}, pairs, cfg);
  } else if (o.theorem == "hamilton") {
    v = verify_hamilton(g, u0, o.k, grid, cfg);
  } else if (o.theorem == "hamilton-harnack") {
    v = verify_hamilton_harnack(g, u0, grid, cfg);
  } else if (o.theorem == "lin-gradient") {
    v = verify_linear_gradient_bound(g, u0, finite_dimension(o), grid, cfg);
  } else if (o.theorem == "doubling") {
    v = verify_volume_doubling(g, finite_dimension(o), cfg);
  } else {
    throw Error("unknown theorem '" + o.theorem + "'");
  }
  emit.emit(verdict_to_json(g, v));
  return exit_for(v.outcome);
}

int do_gap(const std::string& path, const Emitter& emit, std::ostream& err) {
  Graph g = load_graph(path);
  auto rev = reversible_measure(g);
  if (std::holds_alternative<NotReversible>(rev)) {
    err << "graph has no reversible measure\n";
    return kNotApplicable;
  }
  ordered_json doc;
  doc["spectral_gap"] = spectral_gap(g);
  emit.emit(doc.dump(2) + "\n");
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Curvature, nonlinear heat flow and inequality checks on weighted graphs", "curvflow"};
  app.require_subcommand(1, 1);
  Common common;
  Emitter emit(common, out);
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("-o,--output", common.output, "Write the result to FILE instead of stdout");
  };

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a graph family");
  gen_cmd->add_option("family", gen.family,
                      "remark | g-eps | path | cycle | complete | hypercube | birth-death")
      ->required();
  gen_cmd->add_option("--size", gen.size, "Number of vertices");
  gen_cmd->add_option("--dim", gen.dim, "Hypercube dimension");
  gen_cmd->add_option("--rate", gen.rate, "Rate on every edge, both directions");
  gen_cmd->add_option("--eps", gen.eps, "q(1,2) of the g-eps family");
  gen_cmd->add_option("--up", gen.up, "Birth-death rate q(i,i+1)");
  gen_cmd->add_option("--down", gen.down, "Birth-death rate q(i+1,i)");
  add_output(gen_cmd);

  std::string measure_graph;
  auto* measure_cmd = app.add_subcommand("measure", "Reversible measure, normalized to min 1");
  measure_cmd->add_option("--graph", measure_graph, "Graph file")->required();
  add_output(measure_cmd);

  CurvatureOptions curv;
  auto* curv_cmd = app.add_subcommand(
      "curvature", "Optimal CD(K,n) curvature per vertex; --csv columns: vertex,n,optimal_k");
  curv_cmd->add_option("--graph", curv.graph, "Graph file")->required();
  curv_cmd->add_option("--n", curv.n, "Dimension: positive real or inf");
  curv_cmd->add_option("--vertex", curv.vertex, "Only this vertex");
  curv_cmd->add_flag("--csv", common.csv, "Emit CSV");
  add_output(curv_cmd);

  EvolveOptions evolve;
  auto* evolve_cmd = app.add_subcommand(
      "evolve",
      "Integrate du/dt = Lap u + Gamma u. Without --grid prints the state at --t; with --grid "
      "prints JSON lines, or CSV (columns: t,<vertex ids>) with --csv");
  evolve_cmd->add_option("--graph", evolve.graph, "Graph file")->required();
  evolve_cmd->add_option("--u0", evolve.u0, "Initial vertex function")->required();
  evolve_cmd->add_option("--t", evolve.t, "Final time");
  evolve_cmd->add_option("--grid", evolve.grid, "Snapshot times t1,t2,...")->delimiter(',');
  evolve_cmd->add_option("--rel-tol", evolve.rel_tol, "Solver relative tolerance");
  evolve_cmd->add_flag("--linear", evolve.linear, "Heat semigroup instead of the nonlinear flow");
  evolve_cmd->add_flag("--csv", common.csv, "Emit CSV");
  add_output(evolve_cmd);

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check one inequality and print the verdict");
  verify_cmd->add_option("--theorem", verify.theorem)
      ->required()
      ->check(CLI::IsMember(std::vector<std::string>(std::begin(kTheorems), std::end(kTheorems))));
  verify_cmd->add_option("--graph", verify.graph, "Graph file")->required();
  verify_cmd->add_option("--u0", verify.u0,
                         "Initial function; default is a seeded admissible random one");
  verify_cmd->add_option("--upper", verify.h, "Upper function h for monotone; default u0 + random bump");
  verify_cmd->add_option("--n", verify.n, "Dimension (li-yau, harnack, lin-gradient, doubling)");
  verify_cmd->add_option("--K", verify.k, "Curvature K (gradient, hamilton)");
  verify_cmd->add_option("--alpha", verify.alpha, "Upper exponent (semigroup, l1)");
  verify_cmd->add_option("--alpha-lo", verify.alpha_lo, "Lower exponent (semigroup, l1)");
  verify_cmd->add_flag("--rate-claim", verify.rate_claim,
                       "gradient: check the decay rate --K without requiring CD(K,inf)");
  verify_cmd->add_option("--grid", verify.grid, "Check times t1,t2,... (harnack: all pairs)")
      ->delimiter(',');
  verify_cmd->add_option("--rel-tol", verify.rel_tol, "Solver relative tolerance");
  verify_cmd->add_option("--seed", verify.seed, "Seed for generated functions");
  add_output(verify_cmd);

  std::string gap_graph;
  auto* gap_cmd = app.add_subcommand("gap", "Spectral gap of -Lap on a reversible graph");
  gap_cmd->add_option("--graph", gap_graph, "Graph file")->required();
  add_output(gap_cmd);

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kInputError;
  }

  try {
    if (*gen_cmd) return do_gen(gen, emit);
    if (*measure_cmd) return do_measure(measure_graph, emit);
    if (*curv_cmd) return do_curvature(curv, common, emit);
    if (*evolve_cmd) return do_evolve(evolve, common, emit, err);
    if (*verify_cmd) return do_verify(verify, emit);
    if (*gap_cmd) return do_gap(gap_graph, emit, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace curvflow::cli
