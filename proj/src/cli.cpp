#include "ambush/cli.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <future>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "ambush/error.hpp"
#include "ambush/eval.hpp"
#include "ambush/game.hpp"
#include "ambush/io.hpp"
#include "ambush/netgen.hpp"
#include "ambush/render.hpp"

namespace ambush::cli {

namespace {

namespace fs = std::filesystem;

struct RunConfig {
  std::string field_path;
  std::string network_path;
  int method = 3;
  int node_budget = 200;
  std::string origin;
  std::string dest;
  std::string solver = "ipm";
  double length_weight = 0.0;
  std::optional<double> alpha_threshold;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  bool plot = false;
  int count = 1;
  int iterations = 1000;
};

Vec2 parse_point(const std::string& text, const char* flag) {
  const auto comma = text.find(',');
  double xy[2];
  bool ok = comma != std::string::npos;
  for (int i = 0; ok && i < 2; ++i) {
    const std::string part = i == 0 ? text.substr(0, comma) : text.substr(comma + 1);
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), xy[i]);
    ok = ec == std::errc() && ptr == part.data() + part.size() && !part.empty();
  }
  if (!ok) throw Error(ErrorKind::kUsage, std::string(flag) + " expects X,Y but got '" + text + "'");
  return {xy[0], xy[1]};
}

void validate(const RunConfig& cfg) {
  if (!(cfg.length_weight >= 0.0 && cfg.length_weight < 1.0)) {
    throw Error(ErrorKind::kUsage, "--length-weight must lie in [0, 1)");
  }
  if (cfg.node_budget < 2) throw Error(ErrorKind::kUsage, "--nodes must be at least 2");
  if (!cfg.network_path.empty()) {
    if (!fs::exists(cfg.network_path)) throw Error(ErrorKind::kUsage, "network file not found: " + cfg.network_path);
    return;
  }
  if (cfg.field_path.empty()) throw Error(ErrorKind::kUsage, "either --field or --network is required");
  if (!fs::exists(cfg.field_path)) throw Error(ErrorKind::kUsage, "risk field file not found: " + cfg.field_path);
  if (cfg.origin.empty() || cfg.dest.empty()) {
    throw Error(ErrorKind::kUsage, "--origin and --dest are required when building from a field");
  }
}

struct Inputs {
  std::optional<RiskField> field;
  Network net;
};

Inputs load_inputs(const RunConfig& cfg) {
  validate(cfg);
  Inputs in;
  if (!cfg.field_path.empty()) in.field = load_risk_field(cfg.field_path);
  if (!cfg.network_path.empty()) {
    in.net = load_network(cfg.network_path);
  } else {
    BuildParams params;
    params.method = build_method_from_int(cfg.method);
    params.node_budget = cfg.node_budget;
    params.origin = parse_point(cfg.origin, "--origin");
    params.destination = parse_point(cfg.dest, "--dest");
    params.seed = cfg.seed;
    in.net = build_network(*in.field, params);
  }
  if (cfg.alpha_threshold) in.net = prune_threshold(in.net, *cfg.alpha_threshold);
  return in;
}

fs::path out_path(const RunConfig& cfg, const std::string& name) { return fs::path(cfg.out_dir) / name; }

int cmd_build(const RunConfig& cfg, std::ostream& out) {
  const Inputs in = load_inputs(cfg);
  const fs::path path = out_path(cfg, "network.json");
  save_network(path, in.net);
  out << "wrote " << path.string() << " (" << in.net.num_nodes() << " nodes, " << in.net.num_edges() << " edges)\n";
  return kExitOk;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out) {
  const Inputs in = load_inputs(cfg);
  const Equilibrium eq = solve_minimax(in.net, solver_from_string(cfg.solver), cfg.length_weight);
  write_file_atomic(out_path(cfg, "equilibrium.json"), equilibrium_to_json(in.net, eq));
  if (cfg.plot) {
    const RiskField* field = in.field ? &*in.field : nullptr;
    write_file_atomic(out_path(cfg, "flow.svg"), render_flow_svg(in.net, eq.p, field));
    write_file_atomic(out_path(cfg, "mean_direction.svg"), render_mean_direction_svg(in.net, eq.p, field));
    write_file_atomic(out_path(cfg, "flow.dot"), render_dot(in.net, eq.p));
  }
  out << "solver " << to_string(eq.solver) << ": z* = " << format_double(eq.z_star)
      << ", entropy = " << format_double(eq.entropy) << ", iterations = " << eq.report.iterations << "\n";
  return kExitOk;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out) {
  const Inputs in = load_inputs(cfg);
  auto simplex = std::async(std::launch::async, [&] { return solve_minimax(in.net, SolverKind::kSimplex, 0.0); });
  const Equilibrium ipm = solve_minimax(in.net, SolverKind::kIpm, 0.0);
  const Equilibrium spx = simplex.get();

  std::ostringstream solvers;
  solvers << "solver,z_star,entropy,iterations\n";
  for (const Equilibrium* eq : {&ipm, &spx}) {
    solvers << to_string(eq->solver) << ',' << format_double(eq->z_star) << ',' << format_double(eq->entropy) << ','
            << eq->report.iterations << '\n';
  }

  const SolverKind kind = solver_from_string(cfg.solver);
  const Equilibrium& reference = kind == SolverKind::kIpm ? ipm : spx;
  std::ostringstream planners;
  planners << eval_csv_header() << '\n';
  std::vector<PlannerSpec> specs = {{PlannerKind::kStochastic, kind, 0.0},
                                    {PlannerKind::kShortest, kind, 0.0},
                                    {PlannerKind::kSafest, kind, 0.0}};
  if (cfg.length_weight > 0.0) specs.insert(specs.begin() + 1, {PlannerKind::kStochastic, kind, cfg.length_weight});
  for (const PlannerSpec& spec : specs) {
    planners << to_csv_row(evaluate_planner(in.net, spec, reference, cfg.iterations, cfg.seed)) << '\n';
  }

  write_file_atomic(out_path(cfg, "solvers.csv"), solvers.str());
  write_file_atomic(out_path(cfg, "planners.csv"), planners.str());
  out << solvers.str() << '\n' << planners.str();
  return kExitOk;
}

int cmd_sample(const RunConfig& cfg, std::ostream& out) {
  if (cfg.count < 1) throw Error(ErrorKind::kUsage, "--count must be positive");
  const Inputs in = load_inputs(cfg);
  const Equilibrium eq = solve_minimax(in.net, solver_from_string(cfg.solver), cfg.length_weight);
  const auto paths = sample_paths(in.net, eq.p, cfg.count, cfg.seed);

  std::ostringstream os;
  os << "# paths " << cfg.count << " seed " << cfg.seed << " solver " << to_string(eq.solver) << '\n';
  double total_length = 0.0;
  double top = 0.0;
  for (const PathSample& path : paths) {
    for (std::size_t i = 0; i < path.nodes.size(); ++i) os << (i ? " " : "") << path.nodes[i];
    os << '\n';
    total_length += path.length;
    top = std::max(top, path.max_alpha);
  }
  constexpr int kBins = 10;
  std::vector<int> hist(kBins, 0);
  const double width = top > 0.0 ? top / kBins : 1.0;
  for (const PathSample& path : paths) {
    hist[std::min(kBins - 1, static_cast<int>(path.max_alpha / width))]++;
  }
  os << "# mean_length " << format_double(total_length / cfg.count) << '\n';
  os << "# max_alpha_histogram bin_low bin_high count\n";
  for (int b = 0; b < kBins; ++b) {
    os << "# " << format_double(b * width) << ' ' << format_double((b + 1) * width) << ' ' << hist[b] << '\n';
  }
  const fs::path path = out_path(cfg, "paths.txt");
  write_file_atomic(path, os.str());
  out << "wrote " << cfg.count << " paths to " << path.string() << '\n';
  return kExitOk;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUsage:
    case ErrorKind::kParse: return kExitUsage;
    case ErrorKind::kSolver:
    case ErrorKind::kIterationCap: return kExitSolver;
    default: return kExitDomain;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Randomized convoy route planning against a single ambusher"};
  app.name("ambush");
  app.set_config("--config", "", "key=value configuration file; command-line flags take precedence");
  app.fallthrough();
  app.require_subcommand(1, 1);

  app.add_option("--field", cfg.field_path, "risk field file");
  app.add_option("--network", cfg.network_path, "network JSON (instead of building from --field)");
  app.add_option("--method", cfg.method, "construction method")->check(CLI::IsMember({1, 2, 3}));
  app.add_option("--nodes", cfg.node_budget, "node budget");
  app.add_option("--origin", cfg.origin, "origin position X,Y");
  app.add_option("--dest", cfg.dest, "destination position X,Y");
  app.add_option("--solver", cfg.solver, "LP solver")->check(CLI::IsMember({"simplex", "ipm"}));
  app.add_option("--length-weight", cfg.length_weight, "weight of expected length in the objective, in [0, 1)");
  app.add_option("--alpha-threshold", cfg.alpha_threshold, "drop internal nodes with alpha above this");
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--out", cfg.out_dir, "output directory");
  app.add_flag("--plot", cfg.plot, "also write SVG and DOT figures (solve)");

  auto* build = app.add_subcommand("build", "build a roadmap network and write network.json");
  auto* solve = app.add_subcommand("solve", "solve the minimax game and write equilibrium.json");
  auto* compare = app.add_subcommand("compare", "compare solvers and planners; write solvers.csv and planners.csv");
  compare->add_option("--iterations", cfg.iterations, "repeated games simulated per planner");
  auto* sample = app.add_subcommand("sample", "sample random paths from the equilibrium; write paths.txt");
  sample->add_option("--count", cfg.count, "number of paths");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*build) return cmd_build(cfg, out);
    if (*solve) return cmd_solve(cfg, out);
    if (*compare) return cmd_compare(cfg, out);
    if (*sample) return cmd_sample(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}

}  // namespace ambush::cli
