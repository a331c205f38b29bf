#include "flowsample/cli.hpp"

#include <algorithm>
#include <atomic>
#include <iostream>
#include <mutex>
#include <optional>
#include <thread>

#include "CLI11.hpp"
#include "flowsample/graph_io.hpp"
#include "flowsample/maxflow.hpp"
#include "flowsample/metrics.hpp"
#include "flowsample/oracle.hpp"
#include "flowsample/sampler.hpp"
#include "flowsample/solution_io.hpp"

namespace flowsample {

using nlohmann::json;

namespace {

struct Emitter {
  std::ostream& out;

  // Atomic write to `path`, or stdout when no path was given.
  void emit(const std::string& path, const std::string& content) const {
    if (path.empty() || path == "-") {
      out << content;
    } else {
      write_file_atomic(path, content);
    }
  }
};

PlanarRoadGraph load_with_warnings(const std::string& path, std::ostream& err) {
  std::vector<std::string> warnings;
  PlanarRoadGraph g = load_graph_file(path, &warnings);
  for (const std::string& w : warnings) err << "warning: " << w << '\n';
  return g;
}

struct MaxflowArgs {
  std::string graph;
  std::string strategy = "bfs";
  std::string output;
};

int cmd_maxflow(const MaxflowArgs& a, const Emitter& io, std::ostream& err) {
  const PlanarRoadGraph g = load_with_warnings(a.graph, err);
  const AugmentStrategy s =
      a.strategy == "bfs" ? AugmentStrategy::kBreadthFirst : AugmentStrategy::kShortestLength;
  const FlowState paths = decompose(max_flow(g, s));
  io.emit(a.output, dump_json(flow_report(g, paths, s)));
  return kExitOk;
}

struct SampleArgs {
  std::string graph;
  SamplerConfig config;
  std::string strategy = "bfs";
  std::size_t runs = 1;
  std::size_t jobs = 0;
  std::string output;
  std::string manifest;
  bool target_given = false;
};

json run_summary(const SolutionSet& set, std::uint64_t seed) {
  json s = {{"seed", seed},
            {"solutions", set.size()},
            {"iterations_run", set.iterations_run},
            {"target_reached", set.target_reached}};
  if (!set.members.empty()) {
    const LoadingReport r = edge_loading(set);
    s["normalized_mean"] = r.normalized_mean;
    s["avg_solution_length"] = r.avg_solution_length;
  }
  return s;
}

int cmd_sample(SampleArgs a, const Emitter& io, std::ostream& err) {
  if (a.target_given) a.config.exit = ExitMode::kTargetCount;
  a.config.initial_strategy =
      a.strategy == "bfs" ? AugmentStrategy::kBreadthFirst : AugmentStrategy::kShortestLength;
  a.config.validate();
  if (a.runs == 0) throw std::invalid_argument("--runs must be at least 1");
  if (a.runs > 1 && (a.output.empty() || a.output == "-")) {
    throw std::invalid_argument("--runs above 1 needs -o as the output prefix");
  }
  const PlanarRoadGraph g = load_with_warnings(a.graph, err);

  std::vector<std::string> outputs;
  bool budget_hit = false;
  if (a.runs == 1) {
    const SolutionSet set = sample_koptimal(g, a.config);
    for (const std::string& w : set.warnings) err << "warning: " << w << '\n';
    budget_hit = !set.target_reached;
    io.emit(a.output, dump_json(solution_set_to_json(g, set, a.config)));
    outputs.push_back(a.output.empty() ? "-" : a.output);
  } else {
    // Run i uses seed + i; workers share nothing but the run counter.
    std::vector<json> summaries(a.runs);
    std::vector<std::string> run_paths(a.runs);
    std::atomic<std::size_t> next{0};
    std::mutex failure_mutex;
    std::exception_ptr failure;
    std::atomic<bool> any_budget_hit{false};
    auto worker = [&] {
      for (std::size_t i = next++; i < a.runs; i = next++) {
        try {
          SamplerConfig c = a.config;
          c.seed = a.config.seed + i;
          const SolutionSet set = sample_koptimal(g, c);
          if (!set.target_reached) any_budget_hit = true;
          run_paths[i] = a.output + ".run" + std::to_string(i) + ".json";
          write_file_atomic(run_paths[i], dump_json(solution_set_to_json(g, set, c)));
          summaries[i] = run_summary(set, c.seed);
          summaries[i]["output"] = run_paths[i];
          summaries[i]["warnings"] = set.warnings;
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    };
    std::size_t workers = a.jobs ? a.jobs : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, a.runs);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    budget_hit = any_budget_hit;

    outputs = run_paths;
    const std::string summary_path = a.output + ".summary.json";
    json summary = {{"runs", summaries}, {"config", sampler_config_to_json(a.config)}};
    write_file_atomic(summary_path, dump_json(summary));
    outputs.push_back(summary_path);
  }

  if (!a.manifest.empty()) {
    RunManifest m;
    m.command = "sample";
    m.graph_path = a.graph;
    m.parameters = sampler_config_to_json(a.config);
    m.parameters["runs"] = a.runs;
    m.outputs = outputs;
    m.seed = a.config.seed;
    write_file_atomic(a.manifest, dump_json(manifest_to_json(m)));
  }
  return budget_hit ? kExitRefused : kExitOk;
}

struct ValidateArgs {
  std::string graph;
  double lambda = 1.0;
  std::uint64_t steps = 1'000'000;
  std::size_t cap = kDefaultStateCap;
  std::uint64_t seed = 0;
  std::string output;
};

int cmd_validate(const ValidateArgs& a, const Emitter& io, std::ostream& err) {
  ChainParams{a.lambda, a.seed}.validate();
  const PlanarRoadGraph g = load_with_warnings(a.graph, err);
  const DiagnosticReport r = run_diagnostics(g, a.lambda, a.steps, a.cap, a.seed);
  json tv = json::array();
  for (const TvCheckpoint& c : r.tv) tv.push_back({{"steps", c.steps}, {"tv", c.tv}});
  json report = {
      {"states", r.state_count},
      {"flow_value", r.flow_value},
      {"lambda", r.lambda},
      {"detailed_balance_residual", r.detailed_balance},
      {"stationarity_residual", r.stationarity},
      {"row_sum_residual", r.row_sum},
      {"pi_uniform", r.pi_uniform},
      {"connected", r.irreducible.connected},
      {"tv_trajectory", tv},
  };
  if (!r.witness_states.empty()) {
    report["witness"] = {{"from", state_to_json(r.witness_states[0])},
                         {"to", state_to_json(r.witness_states[1])}};
    err << "transition graph is not strongly connected; see \"witness\"\n";
  }
  io.emit(a.output, dump_json(report));
  return kExitOk;
}

struct MetricsArgs {
  std::string graph;
  std::string solutions;
  std::string output;
  std::string table;
  std::string geojson;
};

int cmd_metrics(const MetricsArgs& a, const Emitter& io, std::ostream& err) {
  const PlanarRoadGraph g = load_with_warnings(a.graph, err);
  json doc;
  try {
    doc = json::parse(read_text_file(a.solutions));
  } catch (const json::parse_error& e) {
    throw SolutionFileError(std::string("solution file is not valid JSON: ") + e.what());
  }
  const SolutionSet set = solution_set_from_json(g, doc);
  const LoadingReport r = edge_loading(set);
  io.emit(a.output, dump_json(loading_to_json(g, r)));
  if (!a.table.empty()) write_file_atomic(a.table, loading_table(g, r));
  if (!a.geojson.empty()) write_file_atomic(a.geojson, dump_json(loading_geojson(g, r)));
  return kExitOk;
}

struct GridArgs {
  int rows = 4;
  int cols = 4;
  double edge_length = 100.0;
  Capacity capacity = 1;
  std::string output;
};

int cmd_gen_grid(const GridArgs& a, const Emitter& io) {
  if (a.rows < 1 || a.cols < 1 || a.rows * a.cols < 2) {
    throw std::invalid_argument("grid needs at least two nodes");
  }
  io.emit(a.output, dump_json(graph_to_json(make_grid(a.rows, a.cols, a.edge_length, a.capacity))));
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Diverse integer max-flow sampling on planar road networks", "flowsample"};
  app.require_subcommand(1);
  const std::vector<std::string> strategies{"bfs", "dijkstra"};

  MaxflowArgs mf;
  auto* maxflow = app.add_subcommand("maxflow", "Ford-Fulkerson max flow and its path decomposition");
  maxflow->add_option("graph", mf.graph, "graph file")->required();
  maxflow->add_option("--strategy", mf.strategy, "augmenting path rule")
      ->check(CLI::IsMember(strategies));
  maxflow->add_option("-o,--output", mf.output, "report file (default stdout)");

  SampleArgs sa;
  auto* sample = app.add_subcommand("sample", "sample a k-optimal set of max flows");
  sample->add_option("graph", sa.graph, "graph file")->required();
  sample->add_option("--lambda", sa.config.lambda, "length bias, pi(x) ~ lambda^|x|");
  sample->add_option("--k", sa.config.k, "max common edges between two kept solutions");
  sample->add_option("--mix-iter", sa.config.mix_iter, "iterations before sampling starts");
  auto* num_iter =
      sample->add_option("--num-iter", sa.config.num_iter, "sampling iterations (fixed exit)");
  auto* target = sample->add_option("--target-solutions", sa.config.target_solutions,
                                    "stop after this many solutions");
  num_iter->excludes(target);
  sample->add_option("--sf", sa.config.sf, "sampling frequency");
  sample->add_option("--seed", sa.config.seed, "RNG seed");
  sample->add_option("--max-total-iter", sa.config.max_total_iter,
                     "iteration ceiling for --target-solutions");
  sample->add_option("--initial", sa.strategy, "augmenting rule for the start state")
      ->check(CLI::IsMember(strategies));
  sample->add_option("--runs", sa.runs, "independent runs with seeds seed, seed+1, ...");
  sample->add_option("--jobs", sa.jobs, "worker threads for --runs (default: cores)");
  sample->add_option("-o,--output", sa.output, "solution file, or prefix with --runs");
  sample->add_option("--manifest", sa.manifest, "run manifest file");

  ValidateArgs va;
  auto* validate = app.add_subcommand("validate", "check the chain against exact enumeration");
  validate->add_option("graph", va.graph, "graph file")->required();
  validate->add_option("--lambda", va.lambda, "length bias");
  validate->add_option("--steps", va.steps, "simulated steps for the TV trajectory");
  validate->add_option("--cap", va.cap, "refuse when the state space exceeds this");
  validate->add_option("--seed", va.seed, "RNG seed");
  validate->add_option("-o,--output", va.output, "report file (default stdout)");

  MetricsArgs ma;
  auto* metrics = app.add_subcommand("metrics", "link loading of a solution set");
  metrics->add_option("graph", ma.graph, "graph file")->required();
  metrics->add_option("solutions", ma.solutions, "solution file")->required();
  metrics->add_option("-o,--output", ma.output, "JSON report (default stdout)");
  metrics->add_option("--table", ma.table, "tab-separated per-edge loads");
  metrics->add_option("--geojson", ma.geojson, "GeoJSON heat layer");

  GridArgs ga;
  auto* grid = app.add_subcommand("gen-grid", "write a synthetic grid graph");
  grid->add_option("--rows", ga.rows);
  grid->add_option("--cols", ga.cols);
  grid->add_option("--edge-length", ga.edge_length);
  grid->add_option("--capacity", ga.capacity);
  grid->add_option("-o,--output", ga.output, "graph file (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }
  sa.target_given = target->count() > 0;

  const Emitter io{out};
  try {
    if (*maxflow) return cmd_maxflow(mf, io, err);
    if (*sample) return cmd_sample(sa, io, err);
    if (*validate) return cmd_validate(va, io, err);
    if (*metrics) return cmd_metrics(ma, io, err);
    if (*grid) return cmd_gen_grid(ga, io);
  } catch (const EnumerationCapExceeded& e) {
    err << "error: refusing to validate: " << e.what() << " (stopped at " << e.partial_count()
        << ")\n";
    return kExitRefused;
  } catch (const GraphError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const SolutionFileError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace flowsample
