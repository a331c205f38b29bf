#include "flowsample/solution_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "flowsample/graph_io.hpp"
#include "flowsample/metrics.hpp"

namespace flowsample {

using nlohmann::json;

namespace {

const char* strategy_name(AugmentStrategy s) {
  return s == AugmentStrategy::kBreadthFirst ? "bfs" : "dijkstra";
}

AugmentStrategy strategy_from_name(const std::string& name) {
  if (name == "bfs") return AugmentStrategy::kBreadthFirst;
  if (name == "dijkstra") return AugmentStrategy::kShortestLength;
  throw std::invalid_argument("unknown augmentation strategy '" + name + "'");
}

std::string fingerprint_hex(const PlanarRoadGraph& graph) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(graph.fingerprint()));
  return buf;
}

}  // namespace

json state_to_json(const FlowState& state) {
  const PlanarRoadGraph& g = state.graph();
  json paths = json::array();
  for (const UnitPath& p : state.paths()) {
    json nodes = json::array();
    for (NodeIndex n : p.nodes) nodes.push_back(id_json(g.node(n).id));
    paths.push_back(nodes);
  }
  json usage = json::object();
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const Capacity u = state.usage(static_cast<EdgeIndex>(e));
    if (u > 0) usage[g.edge(static_cast<EdgeIndex>(e)).id] = u;
  }
  return {{"paths", paths}, {"edge_usage", usage}, {"total_length", state.total_length()}};
}

FlowState state_from_json(const PlanarRoadGraph& graph, const json& value) {
  if (!value.is_object() || !value.contains("paths") || !value["paths"].is_array()) {
    throw SolutionFileError("solution has no path list");
  }
  std::vector<UnitPath> paths;
  for (const json& p : value["paths"]) {
    if (!p.is_array()) throw SolutionFileError("path must be an array of node ids");
    std::vector<NodeIndex> nodes;
    for (const json& id : p) {
      std::string key;
      try {
        key = id_string(id, "path");
      } catch (const GraphError& e) {
        throw SolutionFileError(e.what());
      }
      auto n = graph.find_node(key);
      if (!n) throw SolutionFileError("path visits unknown node '" + key + "'");
      nodes.push_back(*n);
    }
    try {
      paths.push_back(make_path(graph, std::move(nodes)));
    } catch (const std::invalid_argument& e) {
      throw SolutionFileError(e.what());
    }
  }
  return FlowState(graph, std::move(paths));
}

json sampler_config_to_json(const SamplerConfig& c) {
  return {
      {"lambda", c.lambda},
      {"k", c.k},
      {"mix_iter", c.mix_iter},
      {"num_iter", c.num_iter},
      {"sf", c.sf},
      {"exit", c.exit == ExitMode::kFixedIterations ? "fixed" : "target"},
      {"target_solutions", c.target_solutions},
      {"max_total_iter", c.max_total_iter},
      {"seed", c.seed},
      {"initial_strategy", strategy_name(c.initial_strategy)},
  };
}

SamplerConfig sampler_config_from_json(const json& v) {
  SamplerConfig c;
  c.lambda = v.at("lambda").get<double>();
  c.k = v.at("k").get<std::int64_t>();
  c.mix_iter = v.at("mix_iter").get<std::uint64_t>();
  c.num_iter = v.at("num_iter").get<std::uint64_t>();
  c.sf = v.at("sf").get<std::uint64_t>();
  const std::string exit = v.at("exit").get<std::string>();
  if (exit != "fixed" && exit != "target") throw std::invalid_argument("unknown exit mode " + exit);
  c.exit = exit == "fixed" ? ExitMode::kFixedIterations : ExitMode::kTargetCount;
  c.target_solutions = v.at("target_solutions").get<std::size_t>();
  c.max_total_iter = v.at("max_total_iter").get<std::uint64_t>();
  c.seed = v.at("seed").get<std::uint64_t>();
  c.initial_strategy = strategy_from_name(v.at("initial_strategy").get<std::string>());
  return c;
}

json solution_set_to_json(const PlanarRoadGraph& graph, const SolutionSet& set,
                          const SamplerConfig& config) {
  json solutions = json::array();
  for (const SolutionRecord& m : set.members) {
    json s = state_to_json(m.state);
    s["iteration"] = m.iteration;
    s["seed"] = m.seed;
    solutions.push_back(std::move(s));
  }
  return {
      {"graph_fingerprint", fingerprint_hex(graph)},
      {"config", sampler_config_to_json(config)},
      {"solutions", solutions},
      {"metadata",
       {{"iterations_run", set.iterations_run},
        {"target_reached", set.target_reached},
        {"warnings", set.warnings},
        {"tool_version", kToolVersion}}},
  };
}

SolutionSet solution_set_from_json(const PlanarRoadGraph& graph, const json& value) {
  if (!value.is_object()) throw SolutionFileError("solution file must hold a JSON object");
  if (value.contains("graph_fingerprint") &&
      value["graph_fingerprint"] != fingerprint_hex(graph)) {
    throw SolutionFileError("graph fingerprint mismatch: solution file was produced on a different graph");
  }
  if (!value.contains("solutions") || !value["solutions"].is_array()) {
    throw SolutionFileError("solution file has no solutions array");
  }
  if (value["solutions"].empty()) throw SolutionFileError("solution file is empty");

  const auto mf = static_cast<std::size_t>(max_flow(graph).value());
  SolutionSet set;
  for (const json& s : value["solutions"]) {
    FlowState state = state_from_json(graph, s);
    if (auto bad = state.find_violation(mf)) {
      throw SolutionFileError("invalid solution: " + *bad);
    }
    set.members.push_back({std::move(state), s.value("iteration", std::uint64_t{0}),
                           s.value("seed", std::uint64_t{0})});
  }
  if (value.contains("metadata")) {
    set.iterations_run = value["metadata"].value("iterations_run", std::uint64_t{0});
    set.target_reached = value["metadata"].value("target_reached", true);
  }
  return set;
}

json flow_report(const PlanarRoadGraph& graph, const FlowState& decomposition,
                 AugmentStrategy strategy) {
  json report = state_to_json(decomposition);
  const std::vector<FlowState> one{decomposition};
  const LengthStats stats = solution_length_stats(std::span<const FlowState>(one));
  report["value"] = decomposition.path_count();
  report["strategy"] = strategy_name(strategy);
  report["avg_path_length"] = stats.avg_path_length;
  report["graph_fingerprint"] = fingerprint_hex(graph);
  return report;
}

json manifest_to_json(const RunManifest& m) {
  return {
      {"command", m.command},          {"graph_path", m.graph_path}, {"parameters", m.parameters},
      {"outputs", m.outputs},          {"seed", m.seed},             {"tool_version", m.tool_version},
  };
}

RunManifest manifest_from_json(const json& v) {
  RunManifest m;
  m.command = v.at("command").get<std::string>();
  m.graph_path = v.at("graph_path").get<std::string>();
  m.parameters = v.at("parameters");
  m.outputs = v.at("outputs").get<std::vector<std::string>>();
  m.seed = v.at("seed").get<std::uint64_t>();
  m.tool_version = v.at("tool_version").get<std::string>();
  return m;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw std::runtime_error("write to " + tmp.string() + " failed");
    }
  }
  fs::rename(tmp, target);
}

std::string dump_json(const json& value) { return value.dump(2) + "\n"; }

}  // namespace flowsample
