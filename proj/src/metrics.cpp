#include "flowsample/metrics.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace flowsample {
namespace {

const PlanarRoadGraph& common_graph(std::span<const FlowState> solutions) {
  if (solutions.empty()) throw std::invalid_argument("solution set is empty");
  const PlanarRoadGraph* g = &solutions.front().graph();
  for (const FlowState& s : solutions) {
    if (&s.graph() != g) throw std::invalid_argument("solutions belong to different graphs");
  }
  return *g;
}

}  // namespace

LoadingReport edge_loading(std::span<const FlowState> solutions) {
  const PlanarRoadGraph& g = common_graph(solutions);
  LoadingReport r;
  r.per_edge_load.assign(g.edge_count(), 0.0);
  r.solution_count = solutions.size();
  for (const FlowState& s : solutions) {
    for (const UnitPath& p : s.paths()) {
      for (EdgeIndex e : p.edges) {
        if (!g.edge(e).is_virtual) r.per_edge_load[e] += g.edge(e).length;
      }
    }
  }
  for (double load : r.per_edge_load) {
    if (load > 0.0) {
      ++r.loaded_edge_count;
      r.total_load += load;
      r.max_load = std::max(r.max_load, load);
    }
  }
  if (r.loaded_edge_count > 0) {
    r.mean_load = r.total_load / static_cast<double>(r.loaded_edge_count);
    r.normalized_mean = r.mean_load / static_cast<double>(r.solution_count);
  }
  r.avg_solution_length = solution_length_stats(solutions).avg_path_length;
  return r;
}

LoadingReport edge_loading(const SolutionSet& solutions) {
  const std::vector<FlowState> states = solutions.states();
  return edge_loading(std::span<const FlowState>(states));
}

LengthStats solution_length_stats(std::span<const FlowState> solutions) {
  common_graph(solutions);
  LengthStats stats;
  std::size_t paths = 0;
  for (const FlowState& s : solutions) {
    for (const UnitPath& p : s.paths()) {
      stats.total_length += p.length;
      ++paths;
    }
  }
  if (paths > 0) stats.avg_path_length = stats.total_length / static_cast<double>(paths);
  return stats;
}

LengthStats solution_length_stats(const SolutionSet& solutions) {
  const std::vector<FlowState> states = solutions.states();
  return solution_length_stats(std::span<const FlowState>(states));
}

std::string loading_table(const PlanarRoadGraph& graph, const LoadingReport& report) {
  std::ostringstream out;
  out.precision(10);
  out << "edge\tload\n";
  for (std::size_t e = 0; e < report.per_edge_load.size(); ++e) {
    if (report.per_edge_load[e] > 0.0) {
      out << graph.edge(static_cast<EdgeIndex>(e)).id << '\t' << report.per_edge_load[e] << '\n';
    }
  }
  out << "# solutions\t" << report.solution_count << '\n'
      << "# loaded_edges\t" << report.loaded_edge_count << '\n'
      << "# total_load\t" << report.total_load << '\n'
      << "# mean_load\t" << report.mean_load << '\n'
      << "# max_load\t" << report.max_load << '\n'
      << "# normalized_mean\t" << report.normalized_mean << '\n'
      << "# avg_solution_length\t" << report.avg_solution_length << '\n';
  return out.str();
}

nlohmann::json loading_to_json(const PlanarRoadGraph& graph, const LoadingReport& report) {
  nlohmann::json loads = nlohmann::json::object();
  for (std::size_t e = 0; e < report.per_edge_load.size(); ++e) {
    if (report.per_edge_load[e] > 0.0) {
      loads[graph.edge(static_cast<EdgeIndex>(e)).id] = report.per_edge_load[e];
    }
  }
  return {
      {"per_edge_load", loads},
      {"solution_count", report.solution_count},
      {"loaded_edge_count", report.loaded_edge_count},
      {"total_load", report.total_load},
      {"mean_load", report.mean_load},
      {"max_load", report.max_load},
      {"normalized_mean", report.normalized_mean},
      {"avg_solution_length", report.avg_solution_length},
  };
}

nlohmann::json loading_geojson(const PlanarRoadGraph& graph, const LoadingReport& report) {
  nlohmann::json features = nlohmann::json::array();
  for (const EdgeRecord& edge : graph.edges()) {
    if (edge.is_virtual) continue;
    const NodeRecord& a = graph.node(edge.u);
    const NodeRecord& b = graph.node(edge.v);
    const auto e = static_cast<std::size_t>(&edge - graph.edges().data());
    const double load = e < report.per_edge_load.size() ? report.per_edge_load[e] : 0.0;
    features.push_back({
        {"type", "Feature"},
        {"geometry",
         {{"type", "LineString"}, {"coordinates", {{a.x, a.y}, {b.x, b.y}}}}},
        {"properties",
         {{"id", edge.id},
          {"load", load},
          {"relative_load", report.max_load > 0.0 ? load / report.max_load : 0.0}}},
    });
  }
  return {{"type", "FeatureCollection"}, {"features", features}};
}

}  // namespace flowsample
