#pragma once

#include <span>
#include <string>
#include <vector>

#include "flowsample/flow_state.hpp"
#include "flowsample/sampler.hpp"
#include "json.hpp"

namespace flowsample {

/// Link loading of a solution set: every unit path puts its edge length on
/// each real edge it traverses, summed over all solutions.
struct LoadingReport {
  std::vector<double> per_edge_load;  // indexed by edge; virtual edges stay 0
  double total_load = 0.0;
  double mean_load = 0.0;  // over loaded edges
  double max_load = 0.0;
  std::size_t loaded_edge_count = 0;
  double normalized_mean = 0.0;  // mean_load / solution_count
  double avg_solution_length = 0.0;  // per path
  std::size_t solution_count = 0;
};

/// Throws std::invalid_argument on an empty input or states from different
/// graphs.
LoadingReport edge_loading(std::span<const FlowState> solutions);
LoadingReport edge_loading(const SolutionSet& solutions);

struct LengthStats {
  double avg_path_length = 0.0;
  double total_length = 0.0;  // summed over all paths of all solutions
};

LengthStats solution_length_stats(std::span<const FlowState> solutions);
LengthStats solution_length_stats(const SolutionSet& solutions);

/// "edge_id<TAB>load" lines for loaded edges, followed by summary lines.
std::string loading_table(const PlanarRoadGraph& graph, const LoadingReport& report);

nlohmann::json loading_to_json(const PlanarRoadGraph& graph, const LoadingReport& report);

/// FeatureCollection with one LineString per real edge and its load.
nlohmann::json loading_geojson(const PlanarRoadGraph& graph, const LoadingReport& report);

}  // namespace flowsample
