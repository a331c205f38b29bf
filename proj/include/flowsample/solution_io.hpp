#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "flowsample/maxflow.hpp"
#include "flowsample/sampler.hpp"
#include "json.hpp"

namespace flowsample {

inline constexpr const char* kToolVersion = "0.3.0";

/// A solution file that cannot be read back against the given graph.
class SolutionFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json state_to_json(const FlowState& state);
FlowState state_from_json(const PlanarRoadGraph& graph, const nlohmann::json& value);

nlohmann::json sampler_config_to_json(const SamplerConfig& config);
SamplerConfig sampler_config_from_json(const nlohmann::json& value);

/// Solution-set file. The graph fingerprint lets readers refuse a file
/// produced on a different graph.
nlohmann::json solution_set_to_json(const PlanarRoadGraph& graph, const SolutionSet& set,
                                    const SamplerConfig& config);

/// Reads and fully re-validates every solution against `graph`. Throws
/// SolutionFileError on a fingerprint mismatch, unknown node ids, invalid
/// flows or an empty set.
SolutionSet solution_set_from_json(const PlanarRoadGraph& graph, const nlohmann::json& value);

/// Report for the maxflow command: value, decomposition and length stats.
nlohmann::json flow_report(const PlanarRoadGraph& graph, const FlowState& decomposition,
                           AugmentStrategy strategy);

struct RunManifest {
  std::string command;
  std::string graph_path;
  nlohmann::json parameters = nlohmann::json::object();
  std::vector<std::string> outputs;
  std::uint64_t seed = 0;
  std::string tool_version = kToolVersion;

  bool operator==(const RunManifest&) const = default;
};

nlohmann::json manifest_to_json(const RunManifest& manifest);
RunManifest manifest_from_json(const nlohmann::json& value);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::string& path, const std::string& content);

/// Pretty-printed JSON with a trailing newline.
std::string dump_json(const nlohmann::json& value);

}  // namespace flowsample
