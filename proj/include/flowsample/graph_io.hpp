#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "flowsample/graph.hpp"
#include "json.hpp"

namespace flowsample {

/// Parsed but unvalidated graph file. Integer ids are kept in their decimal
/// string form.
struct GraphDocument {
  struct Edge {
    std::string id;
    std::string u;
    std::string v;
    double length = 0.0;
    Capacity capacity = 1;
  };
  std::vector<NodeRecord> nodes;
  std::vector<Edge> edges;
  std::vector<std::string> sources;
  std::vector<std::string> sinks;
};

GraphDocument parse_graph_document(std::string_view text,
                                   std::vector<std::string>* warnings = nullptr);

/// Validates the document and builds the graph. A single source/sink pair is
/// used directly; several are joined through virtual terminals.
PlanarRoadGraph build_graph(const GraphDocument& doc);

PlanarRoadGraph load_graph(std::string_view text, std::vector<std::string>* warnings = nullptr);
PlanarRoadGraph load_graph_file(const std::string& path,
                                std::vector<std::string>* warnings = nullptr);

/// Graph file for the real part of `graph`. For an augmented graph the
/// terminals listed are the neighbours of the virtual source and sink.
nlohmann::json graph_to_json(const PlanarRoadGraph& graph);

/// Ids travel as strings internally; canonical decimal ids are written as
/// JSON integers.
std::string id_string(const nlohmann::json& value, const std::string& where);
nlohmann::json id_json(const std::string& id);

/// Read a whole file; throws GraphError(kParse) when it cannot be opened.
std::string read_text_file(const std::string& path);

}  // namespace flowsample
