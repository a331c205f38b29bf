#include "flowsample/graph_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace flowsample {
namespace {

using nlohmann::json;

[[noreturn]] void parse_error(const std::string& what) {
  throw GraphError(GraphErrorKind::kParse, what);
}

void warn_unknown(const json& object, std::initializer_list<const char*> known,
                  const std::string& where, std::vector<std::string>* warnings) {
  if (!warnings) return;
  for (const auto& [key, value] : object.items()) {
    bool found = false;
    for (const char* k : known) found = found || key == k;
    if (!found) warnings->push_back(where + ": ignoring unknown field '" + key + "'");
  }
}

const json& require(const json& object, const char* key, const std::string& where) {
  auto it = object.find(key);
  if (it == object.end()) parse_error(where + ": missing field '" + key + "'");
  return *it;
}

double number(const json& value, const std::string& where) {
  if (!value.is_number()) parse_error(where + " must be a number");
  return value.get<double>();
}

std::vector<std::string> id_list(const json& root, const char* key) {
  const json& list = require(root, key, "graph");
  if (!list.is_array()) parse_error(std::string("'") + key + "' must be a list");
  std::vector<std::string> out;
  for (const json& v : list) out.push_back(id_string(v, key));
  return out;
}

}  // namespace

std::string id_string(const json& value, const std::string& where) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return std::to_string(value.get<long long>());
  parse_error(where + ": id must be a string or an integer");
}

json id_json(const std::string& id) {
  if (!id.empty() && id.size() < 18 &&
      id.find_first_not_of("0123456789") == std::string::npos && (id == "0" || id[0] != '0')) {
    return std::stoll(id);
  }
  return id;
}

GraphDocument parse_graph_document(std::string_view text, std::vector<std::string>* warnings) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    parse_error(std::string("malformed graph document: ") + e.what());
  }
  if (!root.is_object()) parse_error("graph document must be an object");
  warn_unknown(root, {"nodes", "edges", "sources", "sinks"}, "graph", warnings);

  GraphDocument doc;
  const json& nodes = require(root, "nodes", "graph");
  if (!nodes.is_array()) parse_error("'nodes' must be a list");
  for (const json& n : nodes) {
    if (!n.is_object()) parse_error("node entries must be objects");
    NodeRecord rec;
    rec.id = id_string(require(n, "id", "node"), "node");
    const std::string where = "node '" + rec.id + "'";
    warn_unknown(n, {"id", "x", "y"}, where, warnings);
    rec.x = number(require(n, "x", where), where + " x");
    rec.y = number(require(n, "y", where), where + " y");
    doc.nodes.push_back(std::move(rec));
  }

  const json& edges = require(root, "edges", "graph");
  if (!edges.is_array()) parse_error("'edges' must be a list");
  for (const json& e : edges) {
    if (!e.is_object()) parse_error("edge entries must be objects");
    GraphDocument::Edge rec;
    rec.id = id_string(require(e, "id", "edge"), "edge");
    const std::string where = "edge '" + rec.id + "'";
    warn_unknown(e, {"id", "u", "v", "length", "capacity"}, where, warnings);
    rec.u = id_string(require(e, "u", where), where);
    rec.v = id_string(require(e, "v", where), where);
    rec.length = number(require(e, "length", where), where + " length");
    const json& cap = require(e, "capacity", where);
    if (cap.is_number_integer()) {
      rec.capacity = cap.get<Capacity>();
    } else if (cap.is_number_float() && cap.get<double>() == static_cast<double>(static_cast<Capacity>(cap.get<double>()))) {
      rec.capacity = static_cast<Capacity>(cap.get<double>());
    } else {
      throw GraphError(GraphErrorKind::kInvalidAttribute, where + " capacity must be an integer");
    }
    doc.edges.push_back(std::move(rec));
  }

  doc.sources = id_list(root, "sources");
  doc.sinks = id_list(root, "sinks");
  return doc;
}

PlanarRoadGraph build_graph(const GraphDocument& doc) {
  std::vector<NodeRecord> nodes = doc.nodes;
  std::unordered_map<std::string, NodeIndex> index;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    nodes[i].is_virtual = false;
    if (!index.emplace(nodes[i].id, static_cast<NodeIndex>(i)).second) {
      throw GraphError(GraphErrorKind::kDuplicateId, "duplicate node id '" + nodes[i].id + "'");
    }
  }
  auto lookup = [&index](const std::string& id, const std::string& what) {
    auto it = index.find(id);
    if (it == index.end()) {
      throw GraphError(GraphErrorKind::kUnknownId, what + " refers to unknown node '" + id + "'");
    }
    return it->second;
  };

  std::vector<EdgeRecord> edges;
  edges.reserve(doc.edges.size());
  for (const GraphDocument::Edge& e : doc.edges) {
    const std::string what = "edge '" + e.id + "'";
    edges.push_back({e.id, lookup(e.u, what), lookup(e.v, what), e.length, e.capacity, false});
  }

  std::vector<NodeIndex> sources, sinks;
  for (const std::string& s : doc.sources) sources.push_back(lookup(s, "source list"));
  for (const std::string& t : doc.sinks) sinks.push_back(lookup(t, "sink list"));
  if (sources.empty() || sinks.empty()) {
    throw GraphError(GraphErrorKind::kTerminals, "at least one source and one sink are required");
  }
  const std::set<NodeIndex> source_set(sources.begin(), sources.end());
  const std::set<NodeIndex> sink_set(sinks.begin(), sinks.end());
  for (NodeIndex t : sink_set) {
    if (source_set.count(t)) {
      throw GraphError(GraphErrorKind::kTerminals,
                       "node '" + nodes[t].id + "' is both a source and a sink");
    }
  }

  if (source_set.size() == 1 && sink_set.size() == 1) {
    return PlanarRoadGraph(std::move(nodes), std::move(edges), *source_set.begin(),
                           *sink_set.begin());
  }
  return PlanarRoadGraph::with_virtual_terminals(
      std::move(nodes), std::move(edges), std::vector<NodeIndex>(source_set.begin(), source_set.end()),
      std::vector<NodeIndex>(sink_set.begin(), sink_set.end()));
}

PlanarRoadGraph load_graph(std::string_view text, std::vector<std::string>* warnings) {
  return build_graph(parse_graph_document(text, warnings));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GraphError(GraphErrorKind::kParse, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

PlanarRoadGraph load_graph_file(const std::string& path, std::vector<std::string>* warnings) {
  return load_graph(read_text_file(path), warnings);
}

nlohmann::json graph_to_json(const PlanarRoadGraph& graph) {
  json nodes = json::array();
  for (const NodeRecord& n : graph.nodes()) {
    if (n.is_virtual) continue;
    nodes.push_back({{"id", id_json(n.id)}, {"x", n.x}, {"y", n.y}});
  }
  json edges = json::array();
  for (const EdgeRecord& e : graph.edges()) {
    if (e.is_virtual) continue;
    edges.push_back({{"id", id_json(e.id)},
                     {"u", id_json(graph.node(e.u).id)},
                     {"v", id_json(graph.node(e.v).id)},
                     {"length", e.length},
                     {"capacity", e.capacity}});
  }
  json sources = json::array(), sinks = json::array();
  const NodeIndex s = graph.source();
  const NodeIndex t = graph.sink();
  if (graph.node(s).is_virtual) {
    for (const Incidence& inc : graph.incident(s)) sources.push_back(id_json(graph.node(inc.neighbor).id));
  } else {
    sources.push_back(id_json(graph.node(s).id));
  }
  if (graph.node(t).is_virtual) {
    for (const Incidence& inc : graph.incident(t)) sinks.push_back(id_json(graph.node(inc.neighbor).id));
  } else {
    sinks.push_back(id_json(graph.node(t).id));
  }
  return {{"nodes", nodes}, {"edges", edges}, {"sources", sources}, {"sinks", sinks}};
}

}  // namespace flowsample
