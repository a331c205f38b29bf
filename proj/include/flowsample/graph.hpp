#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace flowsample {

using NodeIndex = std::int32_t;
using EdgeIndex = std::int32_t;
using Capacity = std::int64_t;

struct NodeRecord {
  std::string id;
  double x = 0.0;  // meters, planar projection
  double y = 0.0;
  bool is_virtual = false;
};

struct EdgeRecord {
  std::string id;
  NodeIndex u = 0;
  NodeIndex v = 0;
  double length = 0.0;  // meters
  Capacity capacity = 1;  // lanes
  bool is_virtual = false;

  NodeIndex other(NodeIndex n) const { return n == u ? v : u; }
};

/// One face of the embedding. `walk[i]` is the tail of the i-th boundary
/// half-edge and `boundary[i]` its edge, so boundary[i] joins walk[i] and
/// walk[(i + 1) % size]. Inner faces are walked counter-clockwise.
struct FaceRecord {
  int id = 0;
  std::vector<EdgeIndex> boundary;
  std::vector<NodeIndex> walk;
  bool outer = false;

  std::size_t size() const { return boundary.size(); }
};

struct Incidence {
  EdgeIndex edge;
  NodeIndex neighbor;
};

enum class GraphErrorKind {
  kParse,
  kDuplicateId,
  kUnknownId,
  kInvalidAttribute,
  kDisconnectedTerminals,
  kNonPlanar,
  kTerminals,
};

class GraphError : public std::runtime_error {
 public:
  GraphError(GraphErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  GraphErrorKind kind() const { return kind_; }

 private:
  GraphErrorKind kind_;
};

/// Raised when the straight-line drawing is not planar. `first` and `second`
/// name the offending pair (two edge ids, or an edge id and a node id when a
/// node sits on an edge it is not incident to).
class PlanarityError : public GraphError {
 public:
  PlanarityError(std::string first, std::string second, const std::string& what)
      : GraphError(GraphErrorKind::kNonPlanar, what),
        first_(std::move(first)),
        second_(std::move(second)) {}
  const std::string& first() const { return first_; }
  const std::string& second() const { return second_; }

 private:
  std::string first_;
  std::string second_;
};

/// Undirected planar road network with a designated source and sink.
/// Immutable once constructed; every constructor validates and enumerates
/// the faces of the non-virtual subgraph.
class PlanarRoadGraph {
 public:
  PlanarRoadGraph(std::vector<NodeRecord> nodes, std::vector<EdgeRecord> edges,
                  NodeIndex source, NodeIndex sink);

  /// Several sources and sinks: validates the real graph, then joins the
  /// terminals through augment_terminals. Only the virtual terminals need to
  /// be connected.
  static PlanarRoadGraph with_virtual_terminals(std::vector<NodeRecord> nodes,
                                                std::vector<EdgeRecord> edges,
                                                const std::vector<NodeIndex>& sources,
                                                const std::vector<NodeIndex>& sinks);

  const std::vector<NodeRecord>& nodes() const { return nodes_; }
  const std::vector<EdgeRecord>& edges() const { return edges_; }
  const std::vector<FaceRecord>& faces() const { return faces_; }
  const NodeRecord& node(NodeIndex n) const { return nodes_[n]; }
  const EdgeRecord& edge(EdgeIndex e) const { return edges_[e]; }
  const FaceRecord& face(std::size_t f) const { return faces_[f]; }
  const std::vector<Incidence>& incident(NodeIndex n) const { return adjacency_[n]; }

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t face_count() const { return faces_.size(); }

  NodeIndex source() const { return source_; }
  NodeIndex sink() const { return sink_; }
  const std::vector<EdgeIndex>& virtual_edge_ids() const { return virtual_edges_; }

  std::optional<NodeIndex> find_node(std::string_view id) const;
  std::optional<EdgeIndex> find_edge(std::string_view id) const;
  /// Edge joining u and v. Parallel edges are rejected at load, so it is unique.
  std::optional<EdgeIndex> edge_between(NodeIndex u, NodeIndex v) const;

  Capacity total_real_capacity() const;
  /// Sum of real capacities plus one; stands in for "infinite".
  Capacity infinite_capacity() const { return total_real_capacity() + 1; }

  /// 64-bit FNV-1a digest over node ids, edge ids and endpoints; used to tie
  /// solution files to the graph they were sampled on.
  std::uint64_t fingerprint() const;

 private:
  friend PlanarRoadGraph augment_terminals(const PlanarRoadGraph&,
                                           const std::vector<NodeIndex>&,
                                           const std::vector<NodeIndex>&);
  struct NoValidate {};
  PlanarRoadGraph(NoValidate, std::vector<NodeRecord> nodes, std::vector<EdgeRecord> edges,
                  NodeIndex source, NodeIndex sink);

  void index_and_check_records();
  void check_terminals_connected() const;

  std::vector<NodeRecord> nodes_;
  std::vector<EdgeRecord> edges_;
  std::vector<FaceRecord> faces_;
  std::vector<std::vector<Incidence>> adjacency_;
  std::vector<EdgeIndex> virtual_edges_;
  std::unordered_map<std::string, NodeIndex> node_index_;
  std::unordered_map<std::string, EdgeIndex> edge_index_;
  NodeIndex source_;
  NodeIndex sink_;
};

/// Faces of the straight-line embedding over non-virtual edges, traced from
/// the rotation system obtained by sorting incident edges by angle. Bridges
/// appear twice in the walk of the face that surrounds them.
std::vector<FaceRecord> compute_faces(const std::vector<NodeRecord>& nodes,
                                      const std::vector<EdgeRecord>& edges);
std::vector<FaceRecord> compute_faces(const PlanarRoadGraph& graph);

/// Throws PlanarityError on the first crossing, overlap, parallel edge or
/// node-on-edge incidence among non-virtual edges.
void check_planar_embedding(const std::vector<NodeRecord>& nodes,
                            const std::vector<EdgeRecord>& edges);

/// Adds a virtual source joined to every node in `sources` and a virtual sink
/// joined from every node in `sinks`. Virtual edges have length 0 and the
/// infinite-capacity sentinel; the face list is carried over unchanged.
PlanarRoadGraph augment_terminals(const PlanarRoadGraph& graph,
                                  const std::vector<NodeIndex>& sources,
                                  const std::vector<NodeIndex>& sinks);

/// rows x cols lattice with spacing `edge_length`. Node ids run 1..rows*cols
/// row by row; source is node 1 and sink the opposite corner.
PlanarRoadGraph make_grid(int rows, int cols, double edge_length, Capacity capacity);

}  // namespace flowsample
