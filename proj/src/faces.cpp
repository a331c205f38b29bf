#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "flowsample/graph.hpp"

namespace flowsample {
namespace {

// Half-edge h = 2e + d runs u->v when d == 0 and v->u when d == 1.
struct HalfEdges {
  const std::vector<EdgeRecord>& edges;
  NodeIndex tail(int h) const { return (h & 1) ? edges[h >> 1].v : edges[h >> 1].u; }
  NodeIndex head(int h) const { return (h & 1) ? edges[h >> 1].u : edges[h >> 1].v; }
};

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

std::vector<FaceRecord> compute_faces(const std::vector<NodeRecord>& nodes,
                                      const std::vector<EdgeRecord>& edges) {
  const HalfEdges he{edges};
  const std::size_t half_count = 2 * edges.size();

  // Outgoing real half-edges per node, sorted counter-clockwise by angle.
  std::vector<std::vector<int>> rotation(nodes.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (edges[e].is_virtual) continue;
    rotation[edges[e].u].push_back(static_cast<int>(2 * e));
    rotation[edges[e].v].push_back(static_cast<int>(2 * e + 1));
  }
  std::vector<int> slot(half_count, -1);
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    auto angle = [&](int h) {
      const NodeRecord& a = nodes[he.tail(h)];
      const NodeRecord& b = nodes[he.head(h)];
      return std::atan2(b.y - a.y, b.x - a.x);
    };
    std::sort(rotation[n].begin(), rotation[n].end(),
              [&](int a, int b) { return angle(a) < angle(b); });
    for (std::size_t i = 0; i < rotation[n].size(); ++i) slot[rotation[n][i]] = static_cast<int>(i);
  }

  // The successor of a->b is b->c, where b->c precedes b->a in the
  // counter-clockwise rotation at b. This keeps the face on the left.
  auto next = [&](int h) {
    const int twin = h ^ 1;
    const auto& rot = rotation[he.tail(twin)];
    const int i = slot[twin];
    return rot[(i + rot.size() - 1) % rot.size()];
  };

  std::vector<FaceRecord> faces;
  std::vector<double> area;
  std::vector<char> used(half_count, 0);
  for (std::size_t start = 0; start < half_count; ++start) {
    if (used[start] || edges[start >> 1].is_virtual) continue;
    FaceRecord face;
    face.id = static_cast<int>(faces.size());
    double twice_area = 0.0;
    int h = static_cast<int>(start);
    do {
      used[h] = 1;
      face.boundary.push_back(h >> 1);
      face.walk.push_back(he.tail(h));
      const NodeRecord& a = nodes[he.tail(h)];
      const NodeRecord& b = nodes[he.head(h)];
      twice_area += a.x * b.y - b.x * a.y;
      h = next(h);
    } while (h != static_cast<int>(start));
    faces.push_back(std::move(face));
    area.push_back(0.5 * twice_area);
  }

  // The outer face of each component is the one walked clockwise, i.e. the
  // one with the most negative signed area.
  DisjointSets components(nodes.size());
  for (const EdgeRecord& e : edges) {
    if (!e.is_virtual) components.unite(e.u, e.v);
  }
  std::vector<long> outer_of(nodes.size(), -1);
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const std::size_t root = components.find(faces[f].walk.front());
    const long cur = outer_of[root];
    if (cur < 0 || area[f] < area[static_cast<std::size_t>(cur)]) outer_of[root] = static_cast<long>(f);
  }
  for (long f : outer_of) {
    if (f >= 0) faces[static_cast<std::size_t>(f)].outer = true;
  }
  return faces;
}

std::vector<FaceRecord> compute_faces(const PlanarRoadGraph& graph) {
  return compute_faces(graph.nodes(), graph.edges());
}

}  // namespace flowsample
