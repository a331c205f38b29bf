#include <algorithm>
#include <cmath>

#include "flowsample/graph.hpp"

namespace flowsample {
namespace {

struct Point {
  double x;
  double y;
};

double orient(Point a, Point b, Point c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

// c is collinear with ab; true when c lies within ab's bounding box.
bool within_box(Point a, Point b, Point c) {
  return std::min(a.x, b.x) <= c.x && c.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= c.y &&
         c.y <= std::max(a.y, b.y);
}

bool segments_touch(Point a, Point b, Point c, Point d) {
  const double o1 = orient(a, b, c);
  const double o2 = orient(a, b, d);
  const double o3 = orient(c, d, a);
  const double o4 = orient(c, d, b);
  if (((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0))) {
    return true;
  }
  return (o1 == 0 && within_box(a, b, c)) || (o2 == 0 && within_box(a, b, d)) ||
         (o3 == 0 && within_box(c, d, a)) || (o4 == 0 && within_box(c, d, b));
}

// Uniform bucket grid over the drawing; an item is listed in every cell its
// bounding box overlaps.
class BucketGrid {
 public:
  BucketGrid(double min_x, double min_y, double max_x, double max_y, std::size_t items) {
    const double span = std::max({max_x - min_x, max_y - min_y, 1e-9});
    dim_ = std::clamp<long>(static_cast<long>(std::sqrt(static_cast<double>(items))), 1, 2048);
    min_x_ = min_x;
    min_y_ = min_y;
    cell_ = span / static_cast<double>(dim_) * (1.0 + 1e-9);
    cells_.resize(static_cast<std::size_t>(dim_ * dim_));
  }

  struct Range {
    long x0, y0, x1, y1;
  };

  Range range(double ax, double ay, double bx, double by) const {
    return {coord(std::min(ax, bx) - min_x_), coord(std::min(ay, by) - min_y_),
            coord(std::max(ax, bx) - min_x_), coord(std::max(ay, by) - min_y_)};
  }

  void insert(const Range& r, int item) {
    for (long y = r.y0; y <= r.y1; ++y) {
      for (long x = r.x0; x <= r.x1; ++x) cells_[static_cast<std::size_t>(y * dim_ + x)].push_back(item);
    }
  }

  const std::vector<int>& cell(long x, long y) const {
    return cells_[static_cast<std::size_t>(y * dim_ + x)];
  }

 private:
  long coord(double v) const { return std::clamp<long>(static_cast<long>(v / cell_), 0, dim_ - 1); }

  long dim_ = 1;
  double min_x_ = 0.0;
  double min_y_ = 0.0;
  double cell_ = 1.0;
  std::vector<std::vector<int>> cells_;
};

}  // namespace

void check_planar_embedding(const std::vector<NodeRecord>& nodes,
                            const std::vector<EdgeRecord>& edges) {
  std::vector<int> real;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (!edges[e].is_virtual) real.push_back(static_cast<int>(e));
  }
  if (real.empty()) return;

  double min_x = INFINITY, min_y = INFINITY, max_x = -INFINITY, max_y = -INFINITY;
  for (const NodeRecord& n : nodes) {
    if (n.is_virtual) continue;
    min_x = std::min(min_x, n.x);
    min_y = std::min(min_y, n.y);
    max_x = std::max(max_x, n.x);
    max_y = std::max(max_y, n.y);
  }
  auto pt = [&nodes](NodeIndex n) { return Point{nodes[n].x, nodes[n].y}; };

  BucketGrid grid(min_x, min_y, max_x, max_y, real.size() + nodes.size());
  std::vector<BucketGrid::Range> ranges(edges.size());
  for (int e : real) {
    const Point a = pt(edges[e].u), b = pt(edges[e].v);
    if (a.x == b.x && a.y == b.y) {
      throw PlanarityError(edges[e].id, edges[e].id,
                           "edge '" + edges[e].id + "' joins two nodes at the same position");
    }
    ranges[e] = grid.range(a.x, a.y, b.x, b.y);
    grid.insert(ranges[e], e);
  }

  for (int e : real) {
    const EdgeRecord& ea = edges[e];
    const BucketGrid::Range& ra = ranges[e];
    for (long y = ra.y0; y <= ra.y1; ++y) {
      for (long x = ra.x0; x <= ra.x1; ++x) {
        for (int f : grid.cell(x, y)) {
          if (f <= e) continue;
          // Visit each pair once: in the lowest cell shared by both ranges.
          const BucketGrid::Range& rb = ranges[f];
          if (x != std::max(ra.x0, rb.x0) || y != std::max(ra.y0, rb.y0)) continue;
          const EdgeRecord& eb = edges[f];
          const bool same_uv = ea.u == eb.u && ea.v == eb.v;
          const bool same_vu = ea.u == eb.v && ea.v == eb.u;
          if (same_uv || same_vu) {
            throw PlanarityError(ea.id, eb.id,
                                 "parallel edges '" + ea.id + "' and '" + eb.id + "'");
          }
          NodeIndex shared = -1;
          if (ea.u == eb.u || ea.u == eb.v) shared = ea.u;
          if (ea.v == eb.u || ea.v == eb.v) shared = ea.v;
          if (shared >= 0) {
            // Edges meeting at a node only conflict when they overlap.
            const Point o = pt(shared);
            const Point p = pt(ea.other(shared));
            const Point q = pt(eb.other(shared));
            const bool collinear = orient(o, p, q) == 0;
            const bool same_side = (p.x - o.x) * (q.x - o.x) + (p.y - o.y) * (q.y - o.y) > 0;
            if (collinear && same_side) {
              throw PlanarityError(ea.id, eb.id,
                                   "edges '" + ea.id + "' and '" + eb.id + "' overlap");
            }
            continue;
          }
          if (segments_touch(pt(ea.u), pt(ea.v), pt(eb.u), pt(eb.v))) {
            throw PlanarityError(ea.id, eb.id,
                                 "edges '" + ea.id + "' and '" + eb.id + "' cross");
          }
        }
      }
    }
  }

  // Nodes without incident edges can still sit on an edge.
  std::vector<char> has_edge(nodes.size(), 0);
  for (int e : real) {
    has_edge[edges[e].u] = 1;
    has_edge[edges[e].v] = 1;
  }
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    if (has_edge[n] || nodes[n].is_virtual) continue;
    const Point c = pt(static_cast<NodeIndex>(n));
    const BucketGrid::Range r = grid.range(c.x, c.y, c.x, c.y);
    for (int e : grid.cell(r.x0, r.y0)) {
      const Point a = pt(edges[e].u), b = pt(edges[e].v);
      if (orient(a, b, c) == 0 && within_box(a, b, c)) {
        throw PlanarityError(edges[e].id, nodes[n].id,
                             "node '" + nodes[n].id + "' lies on edge '" + edges[e].id + "'");
      }
    }
  }
}

}  // namespace flowsample
