#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace fixtures {
namespace {

using flowsample::EdgeRecord;
using flowsample::NodeRecord;

struct Pt {
  double x, y;
};

double cross(Pt o, Pt a, Pt b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

// Proper crossing or touching of segments that share no endpoint.
bool segments_conflict(Pt a, Pt b, Pt c, Pt d) {
  const double d1 = cross(a, b, c), d2 = cross(a, b, d), d3 = cross(c, d, a), d4 = cross(c, d, b);
  return ((d1 > 0) != (d2 > 0) || d1 == 0 || d2 == 0) && ((d3 > 0) != (d4 > 0) || d3 == 0 || d4 == 0);
}

}  // namespace

flowsample::PlanarRoadGraph random_planar_graph(std::uint64_t seed, const RandomGraphOptions& opt) {
  std::mt19937_64 gen(seed);
  for (int attempt = 0;; ++attempt) {
    std::uniform_real_distribution<double> jitter(-30.0, 30.0);
    const int side = static_cast<int>(std::ceil(std::sqrt(opt.nodes)));
    std::vector<Pt> pts;
    for (int i = 0; i < opt.nodes; ++i) {
      pts.push_back({(i % side) * 100.0 + jitter(gen), (i / side) * 100.0 + jitter(gen)});
    }
    std::vector<std::pair<int, int>> cand;
    for (int i = 0; i < opt.nodes; ++i) {
      for (int j = i + 1; j < opt.nodes; ++j) cand.emplace_back(i, j);
    }
    auto len = [&](std::pair<int, int> e) {
      return std::hypot(pts[e.first].x - pts[e.second].x, pts[e.first].y - pts[e.second].y);
    };
    std::sort(cand.begin(), cand.end(), [&](auto a, auto b) { return len(a) < len(b); });
    std::vector<std::pair<int, int>> kept;
    for (auto e : cand) {
      bool ok = true;
      for (auto f : kept) {
        if (e.first == f.first || e.first == f.second || e.second == f.first || e.second == f.second) {
          // Shared endpoint: reject only collinear overlap.
          int shared = (e.first == f.first || e.first == f.second) ? e.first : e.second;
          int a = e.first == shared ? e.second : e.first;
          int b = f.first == shared ? f.second : f.first;
          Pt o = pts[shared];
          if (std::abs(cross(o, pts[a], pts[b])) < 1e-6 &&
              (pts[a].x - o.x) * (pts[b].x - o.x) + (pts[a].y - o.y) * (pts[b].y - o.y) > 0) {
            ok = false;
            break;
          }
          continue;
        }
        if (segments_conflict(pts[e.first], pts[e.second], pts[f.first], pts[f.second])) {
          ok = false;
          break;
        }
      }
      if (ok) kept.push_back(e);
    }
    std::shuffle(kept.begin(), kept.end(), gen);
    const auto drop = static_cast<std::size_t>(opt.drop_fraction * static_cast<double>(kept.size()));
    std::vector<std::pair<int, int>> edges(kept.begin() + static_cast<long>(drop), kept.end());

    std::vector<NodeRecord> nodes;
    for (int i = 0; i < opt.nodes; ++i) nodes.push_back({std::to_string(i), pts[i].x, pts[i].y, false});
    std::vector<EdgeRecord> recs;
    std::uniform_int_distribution<flowsample::Capacity> cap(1, opt.max_capacity);
    for (std::size_t k = 0; k < edges.size(); ++k) {
      recs.push_back({"e" + std::to_string(k), edges[k].first, edges[k].second,
                      std::round(len(edges[k])), cap(gen), false});
    }
    int s, t;
    if (opt.corner_terminals) {
      s = static_cast<int>(std::min_element(pts.begin(), pts.end(), [](Pt a, Pt b) { return a.x < b.x; }) - pts.begin());
      t = static_cast<int>(std::max_element(pts.begin(), pts.end(), [](Pt a, Pt b) { return a.x < b.x; }) - pts.begin());
    } else {
      std::uniform_int_distribution<int> pick(0, opt.nodes - 1);
      s = pick(gen);
      do t = pick(gen); while (t == s);
    }
    try {
      return flowsample::PlanarRoadGraph(nodes, recs, s, t);
    } catch (const flowsample::GraphError&) {
      if (attempt > 1000) throw;
    }
  }
}

flowsample::PlanarRoadGraph make_graph(const std::vector<std::pair<double, double>>& coords,
                                       const std::vector<std::pair<int, int>>& edges,
                                       const std::vector<double>& lengths,
                                       const std::vector<flowsample::Capacity>& caps, int s,
                                       int t) {
  std::vector<NodeRecord> nodes;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    nodes.push_back({std::to_string(i), coords[i].first, coords[i].second, false});
  }
  std::vector<EdgeRecord> recs;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    recs.push_back({"e" + std::to_string(k), edges[k].first, edges[k].second, lengths[k], caps[k], false});
  }
  return flowsample::PlanarRoadGraph(std::move(nodes), std::move(recs), s, t);
}

}  // namespace fixtures
