#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "brute.hpp"
#include "fixtures.hpp"
#include "flowsample/chain.hpp"
#include "flowsample/graph_io.hpp"
#include "flowsample/maxflow.hpp"
#include "flowsample/oracle.hpp"

using namespace flowsample;

namespace {

PlanarRoadGraph grid() { return load_graph(read_text_file(FLOWSAMPLE_EXAMPLE_DIR "/grid4x4.json")); }

UnitPath path_of(const PlanarRoadGraph& g, std::initializer_list<const char*> ids) {
  std::vector<NodeIndex> nodes;
  for (const char* id : ids) nodes.push_back(*g.find_node(id));
  return make_path(g, nodes);
}

const FaceRecord& face_with(const PlanarRoadGraph& g, std::set<std::string> node_ids) {
  for (const FaceRecord& f : g.faces()) {
    std::set<std::string> ids;
    for (NodeIndex n : f.walk) ids.insert(g.node(n).id);
    if (ids == node_ids) return f;
  }
  throw std::logic_error("no such face");
}

const FaceRecord& outer_face(const PlanarRoadGraph& g) {
  for (const FaceRecord& f : g.faces()) {
    if (f.outer) return f;
  }
  throw std::logic_error("no outer face");
}

// Number of maximal runs of consecutive path edges that lie on the face.
int shared_segments(const UnitPath& p, const FaceRecord& f) {
  std::set<EdgeIndex> on_face(f.boundary.begin(), f.boundary.end());
  int runs = 0;
  bool inside = false;
  for (EdgeIndex e : p.edges) {
    const bool shared = on_face.count(e) > 0;
    if (shared && !inside) ++runs;
    inside = shared;
  }
  return runs;
}

}  // namespace

TEST(AcceptanceLogRatio, Values) {
  EXPECT_EQ(acceptance_log_ratio(700.0, 700.0, 0.95), 0.0);
  EXPECT_EQ(acceptance_log_ratio(700.0, 500.0, 0.95), 0.0);
  EXPECT_EQ(acceptance_log_ratio(500.0, 900.0, 1.0), 0.0);
  const double r = acceptance_log_ratio(600.0, 700.0, 0.95);
  EXPECT_NEAR(r, -5.129329438755, 1e-9);
  // Exact rational check on a small difference: 0.95^3 = 857375/1000000.
  EXPECT_NEAR(std::exp(acceptance_log_ratio(0.0, 3.0, 0.95)), 857375.0 / 1000000.0, 1e-15);
  // Above one, longer states are favoured and shorter ones get the penalty.
  EXPECT_EQ(acceptance_log_ratio(500.0, 600.0, 1.05), 0.0);
  EXPECT_NEAR(acceptance_log_ratio(600.0, 500.0, 1.05), 100.0 * std::log(1.0 / 1.05), 1e-12);
}

TEST(ChainParams, Validation) {
  EXPECT_THROW((ChainParams{0.0, 1}.validate()), std::invalid_argument);
  EXPECT_THROW((ChainParams{-1.0, 1}.validate()), std::invalid_argument);
  EXPECT_THROW((ChainParams{INFINITY, 1}.validate()), std::invalid_argument);
  EXPECT_THROW((ChainParams{NAN, 1}.validate()), std::invalid_argument);
  EXPECT_NO_THROW((ChainParams{0.99, 1}.validate()));
}

TEST(Reroute, BottomOfSquareGoesRoundTheOtherThreeEdges) {
  const PlanarRoadGraph g = grid();
  const UnitPath p = path_of(g, {"1", "2", "3", "4", "8", "12", "16"});
  const FlowState x(g, {p, path_of(g, {"1", "5", "9", "13", "14", "15", "16"})});
  const auto y = reroute(p, face_with(g, {"2", "3", "6", "7"}), x);
  ASSERT_TRUE(y.has_value());
  EXPECT_EQ(*y, path_of(g, {"1", "2", "6", "7", "3", "4", "8", "12", "16"}));
  EXPECT_DOUBLE_EQ(y->length, 800.0);
}

TEST(Reroute, OuterFaceSwapsToTheOppositeSide) {
  const PlanarRoadGraph g = grid();
  const UnitPath p = path_of(g, {"1", "2", "3", "4", "8", "12", "16"});
  const FlowState x(g, {p});
  const auto y = reroute(p, outer_face(g), x);
  ASSERT_TRUE(y.has_value());
  EXPECT_EQ(*y, path_of(g, {"1", "5", "9", "13", "14", "15", "16"}));
}

TEST(Reroute, NoSharedEdgeIsUndefined) {
  const PlanarRoadGraph g = grid();
  const UnitPath p = path_of(g, {"1", "2", "3", "4", "8", "12", "16"});
  const FlowState x(g, {p});
  EXPECT_FALSE(reroute(p, face_with(g, {"9", "10", "13", "14"}), x).has_value());
  Rerouter r(g);
  UnitPath out;
  EXPECT_EQ(r.reroute(p, face_with(g, {"9", "10", "13", "14"}), out), RerouteStatus::kNoSharedEdge);
}

TEST(Reroute, TwoSharedSegmentsFoundByBruteForceAreUndefined) {
  const PlanarRoadGraph g = make_grid(5, 5, 100.0, 1);
  // Search simple paths of up to 12 edges for one meeting a face twice.
  std::vector<NodeIndex> nodes{g.source()};
  std::vector<char> on(g.node_count(), 0);
  on[g.source()] = 1;
  int found = 0;
  Rerouter r(g);
  UnitPath out;
  auto dfs = [&](auto&& self, NodeIndex at) -> void {
    if (found >= 25) return;
    if (at == g.sink()) {
      const UnitPath p = make_path(g, nodes);
      for (const FaceRecord& f : g.faces()) {
        if (shared_segments(p, f) >= 2) {
          EXPECT_EQ(r.reroute(p, f, out), RerouteStatus::kUndefined);
          ++found;
        }
      }
      return;
    }
    if (nodes.size() > 12) return;
    for (const Incidence& inc : g.incident(at)) {
      if (on[inc.neighbor]) continue;
      on[inc.neighbor] = 1;
      nodes.push_back(inc.neighbor);
      self(self, inc.neighbor);
      nodes.pop_back();
      on[inc.neighbor] = 0;
    }
  };
  dfs(dfs, g.source());
  EXPECT_GT(found, 0);
}

TEST(Reroute, NonSimpleResultIsUndefined) {
  const PlanarRoadGraph g = grid();
  // Shares only 6-7 with square 6-7-10-11; going round via 10 and 11 meets
  // the path again at 11.
  const UnitPath p = path_of(g, {"1", "5", "6", "7", "3", "4", "8", "12", "11", "15", "16"});
  const FlowState x(g, {p});
  Rerouter r(g);
  UnitPath out;
  EXPECT_EQ(r.reroute(p, face_with(g, {"6", "7", "10", "11"}), out), RerouteStatus::kUndefined);
}

TEST(Reroute, MovesAreExactlyReversibleOnEnumeratedStates) {
  std::vector<PlanarRoadGraph> graphs;
  graphs.push_back(grid());
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    graphs.push_back(fixtures::random_planar_graph(seed, {8, 0.25, 2, true}));
  }
  Rerouter r(graphs.front());
  for (const PlanarRoadGraph& g : graphs) {
    Rerouter rr(g);
    const StateSpace space = enumerate_states(g);
    std::size_t moves = 0;
    for (const FlowState& x : space.states) {
      for (std::size_t i = 0; i < x.path_count(); ++i) {
        for (const FaceRecord& f : g.faces()) {
          UnitPath y;
          if (rr.reroute(x.path(i), f, y) != RerouteStatus::kOk) continue;
          if (!reroute_fits(x, x.path(i), y)) continue;
          FlowState next = x;
          next.replace_path(i, y);
          UnitPath back;
          ASSERT_EQ(rr.reroute(y, f, back), RerouteStatus::kOk);
          EXPECT_EQ(back, x.path(i));
          EXPECT_TRUE(reroute_fits(next, y, back));
          ++moves;
        }
      }
    }
    EXPECT_GT(moves, 0u);
  }
}

TEST(Step, SaturatedStateNeverMoves) {
  // Square with s and t at opposite corners: both unit paths use every edge.
  const PlanarRoadGraph g = fixtures::make_graph({{0, 0}, {10, 0}, {10, 10}, {0, 10}},
                                                 {{0, 1}, {1, 2}, {2, 3}, {3, 0}},
                                                 {10, 10, 10, 10}, {1, 1, 1, 1}, 0, 2);
  const FlowState x = decompose(max_flow(g));
  ASSERT_EQ(x.path_count(), 2u);
  // Brute force: no (face, path) pair gives a legal move.
  Rerouter r(g);
  for (std::size_t i = 0; i < x.path_count(); ++i) {
    for (const FaceRecord& f : g.faces()) {
      UnitPath y;
      if (r.reroute(x.path(i), f, y) == RerouteStatus::kOk) {
        EXPECT_FALSE(reroute_fits(x, x.path(i), y));
      }
    }
  }
  MarkovChain chain(g, ChainParams{0.9, 5});
  FlowState s = x;
  for (int k = 0; k < 10000; ++k) {
    EXPECT_NE(chain.advance(s), StepOutcome::kAccepted);
  }
  EXPECT_TRUE(s.same_paths(x));
}

TEST(Step, LambdaOneAcceptsEveryLegalProposal) {
  const PlanarRoadGraph g = grid();
  FlowState x = decompose(max_flow(g));
  MarkovChain chain(g, ChainParams{1.0, 11});
  int accepted = 0;
  for (int k = 0; k < 20000; ++k) {
    const StepOutcome o = chain.advance(x);
    EXPECT_NE(o, StepOutcome::kRejected);
    accepted += o == StepOutcome::kAccepted;
  }
  EXPECT_GT(accepted, 0);
}

TEST(Step, PreservesFlowValueSimplicityAndCapacity) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const PlanarRoadGraph g = fixtures::random_planar_graph(seed, {14, 0.2, 2, false});
    FlowState x = decompose(max_flow(g));
    const std::size_t mf = x.path_count();
    MarkovChain chain(g, ChainParams{0.97, seed});
    for (int k = 0; k < 20000; ++k) {
      chain.advance(x);
      if (k % 50 == 0) {
        ASSERT_EQ(brute::violation(x, mf), std::nullopt) << "seed " << seed << " step " << k;
      }
      ASSERT_EQ(x.find_violation(mf), std::nullopt);
    }
  }
}

TEST(Step, SelfLoopFrequencyAtLeastHalf) {
  const PlanarRoadGraph g = grid();
  FlowState x = decompose(max_flow(g));
  MarkovChain chain(g, ChainParams{0.95, 3});
  const int n = 100000;
  int loops = 0;
  for (int k = 0; k < n; ++k) loops += chain.advance(x) != StepOutcome::kAccepted;
  const double sigma = std::sqrt(0.25 / n);
  EXPECT_GE(static_cast<double>(loops) / n, 0.5 - 3 * sigma);
}

TEST(Step, DeterministicUnderSeedAndValueFormAgrees) {
  const PlanarRoadGraph g = grid();
  const FlowState start = decompose(max_flow(g));
  FlowState a = start, b = start;
  MarkovChain ca(g, ChainParams{0.9, 42});
  MarkovChain cb(g, ChainParams{0.9, 42});
  Rng rng(42);
  FlowState c = start;
  for (int k = 0; k < 5000; ++k) {
    ca.advance(a);
    cb.advance(b);
    c = step(c, ChainParams{0.9, 42}, rng);
    ASSERT_TRUE(a.same_paths(b));
    ASSERT_TRUE(a.same_paths(c));
  }
}

TEST(MultiplicityCorrection, DuplicatePaths) {
  // Capacity-2 square: s=0, t=2. Two copies of 0-1-2 form a valid state.
  const PlanarRoadGraph g = fixtures::make_graph({{0, 0}, {10, 0}, {10, 10}, {0, 10}},
                                                 {{0, 1}, {1, 2}, {2, 3}, {3, 0}},
                                                 {10, 10, 10, 10}, {2, 2, 2, 2}, 0, 2);
  const UnitPath low = make_path(g, {0, 1, 2});
  const UnitPath high = make_path(g, {0, 3, 2});
  const FlowState twin(g, {low, low});
  const FlowState mixed(g, {low, high});
  EXPECT_NEAR(multiplicity_log_correction(twin, 0, high), std::log(0.5), 1e-15);
  EXPECT_NEAR(multiplicity_log_correction(mixed, 1, low), std::log(2.0), 1e-15);
  EXPECT_EQ(multiplicity_log_correction(mixed, 0, high), std::log(2.0));
  const FlowState distinct(g, {low});
  EXPECT_EQ(multiplicity_log_correction(distinct, 0, high), 0.0);
}
