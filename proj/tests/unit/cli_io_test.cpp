#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "flowsample/cli.hpp"
#include "flowsample/graph_io.hpp"
#include "flowsample/solution_io.hpp"

using namespace flowsample;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kGrid = FLOWSAMPLE_EXAMPLE_DIR "/grid4x4.json";

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::random_device rd;
    dir_ = fs::temp_directory_path() / ("flowsample_cli_" + std::to_string(rd()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int run(const std::vector<std::string>& args) {
    out_.str("");
    err_.str("");
    return run_cli(args, out_, err_);
  }

  static std::string slurp(const std::string& p) { return read_text_file(p); }

  void write(const std::string& p, const std::string& text) const { std::ofstream(p) << text; }

  fs::path dir_;
  std::ostringstream out_, err_;
};

}  // namespace

TEST(SolutionIo, StateRoundTrip) {
  const PlanarRoadGraph g = load_graph_file(kGrid);
  const FlowState x = decompose(max_flow(g));
  const json j = state_to_json(x);
  EXPECT_EQ(j["paths"][0], json::parse("[1,2,3,4,8,12,16]"));
  EXPECT_DOUBLE_EQ(j["total_length"].get<double>(), 1200.0);
  EXPECT_TRUE(state_from_json(g, j).same_paths(x));
}

TEST(SolutionIo, SetRoundTripAndFingerprintCheck) {
  const PlanarRoadGraph g = load_graph_file(kGrid);
  SamplerConfig c;
  c.k = 6;
  c.num_iter = 3000;
  c.seed = 12;
  const SolutionSet set = sample_koptimal(g, c);
  const json j = solution_set_to_json(g, set, c);
  const SolutionSet back = solution_set_from_json(g, j);
  ASSERT_EQ(back.size(), set.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    EXPECT_TRUE(back.members[i].state.same_paths(set.members[i].state));
    EXPECT_EQ(back.members[i].iteration, set.members[i].iteration);
  }
  const SamplerConfig c2 = sampler_config_from_json(j["config"]);
  EXPECT_EQ(sampler_config_to_json(c2), j["config"]);

  const PlanarRoadGraph other = make_grid(4, 4, 90.0, 1);
  EXPECT_THROW(solution_set_from_json(other, j), SolutionFileError);
  json tampered = j;
  tampered["solutions"][0]["paths"][0] = json::parse("[1,2,6,16]");
  EXPECT_ANY_THROW(solution_set_from_json(g, tampered));
}

TEST(SolutionIo, ManifestRoundTrip) {
  RunManifest m;
  m.command = "sample";
  m.graph_path = "g.json";
  m.parameters = {{"lambda", 0.95}, {"k", 3}};
  m.outputs = {"a.json", "b.json"};
  m.seed = 99;
  EXPECT_EQ(manifest_from_json(json::parse(dump_json(manifest_to_json(m)))), m);
}

TEST_F(CliTest, GenGridThenMaxflow) {
  ASSERT_EQ(run({"gen-grid", "--rows", "4", "--cols", "4", "-o", path("g.json")}), kExitOk);
  EXPECT_EQ(load_graph_file(path("g.json")).fingerprint(), load_graph_file(kGrid).fingerprint());
  ASSERT_EQ(run({"maxflow", path("g.json"), "--strategy", "dijkstra"}), kExitOk);
  const json r = json::parse(out_.str());
  EXPECT_EQ(r["value"], 2);
  EXPECT_EQ(r["strategy"], "dijkstra");
}

TEST_F(CliTest, MissingGraphIsValidationErrorWithoutOutput) {
  EXPECT_EQ(run({"maxflow", path("nope.json"), "-o", path("r.json")}), kExitValidation);
  EXPECT_FALSE(fs::exists(path("r.json")));
  EXPECT_NE(err_.str().find("error"), std::string::npos);
  EXPECT_EQ(run({"sample", path("nope.json"), "-o", path("s.json")}), kExitValidation);
  EXPECT_FALSE(fs::exists(path("s.json")));
}

TEST_F(CliTest, BadFlagsAreValidationErrors) {
  EXPECT_EQ(run({"sample", kGrid, "--num-iter", "10", "--target-solutions", "3"}), kExitValidation);
  EXPECT_EQ(run({"sample", kGrid, "--lambda", "0"}), kExitValidation);
  EXPECT_EQ(run({"sample", kGrid, "--sf", "0"}), kExitValidation);
  EXPECT_EQ(run({"maxflow", kGrid, "--strategy", "dfs"}), kExitValidation);
  EXPECT_EQ(run({"frobnicate"}), kExitValidation);
  EXPECT_EQ(run({"--help"}), kExitOk);
}

TEST_F(CliTest, SameSeedGivesIdenticalFiles) {
  const std::vector<std::string> base{"sample", kGrid, "--k", "5", "--num-iter", "5000", "--seed", "1"};
  auto a = base, b = base;
  a.insert(a.end(), {"-o", path("a.json")});
  b.insert(b.end(), {"-o", path("b.json")});
  ASSERT_EQ(run(a), kExitOk);
  ASSERT_EQ(run(b), kExitOk);
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
  EXPECT_FALSE(fs::exists(path("a.json.tmp")));
}

TEST_F(CliTest, SampleWritesManifest) {
  ASSERT_EQ(run({"sample", kGrid, "--num-iter", "2000", "--seed", "4", "-o", path("s.json"),
                 "--manifest", path("m.json")}),
            kExitOk);
  const RunManifest m = manifest_from_json(json::parse(slurp(path("m.json"))));
  EXPECT_EQ(m.command, "sample");
  EXPECT_EQ(m.seed, 4u);
  EXPECT_EQ(m.outputs, std::vector<std::string>{path("s.json")});
  EXPECT_EQ(m.tool_version, kToolVersion);
  EXPECT_EQ(m.parameters["num_iter"], 2000);
}

TEST_F(CliTest, TargetBudgetExhaustedStillWritesAndReturnsThree) {
  EXPECT_EQ(run({"sample", kGrid, "--k", "0", "--target-solutions", "40", "--max-total-iter",
                 "1000", "-o", path("s.json")}),
            kExitRefused);
  ASSERT_TRUE(fs::exists(path("s.json")));
  EXPECT_EQ(json::parse(slurp(path("s.json")))["metadata"]["target_reached"], false);
  EXPECT_NE(err_.str().find("warning"), std::string::npos);
}

TEST_F(CliTest, MultipleRunsUseConsecutiveSeeds) {
  ASSERT_EQ(run({"sample", kGrid, "--num-iter", "3000", "--seed", "10", "--runs", "3", "--jobs",
                 "2", "-o", path("r")}),
            kExitOk);
  for (int i = 0; i < 3; ++i) {
    EXPECT_TRUE(fs::exists(path("r.run" + std::to_string(i) + ".json")));
  }
  const json summary = json::parse(slurp(path("r.summary.json")));
  EXPECT_EQ(summary["runs"].size(), 3u);
  EXPECT_EQ(summary["runs"][2]["seed"], 12);
  ASSERT_EQ(run({"sample", kGrid, "--num-iter", "3000", "--seed", "11", "-o", path("one.json")}),
            kExitOk);
  EXPECT_EQ(slurp(path("one.json")), slurp(path("r.run1.json")));
  EXPECT_EQ(run({"sample", kGrid, "--runs", "2"}), kExitValidation);
}

TEST_F(CliTest, MetricsOutputs) {
  ASSERT_EQ(run({"sample", kGrid, "--num-iter", "3000", "--k", "4", "-o", path("s.json")}), kExitOk);
  ASSERT_EQ(run({"metrics", kGrid, path("s.json"), "--table", path("t.tsv"), "--geojson",
                 path("h.geojson")}),
            kExitOk);
  const json r = json::parse(out_.str());
  EXPECT_GT(r["normalized_mean"].get<double>(), 0.0);
  EXPECT_EQ(json::parse(slurp(path("h.geojson")))["features"].size(), 24u);
  EXPECT_EQ(slurp(path("t.tsv")).rfind("edge\tload\n", 0), 0u);
}

TEST_F(CliTest, MetricsRejectsForeignOrBrokenSolutionFiles) {
  ASSERT_EQ(run({"sample", kGrid, "--num-iter", "500", "-o", path("s.json")}), kExitOk);
  ASSERT_EQ(run({"gen-grid", "--rows", "4", "--cols", "4", "--edge-length", "90", "-o",
                 path("g90.json")}),
            kExitOk);
  EXPECT_EQ(run({"metrics", path("g90.json"), path("s.json")}), kExitValidation);
  EXPECT_NE(err_.str().find("fingerprint"), std::string::npos);

  json empty = json::parse(slurp(path("s.json")));
  empty["solutions"] = json::array();
  write(path("empty.json"), empty.dump());
  EXPECT_EQ(run({"metrics", kGrid, path("empty.json"), "-o", path("out.json")}), kExitValidation);
  EXPECT_FALSE(fs::exists(path("out.json")));

  write(path("junk.json"), "{\"solutions\": [");
  EXPECT_EQ(run({"metrics", kGrid, path("junk.json")}), kExitValidation);
}

TEST_F(CliTest, ValidateSingleEdge) {
  write(path("edge.json"), R"({"nodes":[{"id":"s","x":0,"y":0},{"id":"t","x":10,"y":0}],
      "edges":[{"id":"st","u":"s","v":"t","length":10,"capacity":2}],
      "sources":["s"],"sinks":["t"]})");
  ASSERT_EQ(run({"validate", path("edge.json"), "--steps", "1000", "-o", path("v.json")}), kExitOk);
  const json r = json::parse(slurp(path("v.json")));
  EXPECT_EQ(r["states"], 1);
  EXPECT_EQ(r["connected"], true);
  EXPECT_EQ(r["tv_trajectory"].back()["tv"], 0.0);
}

TEST_F(CliTest, ValidateGridReportsWitness) {
  ASSERT_EQ(run({"validate", kGrid, "--steps", "20000"}), kExitOk);
  const json r = json::parse(out_.str());
  EXPECT_EQ(r["states"], 100);
  EXPECT_EQ(r["connected"], false);
  EXPECT_TRUE(r.contains("witness"));
  EXPECT_LE(r["detailed_balance_residual"].get<double>(), 1e-12);
}

TEST_F(CliTest, ValidateRefusesAboveCap) {
  EXPECT_EQ(run({"validate", kGrid, "--cap", "10", "-o", path("v.json")}), kExitRefused);
  EXPECT_FALSE(fs::exists(path("v.json")));
  EXPECT_NE(err_.str().find("refusing"), std::string::npos);
}
