#include <gtest/gtest.h>

#include <algorithm>

#include "forman/dynamics.hpp"
#include "forman/error.hpp"
#include "test_support.hpp"

namespace forman {
namespace {

WeightedNetwork labelled(std::vector<std::pair<std::string, std::string>> pairs,
                         std::vector<double> weights = {}, bool directed = false) {
  std::vector<std::string> labels;
  std::vector<Edge> edges;
  auto id = [&](const std::string& s) {
    auto it = std::find(labels.begin(), labels.end(), s);
    if (it != labels.end()) return static_cast<NodeId>(it - labels.begin());
    labels.push_back(s);
    return static_cast<NodeId>(labels.size() - 1);
  };
  for (const auto& [u, v] : pairs) {
    const NodeId a = id(u);
    const NodeId b = id(v);
    edges.push_back({a, b});
  }
  if (weights.empty()) weights.assign(edges.size(), 1.0);
  const std::size_t n = labels.size();
  return WeightedNetwork(n, std::move(edges), directed, std::vector<double>(n, 1.0),
                         std::move(weights), std::move(labels));
}

TEST(AlignEdgesTest, IdenticalGraphs) {
  const auto g = testing::karate();
  const auto pair = align_edges(g, g);
  EXPECT_EQ(pair.shared.size(), g.edge_count());
  EXPECT_TRUE(pair.added.empty());
  EXPECT_TRUE(pair.removed.empty());
}

TEST(AlignEdgesTest, MatchesThroughLabelsNotIndices) {
  const auto a = labelled({{"x", "y"}, {"y", "z"}});
  const auto b = labelled({{"z", "y"}, {"y", "x"}, {"x", "w"}});
  const auto pair = align_edges(a, b);
  ASSERT_EQ(pair.shared.size(), 2u);
  EXPECT_EQ(pair.shared[0], (std::pair<EdgeId, EdgeId>{0, 1}));
  EXPECT_EQ(pair.shared[1], (std::pair<EdgeId, EdgeId>{1, 0}));
  EXPECT_EQ(pair.added, std::vector<EdgeId>{2});
  EXPECT_TRUE(pair.removed.empty());
}

TEST(AlignEdgesTest, DirectedKeysAreOrdered) {
  const auto a = labelled({{"x", "y"}}, {}, true);
  const auto b = labelled({{"y", "x"}}, {}, true);
  const auto pair = align_edges(a, b);
  EXPECT_TRUE(pair.shared.empty());
  EXPECT_EQ(pair.removed.size(), 1u);
  EXPECT_EQ(pair.added.size(), 1u);
}

TEST(AlignEdgesTest, DisjointEdgeSets) {
  const auto pair = align_edges(labelled({{"a", "b"}}), labelled({{"c", "d"}}));
  EXPECT_TRUE(pair.shared.empty());
}

TEST(AlignEdgesTest, LabelCollision) {
  const auto bad = WeightedNetwork(2, {{0, 1}}, false, {1.0, 1.0}, {1.0}, {"same", "same"});
  try {
    align_edges(bad, bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLabelCollision);
  }
}

TEST(AlignEdgesTest, DirectednessMustAgree) {
  EXPECT_THROW(align_edges(labelled({{"a", "b"}}), labelled({{"a", "b"}}, {}, true)), Error);
}

TEST(DetectChangesTest, IdenticalSnapshotsFlagNothing) {
  std::mt19937_64 rng(3);
  const auto g = testing::randomly_weighted(testing::karate(), rng, 0.3, 1.0);
  const auto report = detect_changes(align_edges(g, g), {0.01, 10, 1e-12});
  EXPECT_TRUE(report.flagged.empty());
  for (const auto& c : report.shared) EXPECT_EQ(c.deviation, 0.0);
}

TEST(DetectChangesTest, ZeroStepsIsPlainWeightDifference) {
  const auto a = labelled({{"a", "b"}, {"b", "c"}, {"c", "d"}}, {1.0, 0.5, 0.25});
  const auto b = labelled({{"a", "b"}, {"b", "c"}, {"c", "d"}}, {2.0, 0.5, 1.0});
  ChangeParams params;
  params.steps = 0;
  const auto report = detect_changes(align_edges(a, b), params);
  // Normalised: a = (1, .5, .25), b = (1, .25, .5).
  EXPECT_EQ(report.shared[0].deviation, 0.0);
  EXPECT_EQ(report.shared[1].deviation, 0.25);
  EXPECT_EQ(report.shared[2].deviation, 0.25);
  EXPECT_EQ(report.flagged, (std::vector<std::size_t>{1, 2}));
}

TEST(DetectChangesTest, PerturbedEdgeStaysFlaggedAfterFlow) {
  std::mt19937_64 rng(19);
  const auto a = testing::randomly_weighted(testing::karate(), rng, 0.4, 0.6)
                     .with_node_weights(std::vector<double>(34, 1.0));
  std::vector<double> weights(a.edge_weights().begin(), a.edge_weights().end());
  weights[0] += 0.4;
  std::vector<double> a_weights(a.edge_weights().begin(), a.edge_weights().end());
  a_weights[1] = 1.0;  // shared maximum keeps both normalisations equal
  weights[1] = 1.0;
  const auto ga = a.with_edge_weights(a_weights);
  const auto gb = a.with_edge_weights(weights);
  const auto pair = align_edges(ga, gb);

  ChangeParams params;
  params.dt = 0.01;
  params.steps = 0;
  const auto plain = detect_changes(pair, params);
  ASSERT_EQ(plain.flagged, std::vector<std::size_t>{0});
  params.steps = 10;
  const auto flowed = detect_changes(pair, params);
  EXPECT_NE(std::find(flowed.flagged.begin(), flowed.flagged.end(), 0u), flowed.flagged.end());
}

TEST(DetectChangesTest, AddedAndRemovedReportedSeparately) {
  const auto a = labelled({{"a", "b"}, {"b", "c"}});
  const auto b = labelled({{"a", "b"}, {"c", "d"}});
  const auto report = detect_changes(align_edges(a, b), {0.01, 2, 0.1});
  EXPECT_EQ(report.shared.size(), 1u);
  EXPECT_EQ(report.removed.size(), 1u);
  EXPECT_EQ(report.added.size(), 1u);
}

TEST(DetectChangesTest, InvalidParameters) {
  const auto g = testing::karate();
  const auto pair = align_edges(g, g);
  EXPECT_THROW(detect_changes(pair, {0.0, 3, 0.1}), Error);
  EXPECT_THROW(detect_changes(pair, {0.1, 3, -1.0}), Error);
}

TEST(FlagEdgesTest, ThresholdIsStrict) {
  std::vector<EdgeChange> shared(3);
  shared[0].deviation = 0.1;
  shared[1].deviation = 0.2;
  shared[2].deviation = 0.05;
  EXPECT_EQ(flag_edges(shared, 0.1), std::vector<std::size_t>{1});
  EXPECT_EQ(flag_edges(shared, 0.0).size(), 3u);
}

}  // namespace
}  // namespace forman
