#include "forman/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>

#include "forman/curvature.hpp"
#include "forman/error.hpp"

namespace forman {

namespace {

using LabelKey = std::pair<std::string, std::string>;

LabelKey key_of(const WeightedNetwork& g, EdgeId e) {
  const Edge& edge = g.edge(e);
  std::string u = g.label(edge.source);
  std::string v = g.label(edge.target);
  if (!g.directed() && v < u) std::swap(u, v);
  return {std::move(u), std::move(v)};
}

void check_unique_labels(const WeightedNetwork& g, const char* which) {
  std::vector<std::string> labels;
  labels.reserve(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) labels.push_back(g.label(v));
  std::sort(labels.begin(), labels.end());
  auto dup = std::adjacent_find(labels.begin(), labels.end());
  if (dup != labels.end()) {
    throw Error(ErrorCode::kLabelCollision,
                std::string("label '") + *dup + "' repeats in snapshot " + which);
  }
}

struct EvolvedSnapshot {
  std::vector<double> curvature;
  std::vector<double> weights;
  std::size_t clamped = 0;
};

EvolvedSnapshot evolve(const WeightedNetwork& g, const ChangeParams& params) {
  EvolvedSnapshot out;
  CurvatureOptions options;
  options.node_curvature = false;
  out.curvature = compute_curvature(g, options).edge_curvature;
  if (g.empty()) return out;
  WeightedNetwork current = normalize_weights(g);
  if (params.steps > 0) {
    FlowConfig config;
    config.dt = params.dt;
    config.steps = params.steps;
    config.variant = FlowVariant::kStandard;
    config.weight_floor = params.weight_floor;
    auto result = run_flow(current, config);
    out.clamped = result.trace.clamped_edges;
    current = std::move(result.network);
  }
  out.weights.assign(current.edge_weights().begin(), current.edge_weights().end());
  return out;
}

}  // namespace

SnapshotPair align_edges(const WeightedNetwork& a, const WeightedNetwork& b) {
  if (a.directed() != b.directed()) {
    throw Error(ErrorCode::kInvalidArgument, "snapshots disagree on directedness");
  }
  check_unique_labels(a, "a");
  check_unique_labels(b, "b");

  std::map<LabelKey, EdgeId> in_b;
  for (EdgeId e = 0; e < b.edge_count(); ++e) in_b.emplace(key_of(b, e), e);

  SnapshotPair pair{a, b, {}, {}, {}};
  std::vector<char> matched(b.edge_count(), 0);
  for (EdgeId e = 0; e < a.edge_count(); ++e) {
    auto it = in_b.find(key_of(a, e));
    if (it == in_b.end()) {
      pair.removed.push_back(e);
    } else {
      pair.shared.emplace_back(e, it->second);
      matched[it->second] = 1;
    }
  }
  for (EdgeId e = 0; e < b.edge_count(); ++e) {
    if (!matched[e]) pair.added.push_back(e);
  }
  return pair;
}

std::vector<std::size_t> flag_edges(const std::vector<EdgeChange>& shared, double threshold) {
  std::vector<std::size_t> flagged;
  for (std::size_t i = 0; i < shared.size(); ++i) {
    if (shared[i].deviation > threshold) flagged.push_back(i);
  }
  return flagged;
}

ChangeReport detect_changes(const SnapshotPair& pair, const ChangeParams& params) {
  if (params.steps > 0 && (!(params.dt > 0.0) || !std::isfinite(params.dt))) {
    throw Error(ErrorCode::kInvalidArgument, "flow time step must be positive");
  }
  if (!(params.threshold >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "threshold must be non-negative");
  }
  auto future_a = std::async(std::launch::async, [&] { return evolve(pair.a, params); });
  const EvolvedSnapshot b = evolve(pair.b, params);
  const EvolvedSnapshot a = future_a.get();

  ChangeReport report;
  report.threshold = params.threshold;
  report.dt = params.dt;
  report.steps = params.steps;
  report.removed = pair.removed;
  report.added = pair.added;
  report.clamped_edges = a.clamped + b.clamped;
  report.shared.reserve(pair.shared.size());
  for (auto [ea, eb] : pair.shared) {
    EdgeChange change;
    change.edge_a = ea;
    change.edge_b = eb;
    change.curvature_a = a.curvature[ea];
    change.curvature_b = b.curvature[eb];
    change.weight_a = a.weights[ea];
    change.weight_b = b.weights[eb];
    change.deviation = std::abs(change.weight_a - change.weight_b);
    report.shared.push_back(change);
  }
  report.flagged = flag_edges(report.shared, params.threshold);
  return report;
}

}  // namespace forman
