#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "forman/flows.hpp"
#include "forman/network.hpp"

namespace forman {

// Two snapshots with their edges matched through external node labels.
struct SnapshotPair {
  WeightedNetwork a;
  WeightedNetwork b;
  // (edge id in a, edge id in b), ordered by edge id in a.
  std::vector<std::pair<EdgeId, EdgeId>> shared;
  std::vector<EdgeId> removed;  // in a only
  std::vector<EdgeId> added;    // in b only
};

// Matches edges by (min label, max label), or by (source, target) labels for
// directed snapshots. Throws LabelCollision when a label repeats within a
// snapshot, InvalidArgument when directedness differs.
SnapshotPair align_edges(const WeightedNetwork& a, const WeightedNetwork& b);

struct ChangeParams {
  double dt = 1.0;
  std::size_t steps = 10;
  double threshold = 0.1;
  double weight_floor = 1e-9;
};

struct EdgeChange {
  EdgeId edge_a = 0;
  EdgeId edge_b = 0;
  double curvature_a = 0.0;
  double curvature_b = 0.0;
  double weight_a = 0.0;  // after the flow
  double weight_b = 0.0;
  double deviation = 0.0;
};

struct ChangeReport {
  std::vector<EdgeChange> shared;
  // Indices into `shared` whose deviation exceeds the threshold.
  std::vector<std::size_t> flagged;
  std::vector<EdgeId> removed;
  std::vector<EdgeId> added;
  double threshold = 0.0;
  double dt = 0.0;
  std::size_t steps = 0;
  std::size_t clamped_edges = 0;
};

// Curvature on both snapshots, normalisation, `steps` standard Ricci-flow
// steps on each, then |gamma_a^K - gamma_b^K| per shared edge. steps = 0
// compares the normalised input weights directly.
ChangeReport detect_changes(const SnapshotPair& pair, const ChangeParams& params = {});

// Re-applies a threshold to an existing report.
std::vector<std::size_t> flag_edges(const std::vector<EdgeChange>& shared, double threshold);

}  // namespace forman
