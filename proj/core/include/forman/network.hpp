#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace forman {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

// An edge as stored: for directed networks `source -> target`, for undirected
// networks the pair order is the order of appearance and carries no meaning
// beyond the orientation flag.
struct Edge {
  NodeId source;
  NodeId target;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Sign of the derived edge weight, +1 iff source index <= target index.
enum class Orientation : std::int8_t { kNegative = -1, kPositive = 1 };

inline int sign(Orientation o) { return static_cast<int>(o); }

// Forman's standard weights w(a^p) = w1 * w2^p. Combinatorial weights are
// (1, 1).
struct StandardWeightParams {
  double w1 = 1.0;
  double w2 = 1.0;

  StandardWeightParams() = default;
  StandardWeightParams(double w1, double w2);

  double node_weight() const { return w1; }
  double edge_weight() const { return w1 * w2; }
};

// Simple graph with positive node weights (omega) and positive edge weights
// (gamma). Instances are immutable; the `with_*` members return a new network
// sharing the same topology.
class WeightedNetwork {
 public:
  WeightedNetwork();

  // Unit node and edge weights. Throws InvalidNetwork on self-loops,
  // duplicate edges or out-of-range endpoints.
  WeightedNetwork(std::size_t node_count, std::vector<Edge> edges, bool directed,
                  std::vector<std::string> labels = {});

  WeightedNetwork(std::size_t node_count, std::vector<Edge> edges, bool directed,
                  std::vector<double> node_weights,
                  std::vector<double> edge_weights,
                  std::vector<std::string> labels = {});

  WeightedNetwork with_node_weights(std::vector<double> weights) const;
  WeightedNetwork with_edge_weights(std::vector<double> weights) const;
  WeightedNetwork with_edge_weights(std::vector<double> weights,
                                    std::vector<Orientation> orientation) const;

  std::size_t node_count() const;
  std::size_t edge_count() const;
  bool directed() const;
  bool empty() const { return node_count() == 0; }

  std::span<const Edge> edges() const;
  const Edge& edge(EdgeId e) const;

  std::span<const double> node_weights() const { return node_weights_; }
  std::span<const double> edge_weights() const { return edge_weights_; }
  double node_weight(NodeId v) const { return node_weights_[v]; }
  double edge_weight(EdgeId e) const { return edge_weights_[e]; }

  // Empty unless the edge weights were derived with an orientation.
  std::span<const Orientation> orientations() const { return orientation_; }
  bool has_orientation() const { return !orientation_.empty(); }
  Orientation orientation(EdgeId e) const;

  // Every edge touching v, ascending edge id.
  std::span<const EdgeId> incident_edges(NodeId v) const;
  // Directed networks only; empty spans otherwise.
  std::span<const EdgeId> in_edges(NodeId v) const;
  std::span<const EdgeId> out_edges(NodeId v) const;
  std::size_t degree(NodeId v) const { return incident_edges(v).size(); }

  // The endpoint of e that is not v.
  NodeId opposite(EdgeId e, NodeId v) const;

  std::optional<EdgeId> find_edge(NodeId u, NodeId v) const;

  // External label of v; the decimal index when none were supplied.
  std::string label(NodeId v) const;
  bool has_labels() const;

 private:
  struct Topology;

  std::shared_ptr<const Topology> topology_;
  std::vector<double> node_weights_;
  std::vector<double> edge_weights_;
  std::vector<Orientation> orientation_;
};

// Mean neighbour degree, omega(v) = (1/deg v) * sum_{u~v} deg u.
// Throws IsolatedNode if some node has degree 0.
std::vector<double> combinatorial_node_weights(const WeightedNetwork& g);

struct DerivedEdgeWeights {
  std::vector<double> magnitude;
  std::vector<Orientation> orientation;
};

// gamma(e_ij) = sign(e_ij) * sqrt(omega_i^2 + omega_j^2). The magnitude is the
// weight used everywhere; the sign is kept as an orientation flag.
DerivedEdgeWeights derive_edge_weights(const WeightedNetwork& g);
DerivedEdgeWeights derive_edge_weights(const WeightedNetwork& g,
                                       std::span<const double> node_weights);

// Divides node and edge weights by their respective maxima.
WeightedNetwork normalize_weights(const WeightedNetwork& g);

// combinatorial_node_weights -> derive_edge_weights -> normalize_weights.
WeightedNetwork apply_combinatorial_weights(const WeightedNetwork& g);

WeightedNetwork apply_standard_weights(const WeightedNetwork& g,
                                       const StandardWeightParams& params);

}  // namespace forman
