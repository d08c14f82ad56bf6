#include "forman/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>
#include <utility>

#include "forman/error.hpp"

namespace forman {

namespace {

std::uint64_t edge_key(NodeId u, NodeId v, bool directed) {
  if (!directed && v < u) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

// Compressed adjacency: offsets[v]..offsets[v+1] index into ids.
struct Csr {
  std::vector<std::size_t> offsets;
  std::vector<EdgeId> ids;

  std::span<const EdgeId> row(NodeId v) const {
    if (offsets.empty()) return {};
    return {ids.data() + offsets[v], offsets[v + 1] - offsets[v]};
  }
};

template <typename Pick>
Csr build_csr(std::size_t n, std::span<const Edge> edges, Pick pick) {
  Csr csr;
  csr.offsets.assign(n + 1, 0);
  for (const Edge& e : edges) pick(e, [&](NodeId v) { ++csr.offsets[v + 1]; });
  for (std::size_t v = 0; v < n; ++v) csr.offsets[v + 1] += csr.offsets[v];
  csr.ids.resize(csr.offsets[n]);
  std::vector<std::size_t> cursor(csr.offsets.begin(), csr.offsets.end() - 1);
  for (EdgeId id = 0; id < edges.size(); ++id) {
    pick(edges[id], [&](NodeId v) { csr.ids[cursor[v]++] = id; });
  }
  return csr;
}

void check_positive(std::span<const double> weights, const char* what) {
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i])) {
      throw Error(ErrorCode::kNonpositiveWeight,
                  std::string(what) + " " + std::to_string(i) +
                      " has non-positive or non-finite weight");
    }
  }
}

}  // namespace

StandardWeightParams::StandardWeightParams(double w1_in, double w2_in)
    : w1(w1_in), w2(w2_in) {
  if (!(w1 > 0.0) || !(w2 > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "standard weights need w1, w2 > 0");
  }
}

struct WeightedNetwork::Topology {
  std::size_t node_count = 0;
  bool directed = false;
  std::vector<Edge> edges;
  std::vector<std::string> labels;
  Csr incident;
  Csr in;
  Csr out;
  std::unordered_map<std::uint64_t, EdgeId> index;
};

WeightedNetwork::WeightedNetwork() : WeightedNetwork(0, {}, false) {}

WeightedNetwork::WeightedNetwork(std::size_t node_count, std::vector<Edge> edges,
                                 bool directed, std::vector<std::string> labels)
    : WeightedNetwork(node_count, std::move(edges), directed,
                      std::vector<double>(node_count, 1.0), {},
                      std::move(labels)) {}

WeightedNetwork::WeightedNetwork(std::size_t node_count, std::vector<Edge> edges,
                                 bool directed, std::vector<double> node_weights,
                                 std::vector<double> edge_weights,
                                 std::vector<std::string> labels) {
  if (node_count > std::numeric_limits<NodeId>::max() ||
      edges.size() > std::numeric_limits<EdgeId>::max()) {
    throw Error(ErrorCode::kInvalidNetwork, "network too large for 32-bit ids");
  }
  if (!labels.empty() && labels.size() != node_count) {
    throw Error(ErrorCode::kInvalidNetwork, "label count differs from node count");
  }
  if (edge_weights.empty()) edge_weights.assign(edges.size(), 1.0);
  if (node_weights.size() != node_count) {
    throw Error(ErrorCode::kMissingNodeWeight,
                "expected " + std::to_string(node_count) + " node weights, got " +
                    std::to_string(node_weights.size()));
  }
  if (edge_weights.size() != edges.size()) {
    throw Error(ErrorCode::kInvalidNetwork, "edge weight count differs from edge count");
  }
  check_positive(node_weights, "node");
  check_positive(edge_weights, "edge");

  auto topo = std::make_shared<Topology>();
  topo->node_count = node_count;
  topo->directed = directed;
  topo->index.reserve(edges.size());
  for (EdgeId id = 0; id < edges.size(); ++id) {
    const Edge& e = edges[id];
    if (e.source >= node_count || e.target >= node_count) {
      throw Error(ErrorCode::kInvalidNetwork,
                  "edge " + std::to_string(id) + " references a missing node");
    }
    if (e.source == e.target) {
      throw Error(ErrorCode::kInvalidNetwork,
                  "self-loop at node " + std::to_string(e.source));
    }
    if (!topo->index.emplace(edge_key(e.source, e.target, directed), id).second) {
      throw Error(ErrorCode::kInvalidNetwork,
                  "duplicate edge " + std::to_string(e.source) + "-" +
                      std::to_string(e.target));
    }
  }
  topo->incident = build_csr(node_count, edges, [](const Edge& e, auto&& add) {
    add(e.source);
    add(e.target);
  });
  if (directed) {
    topo->in = build_csr(node_count, edges,
                         [](const Edge& e, auto&& add) { add(e.target); });
    topo->out = build_csr(node_count, edges,
                          [](const Edge& e, auto&& add) { add(e.source); });
  }
  topo->edges = std::move(edges);
  topo->labels = std::move(labels);

  topology_ = std::move(topo);
  node_weights_ = std::move(node_weights);
  edge_weights_ = std::move(edge_weights);
}

WeightedNetwork WeightedNetwork::with_node_weights(std::vector<double> weights) const {
  if (weights.size() != node_count()) {
    throw Error(ErrorCode::kMissingNodeWeight,
                "node " + std::to_string(std::min(weights.size(), node_count())) +
                    " has no weight");
  }
  check_positive(weights, "node");
  WeightedNetwork copy = *this;
  copy.node_weights_ = std::move(weights);
  return copy;
}

WeightedNetwork WeightedNetwork::with_edge_weights(std::vector<double> weights) const {
  return with_edge_weights(std::move(weights), orientation_);
}

WeightedNetwork WeightedNetwork::with_edge_weights(
    std::vector<double> weights, std::vector<Orientation> orientation) const {
  if (weights.size() != edge_count()) {
    throw Error(ErrorCode::kInvalidNetwork, "edge weight count differs from edge count");
  }
  if (!orientation.empty() && orientation.size() != edge_count()) {
    throw Error(ErrorCode::kInvalidNetwork, "orientation count differs from edge count");
  }
  check_positive(weights, "edge");
  WeightedNetwork copy = *this;
  copy.edge_weights_ = std::move(weights);
  copy.orientation_ = std::move(orientation);
  return copy;
}

std::size_t WeightedNetwork::node_count() const { return topology_->node_count; }
std::size_t WeightedNetwork::edge_count() const { return topology_->edges.size(); }
bool WeightedNetwork::directed() const { return topology_->directed; }
std::span<const Edge> WeightedNetwork::edges() const { return topology_->edges; }
const Edge& WeightedNetwork::edge(EdgeId e) const { return topology_->edges[e]; }

Orientation WeightedNetwork::orientation(EdgeId e) const {
  return orientation_.empty() ? Orientation::kPositive : orientation_[e];
}

std::span<const EdgeId> WeightedNetwork::incident_edges(NodeId v) const {
  return topology_->incident.row(v);
}
std::span<const EdgeId> WeightedNetwork::in_edges(NodeId v) const {
  return topology_->in.row(v);
}
std::span<const EdgeId> WeightedNetwork::out_edges(NodeId v) const {
  return topology_->out.row(v);
}

NodeId WeightedNetwork::opposite(EdgeId e, NodeId v) const {
  const Edge& edge = topology_->edges[e];
  return edge.source == v ? edge.target : edge.source;
}

std::optional<EdgeId> WeightedNetwork::find_edge(NodeId u, NodeId v) const {
  auto it = topology_->index.find(edge_key(u, v, directed()));
  if (it == topology_->index.end()) return std::nullopt;
  return it->second;
}

std::string WeightedNetwork::label(NodeId v) const {
  if (v >= node_count()) {
    throw Error(ErrorCode::kUnknownNode, "node " + std::to_string(v));
  }
  return topology_->labels.empty() ? std::to_string(v) : topology_->labels[v];
}

bool WeightedNetwork::has_labels() const { return !topology_->labels.empty(); }

std::vector<double> combinatorial_node_weights(const WeightedNetwork& g) {
  std::vector<double> weights(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto incident = g.incident_edges(v);
    if (incident.empty()) {
      throw Error(ErrorCode::kIsolatedNode,
                  "node " + g.label(v) + " has degree 0");
    }
    double total = 0.0;
    for (EdgeId e : incident) total += static_cast<double>(g.degree(g.opposite(e, v)));
    weights[v] = total / static_cast<double>(incident.size());
  }
  return weights;
}

DerivedEdgeWeights derive_edge_weights(const WeightedNetwork& g) {
  return derive_edge_weights(g, g.node_weights());
}

DerivedEdgeWeights derive_edge_weights(const WeightedNetwork& g,
                                       std::span<const double> node_weights) {
  if (node_weights.size() < g.node_count()) {
    throw Error(ErrorCode::kMissingNodeWeight,
                "node " + std::to_string(node_weights.size()) + " has no weight");
  }
  DerivedEdgeWeights out;
  out.magnitude.reserve(g.edge_count());
  out.orientation.reserve(g.edge_count());
  for (const Edge& e : g.edges()) {
    out.magnitude.push_back(std::hypot(node_weights[e.source], node_weights[e.target]));
    out.orientation.push_back(e.source <= e.target ? Orientation::kPositive
                                                   : Orientation::kNegative);
  }
  return out;
}

WeightedNetwork normalize_weights(const WeightedNetwork& g) {
  if (g.empty()) throw Error(ErrorCode::kEmptyNetwork, "cannot normalize an empty network");
  auto scaled = [](std::span<const double> w) {
    std::vector<double> out(w.begin(), w.end());
    if (out.empty()) return out;
    const double top = *std::max_element(out.begin(), out.end());
    for (double& x : out) x /= top;
    return out;
  };
  return g.with_node_weights(scaled(g.node_weights()))
      .with_edge_weights(scaled(g.edge_weights()));
}

WeightedNetwork apply_combinatorial_weights(const WeightedNetwork& g) {
  auto with_nodes = g.with_node_weights(combinatorial_node_weights(g));
  auto derived = derive_edge_weights(with_nodes);
  return normalize_weights(with_nodes.with_edge_weights(
      std::move(derived.magnitude), std::move(derived.orientation)));
}

WeightedNetwork apply_standard_weights(const WeightedNetwork& g,
                                       const StandardWeightParams& params) {
  return g.with_node_weights(std::vector<double>(g.node_count(), params.node_weight()))
      .with_edge_weights(std::vector<double>(g.edge_count(), params.edge_weight()));
}

}  // namespace forman
