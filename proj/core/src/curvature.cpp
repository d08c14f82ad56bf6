#include "forman/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "forman/error.hpp"
#include "forman/summation.hpp"

namespace forman {

namespace {

void check_edge(const WeightedNetwork& g, EdgeId e) {
  if (e >= g.edge_count()) {
    throw Error(ErrorCode::kInvalidArgument, "edge " + std::to_string(e) + " does not exist");
  }
}

void check_node(const WeightedNetwork& g, NodeId v) {
  if (v >= g.node_count()) {
    throw Error(ErrorCode::kUnknownNode, "node " + std::to_string(v));
  }
}

// sum over e' in `edges`, e' != skip, of 1/sqrt(w(e')).
double inverse_root_sum(const WeightedNetwork& g, std::span<const EdgeId> edges,
                        EdgeId skip) {
  thread_local std::vector<double> terms;
  terms.clear();
  for (EdgeId other : edges) {
    if (other != skip) terms.push_back(1.0 / std::sqrt(g.edge_weight(other)));
  }
  return pairwise_sum(terms);
}

// w(v) - sqrt(w(e)) * w(v) * sum 1/sqrt(w(e')): one endpoint's share of Ric_F.
double endpoint_term(const WeightedNetwork& g, EdgeId e, NodeId v,
                     std::span<const EdgeId> neighbours) {
  const double wv = g.node_weight(v);
  return wv - std::sqrt(g.edge_weight(e)) * wv * inverse_root_sum(g, neighbours, e);
}

std::pair<std::span<const EdgeId>, std::span<const EdgeId>> directed_neighbours(
    const WeightedNetwork& g, const Edge& edge, DirectedConvention convention) {
  switch (convention) {
    case DirectedConvention::kIncomingAtHeadOutgoingAtTail:
      return {g.in_edges(edge.source), g.out_edges(edge.target)};
    case DirectedConvention::kOutgoingAtHeadIncomingAtTail:
      return {g.out_edges(edge.source), g.in_edges(edge.target)};
    case DirectedConvention::kAllIncident:
      break;
  }
  return {g.incident_edges(edge.source), g.incident_edges(edge.target)};
}

DirectedParts directed_parts_unchecked(const WeightedNetwork& g, EdgeId e,
                                       DirectedConvention convention) {
  const Edge& edge = g.edge(e);
  auto [head_set, tail_set] = directed_neighbours(g, edge, convention);
  DirectedParts parts;
  parts.head = endpoint_term(g, e, edge.source, head_set);
  parts.tail = endpoint_term(g, e, edge.target, tail_set);
  parts.total = parts.head + parts.tail;
  return parts;
}

double edge_curvature_unchecked(const WeightedNetwork& g, EdgeId e) {
  const Edge& edge = g.edge(e);
  const double wa = g.node_weight(edge.source);
  const double wb = g.node_weight(edge.target);
  const double sa = inverse_root_sum(g, g.incident_edges(edge.source), e);
  const double sb = inverse_root_sum(g, g.incident_edges(edge.target), e);
  return wa + wb - std::sqrt(g.edge_weight(e)) * (wa * sa + wb * sb);
}

void require_directed(const WeightedNetwork& g) {
  if (!g.directed()) {
    throw Error(ErrorCode::kUndirectedNetwork,
                "directed curvature requested on an undirected network");
  }
}

template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  if (threads <= 1) {
    fn(std::size_t{0}, count);
    return;
  }
  std::vector<std::jthread> workers;
  workers.reserve(threads);
  const std::size_t chunk = (count + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    workers.emplace_back([=] { fn(begin, end); });
  }
}

double coupling_sign(const WeightedNetwork& g, EdgeCoupling coupling, EdgeId a, EdgeId b) {
  if (coupling == EdgeCoupling::kUnsigned) return 1.0;
  return -static_cast<double>(sign(g.orientation(a)) * sign(g.orientation(b)));
}

// Off-diagonal triplets shared by both operators, one (e1, e2) and (e2, e1)
// pair per shared node, in node order.
void add_coupling_triplets(const WeightedNetwork& g, EdgeCoupling coupling,
                           std::vector<Eigen::Triplet<double>>& triplets) {
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto incident = g.incident_edges(v);
    const double wv = g.node_weight(v);
    for (std::size_t i = 0; i < incident.size(); ++i) {
      for (std::size_t j = i + 1; j < incident.size(); ++j) {
        const EdgeId a = incident[i];
        const EdgeId b = incident[j];
        const double value = coupling_sign(g, coupling, a, b) * wv /
                             std::sqrt(g.edge_weight(a) * g.edge_weight(b));
        triplets.emplace_back(static_cast<int>(a), static_cast<int>(b), value);
        triplets.emplace_back(static_cast<int>(b), static_cast<int>(a), value);
      }
    }
  }
}

Eigen::VectorXd curvature_vector(const WeightedNetwork& g) {
  CurvatureOptions options;
  options.node_curvature = false;
  const auto field = compute_curvature(g, options);
  return Eigen::Map<const Eigen::VectorXd>(field.edge_curvature.data(),
                                           static_cast<Eigen::Index>(field.edge_curvature.size()));
}

}  // namespace

double forman_edge_curvature(const WeightedNetwork& g, EdgeId e) {
  check_edge(g, e);
  return edge_curvature_unchecked(g, e);
}

double forman_node_curvature(const WeightedNetwork& g, NodeId v) {
  check_node(g, v);
  std::vector<double> values;
  for (EdgeId e : g.incident_edges(v)) values.push_back(edge_curvature_unchecked(g, e));
  return pairwise_sum(values);
}

DirectedParts directed_curvature(const WeightedNetwork& g, EdgeId e,
                                 DirectedConvention convention) {
  require_directed(g);
  check_edge(g, e);
  return directed_parts_unchecked(g, e, convention);
}

NodeFlowCurvature node_in_out_curvature(const WeightedNetwork& g, NodeId v,
                                        DirectedConvention convention) {
  require_directed(g);
  check_node(g, v);
  std::vector<double> in_terms;
  std::vector<double> out_terms;
  for (EdgeId e : g.in_edges(v)) in_terms.push_back(directed_parts_unchecked(g, e, convention).head);
  for (EdgeId e : g.out_edges(v)) out_terms.push_back(directed_parts_unchecked(g, e, convention).tail);
  NodeFlowCurvature result;
  result.in = pairwise_sum(in_terms);
  result.out = pairwise_sum(out_terms);
  result.net = result.in - result.out;
  return result;
}

CurvatureField compute_curvature(const WeightedNetwork& g, const CurvatureOptions& options) {
  CurvatureField field;
  const std::size_t m = g.edge_count();
  field.edge_curvature.resize(m);
  if (g.directed()) {
    field.directed_parts.resize(m);
    parallel_for(m, options.threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t e = begin; e < end; ++e) {
        field.directed_parts[e] =
            directed_parts_unchecked(g, static_cast<EdgeId>(e), options.convention);
        field.edge_curvature[e] = field.directed_parts[e].total;
      }
    });
  } else {
    parallel_for(m, options.threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t e = begin; e < end; ++e) {
        field.edge_curvature[e] = edge_curvature_unchecked(g, static_cast<EdgeId>(e));
      }
    });
  }
  if (options.node_curvature) {
    field.node_curvature.resize(g.node_count());
    std::vector<double> values;
    for (NodeId v = 0; v < g.node_count(); ++v) {
      values.clear();
      for (EdgeId e : g.incident_edges(v)) values.push_back(field.edge_curvature[e]);
      field.node_curvature[v] = pairwise_sum(values);
    }
  }
  return field;
}

Eigen::VectorXd EdgeOperator::apply(std::span<const double> edge_values) const {
  if (edge_values.size() != dimension()) {
    throw Error(ErrorCode::kInvalidArgument, "vector length differs from operator dimension");
  }
  Eigen::Map<const Eigen::VectorXd> x(edge_values.data(),
                                      static_cast<Eigen::Index>(edge_values.size()));
  return entries * x;
}

EdgeOperator bochner_laplacian(const WeightedNetwork& g, EdgeCoupling coupling) {
  const auto m = static_cast<Eigen::Index>(g.edge_count());
  std::vector<Eigen::Triplet<double>> triplets;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    const double diagonal =
        (g.node_weight(edge.source) + g.node_weight(edge.target)) / g.edge_weight(e);
    triplets.emplace_back(static_cast<int>(e), static_cast<int>(e), diagonal);
  }
  add_coupling_triplets(g, coupling, triplets);

  EdgeOperator op;
  op.entries.resize(m, m);
  op.entries.setFromTriplets(triplets.begin(), triplets.end());
  op.diagonal_curvature = curvature_vector(g);
  return op;
}

EdgeOperator rough_laplacian(const WeightedNetwork& g, EdgeCoupling coupling) {
  const auto m = static_cast<Eigen::Index>(g.edge_count());
  std::vector<Eigen::Triplet<double>> triplets;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    const double wa = g.node_weight(edge.source);
    const double wb = g.node_weight(edge.target);
    const double gamma = g.edge_weight(e);
    // (wa + wb)/gamma - Ric_F(e), expanded.
    const double neighbour_part =
        std::sqrt(gamma) * (wa * inverse_root_sum(g, g.incident_edges(edge.source), e) +
                            wb * inverse_root_sum(g, g.incident_edges(edge.target), e));
    const double diagonal = (wa + wb) * (1.0 / gamma - 1.0) + neighbour_part;
    triplets.emplace_back(static_cast<int>(e), static_cast<int>(e), diagonal);
  }
  add_coupling_triplets(g, coupling, triplets);

  EdgeOperator op;
  op.entries.resize(m, m);
  op.entries.setFromTriplets(triplets.begin(), triplets.end());
  op.diagonal_curvature = Eigen::VectorXd::Zero(m);
  return op;
}

CurvatureMap::CurvatureMap(std::size_t n)
    : n_(n), cells_(n * n, std::numeric_limits<double>::quiet_NaN()) {}

std::optional<double> CurvatureMap::at(std::size_t row, std::size_t col) const {
  if (!present(row, col)) return std::nullopt;
  return cells_[row * n_ + col];
}

bool CurvatureMap::present(std::size_t row, std::size_t col) const {
  return !std::isnan(cells_[row * n_ + col]);
}

void CurvatureMap::set(std::size_t row, std::size_t col, double value) {
  cells_[row * n_ + col] = value;
}

std::size_t CurvatureMap::filled() const {
  return static_cast<std::size_t>(
      std::count_if(cells_.begin(), cells_.end(), [](double x) { return !std::isnan(x); }));
}

CurvatureMap curvature_map(const WeightedNetwork& g, const CurvatureField& field) {
  if (field.edge_curvature.size() != g.edge_count()) {
    throw Error(ErrorCode::kInvalidArgument, "curvature field does not cover every edge");
  }
  CurvatureMap map(g.node_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    map.set(edge.source, edge.target, field.edge_curvature[e]);
    if (!g.directed()) map.set(edge.target, edge.source, field.edge_curvature[e]);
  }
  return map;
}

}  // namespace forman
