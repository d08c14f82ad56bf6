#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/SparseCore>

#include "forman/network.hpp"

namespace forman {

// Which neighbour edges enter the two halves of a directed edge's curvature.
// The head is the source node, the tail the target node.
enum class DirectedConvention {
  // Incoming edges at the head, outgoing edges at the tail (default).
  kIncomingAtHeadOutgoingAtTail,
  kOutgoingAtHeadIncomingAtTail,
  // Every other incident edge at both ends; reproduces the undirected value.
  kAllIncident,
};

struct DirectedParts {
  double head = 0.0;
  double tail = 0.0;
  double total = 0.0;
};

struct NodeFlowCurvature {
  double in = 0.0;
  double out = 0.0;
  double net = 0.0;
};

struct CurvatureField {
  std::vector<double> edge_curvature;
  // Sum of incident edge curvatures; empty when not requested.
  std::vector<double> node_curvature;
  // Directed networks only.
  std::vector<DirectedParts> directed_parts;
};

struct CurvatureOptions {
  // 0 picks std::thread::hardware_concurrency().
  unsigned threads = 1;
  bool node_curvature = true;
  DirectedConvention convention = DirectedConvention::kIncomingAtHeadOutgoingAtTail;
};

// Ric_F(e) = w(v1) + w(v2) - sum_{v in e} w(v) * sum_{e' ~ v, e' != e} sqrt(w(e)/w(e')).
// Direction is ignored.
double forman_edge_curvature(const WeightedNetwork& g, EdgeId e);

double forman_node_curvature(const WeightedNetwork& g, NodeId v);

DirectedParts directed_curvature(
    const WeightedNetwork& g, EdgeId e,
    DirectedConvention convention = DirectedConvention::kIncomingAtHeadOutgoingAtTail);

// in  = sum over incoming edges of their head (incoming-side) term,
// out = sum over outgoing edges of their tail (outgoing-side) term.
NodeFlowCurvature node_in_out_curvature(
    const WeightedNetwork& g, NodeId v,
    DirectedConvention convention = DirectedConvention::kIncomingAtHeadOutgoingAtTail);

// Evaluates every edge. Undirected networks use forman_edge_curvature;
// directed ones store the directed total and fill directed_parts. The result
// does not depend on the thread count.
CurvatureField compute_curvature(const WeightedNetwork& g,
                                 const CurvatureOptions& options = {});

// Relative orientation of two edges at a shared node.
enum class EdgeCoupling {
  // eps = -o(e1) * o(e2); -1 for unflagged edges, so unit-weight graphs lie in
  // the kernel of the rough Laplacian.
  kDiffusive,
  // eps = +1 everywhere.
  kUnsigned,
};

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

struct EdgeOperator {
  SparseMatrix entries;
  Eigen::VectorXd diagonal_curvature;

  std::size_t dimension() const { return static_cast<std::size_t>(entries.rows()); }
  Eigen::VectorXd apply(std::span<const double> edge_values) const;
};

// Edge-indexed Riemann-Laplace operator: diagonal sum_{v in e} w(v)/w(e),
// off-diagonal eps * w(v) / sqrt(w(e1) w(e2)) over shared nodes v.
// diagonal_curvature holds Ric_F.
EdgeOperator bochner_laplacian(const WeightedNetwork& g,
                               EdgeCoupling coupling = EdgeCoupling::kDiffusive);

// The rough part, box_1 minus diag(Ric_F), assembled directly from the
// expanded closed form of its diagonal rather than by subtraction.
EdgeOperator rough_laplacian(const WeightedNetwork& g,
                             EdgeCoupling coupling = EdgeCoupling::kDiffusive);

// Dense node-by-node matrix of edge curvatures; absent cells hold NaN.
class CurvatureMap {
 public:
  explicit CurvatureMap(std::size_t n = 0);

  std::size_t size() const { return n_; }
  std::optional<double> at(std::size_t row, std::size_t col) const;
  bool present(std::size_t row, std::size_t col) const;
  void set(std::size_t row, std::size_t col, double value);
  std::size_t filled() const;

 private:
  std::size_t n_;
  std::vector<double> cells_;
};

CurvatureMap curvature_map(const WeightedNetwork& g, const CurvatureField& field);

}  // namespace forman
