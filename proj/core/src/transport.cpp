#include "forman/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "forman/error.hpp"
#include "forman/summation.hpp"

namespace forman {

namespace {

void check_masses(std::span<const double> masses, const char* side) {
  for (std::size_t i = 0; i < masses.size(); ++i) {
    if (!(masses[i] >= 0.0) || !std::isfinite(masses[i])) {
      throw Error(ErrorCode::kInfeasibleMasses,
                  std::string(side) + " mass " + std::to_string(i) + " is negative or non-finite");
    }
  }
  if (masses.empty()) throw Error(ErrorCode::kInfeasibleMasses, std::string(side) + " has no bins");
}

struct Cell {
  std::size_t row;
  std::size_t col;
};

// Transportation simplex on a balanced problem. Rows are supplies, columns
// demands; the basis is kept as a spanning tree with rows + cols - 1 cells.
class TransportSimplex {
 public:
  TransportSimplex(std::vector<double> supply, std::vector<double> demand, Eigen::MatrixXd cost)
      : rows_(supply.size()),
        cols_(demand.size()),
        supply_(std::move(supply)),
        demand_(std::move(demand)),
        cost_(std::move(cost)),
        flow_(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows_),
                                    static_cast<Eigen::Index>(cols_))),
        in_basis_(rows_ * cols_, 0) {
    const double top = cost_.size() > 0 ? cost_.maxCoeff() : 0.0;
    tolerance_ = 1e-12 * std::max(1.0, top);
  }

  std::size_t solve() {
    north_west_corner();
    std::size_t pivots = 0;
    std::size_t degenerate_streak = 0;
    const std::size_t cap = 50 * (rows_ + cols_) * (rows_ + cols_) + 1000;
    while (true) {
      compute_potentials();
      const bool bland = degenerate_streak > rows_ + cols_;
      auto entering = pick_entering(bland);
      if (!entering) break;
      const double theta = pivot(*entering, bland);
      degenerate_streak = theta > 0.0 ? 0 : degenerate_streak + 1;
      if (++pivots > cap) {
        throw Error(ErrorCode::kInfeasibleMasses, "transport simplex failed to converge");
      }
    }
    return pivots;
  }

  const Eigen::MatrixXd& flow() const { return flow_; }

 private:
  double& x(const Cell& c) { return flow_(static_cast<Eigen::Index>(c.row), static_cast<Eigen::Index>(c.col)); }
  double c(std::size_t i, std::size_t j) const {
    return cost_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  std::size_t index(const Cell& cell) const { return cell.row * cols_ + cell.col; }

  void add_basic(const Cell& cell) {
    basis_.push_back(cell);
    in_basis_[index(cell)] = 1;
  }

  void north_west_corner() {
    std::vector<double> a = supply_;
    std::vector<double> b = demand_;
    std::size_t i = 0;
    std::size_t j = 0;
    while (true) {
      const Cell cell{i, j};
      const double amount = std::min(a[i], b[j]);
      x(cell) = amount;
      a[i] -= amount;
      b[j] -= amount;
      add_basic(cell);
      if (i + 1 == rows_ && j + 1 == cols_) break;
      if (i + 1 == rows_) {
        ++j;
      } else if (j + 1 == cols_) {
        ++i;
      } else if (a[i] <= b[j]) {
        ++i;
      } else {
        ++j;
      }
    }
  }

  // Tree adjacency over nodes [rows | cols]; value is the basis index.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> tree() const {
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(rows_ + cols_);
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      adj[basis_[k].row].emplace_back(rows_ + basis_[k].col, k);
      adj[rows_ + basis_[k].col].emplace_back(basis_[k].row, k);
    }
    return adj;
  }

  void compute_potentials() {
    const auto adj = tree();
    u_.assign(rows_, 0.0);
    v_.assign(cols_, 0.0);
    std::vector<char> seen(rows_ + cols_, 0);
    std::queue<std::size_t> queue;
    queue.push(0);
    seen[0] = 1;
    while (!queue.empty()) {
      const std::size_t node = queue.front();
      queue.pop();
      for (auto [next, k] : adj[node]) {
        if (seen[next]) continue;
        seen[next] = 1;
        const Cell& cell = basis_[k];
        if (next >= rows_) {
          v_[cell.col] = c(cell.row, cell.col) - u_[cell.row];
        } else {
          u_[cell.row] = c(cell.row, cell.col) - v_[cell.col];
        }
        queue.push(next);
      }
    }
  }

  std::optional<Cell> pick_entering(bool bland) const {
    std::optional<Cell> best;
    double best_value = -tolerance_;
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        if (in_basis_[i * cols_ + j]) continue;
        const double reduced = c(i, j) - u_[i] - v_[j];
        if (reduced < best_value) {
          best = Cell{i, j};
          if (bland) return best;
          best_value = reduced;
        }
      }
    }
    return best;
  }

  // Moves theta around the cycle closed by `entering`; returns theta.
  double pivot(const Cell& entering, bool bland) {
    const auto adj = tree();
    const std::size_t start = entering.row;
    const std::size_t goal = rows_ + entering.col;
    std::vector<std::size_t> parent_node(rows_ + cols_, SIZE_MAX);
    std::vector<std::size_t> parent_edge(rows_ + cols_, SIZE_MAX);
    std::queue<std::size_t> queue;
    queue.push(start);
    parent_node[start] = start;
    while (!queue.empty() && parent_node[goal] == SIZE_MAX) {
      const std::size_t node = queue.front();
      queue.pop();
      for (auto [next, k] : adj[node]) {
        if (parent_node[next] != SIZE_MAX) continue;
        parent_node[next] = node;
        parent_edge[next] = k;
        queue.push(next);
      }
    }
    // Walking back from the entering column, basis edges alternate -, +, -, ...
    std::vector<std::size_t> minus;
    std::vector<std::size_t> plus;
    bool negative = true;
    for (std::size_t node = goal; node != start; node = parent_node[node]) {
      (negative ? minus : plus).push_back(parent_edge[node]);
      negative = !negative;
    }
    std::size_t leaving = minus.front();
    double theta = std::numeric_limits<double>::infinity();
    for (std::size_t k : minus) {
      const double amount = x(basis_[k]);
      const bool better = amount < theta ||
                          (bland && amount == theta && index(basis_[k]) < index(basis_[leaving]));
      if (better) {
        theta = amount;
        leaving = k;
      }
    }
    for (std::size_t k : minus) x(basis_[k]) -= theta;
    for (std::size_t k : plus) x(basis_[k]) += theta;
    x(basis_[leaving]) = 0.0;
    Cell entered = entering;
    x(entered) = theta;
    in_basis_[index(basis_[leaving])] = 0;
    basis_[leaving] = entered;
    in_basis_[index(entered)] = 1;
    return theta;
  }

  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> supply_;
  std::vector<double> demand_;
  Eigen::MatrixXd cost_;
  Eigen::MatrixXd flow_;
  std::vector<Cell> basis_;
  std::vector<char> in_basis_;
  std::vector<double> u_;
  std::vector<double> v_;
  double tolerance_ = 0.0;
};

void finish(TransportPlan& plan) {
  std::vector<double> costs;
  std::vector<double> flows;
  costs.reserve(static_cast<std::size_t>(plan.flow.size()));
  flows.reserve(static_cast<std::size_t>(plan.flow.size()));
  for (Eigen::Index i = 0; i < plan.flow.rows(); ++i) {
    for (Eigen::Index j = 0; j < plan.flow.cols(); ++j) {
      flows.push_back(plan.flow(i, j));
      costs.push_back(plan.flow(i, j) * plan.ground(i, j));
    }
  }
  plan.cost = pairwise_sum(costs);
  const double moved = pairwise_sum(flows);
  plan.emd = moved > 0.0 ? plan.cost / moved : 0.0;
}

}  // namespace

Eigen::MatrixXd ground_distance(std::span<const double> representatives1,
                                std::span<const double> representatives2) {
  Eigen::MatrixXd d(static_cast<Eigen::Index>(representatives1.size()),
                    static_cast<Eigen::Index>(representatives2.size()));
  for (std::size_t i = 0; i < representatives1.size(); ++i) {
    for (std::size_t j = 0; j < representatives2.size(); ++j) {
      d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          std::abs(representatives1[i] - representatives2[j]);
    }
  }
  return d;
}

Eigen::MatrixXd ground_distance(const CurvatureDistribution& p1,
                                const CurvatureDistribution& p2) {
  return ground_distance(p1.representatives(), p2.representatives());
}

TransportPlan solve_transport(std::span<const double> supply, std::span<const double> demand,
                              const Eigen::MatrixXd& ground) {
  check_masses(supply, "source");
  check_masses(demand, "sink");
  if (ground.rows() != static_cast<Eigen::Index>(supply.size()) ||
      ground.cols() != static_cast<Eigen::Index>(demand.size())) {
    throw Error(ErrorCode::kInvalidArgument, "ground matrix shape differs from the bin counts");
  }
  if (ground.size() > 0 && (ground.minCoeff() < 0.0 || !ground.allFinite())) {
    throw Error(ErrorCode::kInvalidArgument, "ground distances must be finite and non-negative");
  }
  const double total_supply = pairwise_sum(supply);
  const double total_demand = pairwise_sum(demand);
  if (!(total_supply > 0.0) || !(total_demand > 0.0)) {
    throw Error(ErrorCode::kInfeasibleMasses, "both sides need positive total mass");
  }

  std::vector<double> a(supply.begin(), supply.end());
  std::vector<double> b(demand.begin(), demand.end());
  Eigen::MatrixXd cost = ground;
  const double slack = total_supply - total_demand;
  const double tol = 1e-12 * std::max(total_supply, total_demand);
  if (slack > tol) {
    b.push_back(slack);
    cost.conservativeResize(Eigen::NoChange, cost.cols() + 1);
    cost.col(cost.cols() - 1).setZero();
  } else if (slack < -tol) {
    a.push_back(-slack);
    cost.conservativeResize(cost.rows() + 1, Eigen::NoChange);
    cost.row(cost.rows() - 1).setZero();
  }

  TransportSimplex simplex(std::move(a), std::move(b), std::move(cost));
  TransportPlan plan;
  plan.pivots = simplex.solve();
  plan.flow = simplex.flow().topLeftCorner(ground.rows(), ground.cols());
  plan.ground = ground;
  finish(plan);
  return plan;
}

TransportPlan solve_transport(const CurvatureDistribution& p1, const CurvatureDistribution& p2,
                              const Eigen::MatrixXd& ground) {
  return solve_transport(p1.masses(), p2.masses(), ground);
}

TransportPlan solve_transport_1d(std::span<const double> positions1,
                                 std::span<const double> masses1,
                                 std::span<const double> positions2,
                                 std::span<const double> masses2) {
  if (positions1.size() != masses1.size() || positions2.size() != masses2.size()) {
    throw Error(ErrorCode::kInvalidArgument, "positions and masses differ in length");
  }
  check_masses(masses1, "source");
  check_masses(masses2, "sink");
  const double total1 = pairwise_sum(masses1);
  const double total2 = pairwise_sum(masses2);
  if (!(total1 > 0.0) || std::abs(total1 - total2) > 1e-9 * std::max(total1, total2)) {
    throw Error(ErrorCode::kInfeasibleMasses, "1-D transport needs equal positive totals");
  }
  auto sorted_order = [](std::span<const double> positions) {
    std::vector<std::size_t> order(positions.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t l, std::size_t r) { return positions[l] < positions[r]; });
    return order;
  };
  const auto order1 = sorted_order(positions1);
  const auto order2 = sorted_order(positions2);

  TransportPlan plan;
  plan.ground = ground_distance(positions1, positions2);
  plan.flow = Eigen::MatrixXd::Zero(plan.ground.rows(), plan.ground.cols());
  std::size_t i = 0;
  std::size_t j = 0;
  double left1 = masses1[order1[0]];
  double left2 = masses2[order2[0]];
  double cost = 0.0;
  double moved = 0.0;
  while (i < order1.size() && j < order2.size()) {
    const double amount = std::min(left1, left2);
    const auto r = static_cast<Eigen::Index>(order1[i]);
    const auto c = static_cast<Eigen::Index>(order2[j]);
    plan.flow(r, c) += amount;
    cost += amount * plan.ground(r, c);
    moved += amount;
    left1 -= amount;
    left2 -= amount;
    if (left1 <= 0.0 && ++i < order1.size()) left1 = masses1[order1[i]];
    if (left2 <= 0.0 && ++j < order2.size()) left2 = masses2[order2[j]];
  }
  plan.cost = cost;
  plan.emd = moved > 0.0 ? cost / moved : 0.0;
  return plan;
}

TransportPlan solve_transport_1d(const CurvatureDistribution& p1, const CurvatureDistribution& p2) {
  return solve_transport_1d(p1.representatives(), p1.masses(), p2.representatives(), p2.masses());
}

}  // namespace forman
