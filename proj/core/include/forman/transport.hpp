#pragma once

#include <cstddef>
#include <span>

#include <Eigen/Core>

#include "forman/density.hpp"

namespace forman {

struct TransportPlan {
  Eigen::MatrixXd flow;    // f_ij, k1 x k2
  Eigen::MatrixXd ground;  // d_ij
  double cost = 0.0;       // sum f_ij d_ij
  double emd = 0.0;        // cost / sum f_ij
  std::size_t pivots = 0;
};

// d_ij = |p1_i - p2_j|.
Eigen::MatrixXd ground_distance(std::span<const double> representatives1,
                                std::span<const double> representatives2);
Eigen::MatrixXd ground_distance(const CurvatureDistribution& p1,
                                const CurvatureDistribution& p2);

// Minimum-cost transport between arbitrary supplies and demands under the
// ground matrix D (transportation simplex). Unequal totals move
// min(total supply, total demand). Throws InfeasibleMasses on negative or
// non-finite masses and InvalidArgument on shape mismatch or negative D.
TransportPlan solve_transport(std::span<const double> supply,
                              std::span<const double> demand,
                              const Eigen::MatrixXd& ground);
TransportPlan solve_transport(const CurvatureDistribution& p1,
                              const CurvatureDistribution& p2,
                              const Eigen::MatrixXd& ground);

// Exact shortcut for d_ij = |x_i - y_j| on the line: the monotone
// (north-west corner on sorted supports) coupling. Totals must agree.
TransportPlan solve_transport_1d(std::span<const double> positions1,
                                 std::span<const double> masses1,
                                 std::span<const double> positions2,
                                 std::span<const double> masses2);
TransportPlan solve_transport_1d(const CurvatureDistribution& p1,
                                 const CurvatureDistribution& p2);

}  // namespace forman
