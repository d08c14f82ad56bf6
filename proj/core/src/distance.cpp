#include "forman/distance.hpp"

#include <algorithm>

#include "forman/error.hpp"

namespace forman {

DistanceBreakdown distribution_distance_details(std::span<const double> curvatures1,
                                                std::span<const double> curvatures2,
                                                const DistanceParams& params) {
  if (params.bins < 1) throw Error(ErrorCode::kInvalidArgument, "need at least one bin");
  const KernelDensity f1 = curvature_density(curvatures1, params.kernel, params.bandwidth);
  const KernelDensity f2 = curvature_density(curvatures2, params.kernel, params.bandwidth);

  DistanceBreakdown out;
  out.bandwidth1 = f1.bandwidth();
  out.bandwidth2 = f2.bandwidth();
  if (params.shared_grid) {
    const double pad = std::max(f1.bandwidth(), f2.bandwidth());
    const double lo = std::min(f1.min(), f2.min()) - pad;
    const double hi = std::max(f1.max(), f2.max()) + pad;
    out.first = bin_distribution(f1, lo, hi, params.bins);
    out.second = bin_distribution(f2, lo, hi, params.bins);
  } else {
    out.first = bin_distribution(f1, f1.min() - f1.bandwidth(), f1.max() + f1.bandwidth(),
                                 params.bins);
    out.second = bin_distribution(f2, f2.min() - f2.bandwidth(), f2.max() + f2.bandwidth(),
                                  params.bins);
  }
  out.plan = solve_transport_1d(out.first, out.second);
  return out;
}

double distribution_distance(std::span<const double> curvatures1,
                             std::span<const double> curvatures2, const DistanceParams& params) {
  return distribution_distance_details(curvatures1, curvatures2, params).plan.emd;
}

double graph_distance(const WeightedNetwork& g1, const WeightedNetwork& g2,
                      const DistanceParams& params) {
  if (g1.edge_count() == 0 || g2.edge_count() == 0) {
    throw Error(ErrorCode::kEmptyNetwork, "graph distance needs at least one edge per graph");
  }
  CurvatureOptions options;
  options.threads = params.threads;
  options.node_curvature = false;
  const auto c1 = compute_curvature(g1, options).edge_curvature;
  const auto c2 = compute_curvature(g2, options).edge_curvature;
  return distribution_distance(c1, c2, params);
}

}  // namespace forman
