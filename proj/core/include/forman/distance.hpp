#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "forman/curvature.hpp"
#include "forman/density.hpp"
#include "forman/network.hpp"
#include "forman/transport.hpp"

namespace forman {

struct DistanceParams {
  Kernel kernel = Kernel::kGaussian;
  // Silverman's rule per sample when unset.
  std::optional<double> bandwidth;
  std::size_t bins = 100;
  // One grid over the union of both supports (padded by the larger
  // bandwidth). When false each sample is binned over its own padded support.
  bool shared_grid = true;
  // Threads for the curvature evaluation only.
  unsigned threads = 1;
};

struct DistanceBreakdown {
  CurvatureDistribution first;
  CurvatureDistribution second;
  TransportPlan plan;
  double bandwidth1 = 0.0;
  double bandwidth2 = 0.0;
};

// Density -> bins -> ground distance -> transport on two curvature samples.
DistanceBreakdown distribution_distance_details(std::span<const double> curvatures1,
                                                std::span<const double> curvatures2,
                                                const DistanceParams& params = {});

double distribution_distance(std::span<const double> curvatures1,
                             std::span<const double> curvatures2,
                             const DistanceParams& params = {});

// Earth mover's distance between the binned Forman-Ricci curvature densities
// of two networks. Symmetric, and zero for identical curvature multisets.
double graph_distance(const WeightedNetwork& g1, const WeightedNetwork& g2,
                      const DistanceParams& params = {});

}  // namespace forman
