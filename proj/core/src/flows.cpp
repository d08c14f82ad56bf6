#include "forman/flows.hpp"

#include <cmath>
#include <string>

#include "forman/error.hpp"
#include "forman/summation.hpp"

namespace forman {

namespace {

std::vector<double> edge_curvature(const WeightedNetwork& g) {
  CurvatureOptions options;
  options.node_curvature = false;
  return compute_curvature(g, options).edge_curvature;
}

std::size_t clamp_weights(std::vector<double>& weights, const FlowConfig& config) {
  std::size_t clamped = 0;
  for (std::size_t e = 0; e < weights.size(); ++e) {
    if (!(weights[e] > 0.0) && config.strict) {
      throw Error(ErrorCode::kStepTooLarge,
                  "edge " + std::to_string(e) + " weight became non-positive");
    }
    if (!(weights[e] >= config.weight_floor)) {
      if (!(weights[e] > 0.0)) ++clamped;
      weights[e] = config.weight_floor;
    }
  }
  return clamped;
}

FlowStep finish_step(const WeightedNetwork& g, std::vector<double> weights,
                     const FlowConfig& config) {
  FlowStep step;
  step.clamped_edges = clamp_weights(weights, config);
  step.network = g.with_edge_weights(std::move(weights));
  return step;
}

// (box_1 - F) gamma with the configured coupling.
Eigen::VectorXd rough_action(const WeightedNetwork& g, const FlowConfig& config) {
  return rough_laplacian(g, config.coupling).apply(g.edge_weights());
}

}  // namespace

void FlowConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw Error(ErrorCode::kInvalidArgument, "flow time step must be positive");
  }
  if (steps < 1) throw Error(ErrorCode::kInvalidArgument, "flow needs at least one step");
  if (!(weight_floor > 0.0 && weight_floor < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "weight floor must lie in (0, 1)");
  }
}

double mean_curvature(const WeightedNetwork& g, const std::vector<double>& curvature) {
  std::vector<double> weighted(curvature.size());
  for (std::size_t e = 0; e < curvature.size(); ++e) weighted[e] = curvature[e] * g.edge_weight(e);
  const double mass = pairwise_sum(g.edge_weights());
  return mass > 0.0 ? pairwise_sum(weighted) / mass : 0.0;
}

FlowStep ricci_flow_step(const WeightedNetwork& g, double dt, FlowVariant variant,
                         const FlowConfig& config) {
  if (variant == FlowVariant::kLaplacian) return laplacian_flow_step(g, dt, config);
  if (dt < 0.0 || !std::isfinite(dt)) {
    throw Error(ErrorCode::kInvalidArgument, "flow time step must be non-negative");
  }
  const std::vector<double> ric = edge_curvature(g);
  double shift = 0.0;
  double direction = -1.0;
  switch (variant) {
    case FlowVariant::kStandard: break;
    case FlowVariant::kReverse: direction = 1.0; break;
    case FlowVariant::kNormalized: shift = mean_curvature(g, ric); break;
    case FlowVariant::kNormalizedPlus:
      shift = mean_curvature(g, ric);
      direction = 1.0;
      break;
    case FlowVariant::kLaplacian: break;
  }
  std::vector<double> next(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const double gamma = g.edge_weight(e);
    const double rate = config.form == FlowForm::kUnscaled ? (ric[e] - shift)
                                                           : (ric[e] - shift) * gamma;
    next[e] = gamma + direction * dt * rate;
  }
  return finish_step(g, std::move(next), config);
}

FlowStep laplacian_flow_step(const WeightedNetwork& g, double dt, const FlowConfig& config) {
  if (dt < 0.0 || !std::isfinite(dt)) {
    throw Error(ErrorCode::kInvalidArgument, "flow time step must be non-negative");
  }
  const Eigen::VectorXd action = rough_action(g, config);
  std::vector<double> next(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    next[e] = g.edge_weight(e) + dt * action[static_cast<Eigen::Index>(e)];
  }
  return finish_step(g, std::move(next), config);
}

FlowResult run_flow(const WeightedNetwork& g, const FlowConfig& config) {
  config.validate();
  FlowResult result{g, {}};
  auto& trace = result.trace;
  trace.weights.reserve(config.steps + 1);
  trace.weights.emplace_back(g.edge_weights().begin(), g.edge_weights().end());
  for (std::size_t k = 0; k < config.steps; ++k) {
    const WeightedNetwork& current = result.network;
    trace.mean_curvature.push_back(mean_curvature(current, edge_curvature(current)));
    FlowStep step = ricci_flow_step(current, config.dt, config.variant, config);
    trace.clamped_edges += step.clamped_edges;
    result.network = std::move(step.network);
    trace.weights.emplace_back(result.network.edge_weights().begin(),
                               result.network.edge_weights().end());
  }
  return result;
}

DenoiseResult denoise(const WeightedNetwork& noisy, double dt, std::size_t steps,
                      const FlowConfig& config) {
  if (dt < 0.0 || !std::isfinite(dt)) {
    throw Error(ErrorCode::kInvalidArgument, "denoise time step must be non-negative");
  }
  DenoiseResult result{noisy, 0.0, 0.0, true, 0};
  for (std::size_t k = 0; k < steps; ++k) {
    const WeightedNetwork& current = result.network;
    const Eigen::VectorXd action = rough_action(current, config);
    std::vector<double> next(current.edge_count());
    for (EdgeId e = 0; e < current.edge_count(); ++e) {
      const double correction = dt * action[static_cast<Eigen::Index>(e)];
      const double gamma = current.edge_weight(e);
      result.max_relative_correction =
          std::max(result.max_relative_correction, std::abs(correction) / gamma);
      next[e] = gamma - correction;
    }
    FlowStep step = finish_step(current, std::move(next), config);
    result.clamped_edges += step.clamped_edges;
    result.network = std::move(step.network);
  }
  result.correction_small = result.max_relative_correction <= kSmallCorrection;
  std::vector<double> diffs(noisy.edge_count());
  for (EdgeId e = 0; e < noisy.edge_count(); ++e) {
    diffs[e] = std::abs(result.network.edge_weight(e) - noisy.edge_weight(e));
  }
  result.denoising_level = pairwise_sum(diffs);
  return result;
}

}  // namespace forman
