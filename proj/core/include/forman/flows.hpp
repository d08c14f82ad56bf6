#pragma once

#include <cstddef>
#include <vector>

#include "forman/curvature.hpp"
#include "forman/network.hpp"

namespace forman {

enum class FlowVariant {
  // gamma~ = gamma - dt * Ric * gamma
  kStandard,
  // gamma~ = gamma - dt * (Ric - mean Ric) * gamma
  kNormalized,
  // Same as kNormalized with the opposite sign, (Ric - mean Ric) added.
  kNormalizedPlus,
  // gamma~ = gamma + dt * Ric * gamma
  kReverse,
  // gamma~ = gamma + dt * (box_1 - diag Ric) gamma
  kLaplacian,
};

// kUnscaled drops the trailing gamma factor (gamma~ - gamma = -dt * Ric).
// Known to be unstable; never the default.
enum class FlowForm { kWeightScaled, kUnscaled };

struct FlowConfig {
  double dt = 1.0;
  std::size_t steps = 10;
  FlowVariant variant = FlowVariant::kStandard;
  FlowForm form = FlowForm::kWeightScaled;
  double weight_floor = 1e-9;
  EdgeCoupling coupling = EdgeCoupling::kDiffusive;
  // Throw StepTooLarge instead of clamping.
  bool strict = false;

  // Throws InvalidArgument unless dt > 0, steps >= 1 and 0 < floor < 1.
  void validate() const;
};

struct FlowStep {
  WeightedNetwork network;
  // Edges whose unclamped update was <= 0 and were raised to weight_floor.
  std::size_t clamped_edges = 0;
};

struct FlowTrace {
  // steps + 1 edge-weight vectors; the first is the input.
  std::vector<std::vector<double>> weights;
  // Weight-averaged curvature sum Ric*gamma / sum gamma at each evaluated state.
  std::vector<double> mean_curvature;
  std::size_t clamped_edges = 0;
};

// Curvature-weighted mean, sum_e Ric(e) gamma(e) / sum_e gamma(e).
double mean_curvature(const WeightedNetwork& g, const std::vector<double>& curvature);

// One explicit Euler step of a Ricci-type variant, curvature evaluated at the
// input weights. Node weights are carried over unchanged.
FlowStep ricci_flow_step(const WeightedNetwork& g, double dt, FlowVariant variant,
                         const FlowConfig& config = {});

FlowStep laplacian_flow_step(const WeightedNetwork& g, double dt,
                             const FlowConfig& config = {});

struct FlowResult {
  WeightedNetwork network;
  FlowTrace trace;
};

FlowResult run_flow(const WeightedNetwork& g, const FlowConfig& config);

struct DenoiseResult {
  WeightedNetwork network;
  // L1 distance between output and input edge weights.
  double denoising_level = 0.0;
  // Largest |dt * correction| / gamma seen over all steps.
  double max_relative_correction = 0.0;
  // false once the correction stops being small against the weights.
  bool correction_small = true;
  std::size_t clamped_edges = 0;
};

// Relative-correction bound above which denoise reports correction_small=false.
inline constexpr double kSmallCorrection = 0.5;

// Laplacian flow with the opposite sign, gamma <- gamma - dt * (box_1 - F) gamma,
// repeated `steps` times.
DenoiseResult denoise(const WeightedNetwork& noisy, double dt, std::size_t steps,
                      const FlowConfig& config = {});

}  // namespace forman
