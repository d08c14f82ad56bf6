#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace forman {

enum class Kernel { kGaussian, kEpanechnikov, kUniform };

std::optional<Kernel> parse_kernel(std::string_view name);
std::string_view to_string(Kernel kernel);

// Silverman's rule, 0.9 * min(sd, IQR/1.34) * n^(-1/5); falls back to sd when
// the IQR vanishes and to kFallbackBandwidth when the sample is constant.
double silverman_bandwidth(std::span<const double> samples);
inline constexpr double kFallbackBandwidth = 1e-3;

// f(x) = 1/(n h) * sum_i K((x - c_i) / h).
class KernelDensity {
 public:
  KernelDensity(std::vector<double> samples, Kernel kernel, double bandwidth);

  double operator()(double x) const;
  // Stable in the far tails for the Gaussian kernel; -inf outside the support
  // of compact kernels.
  double log_density(double x) const;

  double bandwidth() const { return bandwidth_; }
  Kernel kernel() const { return kernel_; }
  std::span<const double> samples() const { return samples_; }
  double min() const { return samples_.front(); }
  double max() const { return samples_.back(); }
  double mean() const { return mean_; }

 private:
  std::vector<double> samples_;  // sorted
  Kernel kernel_;
  double bandwidth_;
  double mean_;
};

// Throws EmptyInput / NonpositiveBandwidth. Bandwidth defaults to Silverman.
KernelDensity curvature_density(std::span<const double> curvatures,
                                Kernel kernel = Kernel::kGaussian,
                                std::optional<double> bandwidth = std::nullopt);

struct Bin {
  double lo = 0.0;
  double hi = 0.0;
  double representative = 0.0;
  double mass = 0.0;
};

struct CurvatureDistribution {
  std::vector<Bin> bins;
  double total_mass = 0.0;

  std::vector<double> representatives() const;
  std::vector<double> masses() const;
};

// k equal-width bins over [lo, hi]; each bin's mass is the density at its
// midpoint, renormalised so the masses sum to one. Throws DegenerateSupport
// for lo >= hi, non-finite bounds or a density that vanishes on every bin.
CurvatureDistribution bin_distribution(const KernelDensity& density, double lo,
                                       double hi, std::size_t k);
CurvatureDistribution bin_distribution(const std::function<double(double)>& density,
                                       double lo, double hi, std::size_t k);

}  // namespace forman
