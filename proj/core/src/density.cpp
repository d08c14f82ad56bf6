#include "forman/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <iterator>
#include <numbers>

#include "forman/error.hpp"
#include "forman/summation.hpp"

namespace forman {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Quantile with linear interpolation on a sorted sample.
double quantile(std::span<const double> sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double kernel_value(Kernel kernel, double u) {
  switch (kernel) {
    case Kernel::kGaussian:
      return std::exp(-0.5 * u * u) / std::sqrt(2.0 * std::numbers::pi);
    case Kernel::kEpanechnikov:
      return std::abs(u) < 1.0 ? 0.75 * (1.0 - u * u) : 0.0;
    case Kernel::kUniform:
      return std::abs(u) <= 1.0 ? 0.5 : 0.0;
  }
  return 0.0;
}

double kernel_reach(Kernel kernel) { return kernel == Kernel::kGaussian ? 40.0 : 1.0; }

CurvatureDistribution bin_from_log_density(const std::function<double(double)>& log_density,
                                           double lo, double hi, std::size_t k) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "need at least one bin");
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw Error(ErrorCode::kDegenerateSupport, "support must satisfy lo < hi");
  }
  CurvatureDistribution dist;
  dist.bins.resize(k);
  std::vector<double> logs(k);
  const double width = hi - lo;
  for (std::size_t i = 0; i < k; ++i) {
    Bin& bin = dist.bins[i];
    bin.lo = i == 0 ? lo : dist.bins[i - 1].hi;
    bin.hi = i + 1 == k ? hi : lo + width * static_cast<double>(i + 1) / static_cast<double>(k);
    bin.representative = 0.5 * (bin.lo + bin.hi);
    logs[i] = log_density(bin.representative);
  }
  const double top = *std::max_element(logs.begin(), logs.end());
  if (!std::isfinite(top)) {
    throw Error(ErrorCode::kDegenerateSupport, "density vanishes at every bin midpoint");
  }
  std::vector<double> masses(k);
  for (std::size_t i = 0; i < k; ++i) masses[i] = std::exp(logs[i] - top);
  const double total = pairwise_sum(masses);
  for (std::size_t i = 0; i < k; ++i) dist.bins[i].mass = masses[i] / total;
  dist.total_mass = 1.0;
  return dist;
}

}  // namespace

std::optional<Kernel> parse_kernel(std::string_view name) {
  if (name == "gaussian") return Kernel::kGaussian;
  if (name == "epanechnikov") return Kernel::kEpanechnikov;
  if (name == "uniform") return Kernel::kUniform;
  return std::nullopt;
}

std::string_view to_string(Kernel kernel) {
  switch (kernel) {
    case Kernel::kGaussian: return "gaussian";
    case Kernel::kEpanechnikov: return "epanechnikov";
    case Kernel::kUniform: return "uniform";
  }
  return "unknown";
}

double silverman_bandwidth(std::span<const double> samples) {
  if (samples.empty()) throw Error(ErrorCode::kEmptyInput, "no samples");
  const auto n = static_cast<double>(samples.size());
  const double mean = pairwise_sum(samples) / n;
  std::vector<double> sq(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) sq[i] = (samples[i] - mean) * (samples[i] - mean);
  const double sd = samples.size() > 1 ? std::sqrt(pairwise_sum(sq) / (n - 1.0)) : 0.0;
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double iqr = quantile(sorted, 0.75) - quantile(sorted, 0.25);
  double spread = sd;
  if (iqr > 0.0) spread = std::min(sd, iqr / 1.34);
  const double h = 0.9 * spread * std::pow(n, -0.2);
  return h > 0.0 ? h : kFallbackBandwidth;
}

KernelDensity::KernelDensity(std::vector<double> samples, Kernel kernel, double bandwidth)
    : samples_(std::move(samples)), kernel_(kernel), bandwidth_(bandwidth) {
  if (samples_.empty()) throw Error(ErrorCode::kEmptyInput, "density needs at least one sample");
  if (!(bandwidth_ > 0.0) || !std::isfinite(bandwidth_)) {
    throw Error(ErrorCode::kNonpositiveBandwidth, "bandwidth must be positive");
  }
  for (double c : samples_) {
    if (!std::isfinite(c)) throw Error(ErrorCode::kInvalidArgument, "non-finite sample");
  }
  std::sort(samples_.begin(), samples_.end());
  mean_ = pairwise_sum(samples_) / static_cast<double>(samples_.size());
}

double KernelDensity::operator()(double x) const {
  const double reach = kernel_reach(kernel_) * bandwidth_;
  auto first = std::lower_bound(samples_.begin(), samples_.end(), x - reach);
  auto last = std::upper_bound(first, samples_.end(), x + reach);
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(last - first));
  for (auto it = first; it != last; ++it) terms.push_back(kernel_value(kernel_, (x - *it) / bandwidth_));
  return pairwise_sum(terms) / (static_cast<double>(samples_.size()) * bandwidth_);
}

double KernelDensity::log_density(double x) const {
  if (kernel_ != Kernel::kGaussian) {
    const double f = (*this)(x);
    return f > 0.0 ? std::log(f) : kNegInf;
  }
  // log-sum-exp over the samples that can matter: anything further than
  // sqrt(d_min^2 + 2 h^2 * 745) from x underflows relative to the nearest one.
  auto nearest = std::lower_bound(samples_.begin(), samples_.end(), x);
  double d_min = std::numeric_limits<double>::infinity();
  if (nearest != samples_.end()) d_min = *nearest - x;
  if (nearest != samples_.begin()) d_min = std::min(d_min, x - *std::prev(nearest));
  const double h2 = bandwidth_ * bandwidth_;
  const double reach = std::sqrt(d_min * d_min + 2.0 * h2 * 745.0);
  auto first = std::lower_bound(samples_.begin(), samples_.end(), x - reach);
  auto last = std::upper_bound(first, samples_.end(), x + reach);
  const double top = -0.5 * d_min * d_min / h2;
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(last - first));
  for (auto it = first; it != last; ++it) {
    const double d = x - *it;
    terms.push_back(std::exp(-0.5 * d * d / h2 - top));
  }
  const double norm = static_cast<double>(samples_.size()) * bandwidth_ *
                      std::sqrt(2.0 * std::numbers::pi);
  return top + std::log(pairwise_sum(terms)) - std::log(norm);
}

KernelDensity curvature_density(std::span<const double> curvatures, Kernel kernel,
                                std::optional<double> bandwidth) {
  if (curvatures.empty()) throw Error(ErrorCode::kEmptyInput, "no curvature values");
  const double h = bandwidth ? *bandwidth : silverman_bandwidth(curvatures);
  return KernelDensity({curvatures.begin(), curvatures.end()}, kernel, h);
}

std::vector<double> CurvatureDistribution::representatives() const {
  std::vector<double> out;
  out.reserve(bins.size());
  for (const Bin& b : bins) out.push_back(b.representative);
  return out;
}

std::vector<double> CurvatureDistribution::masses() const {
  std::vector<double> out;
  out.reserve(bins.size());
  for (const Bin& b : bins) out.push_back(b.mass);
  return out;
}

CurvatureDistribution bin_distribution(const KernelDensity& density, double lo, double hi,
                                       std::size_t k) {
  return bin_from_log_density([&](double x) { return density.log_density(x); }, lo, hi, k);
}

CurvatureDistribution bin_distribution(const std::function<double(double)>& density,
                                       double lo, double hi, std::size_t k) {
  return bin_from_log_density(
      [&](double x) {
        const double f = density(x);
        if (f < 0.0 || std::isnan(f)) {
          throw Error(ErrorCode::kInvalidArgument, "density returned a negative value");
        }
        return f > 0.0 ? std::log(f) : kNegInf;
      },
      lo, hi, k);
}

}  // namespace forman
