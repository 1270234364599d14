#include "lwr/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace lwr {

HillEstimate hill_estimator(std::span<const double> samples, std::size_t k) {
  const std::size_t n = samples.size();
  if (k < 1 || k >= n) {
    throw std::invalid_argument("hill_estimator: need 1 <= k < sample count");
  }
  for (double x : samples) {
    if (!(x > 0.0)) {
      throw std::invalid_argument("hill_estimator: samples must be positive");
    }
  }
  std::vector<double> top(samples.begin(), samples.end());
  std::nth_element(top.begin(), top.begin() + static_cast<std::ptrdiff_t>(k), top.end(),
                   std::greater<double>());
  const double pivot = top[k];  // X_(k+1)
  double log_sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    log_sum += std::log(top[i] / pivot);
  }
  if (log_sum <= 0.0) {
    throw std::domain_error("hill_estimator: degenerate sample (top order statistics equal)");
  }
  return HillEstimate{k, static_cast<double>(k) / log_sum, n};
}

std::size_t default_hill_k(std::size_t n) {
  return static_cast<std::size_t>(2.0 * std::sqrt(static_cast<double>(n)));
}

KSResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("ks_two_sample: both samples must be non-empty");
  }
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double inv_m = 1.0 / static_cast<double>(sa.size());
  const double inv_n = 1.0 / static_cast<double>(sb.size());
  std::size_t i = 0, j = 0;
  double stat = 0.0;
  while (i < sa.size() && j < sb.size()) {
    const double x = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] <= x) ++i;
    while (j < sb.size() && sb[j] <= x) ++j;
    stat = std::max(stat, std::abs(static_cast<double>(i) * inv_m -
                                   static_cast<double>(j) * inv_n));
  }
  return KSResult{stat, sa.size(), sb.size()};
}

double msd(std::span<const double> flat_positions, std::size_t dim) {
  if (dim < 1 || flat_positions.empty() || flat_positions.size() % dim != 0) {
    throw std::invalid_argument("msd: positions must be a non-empty multiple of dim");
  }
  const std::size_t count = flat_positions.size() / dim;
  double acc = 0.0;
  for (std::size_t r = 0; r < count; ++r) {
    double norm2 = 0.0;
    for (std::size_t c = 0; c < dim; ++c) {
      const double v = flat_positions[r * dim + c];
      norm2 += v * v;
    }
    acc += norm2;
  }
  return acc / static_cast<double>(count);
}

double inverse_mean_reference(double index, double t) {
  if (!(index > 0.0 && index < 1.0)) {
    throw std::invalid_argument("inverse_mean_reference: index must lie in (0,1)");
  }
  if (t < 0.0) {
    throw std::invalid_argument("inverse_mean_reference: t must be non-negative");
  }
  return std::pow(t, index) / std::tgamma(1.0 + index);
}

}  // namespace lwr
