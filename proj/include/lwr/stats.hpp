#ifndef LWR_STATS_HPP
#define LWR_STATS_HPP

#include <cstddef>
#include <span>

namespace lwr {

struct HillEstimate {
  std::size_t k;
  double index_hat;
  std::size_t samples_used;
};

/// Hill tail-index estimate from the top k+1 descending order statistics:
/// index_hat = k / sum_{i=1..k} log(X_(i)/X_(k+1)).
/// Throws std::domain_error when the top k+1 samples are all equal.
HillEstimate hill_estimator(std::span<const double> samples, std::size_t k);

/// Default order-statistic count: floor(2*sqrt(n)).
std::size_t default_hill_k(std::size_t n);

struct KSResult {
  double statistic;
  std::size_t m;
  std::size_t n;
};

/// Two-sample Kolmogorov-Smirnov statistic sup|F_a - F_b| over the merged
/// sample grid.
KSResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Mean squared Euclidean norm of an ensemble stored row-major.
double msd(std::span<const double> flat_positions, std::size_t dim);

/// First moment of the inverse stable subordinator: t^index/Gamma(1+index).
double inverse_mean_reference(double index, double t);

}  // namespace lwr

#endif
