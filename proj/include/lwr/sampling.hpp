#ifndef LWR_SAMPLING_HPP
#define LWR_SAMPLING_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "lwr/rng.hpp"

namespace lwr {

/// A heavy-tailed positive law with index in (0,1), realized as exact
/// Pareto: P(T > t) = (floor/t)^index for t >= floor, so the tail constant
/// c = floor^index holds exactly (not just asymptotically).
struct TailLaw {
  double index;
  double floor;
  double tail_constant;  // floor^index

  explicit TailLaw(double index, double floor = 1.0);

  /// Inverse CDF: T = floor * u^{-1/index} for u in (0,1].
  double quantile(double u) const;

  /// P(T > t); equals 1 for t <= floor.
  double tail(double t) const;
};

double sample_waiting_time(const TailLaw& law, RngStream& rng);

/// One-sided stable variate with Laplace transform E[exp(-sX)] = exp(-s^a),
/// a in (0,1). Exact (Kanter's transformation of a uniform-exponential pair).
double sample_one_sided_stable(double index, RngStream& rng);

/// Law of the unit jump direction: either discrete atoms on the sphere or
/// the uniform law on S^{d-1}.
class SpectralMeasure {
 public:
  struct Atom {
    std::vector<double> direction;  // unit vector in R^d
    double prob;
  };

  static SpectralMeasure atoms(std::vector<Atom> atoms);
  static SpectralMeasure uniform_sphere(std::size_t dim);

  /// Convenience: the symmetric two-point law {+1, -1} in d=1.
  static SpectralMeasure symmetric_line();

  std::size_t dim() const { return dim_; }
  bool is_uniform_sphere() const { return atoms_.empty(); }
  const std::vector<Atom>& atom_list() const { return atoms_; }

  void sample(RngStream& rng, std::span<double> out) const;
  std::vector<double> sample(RngStream& rng) const;

  /// E[u] under the measure; the zero vector for the uniform sphere.
  std::vector<double> mean_direction() const;

 private:
  SpectralMeasure() = default;
  std::size_t dim_ = 0;
  std::vector<Atom> atoms_;       // empty => uniform sphere
  std::vector<double> cum_prob_;  // cumulative atom probabilities
};

}  // namespace lwr

#endif
