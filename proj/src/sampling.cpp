#include "lwr/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lwr {

namespace {
constexpr double kUnitTol = 1e-12;
}

TailLaw::TailLaw(double index_, double floor_)
    : index(index_), floor(floor_), tail_constant(std::pow(floor_, index_)) {
  if (!(index > 0.0 && index < 1.0)) {
    throw std::invalid_argument("TailLaw: index must lie in the open interval (0,1)");
  }
  if (!(floor > 0.0)) {
    throw std::invalid_argument("TailLaw: floor must be positive");
  }
}

double TailLaw::quantile(double u) const {
  return floor * std::pow(u, -1.0 / index);
}

double TailLaw::tail(double t) const {
  if (t <= floor) return 1.0;
  return std::pow(floor / t, index);
}

double sample_waiting_time(const TailLaw& law, RngStream& rng) {
  return law.quantile(rng.uniform());
}

double sample_one_sided_stable(double index, RngStream& rng) {
  if (!(index > 0.0 && index < 1.0)) {
    throw std::invalid_argument("sample_one_sided_stable: index must lie in (0,1)");
  }
  const double a = index;
  const double u = rng.uniform();
  const double w = rng.exponential();
  const double pu = std::numbers::pi * u;
  // Kanter's representation, normalized so E[exp(-sX)] = exp(-s^a).
  return std::sin(a * pu) * std::pow(std::sin((1.0 - a) * pu), (1.0 - a) / a) *
         std::pow(std::sin(pu), -1.0 / a) * std::pow(w, -(1.0 - a) / a);
}

SpectralMeasure SpectralMeasure::atoms(std::vector<Atom> atoms) {
  if (atoms.empty()) {
    throw std::invalid_argument("SpectralMeasure: atom list must be non-empty");
  }
  SpectralMeasure m;
  m.dim_ = atoms.front().direction.size();
  if (m.dim_ < 1) {
    throw std::invalid_argument("SpectralMeasure: dimension must be >= 1");
  }
  double total = 0.0;
  for (const Atom& atom : atoms) {
    if (atom.direction.size() != m.dim_) {
      throw std::invalid_argument("SpectralMeasure: atoms have mixed dimensions");
    }
    double norm2 = 0.0;
    for (double c : atom.direction) norm2 += c * c;
    if (std::abs(std::sqrt(norm2) - 1.0) > kUnitTol) {
      throw std::invalid_argument("SpectralMeasure: atom direction is not a unit vector");
    }
    if (atom.prob < 0.0) {
      throw std::invalid_argument("SpectralMeasure: atom probability is negative");
    }
    total += atom.prob;
    m.cum_prob_.push_back(total);
  }
  if (std::abs(total - 1.0) > kUnitTol) {
    throw std::invalid_argument("SpectralMeasure: atom probabilities must sum to 1");
  }
  m.cum_prob_.back() = 1.0;
  m.atoms_ = std::move(atoms);
  return m;
}

SpectralMeasure SpectralMeasure::uniform_sphere(std::size_t dim) {
  if (dim < 1) {
    throw std::invalid_argument("SpectralMeasure: dimension must be >= 1");
  }
  SpectralMeasure m;
  m.dim_ = dim;
  return m;
}

SpectralMeasure SpectralMeasure::symmetric_line() {
  return atoms({Atom{{1.0}, 0.5}, Atom{{-1.0}, 0.5}});
}

void SpectralMeasure::sample(RngStream& rng, std::span<double> out) const {
  if (out.size() != dim_) {
    throw std::invalid_argument("SpectralMeasure::sample: output span has wrong dimension");
  }
  if (!atoms_.empty()) {
    const double u = rng.uniform();
    const auto it = std::lower_bound(cum_prob_.begin(), cum_prob_.end(), u);
    const std::size_t idx =
        std::min<std::size_t>(static_cast<std::size_t>(it - cum_prob_.begin()),
                              atoms_.size() - 1);
    const auto& dir = atoms_[idx].direction;
    std::copy(dir.begin(), dir.end(), out.begin());
    return;
  }
  if (dim_ == 1) {
    out[0] = rng.uniform() < 0.5 ? 1.0 : -1.0;
    return;
  }
  // Normalized Gaussian vector; a zero draw is impossible in exact
  // arithmetic and astronomically unlikely in floating point, but retry.
  for (;;) {
    double norm2 = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
      out[i] = rng.normal();
      norm2 += out[i] * out[i];
    }
    if (norm2 > 0.0) {
      const double inv = 1.0 / std::sqrt(norm2);
      for (std::size_t i = 0; i < dim_; ++i) out[i] *= inv;
      return;
    }
  }
}

std::vector<double> SpectralMeasure::sample(RngStream& rng) const {
  std::vector<double> out(dim_);
  sample(rng, out);
  return out;
}

std::vector<double> SpectralMeasure::mean_direction() const {
  std::vector<double> mean(dim_, 0.0);
  for (const Atom& atom : atoms_) {
    for (std::size_t i = 0; i < dim_; ++i) mean[i] += atom.prob * atom.direction[i];
  }
  return mean;
}

}  // namespace lwr
