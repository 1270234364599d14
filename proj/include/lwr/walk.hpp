#ifndef LWR_WALK_HPP
#define LWR_WALK_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "lwr/errors.hpp"
#include "lwr/rng.hpp"
#include "lwr/sampling.hpp"

namespace lwr {

enum class StepOrder { WaitFirst, JumpFirst };

struct WalkKind {
  StepOrder order = StepOrder::WaitFirst;
  bool with_rests = false;
};

/// Dependence structure of the per-cycle (wait, rest) pair. Independent
/// rests require distinct tail indices; equal rests impose R_i = T_i
/// pathwise.
class CouplingMode {
 public:
  enum class Kind { IndependentRests, EqualRests };

  static CouplingMode independent(TailLaw wait, TailLaw rest);
  static CouplingMode equal(TailLaw wait);

  Kind kind() const { return kind_; }
  const TailLaw& wait_law() const { return wait_; }
  /// Under EqualRests this is the wait law itself.
  const TailLaw& rest_law() const { return rest_; }

 private:
  CouplingMode(Kind kind, TailLaw wait, TailLaw rest)
      : kind_(kind), wait_(wait), rest_(rest) {}
  Kind kind_;
  TailLaw wait_;
  TailLaw rest_;
};

struct WalkParams {
  double v0;
  std::size_t dim;
  SpectralMeasure spectral;
  CouplingMode coupling;

  WalkParams(double v0, std::size_t dim, SpectralMeasure spectral, CouplingMode coupling);
};

/// One cycle of the walk: wait T_i, rest R_i and the coupled jump
/// J_i = v0 * V_i * T_i.
struct StepRecord {
  double wait;
  double rest;
  std::vector<double> jump;
};

std::vector<StepRecord> generate_steps(const WalkParams& params, std::size_t count,
                                       RngStream& rng);

/// Largest n whose cumulative cycle duration (wait, plus rest when
/// requested) is <= t. Throws HorizonExceeded when the supplied steps do
/// not cover t.
std::size_t count_renewals(std::span<const StepRecord> steps, double t, bool with_rests);

/// Piecewise-constant cadlag path stored as an ordered event list. Row r of
/// `positions` is the value on [event r-1, event r) (row 0 covers [0,
/// first event)); evaluation at an event time returns the post-jump value.
class Trajectory {
 public:
  Trajectory(WalkKind kind, std::size_t dim, double horizon,
             std::vector<double> event_times, std::vector<double> positions,
             std::size_t steps_used);

  void evaluate(double t, std::span<double> out) const;
  std::vector<double> evaluate(double t) const;

  WalkKind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  double horizon() const { return horizon_; }
  std::size_t steps_used() const { return steps_used_; }
  const std::vector<double>& event_times() const { return event_times_; }
  const std::vector<double>& positions() const { return positions_; }

 private:
  WalkKind kind_;
  std::size_t dim_;
  double horizon_;
  std::vector<double> event_times_;
  std::vector<double> positions_;  // (events+1) x dim, row-major
  std::size_t steps_used_;
};

Trajectory build_trajectory(std::span<const StepRecord> steps, WalkKind kind,
                            const WalkParams& params, double horizon);

/// CSV rows "time,x1,..,xd" (initial value at t=0 first), 17 significant
/// digits.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
/// One JSON event record per line.
void write_trajectory_jsonl(std::ostream& out, const Trajectory& traj);

/// Scaling regime (n, space exponent, time exponent). The exponents are
/// determined by the coupling: space is always 1/alpha; time is 1/alpha
/// except under independent rests with alpha > beta, where it is 1/beta.
struct ScalingSpec {
  double n;
  double space_exponent;
  double time_exponent;

  static ScalingSpec for_coupling(const CouplingMode& coupling, double n);
};

/// Throws std::invalid_argument when the given exponents disagree with the
/// coupling regime.
void validate_scaling(const ScalingSpec& spec, const CouplingMode& coupling);

struct ScaledMarginals {
  std::vector<double> wait_first;  // grid-size x dim, row-major
  std::vector<double> jump_first;
};

/// Scaled marginals n^{-1/alpha} X(n^{time_exponent} t) for both step
/// orders on a strictly increasing time grid, one streaming pass with
/// adaptive step generation.
ScaledMarginals scaled_marginal_grid(const WalkParams& params, const ScalingSpec& spec,
                                     bool with_rests, std::span<const double> ts,
                                     RngStream& rng);

std::vector<double> scaled_marginal(const WalkParams& params, WalkKind kind,
                                    const ScalingSpec& spec, double t, RngStream& rng);

}  // namespace lwr

#endif
