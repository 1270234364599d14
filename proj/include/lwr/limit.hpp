#ifndef LWR_LIMIT_HPP
#define LWR_LIMIT_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "lwr/errors.hpp"
#include "lwr/rng.hpp"
#include "lwr/sampling.hpp"
#include "lwr/walk.hpp"

namespace lwr {

/// Tail of the one-sided stable Levy measure: nu((x,inf)) =
/// x^{-index}/Gamma(1-index), multiplied by 2^index when rest_scaled.
double tail_intensity(double index, double x, bool rest_scaled);

/// One-sided power-law jump measure nu((x,inf)) = tail_scale * x^{-index}.
struct JumpMeasure {
  double index;
  double tail_scale;

  JumpMeasure(double index, double tail_scale);

  /// Normalization with Laplace exponent s^index (tail_scale =
  /// 1/Gamma(1-index)).
  static JumpMeasure stable_normalized(double index);
  /// The equal-rests version: tail_scale = 2^index/Gamma(1-index).
  static JumpMeasure rest_scaled(double index);
  /// Pre-limit normalization matching n^{-1/index}-scaled Pareto sums
  /// (tail_scale = law.tail_constant).
  static JumpMeasure from_tail_law(const TailLaw& law);

  double tail(double x) const;
  /// Poisson rate of jumps larger than eps per unit operational time.
  double rate_above(double eps) const;
  /// Small-jump compensation: integral of x nu(dx) over (0, eps].
  double small_jump_mean_rate(double eps) const;
  /// Jump size conditioned on exceeding eps: eps * u^{-1/index}.
  double sample_jump(double eps, RngStream& rng) const;
};

/// Joint structure of the limit pair (space process, subordinator):
/// CoupledDirect  - case with space jump = v0 * u * w     (alpha < beta),
/// IndependentPair- disjoint jump structures              (alpha > beta),
/// CoupledHalved  - space jump = v0 * u * w / 2           (equal rests).
enum class LimitRegime { CoupledDirect, IndependentPair, CoupledHalved };

struct LimitModel {
  LimitRegime regime;
  SpectralMeasure spectral;
  JumpMeasure subordinator;           // time-component measure
  std::optional<JumpMeasure> space;   // IndependentPair only (radial measure)
  double space_coupling;              // v0, 0, or v0/2

  static LimitModel coupled(LimitRegime regime, SpectralMeasure spectral,
                            JumpMeasure driving, double v0 = 1.0);
  static LimitModel independent(SpectralMeasure spectral, JumpMeasure space,
                                JumpMeasure subordinator);
  /// The scaling limit of the given walk, with pre-limit tail constants.
  static LimitModel from_walk_params(const WalkParams& params);
};

/// Flat list of jumps of one component, ordered by operational time.
struct JumpList {
  std::vector<double> op_times;
  std::vector<double> sub_increments;    // empty for a pure space list
  std::vector<double> space_increments;  // n x dim, row-major; empty if none
  // Prefix sums (cum_*[k] = sum of the first k increments).
  std::vector<double> cum_sub;
  std::vector<double> cum_space;

  void finalize(std::size_t dim);
};

/// Truncated jump-series realization of the coupled pair over operational
/// time: compound Poisson above epsilon plus deterministic small-jump mean
/// compensation.
class JumpSeriesPath {
 public:
  JumpSeriesPath(LimitModel model, double epsilon, double op_horizon,
                 double sub_drift_rate, std::vector<double> space_drift_rate,
                 JumpList sub_jumps, std::optional<JumpList> space_jumps);

  const LimitModel& model() const { return model_; }
  double epsilon() const { return epsilon_; }
  double op_horizon() const { return op_horizon_; }
  double sub_drift_rate() const { return sub_drift_rate_; }
  const std::vector<double>& space_drift_rate() const { return space_drift_rate_; }
  const JumpList& sub_jumps() const { return sub_; }
  /// The list carrying space increments: the subordinator list in coupled
  /// regimes, the independent list otherwise.
  const JumpList& space_jumps() const { return space_ ? *space_ : sub_; }
  std::size_t dim() const { return model_.spectral.dim(); }

  friend void extend_jump_series(JumpSeriesPath& path, double new_horizon,
                                 RngStream& rng);

 private:
  LimitModel model_;
  double epsilon_;
  double op_horizon_;
  double sub_drift_rate_;
  std::vector<double> space_drift_rate_;
  JumpList sub_;
  std::optional<JumpList> space_;
};

JumpSeriesPath simulate_jump_series(const LimitModel& model, double epsilon,
                                    double op_horizon, RngStream& rng);

/// Appends fresh arrivals on (op_horizon, new_horizon]; distribution-exact
/// continuation of the same path.
void extend_jump_series(JumpSeriesPath& path, double new_horizon, RngStream& rng);

/// S(tau) = drift * tau + sum of jumps with op_time <= tau.
double subordinator_value(const JumpSeriesPath& path, double tau);

struct FirstPassage {
  double op_time;
  std::optional<std::size_t> in_flight;  // index into sub_jumps()
};

/// First passage inf{tau >= 0: S(tau) > t}. in_flight identifies the jump
/// straddling level t; absent when drift carries S across t.
FirstPassage inverse_subordinator(const JumpSeriesPath& path, double t);

enum class LimitKind { WaitFirstLimit, JumpFirstLimit };

/// Space-process marginal at physical time t: jump-first evaluates the
/// right-continuous path at the first-passage time; wait-first takes the
/// left limit there (excluding the in-flight jump), with completed jumps
/// always included.
std::vector<double> limit_marginal(const JumpSeriesPath& path, double t, LimitKind kind);

struct ConeCheck {
  bool within_bound;
  bool applicable;  // false (vacuous true) for the independent regime
};

/// Checks ||wait-first marginal|| <= v0*t (coupled) or <= v0*t/2 (halved).
ConeCheck wait_first_cone_check(const JumpSeriesPath& path, double t);

struct LimitMarginals {
  std::vector<double> wait_first;
  std::vector<double> jump_first;
};

/// Simulates a fresh path with adaptively grown operational horizon until
/// it covers t, then evaluates both marginals.
LimitMarginals sample_limit_marginal_pair(const LimitModel& model, double t,
                                          double epsilon, RngStream& rng);

std::vector<double> sample_limit_marginal(const LimitModel& model, double t,
                                          LimitKind kind, double epsilon, RngStream& rng);

/// One JSON record per jump.
void write_path_jsonl(std::ostream& out, const JumpSeriesPath& path);

}  // namespace lwr

#endif
