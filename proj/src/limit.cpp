#include "lwr/limit.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "lwr/io.hpp"

namespace lwr {

double tail_intensity(double index, double x, bool rest_scaled) {
  if (!(index > 0.0 && index < 1.0)) {
    throw std::invalid_argument("tail_intensity: index must lie in (0,1)");
  }
  if (!(x > 0.0)) {
    throw std::invalid_argument("tail_intensity: x must be positive");
  }
  double v = std::pow(x, -index) / std::tgamma(1.0 - index);
  if (rest_scaled) v *= std::pow(2.0, index);
  return v;
}

JumpMeasure::JumpMeasure(double index_, double tail_scale_)
    : index(index_), tail_scale(tail_scale_) {
  if (!(index > 0.0 && index < 1.0)) {
    throw std::invalid_argument("JumpMeasure: index must lie in (0,1)");
  }
  if (!(tail_scale > 0.0)) {
    throw std::invalid_argument("JumpMeasure: tail scale must be positive");
  }
}

JumpMeasure JumpMeasure::stable_normalized(double index) {
  return JumpMeasure(index, 1.0 / std::tgamma(1.0 - index));
}

JumpMeasure JumpMeasure::rest_scaled(double index) {
  return JumpMeasure(index, std::pow(2.0, index) / std::tgamma(1.0 - index));
}

JumpMeasure JumpMeasure::from_tail_law(const TailLaw& law) {
  return JumpMeasure(law.index, law.tail_constant);
}

double JumpMeasure::tail(double x) const { return tail_scale * std::pow(x, -index); }

double JumpMeasure::rate_above(double eps) const { return tail(eps); }

double JumpMeasure::small_jump_mean_rate(double eps) const {
  return tail_scale * index / (1.0 - index) * std::pow(eps, 1.0 - index);
}

double JumpMeasure::sample_jump(double eps, RngStream& rng) const {
  return eps * std::pow(rng.uniform(), -1.0 / index);
}

LimitModel LimitModel::coupled(LimitRegime regime, SpectralMeasure spectral,
                               JumpMeasure driving, double v0) {
  if (regime == LimitRegime::IndependentPair) {
    throw std::invalid_argument("LimitModel::coupled: regime must be a coupled one");
  }
  const double factor = regime == LimitRegime::CoupledHalved ? v0 / 2.0 : v0;
  return LimitModel{regime, std::move(spectral), driving, std::nullopt, factor};
}

LimitModel LimitModel::independent(SpectralMeasure spectral, JumpMeasure space,
                                   JumpMeasure subordinator) {
  return LimitModel{LimitRegime::IndependentPair, std::move(spectral), subordinator,
                    space, 0.0};
}

LimitModel LimitModel::from_walk_params(const WalkParams& params) {
  const TailLaw& wait = params.coupling.wait_law();
  if (params.coupling.kind() == CouplingMode::Kind::EqualRests) {
    return coupled(LimitRegime::CoupledHalved, params.spectral,
                   JumpMeasure(wait.index,
                               std::pow(2.0, wait.index) * wait.tail_constant),
                   params.v0);
  }
  const TailLaw& rest = params.coupling.rest_law();
  if (wait.index < rest.index) {
    return coupled(LimitRegime::CoupledDirect, params.spectral,
                   JumpMeasure::from_tail_law(wait), params.v0);
  }
  // alpha > beta: independent pair; the space measure carries the v0 scale.
  return independent(
      params.spectral,
      JumpMeasure(wait.index, wait.tail_constant * std::pow(params.v0, wait.index)),
      JumpMeasure::from_tail_law(rest));
}

void JumpList::finalize(std::size_t dim) {
  const std::size_t n = op_times.size();
  cum_sub.assign(n + 1, 0.0);
  if (!sub_increments.empty()) {
    for (std::size_t k = 0; k < n; ++k) cum_sub[k + 1] = cum_sub[k] + sub_increments[k];
  }
  cum_space.assign((n + 1) * dim, 0.0);
  if (!space_increments.empty()) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t c = 0; c < dim; ++c) {
        cum_space[(k + 1) * dim + c] = cum_space[k * dim + c] + space_increments[k * dim + c];
      }
    }
  }
}

JumpSeriesPath::JumpSeriesPath(LimitModel model, double epsilon, double op_horizon,
                               double sub_drift_rate, std::vector<double> space_drift_rate,
                               JumpList sub_jumps, std::optional<JumpList> space_jumps)
    : model_(std::move(model)),
      epsilon_(epsilon),
      op_horizon_(op_horizon),
      sub_drift_rate_(sub_drift_rate),
      space_drift_rate_(std::move(space_drift_rate)),
      sub_(std::move(sub_jumps)),
      space_(std::move(space_jumps)) {
  sub_.finalize(model_.spectral.dim());
  if (space_) space_->finalize(model_.spectral.dim());
}

namespace {

void append_arrivals(JumpList& list, const JumpMeasure& measure,
                     const SpectralMeasure* spectral, double coupling, bool carries_sub,
                     double eps, double from, double to, RngStream& rng,
                     std::vector<double>& dir) {
  const double rate = measure.rate_above(eps);
  double tau = from;
  for (;;) {
    tau += rng.exponential() / rate;
    if (tau > to) break;
    const double w = measure.sample_jump(eps, rng);
    list.op_times.push_back(tau);
    if (carries_sub) list.sub_increments.push_back(w);
    if (spectral) {
      spectral->sample(rng, dir);
      for (double c : dir) list.space_increments.push_back(coupling * w * c);
    }
  }
}

}  // namespace

JumpSeriesPath simulate_jump_series(const LimitModel& model, double epsilon,
                                    double op_horizon, RngStream& rng) {
  if (!(epsilon > 0.0 && epsilon <= 0.01)) {
    throw std::invalid_argument("simulate_jump_series: epsilon must lie in (0, 0.01]");
  }
  if (!(op_horizon > 0.0)) {
    throw std::invalid_argument("simulate_jump_series: op_horizon must be positive");
  }
  const std::size_t d = model.spectral.dim();
  std::vector<double> dir(d);
  const double sub_drift = model.subordinator.small_jump_mean_rate(epsilon);
  const std::vector<double> mean_dir = model.spectral.mean_direction();

  JumpList sub;
  std::optional<JumpList> space;
  std::vector<double> space_drift(d, 0.0);
  if (model.regime == LimitRegime::IndependentPair) {
    append_arrivals(sub, model.subordinator, nullptr, 0.0, true, epsilon, 0.0, op_horizon,
                    rng, dir);
    space.emplace();
    append_arrivals(*space, *model.space, &model.spectral, 1.0, false, epsilon, 0.0,
                    op_horizon, rng, dir);
    const double space_small = model.space->small_jump_mean_rate(epsilon);
    for (std::size_t c = 0; c < d; ++c) space_drift[c] = space_small * mean_dir[c];
  } else {
    append_arrivals(sub, model.subordinator, &model.spectral, model.space_coupling, true,
                    epsilon, 0.0, op_horizon, rng, dir);
    for (std::size_t c = 0; c < d; ++c) {
      space_drift[c] = model.space_coupling * sub_drift * mean_dir[c];
    }
  }
  return JumpSeriesPath(model, epsilon, op_horizon, sub_drift, std::move(space_drift),
                        std::move(sub), std::move(space));
}

void extend_jump_series(JumpSeriesPath& path, double new_horizon, RngStream& rng) {
  if (!(new_horizon > path.op_horizon_)) {
    throw std::invalid_argument("extend_jump_series: new horizon must exceed the current one");
  }
  const LimitModel& model = path.model_;
  const std::size_t d = model.spectral.dim();
  std::vector<double> dir(d);
  if (model.regime == LimitRegime::IndependentPair) {
    append_arrivals(path.sub_, model.subordinator, nullptr, 0.0, true, path.epsilon_,
                    path.op_horizon_, new_horizon, rng, dir);
    append_arrivals(*path.space_, *model.space, &model.spectral, 1.0, false, path.epsilon_,
                    path.op_horizon_, new_horizon, rng, dir);
    path.space_->finalize(d);
  } else {
    append_arrivals(path.sub_, model.subordinator, &model.spectral, model.space_coupling,
                    true, path.epsilon_, path.op_horizon_, new_horizon, rng, dir);
  }
  path.sub_.finalize(d);
  path.op_horizon_ = new_horizon;
}

double subordinator_value(const JumpSeriesPath& path, double tau) {
  if (tau < 0.0 || tau > path.op_horizon()) {
    throw HorizonExceeded("subordinator_value: tau outside [0, op_horizon]");
  }
  const JumpList& sub = path.sub_jumps();
  const auto it = std::upper_bound(sub.op_times.begin(), sub.op_times.end(), tau);
  const std::size_t k = static_cast<std::size_t>(it - sub.op_times.begin());
  return path.sub_drift_rate() * tau + sub.cum_sub[k];
}

FirstPassage inverse_subordinator(const JumpSeriesPath& path, double t) {
  if (t < 0.0) {
    throw std::invalid_argument("inverse_subordinator: t must be non-negative");
  }
  const JumpList& sub = path.sub_jumps();
  const double drift = path.sub_drift_rate();
  const std::size_t n = sub.op_times.size();

  // Smallest k with S(tau_k) > t; S(tau_k) = drift*tau_k + cum_sub[k+1].
  std::size_t lo = 0, hi = n;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    const double after = drift * sub.op_times[mid] + sub.cum_sub[mid + 1];
    if (after > t) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  if (lo < n) {
    const double before = drift * sub.op_times[lo] + sub.cum_sub[lo];
    if (before > t) {
      // Drift crosses level t strictly inside the segment ending at tau_lo.
      return FirstPassage{(t - sub.cum_sub[lo]) / drift, std::nullopt};
    }
    return FirstPassage{sub.op_times[lo], lo};
  }
  const double at_horizon = drift * path.op_horizon() + sub.cum_sub[n];
  if (at_horizon > t && drift > 0.0) {
    return FirstPassage{(t - sub.cum_sub[n]) / drift, std::nullopt};
  }
  throw HorizonExceeded("inverse_subordinator: S(op_horizon) does not exceed t");
}

namespace {

std::vector<double> space_value(const JumpSeriesPath& path, const JumpList& list,
                                double tau, std::size_t completed) {
  const std::size_t d = path.dim();
  std::vector<double> out(d);
  for (std::size_t c = 0; c < d; ++c) {
    out[c] = path.space_drift_rate()[c] * tau + list.cum_space[completed * d + c];
  }
  return out;
}

}  // namespace

std::vector<double> limit_marginal(const JumpSeriesPath& path, double t, LimitKind kind) {
  const FirstPassage fp = inverse_subordinator(path, t);
  const std::size_t d = path.dim();
  const JumpList& sp = path.space_jumps();
  const bool coupled = path.model().regime != LimitRegime::IndependentPair;

  std::size_t completed;
  if (coupled) {
    completed = fp.in_flight
                    ? *fp.in_flight
                    : static_cast<std::size_t>(
                          std::upper_bound(sp.op_times.begin(), sp.op_times.end(),
                                           fp.op_time) -
                          sp.op_times.begin());
  } else {
    // Independent space list: left limit under an in-flight subordinator
    // jump, right-continuous evaluation otherwise.
    const auto bound = (fp.in_flight && kind == LimitKind::WaitFirstLimit)
                           ? std::lower_bound(sp.op_times.begin(), sp.op_times.end(),
                                              fp.op_time)
                           : std::upper_bound(sp.op_times.begin(), sp.op_times.end(),
                                              fp.op_time);
    completed = static_cast<std::size_t>(bound - sp.op_times.begin());
  }

  std::vector<double> out = space_value(path, sp, fp.op_time, completed);
  if (coupled && kind == LimitKind::JumpFirstLimit && fp.in_flight) {
    for (std::size_t c = 0; c < d; ++c) {
      out[c] += sp.space_increments[*fp.in_flight * d + c];
    }
  }
  return out;
}

ConeCheck wait_first_cone_check(const JumpSeriesPath& path, double t) {
  if (path.model().regime == LimitRegime::IndependentPair) {
    return ConeCheck{true, false};
  }
  const std::vector<double> v = limit_marginal(path, t, LimitKind::WaitFirstLimit);
  double norm2 = 0.0;
  for (double c : v) norm2 += c * c;
  const double bound = path.model().space_coupling * t;
  return ConeCheck{std::sqrt(norm2) <= bound * (1.0 + 1e-12) + 1e-12, true};
}

LimitMarginals sample_limit_marginal_pair(const LimitModel& model, double t,
                                          double epsilon, RngStream& rng) {
  if (!(t > 0.0)) {
    throw std::invalid_argument("sample_limit_marginal_pair: t must be positive");
  }
  const double a = model.subordinator.index;
  const double mean_passage = std::pow(t, a) / (model.subordinator.tail_scale *
                                                std::tgamma(1.0 - a) * std::tgamma(1.0 + a));
  double horizon = std::max(4.0 * mean_passage, 1e-6);
  JumpSeriesPath path = simulate_jump_series(model, epsilon, horizon, rng);
  for (int i = 0; i < 200 && subordinator_value(path, path.op_horizon()) <= t; ++i) {
    horizon *= 2.0;
    extend_jump_series(path, horizon, rng);
  }
  LimitMarginals out;
  out.wait_first = limit_marginal(path, t, LimitKind::WaitFirstLimit);
  out.jump_first = limit_marginal(path, t, LimitKind::JumpFirstLimit);
  return out;
}

std::vector<double> sample_limit_marginal(const LimitModel& model, double t,
                                          LimitKind kind, double epsilon, RngStream& rng) {
  LimitMarginals m = sample_limit_marginal_pair(model, t, epsilon, rng);
  return kind == LimitKind::WaitFirstLimit ? std::move(m.wait_first)
                                           : std::move(m.jump_first);
}

namespace {

void write_list_jsonl(std::ostream& out, const JumpList& list, const char* name,
                      std::size_t dim) {
  for (std::size_t k = 0; k < list.op_times.size(); ++k) {
    out << "{\"list\":\"" << name << "\",\"op_time\":" << format_float(list.op_times[k]);
    if (!list.sub_increments.empty()) {
      out << ",\"sub_increment\":" << format_float(list.sub_increments[k]);
    }
    if (!list.space_increments.empty()) {
      out << ",\"space_increment\":[";
      for (std::size_t c = 0; c < dim; ++c) {
        if (c) out << ',';
        out << format_float(list.space_increments[k * dim + c]);
      }
      out << ']';
    }
    out << "}\n";
  }
}

}  // namespace

void write_path_jsonl(std::ostream& out, const JumpSeriesPath& path) {
  write_list_jsonl(out, path.sub_jumps(), "subordinator", path.dim());
  if (path.model().regime == LimitRegime::IndependentPair) {
    write_list_jsonl(out, path.space_jumps(), "space", path.dim());
  }
}

}  // namespace lwr
