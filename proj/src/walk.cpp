#include "lwr/walk.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "lwr/io.hpp"

namespace lwr {

CouplingMode CouplingMode::independent(TailLaw wait, TailLaw rest) {
  if (wait.index == rest.index) {
    throw std::invalid_argument(
        "CouplingMode: independent rests require distinct tail indices "
        "(alpha != beta)");
  }
  return CouplingMode(Kind::IndependentRests, wait, rest);
}

CouplingMode CouplingMode::equal(TailLaw wait) {
  return CouplingMode(Kind::EqualRests, wait, wait);
}

WalkParams::WalkParams(double v0_, std::size_t dim_, SpectralMeasure spectral_,
                       CouplingMode coupling_)
    : v0(v0_), dim(dim_), spectral(std::move(spectral_)), coupling(coupling_) {
  if (!(v0 > 0.0)) {
    throw std::invalid_argument("WalkParams: v0 must be positive");
  }
  if (dim < 1 || spectral.dim() != dim) {
    throw std::invalid_argument("WalkParams: spectral measure dimension must equal dim");
  }
}

namespace {

struct CycleSampler {
  const WalkParams& params;
  std::vector<double> dir;

  explicit CycleSampler(const WalkParams& p) : params(p), dir(p.dim) {}

  // Draw order per cycle: wait, rest (independent mode only), direction.
  void draw(RngStream& rng, double& wait, double& rest) {
    wait = params.coupling.wait_law().quantile(rng.uniform());
    rest = params.coupling.kind() == CouplingMode::Kind::EqualRests
               ? wait
               : params.coupling.rest_law().quantile(rng.uniform());
    params.spectral.sample(rng, dir);
  }
};

}  // namespace

std::vector<StepRecord> generate_steps(const WalkParams& params, std::size_t count,
                                       RngStream& rng) {
  if (count < 1) {
    throw std::invalid_argument("generate_steps: count must be >= 1");
  }
  std::vector<StepRecord> steps;
  steps.reserve(count);
  CycleSampler sampler(params);
  for (std::size_t i = 0; i < count; ++i) {
    StepRecord rec;
    sampler.draw(rng, rec.wait, rec.rest);
    rec.jump.resize(params.dim);
    for (std::size_t c = 0; c < params.dim; ++c) {
      rec.jump[c] = params.v0 * rec.wait * sampler.dir[c];
    }
    steps.push_back(std::move(rec));
  }
  return steps;
}

std::size_t count_renewals(std::span<const StepRecord> steps, double t, bool with_rests) {
  if (t < 0.0) {
    throw std::invalid_argument("count_renewals: t must be non-negative");
  }
  double cum = 0.0;
  std::size_t n = 0;
  for (const StepRecord& s : steps) {
    cum += s.wait + (with_rests ? s.rest : 0.0);
    if (cum > t) return n;
    ++n;
  }
  throw HorizonExceeded("count_renewals: supplied steps do not cover t");
}

Trajectory::Trajectory(WalkKind kind, std::size_t dim, double horizon,
                       std::vector<double> event_times, std::vector<double> positions,
                       std::size_t steps_used)
    : kind_(kind),
      dim_(dim),
      horizon_(horizon),
      event_times_(std::move(event_times)),
      positions_(std::move(positions)),
      steps_used_(steps_used) {
  if (positions_.size() != (event_times_.size() + 1) * dim_) {
    throw std::invalid_argument("Trajectory: positions/event shape mismatch");
  }
  for (std::size_t i = 1; i < event_times_.size(); ++i) {
    if (!(event_times_[i - 1] < event_times_[i])) {
      throw std::invalid_argument("Trajectory: event times must be strictly increasing");
    }
  }
}

void Trajectory::evaluate(double t, std::span<double> out) const {
  if (t < 0.0 || t > horizon_) {
    throw HorizonExceeded("Trajectory::evaluate: query time outside [0, horizon]");
  }
  const auto it = std::upper_bound(event_times_.begin(), event_times_.end(), t);
  const std::size_t row = static_cast<std::size_t>(it - event_times_.begin());
  std::copy_n(positions_.begin() + static_cast<std::ptrdiff_t>(row * dim_), dim_,
              out.begin());
}

std::vector<double> Trajectory::evaluate(double t) const {
  std::vector<double> out(dim_);
  evaluate(t, out);
  return out;
}

Trajectory build_trajectory(std::span<const StepRecord> steps, WalkKind kind,
                            const WalkParams& params, double horizon) {
  if (!(horizon > 0.0)) {
    throw std::invalid_argument("build_trajectory: horizon must be positive");
  }
  std::vector<double> event_times;
  std::vector<double> positions;
  const std::size_t d = params.dim;

  std::vector<double> pos(d, 0.0);
  // Row 0: value on [0, first epoch). Jump-first includes the in-flight
  // jump J_1 from time 0.
  positions.reserve(d * 16);
  if (kind.order == StepOrder::JumpFirst) {
    if (steps.empty()) throw HorizonExceeded("build_trajectory: no steps supplied");
    for (std::size_t c = 0; c < d; ++c) positions.push_back(steps[0].jump[c]);
  } else {
    positions.insert(positions.end(), d, 0.0);
  }

  double cum = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const StepRecord& s = steps[i];
    const double duration = s.wait + (kind.with_rests ? s.rest : 0.0);
    const double epoch = cum + duration;
    for (std::size_t c = 0; c < d; ++c) pos[c] += s.jump[c];
    used = i + 1;
    if (epoch > horizon) {
      // Straddling cycle: the walk is constant on [cum, horizon].
      return Trajectory(kind, d, horizon, std::move(event_times), std::move(positions),
                        used);
    }
    event_times.push_back(epoch);
    if (kind.order == StepOrder::JumpFirst) {
      if (i + 1 >= steps.size()) {
        throw HorizonExceeded(
            "build_trajectory: jump-first trajectory needs one step beyond the horizon");
      }
      for (std::size_t c = 0; c < d; ++c) positions.push_back(pos[c] + steps[i + 1].jump[c]);
    } else {
      positions.insert(positions.end(), pos.begin(), pos.end());
    }
    cum = epoch;
  }
  throw HorizonExceeded("build_trajectory: supplied steps do not cover the horizon");
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  const std::size_t d = traj.dim();
  out << "time";
  for (std::size_t c = 0; c < d; ++c) out << ",x" << (c + 1);
  out << "\n";
  const auto write_row = [&](double t, std::size_t row) {
    out << format_float(t);
    for (std::size_t c = 0; c < d; ++c) {
      out << ',' << format_float(traj.positions()[row * d + c]);
    }
    out << "\n";
  };
  write_row(0.0, 0);
  for (std::size_t e = 0; e < traj.event_times().size(); ++e) {
    write_row(traj.event_times()[e], e + 1);
  }
}

void write_trajectory_jsonl(std::ostream& out, const Trajectory& traj) {
  const std::size_t d = traj.dim();
  const auto write_rec = [&](double t, std::size_t row) {
    out << "{\"time\":" << format_float(t) << ",\"position\":[";
    for (std::size_t c = 0; c < d; ++c) {
      if (c) out << ',';
      out << format_float(traj.positions()[row * d + c]);
    }
    out << "]}\n";
  };
  write_rec(0.0, 0);
  for (std::size_t e = 0; e < traj.event_times().size(); ++e) {
    write_rec(traj.event_times()[e], e + 1);
  }
}

ScalingSpec ScalingSpec::for_coupling(const CouplingMode& coupling, double n) {
  if (!(n >= 1.0)) {
    throw std::invalid_argument("ScalingSpec: n must be >= 1");
  }
  const double alpha = coupling.wait_law().index;
  double time_exp = 1.0 / alpha;
  if (coupling.kind() == CouplingMode::Kind::IndependentRests &&
      coupling.wait_law().index > coupling.rest_law().index) {
    time_exp = 1.0 / coupling.rest_law().index;
  }
  return ScalingSpec{n, 1.0 / alpha, time_exp};
}

void validate_scaling(const ScalingSpec& spec, const CouplingMode& coupling) {
  const ScalingSpec expected = ScalingSpec::for_coupling(coupling, std::max(spec.n, 1.0));
  const double tol = 1e-12;
  if (std::abs(spec.space_exponent - expected.space_exponent) > tol ||
      std::abs(spec.time_exponent - expected.time_exponent) > tol) {
    throw std::invalid_argument(
        "ScalingSpec: exponents inconsistent with the coupling regime; required: "
        "independent rests alpha<beta -> (1/alpha, 1/alpha); "
        "independent rests alpha>beta -> (1/alpha, 1/beta); "
        "equal rests -> (1/alpha, 1/alpha)");
  }
  if (!(spec.n >= 1.0)) {
    throw std::invalid_argument("ScalingSpec: n must be >= 1");
  }
}

ScaledMarginals scaled_marginal_grid(const WalkParams& params, const ScalingSpec& spec,
                                     bool with_rests, std::span<const double> ts,
                                     RngStream& rng) {
  validate_scaling(spec, params.coupling);
  if (ts.empty()) {
    throw std::invalid_argument("scaled_marginal_grid: empty time grid");
  }
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (!(ts[i] > 0.0)) {
      throw std::invalid_argument("scaled_marginal_grid: grid times must be positive");
    }
    if (i > 0 && !(ts[i - 1] < ts[i])) {
      throw std::invalid_argument("scaled_marginal_grid: grid must be strictly increasing");
    }
  }

  const std::size_t d = params.dim;
  const double space_scale = std::pow(spec.n, -spec.space_exponent);
  const double time_scale = std::pow(spec.n, spec.time_exponent);

  ScaledMarginals out;
  out.wait_first.resize(ts.size() * d);
  out.jump_first.resize(ts.size() * d);

  CycleSampler sampler(params);
  std::vector<double> pos(d, 0.0);
  double cum = 0.0;
  std::size_t g = 0;
  while (g < ts.size()) {
    double wait = 0.0, rest = 0.0;
    sampler.draw(rng, wait, rest);
    const double duration = wait + (with_rests ? rest : 0.0);
    const double next = cum + duration;
    while (g < ts.size() && ts[g] * time_scale < next) {
      for (std::size_t c = 0; c < d; ++c) {
        const double jump_c = params.v0 * wait * sampler.dir[c];
        out.wait_first[g * d + c] = pos[c] * space_scale;
        out.jump_first[g * d + c] = (pos[c] + jump_c) * space_scale;
      }
      ++g;
    }
    for (std::size_t c = 0; c < d; ++c) pos[c] += params.v0 * wait * sampler.dir[c];
    cum = next;
  }
  return out;
}

std::vector<double> scaled_marginal(const WalkParams& params, WalkKind kind,
                                    const ScalingSpec& spec, double t, RngStream& rng) {
  const double grid[1] = {t};
  ScaledMarginals m = scaled_marginal_grid(params, spec, kind.with_rests, grid, rng);
  return kind.order == StepOrder::WaitFirst ? std::move(m.wait_first)
                                            : std::move(m.jump_first);
}

}  // namespace lwr
