#ifndef LWR_RUNNER_HPP
#define LWR_RUNNER_HPP

#include <functional>
#include <string>

#include "lwr/config.hpp"

namespace lwr {

/// Runs body(path) for path in [0, count). Work is partitioned statically;
/// results must be written to per-path slots so output is independent of
/// the schedule. threads == 0 picks the hardware concurrency.
void parallel_for_paths(std::size_t count, unsigned threads,
                        const std::function<void(std::size_t)>& body);

/// CSV of (scaled) walk marginals: one row per (path, grid time).
std::string run_simulate(const RunConfig& config);

/// CSV of limit-process marginals under the limit regime matching the
/// configured coupling.
std::string run_limit(const RunConfig& config);

/// JSON report of KS distances between scaled-walk and limit marginals
/// over the configured n-ladder, plus Hill indices.
std::string run_converge(const RunConfig& config);

struct ValidateResult {
  std::string report;  // JSON
  bool passed;
};

/// Runs the model-invariant suite (Pareto tail exactness, Hill recovery,
/// stable-oracle Laplace checks, rest-scaling identity, inverse-subordinator
/// moment, scaling-consistency) at desk scale.
ValidateResult run_validate(const RunConfig& config);

}  // namespace lwr

#endif
