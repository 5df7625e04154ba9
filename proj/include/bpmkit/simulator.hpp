#pragma once

#include <cstdint>
#include <vector>

#include "bpmkit/duration.hpp"
#include "bpmkit/paths.hpp"
#include "bpmkit/rational.hpp"
#include "bpmkit/scenario.hpp"

namespace bpmkit {

/// How parallel branches combine. Work content sums every executed task
/// (the farmer's processing time); cycle time takes the critical path.
enum class TimeMode { work_content, cycle_time };

struct PathOutcome {
  ExecutionPath path;
  Rational probability;
  Duration time;
};

struct SimulationReport {
  TimeMode mode = TimeMode::work_content;
  Duration best;
  Duration worst;
  Duration expected;  // expected_exact rounded half-up to whole seconds
  Rational expected_exact;
  std::vector<PathOutcome> per_path;
};

struct McReport {
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  double mean = 0.0;
  double stddev = 0.0;  // population standard deviation of the samples
  Duration min;
  Duration max;
};

/// Events and gateways contribute nothing; waiting at catch events is excluded.
Duration path_time(const ExecutionPath& path, const BoundScenario& bound, TimeMode mode = TimeMode::work_content);

/// Exact analysis over all execution paths. Paths with zero probability are
/// excluded from best and worst. Throws CyclicModelError or
/// InclusiveGatewayUnsupported.
SimulationReport simulate(const ProcessModel& model, const BoundScenario& bound,
                          TimeMode mode = TimeMode::work_content);

/// Token-game sampler. Replication i draws from a generator seeded only from
/// (seed, i), so the report is bit-identical for any `threads` value
/// (0 picks the hardware concurrency).
McReport monte_carlo(const ProcessModel& model, const BoundScenario& bound, std::uint64_t n, std::uint64_t seed,
                     TimeMode mode = TimeMode::work_content, unsigned threads = 0);

}  // namespace bpmkit
