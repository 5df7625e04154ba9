#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "bpmkit/model.hpp"
#include "bpmkit/rational.hpp"
#include "bpmkit/scenario.hpp"

namespace bpmkit::testing {

struct GenOptions {
  int max_nodes = 20;  // including start and end events
  int max_splits = 4;  // split gateways of any kind, loop splits included
  bool parallel = true;
  bool loops = false;
  bool inclusive = false;
};

/// A block-structured model together with a scenario and the figures an
/// independent recursion over the generating tree predicts for it.
struct GeneratedModel {
  ProcessModel model;
  Scenario scenario;
  int splits = 0;
  // Oracle values; meaningful only for acyclic models without inclusive splits.
  Rational expected;         // work content: parallel branches add up
  Rational expected_cycle;   // cycle time: parallel branches take the longest
  std::int64_t best = 0;     // over branches with non-zero probability
  std::int64_t worst = 0;
  std::uint64_t path_count = 0;
};

GeneratedModel random_structured_model(std::mt19937_64& rng, const GenOptions& options = {});

/// An arbitrary collaboration inside the parser's subset: several pools
/// (some black-box), lanes, data objects with format/state annotations,
/// message flows and awkward label characters. Control flow is not
/// necessarily well-structured.
Collaboration random_collaboration(std::mt19937_64& rng);

}  // namespace bpmkit::testing
