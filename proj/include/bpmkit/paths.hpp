#pragma once

#include <map>
#include <vector>

#include "bpmkit/model.hpp"

namespace bpmkit {

/// One start-to-end execution of a process. `flows` lists every sequence
/// flow taken, in traversal order; `branch_choices` maps each exclusive split
/// on the path to the outgoing flow that was chosen.
struct ExecutionPath {
  std::vector<Id> nodes;
  std::vector<Id> flows;
  std::map<Id, Id> branch_choices;

  friend bool operator==(const ExecutionPath&, const ExecutionPath&) = default;
};

bool is_acyclic(const ProcessModel& model);

/// All start-to-end paths, one per combination of exclusive-split choices.
/// Parallel branches are all traversed, in document order of the split's
/// outgoing flows. Throws CyclicModelError for cyclic graphs and
/// InclusiveGatewayUnsupported when an inclusive split is present.
std::vector<ExecutionPath> enumerate_paths(const ProcessModel& model);

}  // namespace bpmkit
