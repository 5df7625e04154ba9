#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "bpmkit/duration.hpp"
#include "bpmkit/model.hpp"
#include "bpmkit/rational.hpp"

namespace bpmkit {

/// A task matcher: an exact label, or a pattern where `*` matches any run of
/// characters.
struct DurationRule {
  std::string matcher;
  Duration duration;
  int line = 0;

  bool is_glob() const noexcept { return matcher.find('*') != std::string::npos; }
};

struct FlowIdRef {
  Id flow;
};

struct ConditionRef {
  std::string gateway_label;
  std::string condition_label;
};

struct ProbabilityRule {
  std::variant<FlowIdRef, ConditionRef> target;
  Rational probability;
  int line = 0;
};

struct Scenario {
  std::string name;
  std::vector<DurationRule> durations;
  std::vector<ProbabilityRule> probabilities;
};

/// Parses the line-oriented scenario format:
///
///     scenario "name"
///     [durations]
///     "Check Field Geo-Data in FMIS *" = 05:00
///     [probabilities]
///     "Gateway label" / "condition label" = 0.05
///     Flow_1 = 0.5
///
/// Throws ScenarioSyntaxError or ScenarioRangeError with the line number.
Scenario parse_scenario(std::string_view text);

/// `*` is the only wildcard; every other character matches itself.
bool glob_match(std::string_view pattern, std::string_view text) noexcept;

/// A scenario resolved against one process: a duration for every node
/// (zero for events and gateways) and a probability for every outgoing flow
/// of every exclusive split.
class BoundScenario {
 public:
  const ProcessModel& model() const noexcept { return model_; }
  const std::string& name() const noexcept { return name_; }

  /// By node index / node id. Unknown ids throw std::out_of_range.
  Duration duration(std::size_t node_index) const { return durations_.at(node_index); }
  Duration duration(std::string_view node_id) const;

  /// Probability of taking `flow_id` at exclusive split `gateway_id`.
  const Rational& probability(std::string_view gateway_id, std::string_view flow_id) const;
  const std::map<std::pair<Id, Id>, Rational>& probabilities() const noexcept { return probabilities_; }

 private:
  friend BoundScenario bind(const Scenario& scenario, const ProcessModel& model);
  BoundScenario(ProcessModel model, std::string name) : model_(std::move(model)), name_(std::move(name)) {}

  ProcessModel model_;
  std::string name_;
  std::vector<Duration> durations_;
  std::map<std::pair<Id, Id>, Rational> probabilities_;
};

/// Exact matchers win over globs. At an exclusive split with exactly one
/// unspecified branch, that branch receives the complement. Throws
/// MissingDurationError, MissingProbabilityError, AmbiguousMatchError or
/// SumError.
BoundScenario bind(const Scenario& scenario, const ProcessModel& model);

}  // namespace bpmkit
