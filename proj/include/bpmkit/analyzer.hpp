#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bpmkit/model.hpp"
#include "bpmkit/scenario.hpp"
#include "bpmkit/simulator.hpp"

namespace bpmkit {

enum class IssueCategory { overprocessing, data_distribution, format_fragmentation, manual };
enum class WasteGroup { move, hold, overdo, none };

std::string_view to_string(IssueCategory c) noexcept;
std::string_view to_string(WasteGroup g) noexcept;

/// One row of an issue register.
struct IssueFinding {
  Id id;
  std::string title;
  IssueCategory category = IssueCategory::manual;
  WasteGroup waste_group = WasteGroup::none;
  std::string subject;  // data object base name the finding is about
  std::string description;
  std::string data_and_assumptions;
  std::string qualitative_impact;
  std::string quantitative_impact = "Not applicable";
  std::vector<Id> elements;
  std::optional<int> duplication_factor;
};

/// Findings with no mechanical detector (move/hold wastes and the like).
IssueFinding manual_finding(Id id, std::string title, WasteGroup group, std::string description,
                            std::string data_and_assumptions, std::string qualitative_impact);

/// Runs the overprocessing, data-distribution and format-fragmentation
/// detectors over every process of the collaboration.
///
/// A data object is taken to reside in the data stores that the same task or
/// event accesses in the same direction.
std::vector<IssueFinding> detect_issues(const Collaboration& collaboration);

struct RedesignReport {
  std::size_t task_count_a = 0;
  std::size_t task_count_b = 0;
  std::vector<std::string> tasks_removed;
  std::vector<std::string> tasks_added;
  SimulationReport simulation_a;
  SimulationReport simulation_b;
  // b minus a, in seconds, from the reported (rounded) values
  std::int64_t best_delta = 0;
  std::int64_t worst_delta = 0;
  std::int64_t expected_delta = 0;
  std::vector<IssueFinding> resolved_issues;
  std::vector<std::string> heuristic_tags;
};

/// Compares two variants of a process. Tasks are matched by label (as a
/// multiset); issues by (category, subject).
RedesignReport compare(const Collaboration& a, const Collaboration& b, const BoundScenario& bound_a,
                       const BoundScenario& bound_b, TimeMode mode = TimeMode::work_content);

}  // namespace bpmkit
