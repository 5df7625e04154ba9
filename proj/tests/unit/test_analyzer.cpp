#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "bpmkit/analyzer.hpp"
#include "builder.hpp"
#include "fixtures.hpp"
#include "random_models.hpp"

using namespace bpmkit;
using bpmkit::testing::Builder;

namespace {

const IssueFinding* find(const std::vector<IssueFinding>& fs, IssueCategory c) {
  for (const auto& f : fs) {
    if (f.category == c) return &f;
  }
  return nullptr;
}

// Replaces every data store of the primary process by one shared store.
Collaboration merge_stores(const Collaboration& c) {
  auto parts = c.primary_process().parts();
  std::set<Id> stores;
  for (const auto& s : parts.data_stores) stores.insert(s.id);
  parts.data_stores = {DataStore{"DataStore_All", "All Data"}};
  std::vector<DataAssociation> assoc;
  for (auto a : parts.data_associations) {
    if (stores.count(a.artifact)) a.artifact = "DataStore_All";
    if (std::find(assoc.begin(), assoc.end(), a) == assoc.end()) assoc.push_back(a);
  }
  parts.data_associations = std::move(assoc);
  return testing::single(ProcessModel(std::move(parts)));
}

Collaboration relabel(const Collaboration& c, const Id& id, const std::string& label) {
  auto parts = c.primary_process().parts();
  for (auto& n : parts.nodes) {
    if (n.id == id) n.label = label;
  }
  return testing::single(ProcessModel(std::move(parts)));
}

RedesignReport run_compare(const Collaboration& a, const Collaboration& b, const Scenario& s) {
  return compare(a, b, bind(s, a.primary_process()), bind(s, b.primary_process()));
}

}  // namespace

TEST_CASE("as-is issues") {
  auto fs = detect_issues(testing::as_is());
  REQUIRE(fs.size() == 3);

  const auto* over = find(fs, IssueCategory::overprocessing);
  REQUIRE(over);
  CHECK(over->subject == "Field Geo-Data");
  CHECK(over->duplication_factor == 3);
  CHECK(over->waste_group == WasteGroup::overdo);
  CHECK(over->quantitative_impact == "Not applicable");
  std::set<Id> expected{"Task_CheckFmis1", "Task_CheckFmis2", "Task_CheckFmis3",
                        "Task_UpdateFmis1", "Task_UpdateFmis2", "Task_UpdateFmis3"};
  std::set<Id> got;
  for (const auto& e : over->elements) {
    if (e.rfind("Task_", 0) == 0) got.insert(e);
  }
  CHECK(got == expected);

  const auto* dist = find(fs, IssueCategory::data_distribution);
  REQUIRE(dist);
  CHECK(dist->subject == "Field Geo-Data");
  for (const char* s : {"DataStore_Fmis1", "DataStore_Fmis2", "DataStore_Fmis3"}) {
    CHECK(std::count(dist->elements.begin(), dist->elements.end(), s) == 1);
  }

  const auto* fmt = find(fs, IssueCategory::format_fragmentation);
  REQUIRE(fmt);
  CHECK(fmt->subject == "Field Geo-Data");
  for (const char* f : {"Format 1", "Format 2", "Format 3"}) {
    CHECK(fmt->description.find(f) != std::string::npos);
  }

  std::set<Id> ids;
  for (const auto& f : fs) ids.insert(f.id);
  CHECK(ids.size() == 3);
  CHECK(detect_issues(testing::as_is()).size() == 3);
}

TEST_CASE("to-be and trivial models have no issues") {
  CHECK(detect_issues(testing::to_be()).empty());
  Builder b;
  b.start("S").task("A", "Check record").end("E").store("DS", "Main DB").object("D", "Record").reads("A", "D").reads("A", "DS");
  b.chain({"S", "A", "E"});
  CHECK(detect_issues(testing::single(b.build())).empty());
}

TEST_CASE("merging stores removes distribution and duplication") {
  auto merged = merge_stores(testing::as_is());
  auto fs = detect_issues(merged);
  CHECK_FALSE(find(fs, IssueCategory::data_distribution));
  CHECK_FALSE(find(fs, IssueCategory::overprocessing));

  std::mt19937_64 rng(31337);
  for (int i = 0; i < 200; ++i) {
    auto c = testing::random_collaboration(rng);
    bool has_process = std::any_of(c.pools().begin(), c.pools().end(), [](const Pool& p) { return !p.black_box(); });
    if (!has_process || c.primary_process().data_stores().empty()) continue;
    // Only the primary process is merged; other pools are dropped.
    auto m = merge_stores(c);
    auto after = detect_issues(m);
    CHECK_FALSE(find(after, IssueCategory::data_distribution));
    CHECK_FALSE(find(after, IssueCategory::overprocessing));
  }
}

TEST_CASE("redesign comparison") {
  auto s = testing::reference_scenario();
  auto r = run_compare(testing::as_is(), testing::to_be(), s);
  CHECK(r.task_count_a == 18);
  CHECK(r.task_count_b == 14);
  auto removed = r.tasks_removed;
  std::sort(removed.begin(), removed.end());
  CHECK(removed == std::vector<std::string>{
                       "Check Field Geo-Data in FMIS 1", "Check Field Geo-Data in FMIS 2",
                       "Check Field Geo-Data in FMIS 3", "Update FMIS 1 Field Geo-Data",
                       "Update FMIS 2 Field Geo-Data", "Update FMIS 3 Field Geo-Data"});
  auto added = r.tasks_added;
  std::sort(added.begin(), added.end());
  CHECK(added == std::vector<std::string>{"Check Field Geo-Data", "Update Field Twin Geo-Data"});
  CHECK(r.task_count_a - r.tasks_removed.size() + r.tasks_added.size() == r.task_count_b);
  CHECK(r.expected_delta == -690);
  CHECK(r.best_delta == 31500 - 32100);
  CHECK(r.worst_delta == 32400 - 34800);
  CHECK(r.resolved_issues.size() == 3);
  CHECK_FALSE(r.heuristic_tags.empty());

  SUBCASE("mirror") {
    auto back = run_compare(testing::to_be(), testing::as_is(), s);
    CHECK(back.tasks_removed == r.tasks_added);
    CHECK(back.tasks_added == r.tasks_removed);
    CHECK(back.expected_delta == -r.expected_delta);
    CHECK(back.best_delta == -r.best_delta);
    CHECK(back.worst_delta == -r.worst_delta);
    CHECK(back.resolved_issues.empty());
  }
  SUBCASE("identity") {
    auto same = run_compare(testing::as_is(), testing::as_is(), s);
    CHECK(same.tasks_removed.empty());
    CHECK(same.tasks_added.empty());
    CHECK(same.best_delta == 0);
    CHECK(same.worst_delta == 0);
    CHECK(same.expected_delta == 0);
    CHECK(same.resolved_issues.empty());
  }
  SUBCASE("one relabelled task") {
    auto a = testing::to_be();
    auto b = relabel(a, "Task_PerformFertilization", "Perform Fertilisation");
    auto scn = s;
    scn.durations.push_back({"Perform Fertilisation", Duration::parse("3:20:00"), 0});
    auto rr = run_compare(a, b, scn);
    CHECK(rr.tasks_removed == std::vector<std::string>{"Perform Fertilization"});
    CHECK(rr.tasks_added == std::vector<std::string>{"Perform Fertilisation"});
    CHECK(rr.expected_delta == 0);
    CHECK(rr.task_count_a == rr.task_count_b);
  }
}

TEST_CASE("manual findings") {
  auto f = manual_finding("Issue_4", "Waiting for invoices", WasteGroup::hold, "Invoices arrive by post.",
                          "Observed over one season.", "Payment is delayed.");
  CHECK(f.category == IssueCategory::manual);
  CHECK(f.waste_group == WasteGroup::hold);
  CHECK(f.quantitative_impact == "Not applicable");
  CHECK(f.title == "Waiting for invoices");
  CHECK(to_string(IssueCategory::format_fragmentation) == "format_fragmentation");
  CHECK(to_string(WasteGroup::overdo) == "overdo");
}
