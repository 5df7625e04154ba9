#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "fixtures.hpp"

using namespace bpmkit;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fx(const char* name) { return testing::fixture_path(name).string(); }

std::filesystem::path scratch(const std::string& name, const std::string& content) {
  auto dir = std::filesystem::temp_directory_path() / "bpmkit_cli_test";
  std::filesystem::create_directories(dir);
  auto p = dir / name;
  std::ofstream(p, std::ios::binary) << content;
  return p;
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

const std::string kAsIs = fx("sugar_beet_as_is.bpmn");
const std::string kToBe = fx("sugar_beet_to_be.bpmn");
const std::string kScn = fx("reference_times.scn");

}  // namespace

TEST_CASE("simulate") {
  auto r = run({"simulate", kAsIs, "--scenario", kScn});
  CHECK(r.code == cli::kSuccess);
  CHECK(contains(r.out, "paths: 8\n"));
  CHECK(contains(r.out, "best: 8:55:00\n"));
  CHECK(contains(r.out, "worst: 9:40:00\n"));
  CHECK(contains(r.out, "expected: 8:57:15\n"));
  CHECK(contains(r.err, "ignored <bpmndi:BPMNDiagram>"));

  auto t = run({"simulate", kToBe, "--scenario", kScn, "--format", "machine"});
  CHECK(t.code == 0);
  CHECK(contains(t.out, "best_seconds\t31500\n"));
  CHECK(contains(t.out, "worst_seconds\t32400\n"));
  CHECK(contains(t.out, "expected_seconds\t31545\n"));

  auto mc = run({"simulate", kAsIs, "--scenario", kScn, "--monte-carlo", "2000", "--seed", "7", "--format", "machine"});
  CHECK(mc.code == 0);
  CHECK(contains(mc.out, "mc.n\t2000\n"));
  CHECK(contains(mc.out, "mc.seed\t7\n"));
  CHECK(mc.out == run({"simulate", kAsIs, "--scenario", kScn, "--monte-carlo", "2000", "--seed", "7", "--format", "machine"}).out);

  CHECK(run({"simulate", kAsIs, "--scenario", kScn, "--monte-carlo", "0"}).code == cli::kUsage);
  CHECK(run({"simulate", kAsIs, "--scenario", kScn, "--seed", "3"}).code == cli::kUsage);
  CHECK(run({"simulate", kAsIs}).code == cli::kUsage);
}

TEST_CASE("diff") {
  auto r = run({"diff", kAsIs, kToBe, "--scenario", kScn});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "tasks: 18 -> 14\n"));
  CHECK(contains(r.out, "expected: -0:11:30 (8:57:15 -> 8:45:45)\n"));
  CHECK(contains(r.out, "removed (6):"));
  CHECK(contains(r.out, "added (2):"));
  auto m = run({"diff", kAsIs, kToBe, "--scenario", kScn, "--format", "machine"});
  CHECK(contains(m.out, "expected_delta_seconds\t-690\n"));
  CHECK(contains(m.out, "tasks_a\t18\n"));
  CHECK(contains(m.out, "tasks_b\t14\n"));
}

TEST_CASE("analyze, describe, validate") {
  auto a = run({"analyze", kAsIs, "--format", "machine"});
  CHECK(a.code == 0);
  CHECK(contains(a.out, "issues\t3\n"));
  CHECK(run({"analyze", kToBe}).out == "No issues found.\n");

  auto d = run({"describe", kToBe});
  CHECK(d.code == 0);
  CHECK(d.out.rfind("The Sugar Beet Farming To-Be process starts when Decision to Plant Beet Made.\n", 0) == 0);
  CHECK(contains(run({"describe", kToBe, "--annotate"}).out, "  [ids: Event_Start]\n"));

  auto v = run({"validate", kAsIs});
  CHECK(v.code == 0);
  CHECK(contains(v.out, "0 error(s)"));
}

TEST_CASE("exit codes for bad input") {
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"frobnicate"}).code == cli::kUsage);
  CHECK(run({"validate", "/nonexistent/model.bpmn"}).code == cli::kUsage);
  CHECK(run({"validate", kAsIs, "--bogus"}).code == cli::kUsage);
  CHECK(run({"--help"}).code == cli::kSuccess);

  auto broken = scratch("broken.bpmn", "<definitions><process");
  auto r = run({"validate", broken.string()});
  CHECK(r.code == cli::kUsage);
  CHECK(contains(r.err, "broken.bpmn"));

  auto bad_scn = scratch("bad.scn", "[durations]\n\"A\" = 05:99\n");
  CHECK(run({"simulate", kAsIs, "--scenario", bad_scn.string()}).code == cli::kUsage);

  auto short_scn = scratch("short.scn", "[durations]\n\"Plan *\" = 05:00\n");
  auto s = run({"simulate", kAsIs, "--scenario", short_scn.string()});
  CHECK(s.code == cli::kCheckFailed);
  CHECK(contains(s.err, "Sell Beets to Wholesalers"));

  // A task with no way to the end and no end event.
  auto dead_end = scratch("dead_end.bpmn", R"(<?xml version="1.0"?>
<definitions xmlns="http://www.omg.org/spec/BPMN/20100524/MODEL">
  <process id="P" name="Dead End">
    <startEvent id="S" name="Work Requested"/>
    <task id="T" name="Check item"/>
    <sequenceFlow id="F1" sourceRef="S" targetRef="T"/>
  </process>
</definitions>)");
  auto v = run({"validate", dead_end.string()});
  CHECK(v.code == cli::kCheckFailed);
  CHECK(contains(v.out, "error "));
}

TEST_CASE("machine output escapes and is stable") {
  auto odd = scratch("odd.bpmn", R"(<?xml version="1.0"?>
<definitions xmlns="http://www.omg.org/spec/BPMN/20100524/MODEL">
  <process id="P" name="Tab&#9;Name">
    <startEvent id="S" name="Work Requested"/>
    <task id="T" name="Check item"/>
    <endEvent id="E" name="Work Done"/>
    <sequenceFlow id="F1" sourceRef="S" targetRef="T"/>
    <sequenceFlow id="F2" sourceRef="T" targetRef="E"/>
  </process>
</definitions>)");
  auto scn = scratch("odd.scn", "scenario \"a\tb\\c\"\n[durations]\n\"Check item\" = 01:00\n");
  auto r = run({"simulate", odd.string(), "--scenario", scn.string(), "--format", "machine"});
  REQUIRE(r.code == 0);
  CHECK(contains(r.out, "scenario\ta\\tb\\\\c\n"));
  CHECK(contains(r.out, "expected_seconds\t60\n"));
  for (const auto& line : [&] {
         std::vector<std::string> ls;
         std::istringstream in(r.out);
         for (std::string l; std::getline(in, l);) ls.push_back(l);
         return ls;
       }()) {
    CHECK(std::count(line.begin(), line.end(), '\t') == 1);
  }
  CHECK(r.out == run({"simulate", odd.string(), "--scenario", scn.string(), "--format", "machine"}).out);
}
