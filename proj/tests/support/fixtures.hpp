#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "bpmkit/bpmn_io.hpp"
#include "bpmkit/scenario.hpp"

namespace bpmkit::testing {

inline std::filesystem::path fixture_path(const std::string& name) {
  return std::filesystem::path(BPMKIT_FIXTURE_DIR) / name;
}

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline Collaboration as_is() { return parse_bpmn_file(fixture_path("sugar_beet_as_is.bpmn")).model; }
inline Collaboration to_be() { return parse_bpmn_file(fixture_path("sugar_beet_to_be.bpmn")).model; }
inline Scenario reference_scenario() { return parse_scenario(read_text(fixture_path("reference_times.scn"))); }

}  // namespace bpmkit::testing
