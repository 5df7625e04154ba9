#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "bpmkit/model.hpp"

namespace bpmkit {

inline constexpr std::string_view kBpmnNamespace = "http://www.omg.org/spec/BPMN/20100524/MODEL";

struct IgnoredElement {
  std::string name;  // local name, prefixed with the namespace alias for non-BPMN elements
  Id id;             // empty when the element carries no id

  friend bool operator==(const IgnoredElement&, const IgnoredElement&) = default;
};

struct ParseReport {
  Collaboration model;
  std::vector<IgnoredElement> ignored_elements;
};

/// Reads the supported BPMN 2.0 subset. Elements outside the subset are
/// skipped together with their content and listed in ignored_elements.
/// Throws XmlError, SchemaError or DanglingRefError.
ParseReport parse_bpmn(std::string_view document);
ParseReport parse_bpmn_file(const std::filesystem::path& path);

/// Deterministic XML for the supported subset; elements are sorted by id and
/// no diagram interchange is emitted.
std::string serialize_bpmn(const Collaboration& model);

}  // namespace bpmkit
