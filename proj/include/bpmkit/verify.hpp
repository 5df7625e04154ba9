#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "bpmkit/model.hpp"

namespace bpmkit {

enum class Severity { error, warning };

/// One violated rule. Codes:
///   E01 unreachable node          E02 node cannot reach an end event
///   E03 mixed split/join gateway  E04 dangling sequence flow
///   W01 more than one start event W02 too many elements
///   W03 task label not verb-object W04 exclusive split without conditions
struct Diagnostic {
  Severity severity = Severity::error;
  std::string code;
  std::string message;
  std::vector<Id> elements;
};

/// Case-insensitive verb set used by the W03 label rule.
class VerbLexicon {
 public:
  VerbLexicon() = default;
  /// One verb per line; '#' starts a comment line.
  static VerbLexicon parse(std::string_view text);
  /// The lexicon shipped in config/verbs.txt.
  static const VerbLexicon& builtin();

  bool contains(std::string_view word) const;
  std::size_t size() const noexcept { return verbs_.size(); }

 private:
  std::set<std::string, std::less<>> verbs_;
};

struct LintOptions {
  std::size_t max_elements = 50;
  const VerbLexicon* verbs = nullptr;  // nullptr selects VerbLexicon::builtin()
};

/// Never throws on model content; an empty result means the model passes.
std::vector<Diagnostic> validate_structure(const ProcessModel& model, const LintOptions& options = {});

bool has_errors(const std::vector<Diagnostic>& diagnostics) noexcept;

}  // namespace bpmkit
