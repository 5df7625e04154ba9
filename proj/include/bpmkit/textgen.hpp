#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bpmkit/blocks.hpp"
#include "bpmkit/model.hpp"

namespace bpmkit {

struct Sentence {
  std::string text;
  std::vector<Id> sources;  // elements the sentence was generated from
};

struct Description {
  std::vector<Sentence> sentences;

  /// One sentence per line. Annotated mode appends "  [ids: a, b]".
  std::string render(bool annotate = false) const;
};

/// Paraphrases a block-structured process with fixed sentence templates.
/// Labels are inserted verbatim. `tree` must come from decompose_blocks(model).
Description describe(const ProcessModel& model, const BlockTree& tree);

/// "one" … "twelve", digits above.
std::string count_word(std::size_t n);
/// "first" … "twelfth", "13th" style above.
std::string ordinal_word(std::size_t n);

}  // namespace bpmkit
