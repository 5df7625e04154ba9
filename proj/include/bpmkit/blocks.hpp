#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bpmkit/model.hpp"

namespace bpmkit {

struct Block;

struct LeafBlock {
  Id node;
};

struct SequenceBlock {
  std::vector<Block> children;
};

/// One outgoing branch of a split. An empty body means the flow goes straight
/// to the matching join.
struct Branch {
  Id flow;
  std::optional<std::string> condition;
  std::vector<Block> body;
};

/// Exclusive or inclusive choice between matched split and join gateways.
struct ChoiceBlock {
  Id split;
  Id join;
  GatewayKind kind = GatewayKind::exclusive;
  std::vector<Branch> branches;
};

struct ParallelBlock {
  Id split;
  Id join;
  std::vector<Branch> branches;
};

/// Repeat-until loop: an exclusive join `entry`, the body, and an exclusive
/// split `exit` whose `back_edge` returns to `entry` and whose `exit_flow`
/// leaves the loop.
struct LoopBlock {
  Id entry;
  Id exit;
  std::vector<Block> body;
  Id back_edge;
  Id exit_flow;
};

struct Block {
  std::variant<LeafBlock, SequenceBlock, ChoiceBlock, ParallelBlock, LoopBlock> content;
};

using BlockTree = Block;

/// Decomposes a block-structured process into nested blocks. The root is a
/// SequenceBlock running from the start event to the end event. Throws
/// UnstructuredError when splits and joins do not nest.
BlockTree decompose_blocks(const ProcessModel& model);

/// Leaf node ids in tree order.
std::vector<Id> flatten(const BlockTree& tree);

}  // namespace bpmkit
