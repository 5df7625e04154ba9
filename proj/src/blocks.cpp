#include "bpmkit/blocks.hpp"

#include <functional>

#include "bpmkit/errors.hpp"

namespace bpmkit {

namespace {

enum class StopKind { end, join, loop_exit };

struct Stop {
  StopKind kind;
  std::size_t node = 0;
};

class Decomposer {
 public:
  explicit Decomposer(const ProcessModel& m)
      : m_(m), visited_(m.nodes().size(), false), back_edge_(m.flows().size(), false) {
    find_back_edges();
  }

  BlockTree run() {
    std::optional<std::size_t> start;
    for (std::size_t i = 0; i < m_.nodes().size(); ++i) {
      if (m_.nodes()[i].kind != NodeKind::start_event) continue;
      if (start) fail("more than one start event");
      start = i;
    }
    if (!start) fail("no start event");
    SequenceBlock root;
    Stop stop = walk(*start, root.children);
    if (stop.kind != StopKind::end) fail("gateway '" + id(stop.node) + "' has no matching split");
    for (std::size_t i = 0; i < m_.nodes().size(); ++i) {
      if (!m_.nodes()[i].is_gateway() && !visited_[i]) fail("node '" + id(i) + "' is not covered by any block");
    }
    return Block{std::move(root)};
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw UnstructuredError("process '" + m_.id() + "' is not block-structured: " + why);
  }

  const Id& id(std::size_t n) const { return m_.nodes()[n].id; }

  void find_back_edges() {
    const auto n = m_.nodes().size();
    std::vector<int> colour(n, 0);  // 0 new, 1 on stack, 2 done
    std::function<void(std::size_t)> dfs = [&](std::size_t v) {
      colour[v] = 1;
      for (auto f : m_.outgoing(v)) {
        auto t = m_.target_index(f);
        if (colour[t] == 1) back_edge_[f] = true;
        else if (colour[t] == 0) dfs(t);
      }
      colour[v] = 2;
    };
    for (std::size_t i = 0; i < n; ++i) {
      if (m_.nodes()[i].kind == NodeKind::start_event && colour[i] == 0) dfs(i);
    }
  }

  bool has_back_edge_in(std::size_t n) const {
    for (auto f : m_.incoming(n)) {
      if (back_edge_[f]) return true;
    }
    return false;
  }

  std::optional<std::size_t> back_edge_out(std::size_t n) const {
    for (auto f : m_.outgoing(n)) {
      if (back_edge_[f]) return f;
    }
    return std::nullopt;
  }

  void visit(std::size_t n) {
    if (visited_[n]) fail("node '" + id(n) + "' is reached by more than one block");
    visited_[n] = true;
  }

  std::size_t single_successor(std::size_t n) const {
    auto outs = m_.outgoing(n);
    if (outs.size() != 1) fail("node '" + id(n) + "' has " + std::to_string(outs.size()) + " outgoing flows");
    return m_.target_index(outs[0]);
  }

  Stop walk(std::size_t cur, std::vector<Block>& out) {
    for (;;) {
      const FlowNode& node = m_.nodes()[cur];
      const auto in = m_.incoming(cur);
      const auto outs = m_.outgoing(cur);

      if (!node.is_gateway()) {
        if (in.size() > 1) fail("node '" + node.id + "' merges flows without a gateway");
        visit(cur);
        out.push_back(Block{LeafBlock{node.id}});
        if (outs.empty()) {
          if (node.kind != NodeKind::end_event) fail("node '" + node.id + "' is a dead end");
          return {StopKind::end, cur};
        }
        cur = single_successor(cur);
        continue;
      }

      if (in.size() > 1 && outs.size() > 1) fail("gateway '" + node.id + "' both splits and joins");

      if (in.size() > 1 && has_back_edge_in(cur)) {
        cur = loop(cur, out);
        continue;
      }
      if (outs.size() > 1) {
        if (back_edge_out(cur)) return {StopKind::loop_exit, cur};
        cur = split(cur, out);
        continue;
      }
      if (in.size() > 1) return {StopKind::join, cur};

      visit(cur);  // pass-through gateway
      cur = single_successor(cur);
    }
  }

  std::size_t loop(std::size_t entry, std::vector<Block>& out) {
    const FlowNode& join = m_.nodes()[entry];
    if (join.gateway != GatewayKind::exclusive || m_.incoming(entry).size() != 2) {
      fail("loop entry '" + join.id + "' must be an exclusive join with two incoming flows");
    }
    visit(entry);
    LoopBlock block;
    block.entry = join.id;
    Stop stop = walk(single_successor(entry), block.body);
    if (stop.kind != StopKind::loop_exit) fail("loop at '" + join.id + "' has no exit split");
    const auto exit = stop.node;
    const FlowNode& split = m_.nodes()[exit];
    auto outs = m_.outgoing(exit);
    auto back = back_edge_out(exit);
    if (split.gateway != GatewayKind::exclusive || outs.size() != 2 || m_.target_index(*back) != entry) {
      fail("loop exit '" + split.id + "' must be an exclusive split returning to '" + join.id + "'");
    }
    visit(exit);
    auto exit_flow = outs[0] == *back ? outs[1] : outs[0];
    block.exit = split.id;
    block.back_edge = m_.flows()[*back].id;
    block.exit_flow = m_.flows()[exit_flow].id;
    out.push_back(Block{std::move(block)});
    return m_.target_index(exit_flow);
  }

  std::size_t split(std::size_t s, std::vector<Block>& out) {
    const FlowNode& gw = m_.nodes()[s];
    visit(s);
    std::vector<Branch> branches;
    std::optional<std::size_t> join;
    for (auto f : m_.outgoing(s)) {
      const auto& flow = m_.flows()[f];
      Branch b{flow.id, flow.condition, {}};
      auto t = m_.target_index(f);
      const FlowNode& target = m_.nodes()[t];
      Stop stop{StopKind::join, t};
      bool direct_join = target.is_gateway() && m_.incoming(t).size() > 1 && !has_back_edge_in(t);
      if (!direct_join) stop = walk(t, b.body);
      if (stop.kind != StopKind::join) fail("branch '" + flow.id + "' of split '" + gw.id + "' does not reach a join");
      if (join && *join != stop.node) {
        fail("branches of split '" + gw.id + "' end at different joins '" + id(*join) + "' and '" +
             id(stop.node) + "'");
      }
      join = stop.node;
      branches.push_back(std::move(b));
    }
    const FlowNode& j = m_.nodes()[*join];
    if (j.gateway != gw.gateway) fail("split '" + gw.id + "' and join '" + j.id + "' differ in kind");
    if (m_.incoming(*join).size() != branches.size()) {
      fail("join '" + j.id + "' has " + std::to_string(m_.incoming(*join).size()) + " incoming flows but split '" +
           gw.id + "' has " + std::to_string(branches.size()) + " branches");
    }
    visit(*join);
    if (gw.gateway == GatewayKind::parallel) {
      out.push_back(Block{ParallelBlock{gw.id, j.id, std::move(branches)}});
    } else {
      out.push_back(Block{ChoiceBlock{gw.id, j.id, gw.gateway, std::move(branches)}});
    }
    return single_successor(*join);
  }

  const ProcessModel& m_;
  std::vector<bool> visited_;
  std::vector<bool> back_edge_;
};

void flatten_into(const std::vector<Block>& blocks, std::vector<Id>& out);

void flatten_into(const Block& b, std::vector<Id>& out) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, LeafBlock>) {
          out.push_back(x.node);
        } else if constexpr (std::is_same_v<T, SequenceBlock>) {
          flatten_into(x.children, out);
        } else if constexpr (std::is_same_v<T, LoopBlock>) {
          flatten_into(x.body, out);
        } else {
          for (const auto& br : x.branches) flatten_into(br.body, out);
        }
      },
      b.content);
}

void flatten_into(const std::vector<Block>& blocks, std::vector<Id>& out) {
  for (const auto& b : blocks) flatten_into(b, out);
}

}  // namespace

BlockTree decompose_blocks(const ProcessModel& model) { return Decomposer(model).run(); }

std::vector<Id> flatten(const BlockTree& tree) {
  std::vector<Id> out;
  flatten_into(tree, out);
  return out;
}

}  // namespace bpmkit
