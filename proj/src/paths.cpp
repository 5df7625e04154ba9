#include "bpmkit/paths.hpp"

#include <algorithm>
#include <optional>
#include <utility>

#include "bpmkit/errors.hpp"

namespace bpmkit {

bool is_acyclic(const ProcessModel& m) {
  const auto n = m.nodes().size();
  std::vector<std::size_t> indegree(n);
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i) {
    indegree[i] = m.incoming(i).size();
    if (indegree[i] == 0) ready.push_back(i);
  }
  std::size_t visited = 0;
  while (!ready.empty()) {
    auto v = ready.back();
    ready.pop_back();
    ++visited;
    for (auto f : m.outgoing(v)) {
      if (--indegree[m.target_index(f)] == 0) ready.push_back(m.target_index(f));
    }
  }
  return visited == n;
}

namespace {

struct Pending {
  std::size_t node;
  std::optional<std::size_t> via;
};

struct Walk {
  ExecutionPath path;
  std::vector<Pending> stack;
  std::vector<std::size_t> arrivals;
};

void explore(const ProcessModel& m, Walk w, std::vector<ExecutionPath>& out) {
  const auto& nodes = m.nodes();
  while (!w.stack.empty()) {
    Pending p = w.stack.back();
    w.stack.pop_back();
    if (p.via) w.path.flows.push_back(m.flows()[*p.via].id);
    const FlowNode& node = nodes[p.node];
    const auto in = m.incoming(p.node);
    const auto outs = m.outgoing(p.node);
    if (node.is_gateway() && node.gateway == GatewayKind::parallel && in.size() > 1) {
      if (++w.arrivals[p.node] < in.size()) continue;
    }
    w.path.nodes.push_back(node.id);
    if (node.is_gateway() && outs.size() > 1) {
      if (node.gateway == GatewayKind::inclusive) {
        throw InclusiveGatewayUnsupported("inclusive split '" + node.id + "' cannot be enumerated");
      }
      if (node.gateway == GatewayKind::exclusive) {
        for (std::size_t k = 0; k < outs.size(); ++k) {
          Walk branch = (k + 1 == outs.size()) ? std::move(w) : w;
          branch.path.branch_choices[node.id] = m.flows()[outs[k]].id;
          branch.stack.push_back({m.target_index(outs[k]), outs[k]});
          explore(m, std::move(branch), out);
        }
        return;
      }
    }
    for (auto it = outs.rbegin(); it != outs.rend(); ++it) w.stack.push_back({m.target_index(*it), *it});
  }
  bool reached_end = std::any_of(w.path.nodes.begin(), w.path.nodes.end(),
                                 [&](const Id& id) { return m.node(id).kind == NodeKind::end_event; });
  if (reached_end) out.push_back(std::move(w.path));
}

}  // namespace

std::vector<ExecutionPath> enumerate_paths(const ProcessModel& m) {
  if (!is_acyclic(m)) throw CyclicModelError("process '" + m.id() + "' contains a cycle");
  std::vector<ExecutionPath> out;
  for (std::size_t i = 0; i < m.nodes().size(); ++i) {
    if (m.nodes()[i].kind != NodeKind::start_event) continue;
    Walk w;
    w.arrivals.assign(m.nodes().size(), 0);
    w.stack.push_back({i, std::nullopt});
    explore(m, std::move(w), out);
  }
  return out;
}

}  // namespace bpmkit
