#include "bpmkit/model.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>

#include "bpmkit/errors.hpp"

namespace bpmkit {

std::string_view to_string(GatewayKind kind) noexcept {
  switch (kind) {
    case GatewayKind::exclusive: return "exclusive";
    case GatewayKind::parallel: return "parallel";
    case GatewayKind::inclusive: return "inclusive";
  }
  return "exclusive";
}

std::string_view to_string(NodeKind kind) noexcept {
  switch (kind) {
    case NodeKind::start_event: return "start event";
    case NodeKind::intermediate_catch_event: return "intermediate catch event";
    case NodeKind::end_event: return "end event";
    case NodeKind::task: return "task";
    case NodeKind::gateway: return "gateway";
  }
  return "task";
}

FlowNode FlowNode::start(Id id, std::string label, EventTrigger trigger) {
  FlowNode n{std::move(id), std::move(label), NodeKind::start_event};
  n.trigger = trigger;
  return n;
}

FlowNode FlowNode::catch_event(Id id, std::string label, EventTrigger trigger) {
  FlowNode n{std::move(id), std::move(label), NodeKind::intermediate_catch_event};
  n.trigger = trigger;
  return n;
}

FlowNode FlowNode::end(Id id, std::string label) {
  return FlowNode{std::move(id), std::move(label), NodeKind::end_event};
}

FlowNode FlowNode::task(Id id, std::string label, TaskMarker marker) {
  FlowNode n{std::move(id), std::move(label), NodeKind::task};
  n.marker = marker;
  return n;
}

FlowNode FlowNode::make_gateway(Id id, std::string label, GatewayKind kind) {
  FlowNode n{std::move(id), std::move(label), NodeKind::gateway};
  n.gateway = kind;
  return n;
}

DataObject DataObject::from_label(Id id, std::string_view label) {
  DataObject obj{std::move(id), {}, std::nullopt, std::nullopt};
  std::string_view rest = label;
  // Suffixes are only split off at an exact " [" / " (" separator and only
  // when a non-empty base remains, so label() reproduces the input.
  if (rest.size() >= 3 && rest.back() == ']') {
    auto pos = rest.rfind(" [");
    if (pos != std::string_view::npos && pos > 0) {
      obj.state = std::string(rest.substr(pos + 2, rest.size() - pos - 3));
      rest = rest.substr(0, pos);
    }
  }
  if (rest.size() >= 3 && rest.back() == ')') {
    auto pos = rest.rfind(" (");
    if (pos != std::string_view::npos && pos > 0) {
      obj.format = std::string(rest.substr(pos + 2, rest.size() - pos - 3));
      rest = rest.substr(0, pos);
    }
  }
  obj.base_name = std::string(rest);
  return obj;
}

std::string DataObject::label() const {
  std::string out = base_name;
  if (format) out += " (" + *format + ")";
  if (state) out += " [" + *state + "]";
  return out;
}

namespace {

template <class T, class Key>
void index_unique(const std::vector<T>& items, Key key, std::map<Id, std::size_t, std::less<>>& index,
                  std::set<Id, std::less<>>& all_ids, std::string_view what) {
  for (std::size_t i = 0; i < items.size(); ++i) {
    const Id& id = key(items[i]);
    if (id.empty()) throw ModelError(std::string(what) + " with empty id");
    if (!all_ids.insert(id).second) throw ModelError("duplicate id '" + id + "'");
    index.emplace(id, i);
  }
}

}  // namespace

ProcessModel::ProcessModel(ProcessParts parts) : parts_(std::move(parts)) {
  std::set<Id, std::less<>> ids;
  if (!parts_.id.empty()) ids.insert(parts_.id);
  index_unique(parts_.nodes, [](const FlowNode& n) -> const Id& { return n.id; }, node_index_, ids,
               "flow node");
  index_unique(parts_.flows, [](const SequenceFlow& f) -> const Id& { return f.id; }, flow_index_, ids,
               "sequence flow");
  index_unique(parts_.data_objects, [](const DataObject& d) -> const Id& { return d.id; }, object_index_,
               ids, "data object");
  index_unique(parts_.data_stores, [](const DataStore& d) -> const Id& { return d.id; }, store_index_, ids,
               "data store");
  std::map<Id, std::size_t, std::less<>> lane_index;
  index_unique(parts_.lanes, [](const Lane& l) -> const Id& { return l.id; }, lane_index, ids, "lane");

  for (const auto& obj : parts_.data_objects) {
    if (obj.base_name.empty()) throw ModelError("data object '" + obj.id + "' has an empty base name");
  }

  out_.assign(parts_.nodes.size(), {});
  in_.assign(parts_.nodes.size(), {});
  flow_ends_.reserve(parts_.flows.size());
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < parts_.flows.size(); ++i) {
    const auto& f = parts_.flows[i];
    auto s = node_index(f.source);
    auto t = node_index(f.target);
    if (!s) throw ModelError("sequence flow '" + f.id + "' has unknown source '" + f.source + "'");
    if (!t) throw ModelError("sequence flow '" + f.id + "' has unknown target '" + f.target + "'");
    if (*s == *t) throw ModelError("sequence flow '" + f.id + "' is a self-loop");
    if (!edges.emplace(*s, *t).second) {
      throw ModelError("sequence flow '" + f.id + "' duplicates an edge " + f.source + " -> " + f.target);
    }
    out_[*s].push_back(i);
    in_[*t].push_back(i);
    flow_ends_.emplace_back(*s, *t);
  }

  for (const auto& a : parts_.data_associations) {
    const FlowNode* n = find_node(a.node);
    if (n == nullptr) throw ModelError("data association references unknown node '" + a.node + "'");
    if (n->is_gateway()) throw ModelError("data association attached to gateway '" + a.node + "'");
    if (!object_index_.contains(a.artifact) && !store_index_.contains(a.artifact)) {
      throw ModelError("data association references unknown artifact '" + a.artifact + "'");
    }
  }

  for (const auto& lane : parts_.lanes) {
    for (const auto& m : lane.members) {
      if (!node_index_.contains(m)) {
        throw ModelError("lane '" + lane.id + "' references unknown node '" + m + "'");
      }
    }
  }
}

std::optional<std::size_t> ProcessModel::node_index(std::string_view id) const {
  auto it = node_index_.find(id);
  if (it == node_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> ProcessModel::flow_index(std::string_view id) const {
  auto it = flow_index_.find(id);
  if (it == flow_index_.end()) return std::nullopt;
  return it->second;
}

const FlowNode& ProcessModel::node(std::string_view id) const {
  auto idx = node_index(id);
  if (!idx) throw std::out_of_range("unknown node '" + std::string(id) + "'");
  return parts_.nodes[*idx];
}

const SequenceFlow& ProcessModel::flow(std::string_view id) const {
  auto idx = flow_index(id);
  if (!idx) throw std::out_of_range("unknown sequence flow '" + std::string(id) + "'");
  return parts_.flows[*idx];
}

const FlowNode* ProcessModel::find_node(std::string_view id) const {
  auto idx = node_index(id);
  return idx ? &parts_.nodes[*idx] : nullptr;
}

const DataObject* ProcessModel::find_data_object(std::string_view id) const {
  auto it = object_index_.find(id);
  return it == object_index_.end() ? nullptr : &parts_.data_objects[it->second];
}

const DataStore* ProcessModel::find_data_store(std::string_view id) const {
  auto it = store_index_.find(id);
  return it == store_index_.end() ? nullptr : &parts_.data_stores[it->second];
}

std::size_t ProcessModel::task_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(parts_.nodes.begin(), parts_.nodes.end(), [](const FlowNode& n) { return n.is_task(); }));
}

Collaboration::Collaboration(Id id, std::vector<Pool> pools, std::vector<MessageFlow> message_flows)
    : id_(std::move(id)), pools_(std::move(pools)), message_flows_(std::move(message_flows)) {
  // element id -> owning pool
  std::map<Id, std::size_t, std::less<>> owner;
  std::set<Id, std::less<>> ids;
  std::set<std::string, std::less<>> store_names;
  auto claim = [&](const Id& element, std::size_t pool) {
    if (!ids.insert(element).second) throw ModelError("duplicate id '" + element + "' in collaboration");
    owner.emplace(element, pool);
  };
  if (!id_.empty()) ids.insert(id_);
  if (id_.empty()) {
    // Without a collaboration element there is nowhere to declare participants.
    if (!message_flows_.empty()) throw ModelError("message flows require a collaboration id");
    for (const auto& pool : pools_) {
      if (!pool.id.empty()) throw ModelError("participant '" + pool.id + "' requires a collaboration id");
    }
  }
  for (std::size_t p = 0; p < pools_.size(); ++p) {
    const Pool& pool = pools_[p];
    if (pool.id.empty() && pool.black_box()) throw ModelError("black-box pool without a participant id");
    if (!pool.id.empty()) claim(pool.id, p);
    if (!pool.process) continue;
    const ProcessModel& m = *pool.process;
    claim(m.id(), p);
    for (const auto& n : m.nodes()) claim(n.id, p);
    for (const auto& f : m.flows()) claim(f.id, p);
    for (const auto& d : m.data_objects()) claim(d.id, p);
    for (const auto& s : m.data_stores()) {
      claim(s.id, p);
      if (!store_names.insert(s.name).second) {
        throw ModelError("data store name '" + s.name + "' is not unique in the collaboration");
      }
    }
    for (const auto& l : m.lanes()) claim(l.id, p);
  }
  for (const auto& mf : message_flows_) {
    if (mf.id.empty()) throw ModelError("message flow with empty id");
    if (!ids.insert(mf.id).second) throw ModelError("duplicate id '" + mf.id + "' in collaboration");
    auto s = owner.find(mf.source);
    auto t = owner.find(mf.target);
    if (s == owner.end()) throw ModelError("message flow '" + mf.id + "' has unknown source '" + mf.source + "'");
    if (t == owner.end()) throw ModelError("message flow '" + mf.id + "' has unknown target '" + mf.target + "'");
    if (s->second == t->second) {
      throw ModelError("message flow '" + mf.id + "' connects elements of the same pool");
    }
  }
}

const ProcessModel& Collaboration::primary_process() const {
  for (const auto& p : pools_) {
    if (p.process) return *p.process;
  }
  throw ModelError("collaboration contains no process");
}

namespace {

template <class T>
std::vector<T> sorted_by_id(std::vector<T> v) {
  std::sort(v.begin(), v.end(), [](const T& a, const T& b) { return a.id < b.id; });
  return v;
}

ProcessParts canonical(const ProcessParts& p) {
  ProcessParts c = p;
  c.nodes = sorted_by_id(c.nodes);
  c.flows = sorted_by_id(c.flows);
  c.data_objects = sorted_by_id(c.data_objects);
  c.data_stores = sorted_by_id(c.data_stores);
  c.lanes = sorted_by_id(c.lanes);
  for (auto& l : c.lanes) std::sort(l.members.begin(), l.members.end());
  std::sort(c.data_associations.begin(), c.data_associations.end(),
            [](const DataAssociation& a, const DataAssociation& b) {
              return std::tie(a.node, a.artifact, a.direction) < std::tie(b.node, b.artifact, b.direction);
            });
  return c;
}

}  // namespace

bool structurally_equal(const ProcessModel& a, const ProcessModel& b) {
  return canonical(a.parts()) == canonical(b.parts());
}

bool structurally_equal(const Collaboration& a, const Collaboration& b) {
  if (a.id() != b.id() || a.pools().size() != b.pools().size()) return false;
  auto key = [](const Pool& p) { return std::pair(p.id, p.process ? p.process->id() : Id{}); };
  std::vector<const Pool*> pa, pb;
  for (const auto& p : a.pools()) pa.push_back(&p);
  for (const auto& p : b.pools()) pb.push_back(&p);
  auto by_key = [&](const Pool* x, const Pool* y) { return key(*x) < key(*y); };
  std::sort(pa.begin(), pa.end(), by_key);
  std::sort(pb.begin(), pb.end(), by_key);
  for (std::size_t i = 0; i < pa.size(); ++i) {
    if (pa[i]->id != pb[i]->id || pa[i]->name != pb[i]->name) return false;
    if (pa[i]->black_box() != pb[i]->black_box()) return false;
    if (pa[i]->process && !structurally_equal(*pa[i]->process, *pb[i]->process)) return false;
  }
  return sorted_by_id(a.message_flows()) == sorted_by_id(b.message_flows());
}

}  // namespace bpmkit
