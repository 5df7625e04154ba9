#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bpmkit {

using Id = std::string;

enum class NodeKind { start_event, intermediate_catch_event, end_event, task, gateway };
enum class EventTrigger { none, message };
enum class TaskMarker { generic, user, manual };
enum class GatewayKind { exclusive, parallel, inclusive };
enum class DataDirection { read, write };

std::string_view to_string(GatewayKind kind) noexcept;
std::string_view to_string(NodeKind kind) noexcept;

/// A BPMN flow object. Only the fields relevant to `kind` carry meaning; the
/// factories keep the others at their defaults so equality stays structural.
struct FlowNode {
  Id id;
  std::string label;
  NodeKind kind = NodeKind::task;
  EventTrigger trigger = EventTrigger::none;
  TaskMarker marker = TaskMarker::generic;
  GatewayKind gateway = GatewayKind::exclusive;

  static FlowNode start(Id id, std::string label, EventTrigger trigger = EventTrigger::none);
  static FlowNode catch_event(Id id, std::string label, EventTrigger trigger = EventTrigger::message);
  static FlowNode end(Id id, std::string label);
  static FlowNode task(Id id, std::string label, TaskMarker marker = TaskMarker::generic);
  static FlowNode make_gateway(Id id, std::string label, GatewayKind kind);

  bool is_event() const noexcept {
    return kind == NodeKind::start_event || kind == NodeKind::intermediate_catch_event ||
           kind == NodeKind::end_event;
  }
  bool is_task() const noexcept { return kind == NodeKind::task; }
  bool is_gateway() const noexcept { return kind == NodeKind::gateway; }

  friend bool operator==(const FlowNode&, const FlowNode&) = default;
};

struct SequenceFlow {
  Id id;
  Id source;
  Id target;
  std::optional<std::string> condition;

  friend bool operator==(const SequenceFlow&, const SequenceFlow&) = default;
};

/// Data object whose display label follows "Base (Format) [State]".
struct DataObject {
  Id id;
  std::string base_name;
  std::optional<std::string> format;
  std::optional<std::string> state;

  /// Splits a display label. Rendering the result with label() gives back
  /// the input byte-for-byte.
  static DataObject from_label(Id id, std::string_view label);
  std::string label() const;

  friend bool operator==(const DataObject&, const DataObject&) = default;
};

struct DataStore {
  Id id;
  std::string name;

  friend bool operator==(const DataStore&, const DataStore&) = default;
};

struct DataAssociation {
  Id node;
  Id artifact;
  DataDirection direction = DataDirection::read;

  friend bool operator==(const DataAssociation&, const DataAssociation&) = default;
};

struct Lane {
  Id id;
  std::string name;
  std::vector<Id> members;

  friend bool operator==(const Lane&, const Lane&) = default;
};

/// Plain aggregate used to assemble a ProcessModel.
struct ProcessParts {
  Id id;
  std::string name;
  std::vector<FlowNode> nodes;
  std::vector<SequenceFlow> flows;
  std::vector<DataObject> data_objects;
  std::vector<DataStore> data_stores;
  std::vector<DataAssociation> data_associations;
  std::vector<Lane> lanes;

  friend bool operator==(const ProcessParts&, const ProcessParts&) = default;
};

/// Immutable, indexed process graph. The constructor enforces the type
/// invariants and throws ModelError on violation: unique ids, flow endpoints
/// that exist, no self-loops, no parallel edges between the same pair of
/// nodes, data associations that link a task or event to an existing artifact,
/// and lane members that exist.
class ProcessModel {
 public:
  explicit ProcessModel(ProcessParts parts);

  const Id& id() const noexcept { return parts_.id; }
  const std::string& name() const noexcept { return parts_.name; }
  const std::vector<FlowNode>& nodes() const noexcept { return parts_.nodes; }
  const std::vector<SequenceFlow>& flows() const noexcept { return parts_.flows; }
  const std::vector<DataObject>& data_objects() const noexcept { return parts_.data_objects; }
  const std::vector<DataStore>& data_stores() const noexcept { return parts_.data_stores; }
  const std::vector<DataAssociation>& data_associations() const noexcept {
    return parts_.data_associations;
  }
  const std::vector<Lane>& lanes() const noexcept { return parts_.lanes; }
  const ProcessParts& parts() const noexcept { return parts_; }

  std::optional<std::size_t> node_index(std::string_view id) const;
  std::optional<std::size_t> flow_index(std::string_view id) const;
  /// Throws std::out_of_range for unknown ids.
  const FlowNode& node(std::string_view id) const;
  const SequenceFlow& flow(std::string_view id) const;
  const FlowNode* find_node(std::string_view id) const;
  const DataObject* find_data_object(std::string_view id) const;
  const DataStore* find_data_store(std::string_view id) const;

  /// Flow indices leaving / entering the node at `node_index`, document order.
  std::span<const std::size_t> outgoing(std::size_t node_index) const { return out_[node_index]; }
  std::span<const std::size_t> incoming(std::size_t node_index) const { return in_[node_index]; }
  std::size_t source_index(std::size_t flow_index) const { return flow_ends_[flow_index].first; }
  std::size_t target_index(std::size_t flow_index) const { return flow_ends_[flow_index].second; }

  std::size_t task_count() const noexcept;

 private:
  ProcessParts parts_;
  std::map<Id, std::size_t, std::less<>> node_index_;
  std::map<Id, std::size_t, std::less<>> flow_index_;
  std::map<Id, std::size_t, std::less<>> object_index_;
  std::map<Id, std::size_t, std::less<>> store_index_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
  std::vector<std::pair<std::size_t, std::size_t>> flow_ends_;
};

/// A participant. A pool without a process is a black box. An empty id marks
/// a process that was not wrapped in a participant.
struct Pool {
  Id id;
  std::string name;
  std::optional<ProcessModel> process;

  bool black_box() const noexcept { return !process.has_value(); }
};

/// Source and target are flow node ids or pool ids.
struct MessageFlow {
  Id id;
  Id source;
  Id target;
  std::string label;

  friend bool operator==(const MessageFlow&, const MessageFlow&) = default;
};

/// Pools plus the message flows between them. Throws ModelError when ids
/// collide across pools, a message flow connects two elements of the same
/// pool or references an unknown element, or two data stores share a name.
/// An empty id stands for a document without a collaboration element: then
/// no pool may carry a participant id and there are no message flows.
class Collaboration {
 public:
  Collaboration(Id id, std::vector<Pool> pools, std::vector<MessageFlow> message_flows = {});

  const Id& id() const noexcept { return id_; }
  const std::vector<Pool>& pools() const noexcept { return pools_; }
  const std::vector<MessageFlow>& message_flows() const noexcept { return message_flows_; }

  /// The first pool that owns a process. Throws ModelError if there is none.
  const ProcessModel& primary_process() const;

 private:
  Id id_;
  std::vector<Pool> pools_;
  std::vector<MessageFlow> message_flows_;
};

/// Equality of content irrespective of element order.
bool structurally_equal(const ProcessModel& a, const ProcessModel& b);
bool structurally_equal(const Collaboration& a, const Collaboration& b);

}  // namespace bpmkit
