#pragma once

#include <initializer_list>
#include <optional>
#include <string>

#include "bpmkit/model.hpp"

namespace bpmkit::testing {

/// Terse construction of small process models in tests.
struct Builder {
  ProcessParts parts;

  explicit Builder(std::string name = "Test", Id id = "Process_Test") {
    parts.id = std::move(id);
    parts.name = std::move(name);
  }

  Builder& start(Id id, std::string label = "Work Requested") {
    parts.nodes.push_back(FlowNode::start(std::move(id), std::move(label)));
    return *this;
  }
  Builder& end(Id id, std::string label = "Work Done") {
    parts.nodes.push_back(FlowNode::end(std::move(id), std::move(label)));
    return *this;
  }
  Builder& event(Id id, std::string label) {
    parts.nodes.push_back(FlowNode::catch_event(std::move(id), std::move(label)));
    return *this;
  }
  Builder& task(Id id, std::string label = {}) {
    if (label.empty()) label = "Check " + id;
    parts.nodes.push_back(FlowNode::task(std::move(id), std::move(label)));
    return *this;
  }
  Builder& gateway(Id id, GatewayKind kind, std::string label = {}) {
    parts.nodes.push_back(FlowNode::make_gateway(std::move(id), std::move(label), kind));
    return *this;
  }
  Builder& xor_gw(Id id, std::string label = {}) { return gateway(std::move(id), GatewayKind::exclusive, std::move(label)); }
  Builder& and_gw(Id id) { return gateway(std::move(id), GatewayKind::parallel); }
  Builder& or_gw(Id id) { return gateway(std::move(id), GatewayKind::inclusive); }

  Builder& flow(const Id& a, const Id& b, std::optional<std::string> condition = std::nullopt) {
    parts.flows.push_back({"F_" + a + "_" + b, a, b, std::move(condition)});
    return *this;
  }
  Builder& chain(std::initializer_list<Id> ids) {
    const Id* prev = nullptr;
    for (const auto& id : ids) {
      if (prev) flow(*prev, id);
      prev = &id;
    }
    return *this;
  }
  Builder& store(Id id, std::string name) {
    parts.data_stores.push_back({std::move(id), std::move(name)});
    return *this;
  }
  Builder& object(Id id, std::string_view label) {
    parts.data_objects.push_back(DataObject::from_label(std::move(id), label));
    return *this;
  }
  Builder& reads(Id node, Id artifact) {
    parts.data_associations.push_back({std::move(node), std::move(artifact), DataDirection::read});
    return *this;
  }
  Builder& writes(Id node, Id artifact) {
    parts.data_associations.push_back({std::move(node), std::move(artifact), DataDirection::write});
    return *this;
  }

  ProcessModel build() const { return ProcessModel(parts); }
};

inline Collaboration single(ProcessModel m) {
  std::vector<Pool> pools;
  pools.push_back(Pool{{}, m.name(), std::move(m)});
  return Collaboration("", std::move(pools));
}

}  // namespace bpmkit::testing
