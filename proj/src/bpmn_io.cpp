#include "bpmkit/bpmn_io.hpp"

#include <expat.h>

#include <algorithm>
#include <climits>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include "bpmkit/errors.hpp"

namespace bpmkit {

namespace {

constexpr std::string_view kBpmnDi = "http://www.omg.org/spec/BPMN/20100524/DI";
constexpr std::string_view kDc = "http://www.omg.org/spec/DD/20100524/DC";
constexpr std::string_view kDi = "http://www.omg.org/spec/DD/20100524/DI";
constexpr char kNsSep = ' ';
constexpr std::size_t kMaxDepth = 256;

// ---------------------------------------------------------------------------
// Minimal DOM built from expat callbacks.

struct XmlElement {
  std::string ns;
  std::string local;
  std::vector<std::pair<std::string, std::string>> attrs;
  std::string text;
  std::vector<std::unique_ptr<XmlElement>> children;
  long line = 0;

  std::optional<std::string> attr(std::string_view name) const {
    for (const auto& [k, v] : attrs) {
      if (k == name) return v;
    }
    return std::nullopt;
  }
  bool is(std::string_view name) const { return ns == kBpmnNamespace && local == name; }
};

std::pair<std::string, std::string> split_name(const char* raw) {
  std::string_view s(raw);
  auto sep = s.find(kNsSep);
  if (sep == std::string_view::npos) return {{}, std::string(s)};
  return {std::string(s.substr(0, sep)), std::string(s.substr(sep + 1))};
}

struct DomBuilder {
  XML_Parser parser = nullptr;
  std::unique_ptr<XmlElement> root;
  std::vector<XmlElement*> stack;
  bool too_deep = false;

  static void on_start(void* data, const XML_Char* name, const XML_Char** atts) {
    auto* self = static_cast<DomBuilder*>(data);
    if (self->stack.size() >= kMaxDepth) {
      self->too_deep = true;
      XML_StopParser(self->parser, XML_FALSE);
      return;
    }
    auto el = std::make_unique<XmlElement>();
    std::tie(el->ns, el->local) = split_name(name);
    el->line = static_cast<long>(XML_GetCurrentLineNumber(self->parser));
    for (int i = 0; atts[i] != nullptr; i += 2) {
      auto [ns, local] = split_name(atts[i]);
      el->attrs.emplace_back(ns.empty() ? local : ns + kNsSep + local, atts[i + 1]);
    }
    XmlElement* raw = el.get();
    if (self->stack.empty()) self->root = std::move(el);
    else self->stack.back()->children.push_back(std::move(el));
    self->stack.push_back(raw);
  }

  static void on_end(void* data, const XML_Char*) { static_cast<DomBuilder*>(data)->stack.pop_back(); }

  static void on_text(void* data, const XML_Char* s, int len) {
    auto* self = static_cast<DomBuilder*>(data);
    if (!self->stack.empty()) self->stack.back()->text.append(s, static_cast<std::size_t>(len));
  }
};

std::unique_ptr<XmlElement> parse_xml(std::string_view document) {
  if (document.size() > static_cast<std::size_t>(INT_MAX)) throw XmlError("document too large");
  std::unique_ptr<XML_ParserStruct, decltype(&XML_ParserFree)> parser(XML_ParserCreateNS("UTF-8", kNsSep),
                                                                       &XML_ParserFree);
  if (!parser) throw XmlError("cannot create XML parser");
  DomBuilder b;
  b.parser = parser.get();
  XML_SetUserData(parser.get(), &b);
  XML_SetElementHandler(parser.get(), &DomBuilder::on_start, &DomBuilder::on_end);
  XML_SetCharacterDataHandler(parser.get(), &DomBuilder::on_text);
  auto status = XML_Parse(parser.get(), document.data(), static_cast<int>(document.size()), XML_TRUE);
  if (b.too_deep) throw XmlError("element nesting deeper than " + std::to_string(kMaxDepth));
  if (status != XML_STATUS_OK) {
    throw XmlError(std::string("line ") + std::to_string(XML_GetCurrentLineNumber(parser.get())) + ": " +
                   XML_ErrorString(XML_GetErrorCode(parser.get())));
  }
  if (!b.root) throw XmlError("empty document");
  return std::move(b.root);
}

std::string trimmed(std::string_view s) {
  auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
  while (!s.empty() && ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && ws(s.back())) s.remove_suffix(1);
  return std::string(s);
}

// ---------------------------------------------------------------------------
// BPMN reader.

struct RawAssociation {
  Id node;
  Id artifact;
  DataDirection direction;
};

struct RawProcess {
  ProcessParts parts;
  std::vector<RawAssociation> associations;
  // dataObjectReference id -> referenced dataObject id
  std::vector<std::pair<Id, Id>> object_refs;
  // dataObject elements: id, name
  std::vector<std::pair<Id, std::optional<std::string>>> objects;
  // dataObjectReference elements: id, name
  std::vector<std::pair<Id, std::optional<std::string>>> references;
};

class Reader {
 public:
  ParseReport read(const XmlElement& root) {
    if (!root.is("definitions")) {
      throw SchemaError("root element is not bpmn:definitions in namespace " + std::string(kBpmnNamespace));
    }
    const XmlElement* collaboration = nullptr;
    std::vector<const XmlElement*> processes;
    for (const auto& c : root.children) {
      if (c->is("collaboration")) {
        if (collaboration) throw SchemaError("more than one collaboration element");
        collaboration = c.get();
      } else if (c->is("process")) {
        processes.push_back(c.get());
      } else {
        ignore(*c);
      }
    }

    std::vector<ProcessModel> models;
    for (const auto* p : processes) models.push_back(read_process(*p));

    std::vector<Pool> pools;
    std::vector<MessageFlow> message_flows;
    std::vector<bool> claimed(models.size(), false);
    Id collab_id;
    if (collaboration) {
      collab_id = required(*collaboration, "id");
      for (const auto& c : collaboration->children) {
        if (c->is("participant")) {
          Pool pool{required(*c, "id"), c->attr("name").value_or(""), std::nullopt};
          if (auto ref = c->attr("processRef")) {
            auto it = std::find_if(models.begin(), models.end(), [&](const ProcessModel& m) { return m.id() == *ref; });
            if (it == models.end()) throw DanglingRefError("participant '" + pool.id + "' references unknown process '" + *ref + "'");
            auto k = static_cast<std::size_t>(it - models.begin());
            if (claimed[k]) throw SchemaError("process '" + *ref + "' is referenced by two participants");
            claimed[k] = true;
            pool.process = *it;
          }
          pools.push_back(std::move(pool));
        } else if (c->is("messageFlow")) {
          message_flows.push_back({required(*c, "id"), required(*c, "sourceRef"), required(*c, "targetRef"),
                                   c->attr("name").value_or("")});
        } else {
          ignore(*c);
        }
      }
    }
    for (std::size_t k = 0; k < models.size(); ++k) {
      if (!claimed[k]) pools.push_back(Pool{{}, models[k].name(), models[k]});
    }

    std::set<Id, std::less<>> known;
    for (const auto& pool : pools) {
      if (!pool.id.empty()) known.insert(pool.id);
      if (pool.process) {
        known.insert(pool.process->id());
        for (const auto& n : pool.process->nodes()) known.insert(n.id);
      }
    }
    std::erase_if(message_flows, [&](const MessageFlow& mf) {
      bool gone = (!known.contains(mf.source) && ignored_ids_.contains(mf.source)) ||
                  (!known.contains(mf.target) && ignored_ids_.contains(mf.target));
      if (gone) ignored_.push_back({"messageFlow", mf.id});
      return gone;
    });
    for (const auto& mf : message_flows) {
      for (const Id* end : {&mf.source, &mf.target}) {
        if (!known.contains(*end)) dangling("message flow '" + mf.id + "'", *end);
      }
    }

    try {
      return ParseReport{Collaboration(std::move(collab_id), std::move(pools), std::move(message_flows)),
                         std::move(ignored_)};
    } catch (const ModelError& e) {
      throw SchemaError(e.what());
    }
  }

 private:
  static std::string required(const XmlElement& el, std::string_view attr) {
    auto v = el.attr(attr);
    if (!v) {
      throw SchemaError("line " + std::to_string(el.line) + ": <" + el.local + "> lacks required attribute '" +
                        std::string(attr) + "'");
    }
    return *v;
  }

  void ignore(const XmlElement& el) {
    std::string name;
    if (el.ns == kBpmnNamespace || el.ns.empty()) name = el.local;
    else if (el.ns == kBpmnDi) name = "bpmndi:" + el.local;
    else if (el.ns == kDc) name = "dc:" + el.local;
    else if (el.ns == kDi) name = "di:" + el.local;
    else name = "{" + el.ns + "}" + el.local;
    Id id = el.attr("id").value_or("");
    if (!id.empty()) ignored_ids_.insert(id);
    ignored_.push_back({std::move(name), std::move(id)});
  }

  [[noreturn]] void dangling(const std::string& who, const Id& ref) const {
    if (ignored_ids_.contains(ref)) {
      throw DanglingRefError(who + " references '" + ref + "', an element outside the supported subset");
    }
    throw DanglingRefError(who + " references unknown element '" + ref + "'");
  }

  void read_node_children(const XmlElement& el, FlowNode& node, RawProcess& raw) {
    for (const auto& c : el.children) {
      if (c->is("incoming") || c->is("outgoing")) continue;
      if (c->is("messageEventDefinition") &&
          (node.kind == NodeKind::start_event || node.kind == NodeKind::intermediate_catch_event)) {
        node.trigger = EventTrigger::message;
      } else if (c->is("dataInputAssociation") && !node.is_gateway()) {
        bool any = false;
        for (const auto& r : c->children) {
          if (r->is("sourceRef")) {
            raw.associations.push_back({node.id, trimmed(r->text), DataDirection::read});
            any = true;
          } else if (!r->is("targetRef")) {
            ignore(*r);
          }
        }
        if (!any) throw SchemaError("line " + std::to_string(c->line) + ": dataInputAssociation without sourceRef");
      } else if (c->is("dataOutputAssociation") && !node.is_gateway()) {
        bool any = false;
        for (const auto& r : c->children) {
          if (r->is("targetRef")) {
            raw.associations.push_back({node.id, trimmed(r->text), DataDirection::write});
            any = true;
          } else if (!r->is("sourceRef")) {
            ignore(*r);
          }
        }
        if (!any) throw SchemaError("line " + std::to_string(c->line) + ": dataOutputAssociation without targetRef");
      } else {
        ignore(*c);
      }
    }
  }

  static std::optional<FlowNode> node_for(const XmlElement& el, const Id& id, std::string label) {
    if (el.ns != kBpmnNamespace) return std::nullopt;
    const auto& n = el.local;
    if (n == "startEvent") return FlowNode::start(id, std::move(label));
    if (n == "intermediateCatchEvent") return FlowNode::catch_event(id, std::move(label), EventTrigger::none);
    if (n == "endEvent") return FlowNode::end(id, std::move(label));
    if (n == "task") return FlowNode::task(id, std::move(label), TaskMarker::generic);
    if (n == "userTask") return FlowNode::task(id, std::move(label), TaskMarker::user);
    if (n == "manualTask") return FlowNode::task(id, std::move(label), TaskMarker::manual);
    if (n == "exclusiveGateway") return FlowNode::make_gateway(id, std::move(label), GatewayKind::exclusive);
    if (n == "parallelGateway") return FlowNode::make_gateway(id, std::move(label), GatewayKind::parallel);
    if (n == "inclusiveGateway") return FlowNode::make_gateway(id, std::move(label), GatewayKind::inclusive);
    return std::nullopt;
  }

  static bool is_node_element(const XmlElement& el) {
    static const std::set<std::string, std::less<>> names{
        "startEvent", "intermediateCatchEvent", "endEvent",         "task",           "userTask",
        "manualTask", "exclusiveGateway",       "parallelGateway", "inclusiveGateway"};
    return el.ns == kBpmnNamespace && names.contains(el.local);
  }

  ProcessModel read_process(const XmlElement& el) {
    RawProcess raw;
    raw.parts.id = required(el, "id");
    raw.parts.name = el.attr("name").value_or("");
    for (const auto& c : el.children) {
      if (is_node_element(*c)) {
        FlowNode node = *node_for(*c, required(*c, "id"), c->attr("name").value_or(""));
        read_node_children(*c, node, raw);
        raw.parts.nodes.push_back(std::move(node));
      } else if (c->is("sequenceFlow")) {
        SequenceFlow f{required(*c, "id"), required(*c, "sourceRef"), required(*c, "targetRef"), c->attr("name")};
        for (const auto& sub : c->children) ignore(*sub);
        raw.parts.flows.push_back(std::move(f));
      } else if (c->is("laneSet")) {
        for (const auto& l : c->children) {
          if (!l->is("lane")) {
            ignore(*l);
            continue;
          }
          Lane lane{required(*l, "id"), l->attr("name").value_or(""), {}};
          for (const auto& r : l->children) {
            if (r->is("flowNodeRef")) lane.members.push_back(trimmed(r->text));
            else ignore(*r);
          }
          raw.parts.lanes.push_back(std::move(lane));
        }
      } else if (c->is("dataObject")) {
        raw.objects.emplace_back(required(*c, "id"), c->attr("name"));
        for (const auto& sub : c->children) ignore(*sub);
      } else if (c->is("dataObjectReference")) {
        Id id = required(*c, "id");
        raw.references.emplace_back(id, c->attr("name"));
        if (auto ref = c->attr("dataObjectRef")) raw.object_refs.emplace_back(id, *ref);
        for (const auto& sub : c->children) ignore(*sub);
      } else if (c->is("dataStoreReference")) {
        raw.parts.data_stores.push_back({required(*c, "id"), c->attr("name").value_or("")});
        for (const auto& sub : c->children) ignore(*sub);
      } else {
        ignore(*c);
      }
    }
    return assemble(std::move(raw));
  }

  ProcessModel assemble(RawProcess raw) {
    ProcessParts& parts = raw.parts;
    std::set<Id, std::less<>> node_ids;
    for (const auto& n : parts.nodes) node_ids.insert(n.id);
    // Flows into or out of skipped elements (sub-processes and the like) go
    // with them, and are listed as ignored too.
    auto skipped = [&](const Id& ref) { return !node_ids.contains(ref) && ignored_ids_.contains(ref); };
    std::erase_if(parts.flows, [&](const SequenceFlow& f) {
      if (!skipped(f.source) && !skipped(f.target)) return false;
      ignored_.push_back({"sequenceFlow", f.id});
      return true;
    });
    for (const auto& f : parts.flows) {
      if (!node_ids.contains(f.source)) dangling("sequence flow '" + f.id + "'", f.source);
      if (!node_ids.contains(f.target)) dangling("sequence flow '" + f.id + "'", f.target);
    }
    for (auto& l : parts.lanes) {
      std::erase_if(l.members, skipped);
      for (const auto& m : l.members) {
        if (!node_ids.contains(m)) dangling("lane '" + l.id + "'", m);
      }
    }

    // Visible data objects: every reference, plus dataObjects nobody refers to.
    std::map<Id, std::optional<std::string>, std::less<>> object_names(raw.objects.begin(), raw.objects.end());
    std::map<Id, Id, std::less<>> backing_to_reference;
    std::set<Id, std::less<>> backed;
    for (const auto& [ref, obj] : raw.object_refs) {
      if (!object_names.contains(obj)) dangling("data object reference '" + ref + "'", obj);
      backed.insert(obj);
      backing_to_reference.emplace(obj, ref);
    }
    auto add_object = [&](const Id& id, const std::optional<std::string>& name) {
      std::string label = name.value_or(id);
      if (label.empty()) label = id;
      parts.data_objects.push_back(DataObject::from_label(id, label));
    };
    for (const auto& [id, name] : raw.references) {
      auto it = std::find_if(raw.object_refs.begin(), raw.object_refs.end(), [&](const auto& p) { return p.first == id; });
      std::optional<std::string> label = name;
      if (!label && it != raw.object_refs.end()) label = object_names[it->second];
      add_object(id, label);
    }
    for (const auto& [id, name] : raw.objects) {
      if (!backed.contains(id)) add_object(id, name);
    }

    std::set<Id, std::less<>> artifacts;
    for (const auto& d : parts.data_objects) artifacts.insert(d.id);
    for (const auto& s : parts.data_stores) artifacts.insert(s.id);
    for (auto& a : raw.associations) {
      if (auto it = backing_to_reference.find(a.artifact); it != backing_to_reference.end()) a.artifact = it->second;
      if (!artifacts.contains(a.artifact)) dangling("data association of '" + a.node + "'", a.artifact);
      parts.data_associations.push_back({a.node, a.artifact, a.direction});
    }

    try {
      return ProcessModel(std::move(parts));
    } catch (const ModelError& e) {
      throw SchemaError(e.what());
    }
  }

  std::vector<IgnoredElement> ignored_;
  std::set<Id, std::less<>> ignored_ids_;
};

// ---------------------------------------------------------------------------
// Writer.

std::string escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\t': out += "&#9;"; break;
      case '\n': out += "&#10;"; break;
      case '\r': out += "&#13;"; break;
      default: out += c;
    }
  }
  return out;
}

class Writer {
 public:
  std::string str() const { return out_.str(); }

  void open(int depth, std::string_view tag, std::initializer_list<std::pair<std::string_view, std::optional<std::string>>> attrs,
            bool empty) {
    indent(depth);
    out_ << "<bpmn:" << tag;
    for (const auto& [k, v] : attrs) {
      if (v) out_ << ' ' << k << "=\"" << escape(*v) << '"';
    }
    out_ << (empty ? "/>\n" : ">\n");
  }
  void close(int depth, std::string_view tag) {
    indent(depth);
    out_ << "</bpmn:" << tag << ">\n";
  }
  void text_element(int depth, std::string_view tag, std::string_view text) {
    indent(depth);
    out_ << "<bpmn:" << tag << '>' << escape(text) << "</bpmn:" << tag << ">\n";
  }
  void raw(std::string_view s) { out_ << s; }

 private:
  void indent(int depth) {
    for (int i = 0; i < depth; ++i) out_ << "  ";
  }
  std::ostringstream out_;
};

std::optional<std::string> non_empty(const std::string& s) {
  return s.empty() ? std::nullopt : std::optional<std::string>(s);
}

std::string_view element_name(const FlowNode& n) {
  switch (n.kind) {
    case NodeKind::start_event: return "startEvent";
    case NodeKind::intermediate_catch_event: return "intermediateCatchEvent";
    case NodeKind::end_event: return "endEvent";
    case NodeKind::task:
      return n.marker == TaskMarker::user ? "userTask" : n.marker == TaskMarker::manual ? "manualTask" : "task";
    case NodeKind::gateway:
      return n.gateway == GatewayKind::parallel    ? "parallelGateway"
             : n.gateway == GatewayKind::inclusive ? "inclusiveGateway"
                                                   : "exclusiveGateway";
  }
  return "task";
}

template <class T>
std::vector<const T*> by_id(const std::vector<T>& items) {
  std::vector<const T*> out;
  for (const auto& x : items) out.push_back(&x);
  std::sort(out.begin(), out.end(), [](const T* a, const T* b) { return a->id < b->id; });
  return out;
}

void write_process(Writer& w, const ProcessModel& m) {
  w.open(1, "process", {{"id", m.id()}, {"name", non_empty(m.name())}, {"isExecutable", "false"}}, false);
  if (!m.lanes().empty()) {
    w.open(2, "laneSet", {{"id", "LaneSet_" + m.id()}}, false);
    for (const auto* lane : by_id(m.lanes())) {
      auto members = lane->members;
      std::sort(members.begin(), members.end());
      w.open(3, "lane", {{"id", lane->id}, {"name", non_empty(lane->name)}}, members.empty());
      if (members.empty()) continue;
      for (const auto& mem : members) w.text_element(4, "flowNodeRef", mem);
      w.close(3, "lane");
    }
    w.close(2, "laneSet");
  }
  for (const auto* n : by_id(m.nodes())) {
    std::vector<const DataAssociation*> assoc;
    for (const auto& a : m.data_associations()) {
      if (a.node == n->id) assoc.push_back(&a);
    }
    std::sort(assoc.begin(), assoc.end(), [](const DataAssociation* a, const DataAssociation* b) {
      return std::tie(a->direction, a->artifact) < std::tie(b->direction, b->artifact);
    });
    bool message = n->trigger == EventTrigger::message;
    bool empty = assoc.empty() && !message;
    auto tag = element_name(*n);
    w.open(2, tag, {{"id", n->id}, {"name", non_empty(n->label)}}, empty);
    if (empty) continue;
    if (message) w.open(3, "messageEventDefinition", {}, true);
    for (const auto* a : assoc) {
      bool in = a->direction == DataDirection::read;
      w.open(3, in ? "dataInputAssociation" : "dataOutputAssociation", {}, false);
      w.text_element(4, in ? "sourceRef" : "targetRef", a->artifact);
      w.close(3, in ? "dataInputAssociation" : "dataOutputAssociation");
    }
    w.close(2, tag);
  }
  for (const auto* d : by_id(m.data_objects())) w.open(2, "dataObject", {{"id", d->id}, {"name", d->label()}}, true);
  for (const auto* s : by_id(m.data_stores())) {
    w.open(2, "dataStoreReference", {{"id", s->id}, {"name", non_empty(s->name)}}, true);
  }
  for (const auto* f : by_id(m.flows())) {
    w.open(2, "sequenceFlow",
           {{"id", f->id}, {"name", f->condition}, {"sourceRef", f->source}, {"targetRef", f->target}}, true);
  }
  w.close(1, "process");
}

}  // namespace

ParseReport parse_bpmn(std::string_view document) {
  auto root = parse_xml(document);
  return Reader().read(*root);
}

ParseReport parse_bpmn_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_bpmn(buf.str());
}

std::string serialize_bpmn(const Collaboration& model) {
  Writer w;
  w.raw("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
  w.raw("<bpmn:definitions xmlns:bpmn=\"" + std::string(kBpmnNamespace) +
        "\" id=\"Definitions\" targetNamespace=\"urn:bpmkit\">\n");

  std::vector<const Pool*> pools;
  for (const auto& p : model.pools()) pools.push_back(&p);
  std::sort(pools.begin(), pools.end(), [](const Pool* a, const Pool* b) {
    return std::pair(a->id, a->process ? a->process->id() : Id{}) < std::pair(b->id, b->process ? b->process->id() : Id{});
  });

  if (!model.id().empty()) {
    w.open(1, "collaboration", {{"id", model.id()}}, false);
    for (const auto* p : pools) {
      if (p->id.empty()) continue;
      w.open(2, "participant",
             {{"id", p->id},
              {"name", non_empty(p->name)},
              {"processRef", p->process ? std::optional<std::string>(p->process->id()) : std::nullopt}},
             true);
    }
    for (const auto* mf : by_id(model.message_flows())) {
      w.open(2, "messageFlow",
             {{"id", mf->id}, {"name", non_empty(mf->label)}, {"sourceRef", mf->source}, {"targetRef", mf->target}},
             true);
    }
    w.close(1, "collaboration");
  }

  std::vector<const ProcessModel*> processes;
  for (const auto* p : pools) {
    if (p->process) processes.push_back(&*p->process);
  }
  std::sort(processes.begin(), processes.end(),
            [](const ProcessModel* a, const ProcessModel* b) { return a->id() < b->id(); });
  for (const auto* m : processes) write_process(w, *m);
  w.raw("</bpmn:definitions>\n");
  return w.str();
}

}  // namespace bpmkit
