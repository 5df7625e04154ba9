#include "bpmkit/analyzer.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace bpmkit {

std::string_view to_string(IssueCategory c) noexcept {
  switch (c) {
    case IssueCategory::overprocessing: return "overprocessing";
    case IssueCategory::data_distribution: return "data_distribution";
    case IssueCategory::format_fragmentation: return "format_fragmentation";
    case IssueCategory::manual: return "manual";
  }
  return "manual";
}

std::string_view to_string(WasteGroup g) noexcept {
  switch (g) {
    case WasteGroup::move: return "move";
    case WasteGroup::hold: return "hold";
    case WasteGroup::overdo: return "overdo";
    case WasteGroup::none: return "none";
  }
  return "none";
}

IssueFinding manual_finding(Id id, std::string title, WasteGroup group, std::string description,
                            std::string data_and_assumptions, std::string qualitative_impact) {
  IssueFinding f;
  f.id = std::move(id);
  f.title = std::move(title);
  f.category = IssueCategory::manual;
  f.waste_group = group;
  f.description = std::move(description);
  f.data_and_assumptions = std::move(data_and_assumptions);
  f.qualitative_impact = std::move(qualitative_impact);
  return f;
}

namespace {

struct Occurrence {
  const FlowNode* node;
  const DataObject* object;
  const DataStore* store;
  DataDirection direction;
};

std::vector<Occurrence> collect(const Collaboration& c) {
  std::vector<Occurrence> out;
  for (const auto& pool : c.pools()) {
    if (!pool.process) continue;
    const ProcessModel& m = *pool.process;
    for (const auto& node : m.nodes()) {
      std::vector<const DataAssociation*> objects, stores;
      for (const auto& a : m.data_associations()) {
        if (a.node != node.id) continue;
        (m.find_data_store(a.artifact) ? stores : objects).push_back(&a);
      }
      for (const auto* o : objects) {
        for (const auto* s : stores) {
          if (s->direction != o->direction) continue;
          out.push_back({&node, m.find_data_object(o->artifact), m.find_data_store(s->artifact), o->direction});
        }
      }
    }
  }
  return out;
}

std::vector<std::string> tokens(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

std::string listing(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += (i + 1 == items.size()) ? " and " : ", ";
    out += items[i];
  }
  return out;
}

template <class T>
void push_unique(std::vector<T>& v, const T& x) {
  if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
}

struct StoreSet {
  std::vector<const DataStore*> stores;
  void add(const DataStore* s) { push_unique(stores, s); }
  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto* s : stores) out.push_back(s->name);
    return out;
  }
};

std::optional<IssueFinding> overprocessing(const std::string& base, const std::vector<Occurrence>& occ) {
  StoreSet all;
  for (const auto& o : occ) {
    if (o.node->is_task()) all.add(o.store);
  }
  if (all.stores.size() < 2) return std::nullopt;

  // Tokens that tell the stores apart ("1", "2", "3" for "FMIS n DB").
  std::set<std::string> common, distinguishing;
  for (std::size_t i = 0; i < all.stores.size(); ++i) {
    auto t = tokens(all.stores[i]->name);
    std::set<std::string> ts(t.begin(), t.end());
    distinguishing.insert(ts.begin(), ts.end());
    if (i == 0) {
      common = ts;
    } else {
      std::set<std::string> keep;
      std::set_intersection(common.begin(), common.end(), ts.begin(), ts.end(), std::inserter(keep, keep.end()));
      common = std::move(keep);
    }
  }
  for (const auto& t : common) distinguishing.erase(t);

  struct Group {
    std::vector<const FlowNode*> tasks;
    StoreSet stores;
  };
  std::vector<std::pair<std::string, Group>> groups;
  for (const auto& o : occ) {
    if (!o.node->is_task()) continue;
    std::string key;
    for (const auto& t : tokens(o.node->label)) {
      if (distinguishing.contains(t)) continue;
      if (!key.empty()) key += ' ';
      key += t;
    }
    if (key.empty()) continue;
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == key; });
    if (it == groups.end()) {
      groups.push_back({key, {}});
      it = std::prev(groups.end());
    }
    push_unique(it->second.tasks, o.node);
    it->second.stores.add(o.store);
  }

  IssueFinding f;
  StoreSet touched;
  std::vector<std::string> labels;
  int factor = 0;
  for (const auto& [key, g] : groups) {
    if (g.tasks.size() < 2 || g.stores.stores.size() < 2) continue;
    factor = std::max(factor, static_cast<int>(g.stores.stores.size()));
    for (const auto* t : g.tasks) {
      f.elements.push_back(t->id);
      labels.push_back(t->label);
    }
    for (const auto* s : g.stores.stores) touched.add(s);
  }
  if (factor == 0) return std::nullopt;
  for (const auto* s : touched.stores) f.elements.push_back(s->id);

  f.category = IssueCategory::overprocessing;
  f.waste_group = WasteGroup::overdo;
  f.subject = base;
  f.duplication_factor = factor;
  f.title = "Overprocessing of " + base;
  f.description = "The same work on " + base + " is repeated once per data store, up to " + std::to_string(factor) +
                  " times per process instance: " + listing(labels) + ".";
  f.data_and_assumptions = "The repeated tasks differ only in the data store they operate on (" +
                           listing(touched.names()) + "); each store keeps its own copy of " + base + ".";
  f.qualitative_impact = "Doing the same checks and updates for every store adds effort without adding value "
                         "and can lower process efficiency.";
  return f;
}

std::optional<IssueFinding> distribution(const std::string& base, const std::vector<Occurrence>& occ) {
  StoreSet written;
  std::vector<Id> writers;
  for (const auto& o : occ) {
    if (o.direction != DataDirection::write) continue;
    written.add(o.store);
    push_unique(writers, o.node->id);
  }
  if (written.stores.size() < 2) return std::nullopt;
  IssueFinding f;
  f.category = IssueCategory::data_distribution;
  f.subject = base;
  f.title = "Data Distribution of " + base;
  f.description = base + " is written to " + std::to_string(written.stores.size()) +
                  " separate data stores that do not share it: " + listing(written.names()) + ".";
  f.data_and_assumptions = "Every store holds an independent copy of " + base + ".";
  f.qualitative_impact = "Independent copies can drift apart, so the data becomes inconsistent between systems.";
  f.elements = writers;
  for (const auto* s : written.stores) f.elements.push_back(s->id);
  return f;
}

std::optional<IssueFinding> fragmentation(const std::string& base, const std::vector<Occurrence>& occ) {
  std::vector<std::pair<const DataStore*, std::string>> seen;
  for (const auto& o : occ) {
    if (o.object->format) push_unique(seen, std::pair(o.store, *o.object->format));
  }
  bool fragmented = false;
  for (const auto& a : seen) {
    for (const auto& b : seen) fragmented = fragmented || (a.first != b.first && a.second != b.second);
  }
  if (!fragmented) return std::nullopt;

  std::set<std::string> formats;
  StoreSet stores;
  IssueFinding f;
  for (const auto& [store, format] : seen) {
    formats.insert(format);
    stores.add(store);
  }
  for (const auto& o : occ) {
    if (o.object->format) push_unique(f.elements, o.object->id);
  }
  for (const auto* s : stores.stores) f.elements.push_back(s->id);
  std::vector<std::string> format_list(formats.begin(), formats.end());
  f.category = IssueCategory::format_fragmentation;
  f.subject = base;
  f.title = "Format Fragmentation of " + base;
  f.description = base + " is kept in " + std::to_string(formats.size()) +
                  " different formats across data stores: " + listing(format_list) + ".";
  f.data_and_assumptions = "No common format is shared by " + listing(stores.names()) +
                           "; moving " + base + " between them requires conversion.";
  f.qualitative_impact = "Differing formats hinder interoperability and make sharing data between systems error-prone.";
  return f;
}

}  // namespace

std::vector<IssueFinding> detect_issues(const Collaboration& collaboration) {
  std::map<std::string, std::vector<Occurrence>> by_base;
  for (const auto& o : collect(collaboration)) by_base[o.object->base_name].push_back(o);

  std::vector<IssueFinding> out;
  for (auto detector : {overprocessing, distribution, fragmentation}) {
    for (const auto& [base, occ] : by_base) {
      if (auto f = detector(base, occ)) out.push_back(std::move(*f));
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i].id = "ISSUE-" + std::to_string(i + 1);
  return out;
}

namespace {

std::vector<std::string> task_labels(const Collaboration& c) {
  std::vector<std::string> out;
  for (const auto& pool : c.pools()) {
    if (!pool.process) continue;
    for (const auto& n : pool.process->nodes()) {
      if (n.is_task()) out.push_back(n.label);
    }
  }
  return out;
}

// Elements of `from` left over after removing one match per element of `other`.
std::vector<std::string> multiset_minus(const std::vector<std::string>& from, std::vector<std::string> other) {
  std::vector<std::string> out;
  for (const auto& x : from) {
    auto it = std::find(other.begin(), other.end(), x);
    if (it == other.end()) out.push_back(x);
    else other.erase(it);
  }
  return out;
}

}  // namespace

RedesignReport compare(const Collaboration& a, const Collaboration& b, const BoundScenario& bound_a,
                       const BoundScenario& bound_b, TimeMode mode) {
  RedesignReport r;
  auto la = task_labels(a);
  auto lb = task_labels(b);
  r.task_count_a = la.size();
  r.task_count_b = lb.size();
  r.tasks_removed = multiset_minus(la, lb);
  r.tasks_added = multiset_minus(lb, la);

  r.simulation_a = simulate(bound_a.model(), bound_a, mode);
  r.simulation_b = simulate(bound_b.model(), bound_b, mode);
  r.best_delta = r.simulation_b.best.seconds() - r.simulation_a.best.seconds();
  r.worst_delta = r.simulation_b.worst.seconds() - r.simulation_a.worst.seconds();
  r.expected_delta = r.simulation_b.expected.seconds() - r.simulation_a.expected.seconds();

  auto issues_b = detect_issues(b);
  for (auto& f : detect_issues(a)) {
    bool still = std::any_of(issues_b.begin(), issues_b.end(), [&](const IssueFinding& g) {
      return g.category == f.category && g.subject == f.subject;
    });
    if (!still) r.resolved_issues.push_back(std::move(f));
  }

  if (r.tasks_removed.size() > r.tasks_added.size()) r.heuristic_tags.emplace_back("task elimination");
  if (std::any_of(r.resolved_issues.begin(), r.resolved_issues.end(),
                  [](const IssueFinding& f) { return f.category == IssueCategory::data_distribution; })) {
    r.heuristic_tags.emplace_back("integral technology");
  }
  return r;
}

}  // namespace bpmkit
