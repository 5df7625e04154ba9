#include "bpmkit/verify.hpp"

#include <algorithm>
#include <cctype>
#include <deque>

namespace bpmkit {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string_view first_token(std::string_view label) {
  label = trim(label);
  auto end = std::find_if(label.begin(), label.end(), [](unsigned char c) { return std::isspace(c); });
  return label.substr(0, static_cast<std::size_t>(end - label.begin()));
}

// Marks every node reachable from `seeds` following flows forward (or backward).
std::vector<bool> reach(const ProcessModel& m, const std::vector<std::size_t>& seeds, bool forward) {
  std::vector<bool> seen(m.nodes().size(), false);
  std::deque<std::size_t> queue(seeds.begin(), seeds.end());
  for (auto s : seeds) seen[s] = true;
  while (!queue.empty()) {
    auto n = queue.front();
    queue.pop_front();
    auto edges = forward ? m.outgoing(n) : m.incoming(n);
    for (auto f : edges) {
      auto next = forward ? m.target_index(f) : m.source_index(f);
      if (!seen[next]) {
        seen[next] = true;
        queue.push_back(next);
      }
    }
  }
  return seen;
}

}  // namespace

VerbLexicon VerbLexicon::parse(std::string_view text) {
  VerbLexicon lex;
  while (!text.empty()) {
    auto nl = text.find('\n');
    auto line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.empty() || line.front() == '#') continue;
    lex.verbs_.insert(lower(line));
  }
  return lex;
}

const VerbLexicon& VerbLexicon::builtin() {
  static const VerbLexicon lex = parse(
#include "default_verbs.inc"
  );
  return lex;
}

bool VerbLexicon::contains(std::string_view word) const { return verbs_.contains(lower(word)); }

std::vector<Diagnostic> validate_structure(const ProcessModel& m, const LintOptions& options) {
  std::vector<Diagnostic> out;
  const auto& nodes = m.nodes();

  std::vector<std::size_t> starts, ends;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].kind == NodeKind::start_event) starts.push_back(i);
    if (nodes[i].kind == NodeKind::end_event) ends.push_back(i);
  }

  auto from_start = reach(m, starts, true);
  auto to_end = reach(m, ends, false);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!from_start[i]) {
      out.push_back({Severity::error, "E01", "node '" + nodes[i].label + "' is not reachable from a start event",
                     {nodes[i].id}});
    }
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!to_end[i]) {
      out.push_back({Severity::error, "E02", "node '" + nodes[i].label + "' cannot reach an end event",
                     {nodes[i].id}});
    }
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].is_gateway() && m.incoming(i).size() > 1 && m.outgoing(i).size() > 1) {
      out.push_back({Severity::error, "E03", "gateway '" + nodes[i].id + "' both splits and joins",
                     {nodes[i].id}});
    }
  }
  // Endpoints always exist (ProcessModel guarantees it); a flow still dangles
  // when it leaves an end event or enters a start event.
  for (const auto& f : m.flows()) {
    const auto& s = m.node(f.source);
    const auto& t = m.node(f.target);
    if (s.kind == NodeKind::end_event || t.kind == NodeKind::start_event) {
      out.push_back({Severity::error, "E04",
                     "sequence flow '" + f.id + "' dangles (" + std::string(to_string(s.kind)) + " -> " +
                         std::string(to_string(t.kind)) + ")",
                     {f.id}});
    }
  }

  if (starts.size() > 1) {
    Diagnostic d{Severity::warning, "W01", std::to_string(starts.size()) + " start events", {}};
    for (auto s : starts) d.elements.push_back(nodes[s].id);
    out.push_back(std::move(d));
  }
  if (nodes.size() > options.max_elements) {
    out.push_back({Severity::warning, "W02",
                   std::to_string(nodes.size()) + " flow elements exceed the limit of " +
                       std::to_string(options.max_elements),
                   {m.id()}});
  }
  const VerbLexicon& verbs = options.verbs ? *options.verbs : VerbLexicon::builtin();
  for (const auto& n : nodes) {
    if (!n.is_task()) continue;
    auto verb = first_token(n.label);
    if (verb.empty() || !verbs.contains(verb)) {
      out.push_back({Severity::warning, "W03", "task label '" + n.label + "' does not start with a known verb",
                     {n.id}});
    }
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    if (!n.is_gateway() || n.gateway != GatewayKind::exclusive || m.outgoing(i).size() < 2) continue;
    Diagnostic d{Severity::warning, "W04", "exclusive split '" + n.id + "' has outgoing flows without conditions",
                 {}};
    for (auto f : m.outgoing(i)) {
      const auto& flow = m.flows()[f];
      if (!flow.condition || trim(*flow.condition).empty()) d.elements.push_back(flow.id);
    }
    if (!d.elements.empty()) out.push_back(std::move(d));
  }
  return out;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) noexcept {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::error; });
}

}  // namespace bpmkit
