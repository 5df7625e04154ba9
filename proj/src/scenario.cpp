#include "bpmkit/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>

#include "bpmkit/errors.hpp"

namespace bpmkit {

namespace {

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

}  // namespace

MissingDurationError::MissingDurationError(std::vector<std::string> labels)
    : Error("no duration for task(s): " + join(labels, ", ")), labels_(std::move(labels)) {}

namespace {

enum class TokenKind { quoted, bare, equals, slash, section };

struct Token {
  TokenKind kind;
  std::string text;
};

bool is_bare_char(char c) {
  return !(c == ' ' || c == '\t' || c == '\r' || c == '=' || c == '/' || c == '#' || c == '"' || c == '[' ||
           c == ']');
}

std::vector<Token> tokenize(std::string_view line, int lineno) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
    } else if (c == '#') {
      break;
    } else if (c == '"') {
      auto close = line.find('"', i + 1);
      if (close == std::string_view::npos) throw ScenarioSyntaxError(lineno, "unterminated string");
      out.push_back({TokenKind::quoted, std::string(line.substr(i + 1, close - i - 1))});
      i = close + 1;
    } else if (c == '=') {
      out.push_back({TokenKind::equals, "="});
      ++i;
    } else if (c == '/') {
      out.push_back({TokenKind::slash, "/"});
      ++i;
    } else if (c == '[') {
      auto close = line.find(']', i + 1);
      if (close == std::string_view::npos) throw ScenarioSyntaxError(lineno, "unterminated section header");
      out.push_back({TokenKind::section, std::string(line.substr(i + 1, close - i - 1))});
      i = close + 1;
    } else if (c == ']') {
      throw ScenarioSyntaxError(lineno, "unexpected ']'");
    } else {
      std::size_t j = i;
      while (j < line.size() && is_bare_char(line[j])) ++j;
      out.push_back({TokenKind::bare, std::string(line.substr(i, j - i))});
      i = j;
    }
  }
  return out;
}

bool shape(const std::vector<Token>& t, std::initializer_list<TokenKind> kinds) {
  if (t.size() != kinds.size()) return false;
  return std::equal(kinds.begin(), kinds.end(), t.begin(), [](TokenKind k, const Token& tok) { return tok.kind == k; });
}

Rational parse_probability(const std::string& text, int lineno) {
  if (!text.empty() && text.front() == '-') {
    try {
      parse_decimal(std::string_view(text).substr(1));
    } catch (const std::invalid_argument&) {
      throw ScenarioSyntaxError(lineno, "'" + text + "' is not a probability");
    }
    throw ScenarioRangeError(lineno, "probability " + text + " is outside [0, 1]");
  }
  Rational p;
  try {
    p = parse_decimal(text);
  } catch (const std::invalid_argument&) {
    throw ScenarioSyntaxError(lineno, "'" + text + "' is not a probability");
  }
  if (p > 1) throw ScenarioRangeError(lineno, "probability " + text + " is outside [0, 1]");
  return p;
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  enum class Section { none, durations, probabilities };
  Scenario sc;
  Section section = Section::none;
  bool named = false;
  std::set<std::string> matchers;
  std::set<std::string> flow_ids;
  std::set<std::pair<std::string, std::string>> conditions;

  int lineno = 0;
  while (!text.empty() || lineno == 0) {
    ++lineno;
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    auto tokens = tokenize(line, lineno);
    if (tokens.empty()) {
      if (text.empty()) break;
      continue;
    }

    if (tokens[0].kind == TokenKind::section) {
      if (tokens.size() != 1) throw ScenarioSyntaxError(lineno, "trailing text after section header");
      if (tokens[0].text == "durations") section = Section::durations;
      else if (tokens[0].text == "probabilities") section = Section::probabilities;
      else throw ScenarioSyntaxError(lineno, "unknown section [" + tokens[0].text + "]");
      continue;
    }

    if (shape(tokens, {TokenKind::bare, TokenKind::quoted}) && tokens[0].text == "scenario") {
      if (section != Section::none) throw ScenarioSyntaxError(lineno, "scenario name must precede all sections");
      if (named) throw ScenarioSyntaxError(lineno, "scenario name given twice");
      sc.name = tokens[1].text;
      named = true;
      continue;
    }

    switch (section) {
      case Section::none:
        throw ScenarioSyntaxError(lineno, "entry outside of a [durations] or [probabilities] section");

      case Section::durations: {
        if (!shape(tokens, {TokenKind::quoted, TokenKind::equals, TokenKind::bare})) {
          throw ScenarioSyntaxError(lineno, "expected \"task label\" = duration");
        }
        if (tokens[0].text.empty()) throw ScenarioSyntaxError(lineno, "empty task matcher");
        if (!matchers.insert(tokens[0].text).second) {
          throw ScenarioSyntaxError(lineno, "duplicate entry for \"" + tokens[0].text + "\"");
        }
        Duration d;
        try {
          d = Duration::parse(tokens[2].text);
        } catch (const std::out_of_range& e) {
          throw ScenarioRangeError(lineno, e.what());
        } catch (const std::invalid_argument& e) {
          throw ScenarioSyntaxError(lineno, e.what());
        }
        sc.durations.push_back({tokens[0].text, d, lineno});
        break;
      }

      case Section::probabilities: {
        ProbabilityRule rule;
        rule.line = lineno;
        if (shape(tokens, {TokenKind::quoted, TokenKind::slash, TokenKind::quoted, TokenKind::equals,
                           TokenKind::bare})) {
          if (!conditions.emplace(tokens[0].text, tokens[2].text).second) {
            throw ScenarioSyntaxError(lineno, "duplicate probability entry");
          }
          rule.target = ConditionRef{tokens[0].text, tokens[2].text};
        } else if (shape(tokens, {TokenKind::quoted, TokenKind::equals, TokenKind::bare}) ||
                   shape(tokens, {TokenKind::bare, TokenKind::equals, TokenKind::bare})) {
          if (tokens[0].text.empty()) throw ScenarioSyntaxError(lineno, "empty flow id");
          if (!flow_ids.insert(tokens[0].text).second) {
            throw ScenarioSyntaxError(lineno, "duplicate probability entry for flow " + tokens[0].text);
          }
          rule.target = FlowIdRef{tokens[0].text};
        } else {
          throw ScenarioSyntaxError(lineno, "expected \"gateway\" / \"condition\" = p, or flow-id = p");
        }
        rule.probability = parse_probability(tokens.back().text, lineno);
        sc.probabilities.push_back(std::move(rule));
        break;
      }
    }
  }
  return sc;
}

bool glob_match(std::string_view pattern, std::string_view text) noexcept {
  std::size_t p = 0, t = 0;
  std::size_t star = std::string_view::npos, resume = 0;
  while (t < text.size()) {
    if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      resume = t;
    } else if (p < pattern.size() && pattern[p] == text[t]) {
      ++p;
      ++t;
    } else if (star != std::string_view::npos) {
      p = star + 1;
      t = ++resume;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

Duration BoundScenario::duration(std::string_view node_id) const {
  auto idx = model_.node_index(node_id);
  if (!idx) throw std::out_of_range("unknown node '" + std::string(node_id) + "'");
  return durations_[*idx];
}

const Rational& BoundScenario::probability(std::string_view gateway_id, std::string_view flow_id) const {
  auto it = probabilities_.find({std::string(gateway_id), std::string(flow_id)});
  if (it == probabilities_.end()) {
    throw std::out_of_range("no probability for flow '" + std::string(flow_id) + "' at '" +
                            std::string(gateway_id) + "'");
  }
  return it->second;
}

BoundScenario bind(const Scenario& scenario, const ProcessModel& model) {
  BoundScenario bound(model, scenario.name);
  const auto& nodes = model.nodes();
  bound.durations_.assign(nodes.size(), Duration{});

  std::vector<std::string> missing;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const FlowNode& n = nodes[i];
    if (!n.is_task()) continue;
    auto exact = std::find_if(scenario.durations.begin(), scenario.durations.end(),
                              [&](const DurationRule& r) { return !r.is_glob() && r.matcher == n.label; });
    if (exact != scenario.durations.end()) {
      bound.durations_[i] = exact->duration;
      continue;
    }
    std::optional<DurationRule> hit;
    for (const auto& r : scenario.durations) {
      if (!r.is_glob() || !glob_match(r.matcher, n.label)) continue;
      if (hit && hit->duration != r.duration) {
        throw AmbiguousMatchError("task '" + n.label + "' matches \"" + hit->matcher + "\" (" + hit->duration.str() +
                                  ") and \"" + r.matcher + "\" (" + r.duration.str() + ")");
      }
      if (!hit) hit = r;
    }
    if (hit) bound.durations_[i] = hit->duration;
    else missing.push_back(n.label);
  }
  if (!missing.empty()) throw MissingDurationError(std::move(missing));

  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const FlowNode& gw = nodes[i];
    auto outs = model.outgoing(i);
    if (!gw.is_gateway() || gw.gateway != GatewayKind::exclusive || outs.size() < 2) continue;

    std::vector<std::optional<Rational>> given;
    for (auto f : outs) {
      const SequenceFlow& flow = model.flows()[f];
      std::optional<Rational> p;
      for (const auto& r : scenario.probabilities) {
        if (const auto* ref = std::get_if<FlowIdRef>(&r.target); ref && ref->flow == flow.id) p = r.probability;
      }
      if (!p && flow.condition) {
        for (const auto& r : scenario.probabilities) {
          const auto* ref = std::get_if<ConditionRef>(&r.target);
          if (ref && ref->gateway_label == gw.label && ref->condition_label == *flow.condition) p = r.probability;
        }
      }
      given.push_back(std::move(p));
    }

    auto unset = std::count_if(given.begin(), given.end(), [](const auto& p) { return !p.has_value(); });
    Rational sum = 0;
    for (const auto& p : given) {
      if (p) sum += *p;
    }
    if (unset > 1) {
      std::vector<std::string> flows;
      for (std::size_t k = 0; k < outs.size(); ++k) {
        if (!given[k]) {
          const auto& flow = model.flows()[outs[k]];
          flows.push_back(flow.id + (flow.condition ? " (" + *flow.condition + ")" : std::string{}));
        }
      }
      throw MissingProbabilityError("exclusive split '" + gw.label + "' [" + gw.id +
                                    "] has no probability for flows: " + join(flows, ", "));
    }
    if (unset == 1) {
      Rational rest = Rational(1) - sum;
      if (rest < 0) {
        throw SumError("probabilities at '" + gw.label + "' [" + gw.id + "] exceed 1 (" + to_string(sum) + ")");
      }
      for (auto& p : given) {
        if (!p) p = rest;
      }
    } else if (std::abs(to_double(sum) - 1.0) > 1e-9) {
      throw SumError("probabilities at '" + gw.label + "' [" + gw.id + "] sum to " + to_string(sum) + ", not 1");
    }
    for (std::size_t k = 0; k < outs.size(); ++k) {
      bound.probabilities_.emplace(std::pair(gw.id, model.flows()[outs[k]].id), *given[k]);
    }
  }
  return bound;
}

}  // namespace bpmkit
