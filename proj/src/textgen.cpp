#include "bpmkit/textgen.hpp"

#include <array>
#include <optional>

namespace bpmkit {

std::string count_word(std::size_t n) {
  static constexpr std::array<const char*, 13> words{"zero", "one", "two",   "three", "four",   "five",  "six",
                                                     "seven", "eight", "nine", "ten",  "eleven", "twelve"};
  return n < words.size() ? words[n] : std::to_string(n);
}

std::string ordinal_word(std::size_t n) {
  static constexpr std::array<const char*, 13> words{"zeroth",  "first", "second", "third",  "fourth",
                                                     "fifth",   "sixth", "seventh", "eighth", "ninth",
                                                     "tenth",   "eleventh", "twelfth"};
  if (n < words.size()) return words[n];
  auto tens = n % 100;
  const char* suffix = (tens >= 11 && tens <= 13) ? "th"
                       : n % 10 == 1              ? "st"
                       : n % 10 == 2              ? "nd"
                       : n % 10 == 3              ? "rd"
                                                  : "th";
  return std::to_string(n) + suffix;
}

std::string Description::render(bool annotate) const {
  std::string out;
  for (const auto& s : sentences) {
    out += s.text;
    if (annotate) {
      out += "  [ids: ";
      for (std::size_t i = 0; i < s.sources.size(); ++i) {
        if (i) out += ", ";
        out += s.sources[i];
      }
      out += "]";
    }
    out += '\n';
  }
  return out;
}

namespace {

constexpr std::array<const char*, 3> kConnectors{"Then", "After that", "Subsequently"};

std::string capitalize(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

class Writer {
 public:
  explicit Writer(const ProcessModel& m) : m_(m) {}

  Description finish() && { return std::move(out_); }

  void sequence(const std::vector<Block>& blocks) {
    std::size_t connector = 0;
    for (const auto& b : blocks) {
      std::visit([&](const auto& x) { block(x, connector); }, b.content);
    }
  }

 private:
  void block(const LeafBlock& leaf, std::size_t& connector) {
    const FlowNode& n = m_.node(leaf.node);
    if (n.kind == NodeKind::start_event) {
      const std::string& name = m_.name().empty() ? m_.id() : m_.name();
      emit("the " + name + " process starts when " + n.label + ".", {n.id});
    } else if (n.kind == NodeKind::end_event) {
      emit("the process ends with " + n.label + ".", {n.id});
    } else {
      std::optional<std::string> lead;
      if (!pending_) lead = kConnectors[connector++ % kConnectors.size()];
      emit(n.label + ".", {n.id}, std::move(lead));
    }
  }

  void block(const SequenceBlock& seq, std::size_t&) { sequence(seq.children); }

  void block(const ChoiceBlock& choice, std::size_t&) {
    if (choice.kind == GatewayKind::inclusive) {
      emit(count_word(choice.branches.size()) + " alternative procedures may be executed.", {choice.split});
      for (std::size_t k = 0; k < choice.branches.size(); ++k) {
        branch(choice.branches[k], "In the " + ordinal_word(k + 1) + " procedure");
      }
      prefix("Afterwards", choice.join);
      return;
    }

    const FlowNode& split = m_.node(choice.split);
    std::vector<std::string> conds;
    for (std::size_t k = 0; k < choice.branches.size(); ++k) conds.push_back(condition(choice.branches[k], k));
    std::string list;
    for (std::size_t k = 0; k < conds.size(); ++k) {
      if (k) list += (k + 1 == conds.size()) ? ", or " : ", ";
      list += conds[k];
    }
    const bool last_empty = choice.branches.back().body.empty();
    std::string subject = split.label.empty() ? std::string("condition") : split.label;
    emit("the " + subject + " may either be " + list +
             (last_empty ? ", in which case nothing further is required." : "."),
         {choice.split});
    for (std::size_t k = 0; k < choice.branches.size(); ++k) {
      const Branch& br = choice.branches[k];
      if (br.body.empty() && k + 1 == choice.branches.size()) continue;
      branch(br, "If " + conds[k]);
    }
    prefix("In any of these cases", choice.join);
  }

  void block(const ParallelBlock& par, std::size_t&) {
    emit(count_word(par.branches.size()) + " procedures are executed in an arbitrary order.", {par.split});
    for (std::size_t k = 0; k < par.branches.size(); ++k) {
      if (k == 0) {
        branch(par.branches[k], std::nullopt);
      } else {
        branch(par.branches[k], k % 2 == 1 ? "In the meantime" : "At the same time");
      }
    }
    prefix("After each case", par.join);
  }

  void block(const LoopBlock& loop, std::size_t&) {
    pending_sources_.push_back(loop.entry);
    sequence(loop.body);
    const auto& exit = m_.flow(loop.exit_flow);
    std::string next = exit.condition && !exit.condition->empty() ? *exit.condition : "the next step";
    prefix("If required", loop.exit);
    emit("the latter steps are repeated and continue with " + next + ".", {loop.back_edge});
    prefix("Once the loop is finished", loop.exit_flow);
  }

  void branch(const Branch& br, std::optional<std::string> intro) {
    if (intro) prefix(*intro, br.flow);
    else pending_sources_.push_back(br.flow);
    if (br.body.empty()) {
      emit("nothing further is required.", {});
    } else {
      sequence(br.body);
    }
  }

  std::string condition(const Branch& br, std::size_t k) const {
    if (br.condition && !br.condition->empty()) return *br.condition;
    return "the " + ordinal_word(k + 1) + " case";
  }

  void prefix(std::string text, const Id& source) {
    pending_ = std::move(text);
    pending_sources_.push_back(source);
  }

  void emit(const std::string& body, std::vector<Id> sources, std::optional<std::string> connector = std::nullopt) {
    Sentence s;
    const auto& lead = pending_ ? pending_ : connector;
    s.text = lead ? *lead + ", " + body : capitalize(body);
    s.sources = std::move(pending_sources_);
    s.sources.insert(s.sources.end(), sources.begin(), sources.end());
    pending_.reset();
    pending_sources_.clear();
    out_.sentences.push_back(std::move(s));
  }

  const ProcessModel& m_;
  Description out_;
  std::optional<std::string> pending_;
  std::vector<Id> pending_sources_;
};

}  // namespace

Description describe(const ProcessModel& model, const BlockTree& tree) {
  Writer w(model);
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SequenceBlock>) {
          w.sequence(x.children);
        } else {
          w.sequence({Block{x}});
        }
      },
      tree.content);
  return std::move(w).finish();
}

}  // namespace bpmkit
