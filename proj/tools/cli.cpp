#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "bpmkit/analyzer.hpp"
#include "bpmkit/blocks.hpp"
#include "bpmkit/bpmn_io.hpp"
#include "bpmkit/errors.hpp"
#include "bpmkit/scenario.hpp"
#include "bpmkit/simulator.hpp"
#include "bpmkit/textgen.hpp"
#include "bpmkit/verify.hpp"

namespace bpmkit::cli {

namespace {

// Unreadable input files; reported like a usage error.
struct InputError : Error {
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ParseReport parse_model(const std::string& path) {
  std::string text = read_file(path);
  try {
    return parse_bpmn(text);
  } catch (const XmlError& e) {
    throw InputError(path + ": malformed XML: " + e.what());
  } catch (const SchemaError& e) {
    throw InputError(path + ": unsupported BPMN: " + e.what());
  } catch (const DanglingRefError& e) {
    throw InputError(path + ": dangling reference: " + e.what());
  }
}

Collaboration load_model(const std::string& path, std::ostream& err) {
  auto report = parse_model(path);
  for (const auto& ig : report.ignored_elements) {
    err << "note: " << path << ": ignored <" << ig.name << ">" << (ig.id.empty() ? "" : " " + ig.id) << '\n';
  }
  return std::move(report.model);
}

Scenario load_scenario(const std::string& path) {
  try {
    return parse_scenario(read_file(path));
  } catch (const ScenarioLineError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

// Machine values stay on one line: backslash, tab and newline are escaped.
std::string mv(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fixed(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

std::string choices(const ExecutionPath& p) {
  std::vector<std::string> parts;
  for (const auto& [gw, flow] : p.branch_choices) parts.push_back(gw + "=" + flow);
  return join(parts, ",");
}

std::string_view mode_name(TimeMode m) { return m == TimeMode::cycle_time ? "cycle_time" : "work_content"; }

// ---------------------------------------------------------------------------

int cmd_validate(const std::string& model_path, const std::string& verbs_path, std::ostream& out,
                 std::ostream& err) {
  auto collab = load_model(model_path, err);
  std::optional<VerbLexicon> verbs;
  LintOptions opts;
  if (!verbs_path.empty()) {
    verbs = VerbLexicon::parse(read_file(verbs_path));
    opts.verbs = &*verbs;
  }
  std::size_t errors = 0, warnings = 0;
  for (const auto& pool : collab.pools()) {
    if (!pool.process) continue;
    for (const auto& d : validate_structure(*pool.process, opts)) {
      bool is_error = d.severity == Severity::error;
      (is_error ? errors : warnings)++;
      out << (is_error ? "error " : "warning ") << d.code << ": " << d.message;
      if (!d.elements.empty()) out << " [" << join(d.elements, ", ") << "]";
      out << '\n';
    }
  }
  out << errors << " error(s), " << warnings << " warning(s)\n";
  return errors ? kCheckFailed : kSuccess;
}

void print_simulation(const SimulationReport& r, const std::string& scenario, std::ostream& out) {
  out << "scenario: " << (scenario.empty() ? "(unnamed)" : scenario) << '\n';
  out << "mode: " << mode_name(r.mode) << '\n';
  out << "paths: " << r.per_path.size() << '\n';
  out << "best: " << r.best.str() << '\n';
  out << "worst: " << r.worst.str() << '\n';
  out << "expected: " << r.expected.str() << '\n';
  out << "expected (exact seconds): " << to_string(r.expected_exact) << '\n';
  for (std::size_t i = 0; i < r.per_path.size(); ++i) {
    const auto& p = r.per_path[i];
    out << "  path " << i + 1 << ": " << p.time.str() << "  p=" << to_string(p.probability);
    if (!p.path.branch_choices.empty()) out << "  via " << choices(p.path);
    out << '\n';
  }
}

void print_simulation_machine(const SimulationReport& r, const std::string& scenario, std::ostream& out) {
  out << "scenario\t" << mv(scenario) << '\n';
  out << "mode\t" << mode_name(r.mode) << '\n';
  out << "paths\t" << r.per_path.size() << '\n';
  out << "best\t" << r.best.str() << "\nbest_seconds\t" << r.best.seconds() << '\n';
  out << "worst\t" << r.worst.str() << "\nworst_seconds\t" << r.worst.seconds() << '\n';
  out << "expected\t" << r.expected.str() << "\nexpected_seconds\t" << r.expected.seconds() << '\n';
  out << "expected_exact\t" << to_string(r.expected_exact) << '\n';
  for (std::size_t i = 0; i < r.per_path.size(); ++i) {
    const auto& p = r.per_path[i];
    auto key = "path." + std::to_string(i + 1) + ".";
    out << key << "seconds\t" << p.time.seconds() << '\n';
    out << key << "probability\t" << to_string(p.probability) << '\n';
    out << key << "choices\t" << mv(choices(p.path)) << '\n';
  }
}

int cmd_simulate(const std::string& model_path, const std::string& scenario_path, std::optional<std::uint64_t> mc_n,
                 std::uint64_t seed, bool cycle_time, bool machine, std::ostream& out, std::ostream& err) {
  auto collab = load_model(model_path, err);
  auto scenario = load_scenario(scenario_path);
  const auto& model = collab.primary_process();
  auto bound = bind(scenario, model);
  auto mode = cycle_time ? TimeMode::cycle_time : TimeMode::work_content;
  auto report = simulate(model, bound, mode);
  std::optional<McReport> mc;
  if (mc_n) mc = monte_carlo(model, bound, *mc_n, seed, mode);

  if (machine) {
    print_simulation_machine(report, scenario.name, out);
    if (mc) {
      out << "mc.n\t" << mc->n << "\nmc.seed\t" << mc->seed << '\n';
      out << "mc.mean_seconds\t" << fixed(mc->mean) << "\nmc.stddev_seconds\t" << fixed(mc->stddev) << '\n';
      out << "mc.min_seconds\t" << mc->min.seconds() << "\nmc.max_seconds\t" << mc->max.seconds() << '\n';
    }
  } else {
    print_simulation(report, scenario.name, out);
    if (mc) {
      out << "monte carlo: n=" << mc->n << " seed=" << mc->seed << '\n';
      out << "  mean: " << fixed(mc->mean) << " s (" << Duration(std::llround(mc->mean)).str() << ")\n";
      out << "  stddev: " << fixed(mc->stddev) << " s\n";
      out << "  min: " << mc->min.str() << "\n  max: " << mc->max.str() << '\n';
    }
  }
  return kSuccess;
}

int cmd_describe(const std::string& model_path, bool annotate, std::ostream& out, std::ostream& err) {
  auto collab = load_model(model_path, err);
  const auto& model = collab.primary_process();
  out << describe(model, decompose_blocks(model)).render(annotate);
  return kSuccess;
}

void print_issue(const IssueFinding& f, std::ostream& out) {
  out << f.id << ": " << f.title << '\n';
  out << "  Category: " << to_string(f.category) << " (waste group: " << to_string(f.waste_group) << ")\n";
  out << "  Description: " << f.description << '\n';
  out << "  Data and assumptions: " << f.data_and_assumptions << '\n';
  out << "  Qualitative impact: " << f.qualitative_impact << '\n';
  out << "  Quantitative impact: " << f.quantitative_impact << '\n';
  if (f.duplication_factor) out << "  Duplication factor: " << *f.duplication_factor << '\n';
  out << "  Elements: " << join(f.elements, ", ") << '\n';
}

void print_issue_machine(const std::string& prefix, const IssueFinding& f, std::ostream& out) {
  out << prefix << "id\t" << mv(f.id) << '\n';
  out << prefix << "title\t" << mv(f.title) << '\n';
  out << prefix << "category\t" << to_string(f.category) << '\n';
  out << prefix << "waste_group\t" << to_string(f.waste_group) << '\n';
  out << prefix << "subject\t" << mv(f.subject) << '\n';
  out << prefix << "description\t" << mv(f.description) << '\n';
  out << prefix << "data_and_assumptions\t" << mv(f.data_and_assumptions) << '\n';
  out << prefix << "qualitative_impact\t" << mv(f.qualitative_impact) << '\n';
  out << prefix << "quantitative_impact\t" << mv(f.quantitative_impact) << '\n';
  if (f.duplication_factor) out << prefix << "duplication_factor\t" << *f.duplication_factor << '\n';
  out << prefix << "elements\t" << mv(join(f.elements, ",")) << '\n';
}

int cmd_analyze(const std::string& model_path, bool machine, std::ostream& out, std::ostream& err) {
  auto collab = load_model(model_path, err);
  auto issues = detect_issues(collab);
  if (machine) {
    out << "issues\t" << issues.size() << '\n';
    for (std::size_t i = 0; i < issues.size(); ++i) print_issue_machine("issue." + std::to_string(i + 1) + ".", issues[i], out);
    return kSuccess;
  }
  if (issues.empty()) out << "No issues found.\n";
  for (std::size_t i = 0; i < issues.size(); ++i) {
    if (i) out << '\n';
    print_issue(issues[i], out);
  }
  return kSuccess;
}

std::string delta_line(std::int64_t delta, Duration a, Duration b) {
  return format_delta(delta) + " (" + a.str() + " -> " + b.str() + ")";
}

int cmd_diff(const std::string& a_path, const std::string& b_path, const std::string& scenario_path,
             const std::string& scenario_b_path, bool cycle_time, bool machine, std::ostream& out, std::ostream& err) {
  auto a = load_model(a_path, err);
  auto b = load_model(b_path, err);
  auto sa = load_scenario(scenario_path);
  auto sb = scenario_b_path.empty() ? sa : load_scenario(scenario_b_path);
  auto ba = bind(sa, a.primary_process());
  auto bb = bind(sb, b.primary_process());
  auto r = compare(a, b, ba, bb, cycle_time ? TimeMode::cycle_time : TimeMode::work_content);
  const auto &ra = r.simulation_a, &rb = r.simulation_b;

  if (machine) {
    out << "tasks_a\t" << r.task_count_a << "\ntasks_b\t" << r.task_count_b << '\n';
    out << "removed\t" << r.tasks_removed.size() << '\n';
    for (std::size_t i = 0; i < r.tasks_removed.size(); ++i) out << "removed." << i + 1 << '\t' << mv(r.tasks_removed[i]) << '\n';
    out << "added\t" << r.tasks_added.size() << '\n';
    for (std::size_t i = 0; i < r.tasks_added.size(); ++i) out << "added." << i + 1 << '\t' << mv(r.tasks_added[i]) << '\n';
    out << "best_a_seconds\t" << ra.best.seconds() << "\nbest_b_seconds\t" << rb.best.seconds() << '\n';
    out << "worst_a_seconds\t" << ra.worst.seconds() << "\nworst_b_seconds\t" << rb.worst.seconds() << '\n';
    out << "expected_a_seconds\t" << ra.expected.seconds() << "\nexpected_b_seconds\t" << rb.expected.seconds() << '\n';
    out << "best_delta_seconds\t" << r.best_delta << "\nworst_delta_seconds\t" << r.worst_delta << '\n';
    out << "expected_delta_seconds\t" << r.expected_delta << '\n';
    out << "resolved\t" << r.resolved_issues.size() << '\n';
    for (std::size_t i = 0; i < r.resolved_issues.size(); ++i) {
      print_issue_machine("resolved." + std::to_string(i + 1) + ".", r.resolved_issues[i], out);
    }
    out << "heuristics\t" << mv(join(r.heuristic_tags, ",")) << '\n';
    return kSuccess;
  }

  out << "tasks: " << r.task_count_a << " -> " << r.task_count_b << '\n';
  out << "removed (" << r.tasks_removed.size() << "):\n";
  for (const auto& t : r.tasks_removed) out << "  - " << t << '\n';
  out << "added (" << r.tasks_added.size() << "):\n";
  for (const auto& t : r.tasks_added) out << "  + " << t << '\n';
  out << "best: " << delta_line(r.best_delta, ra.best, rb.best) << '\n';
  out << "worst: " << delta_line(r.worst_delta, ra.worst, rb.worst) << '\n';
  out << "expected: " << delta_line(r.expected_delta, ra.expected, rb.expected) << '\n';
  out << "resolved issues (" << r.resolved_issues.size() << "):\n";
  for (const auto& f : r.resolved_issues) out << "  " << f.id << ": " << f.title << '\n';
  out << "heuristics: " << (r.heuristic_tags.empty() ? "none" : join(r.heuristic_tags, ", ")) << '\n';
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Process model analysis: validation, simulation, text generation, issue detection", "bpmkit"};
  app.require_subcommand(1);

  std::string model, model_b, scenario, scenario_b, verbs, format = "text";
  std::optional<std::uint64_t> mc_n;
  std::uint64_t seed = 1;
  bool cycle_time = false, annotate = false;
  auto formats = CLI::IsMember({"text", "machine"});

  auto* validate = app.add_subcommand("validate", "Check structure and modeling guidelines");
  validate->add_option("model", model, "BPMN file")->required();
  validate->add_option("--verbs", verbs, "Verb lexicon, one verb per line");

  auto* sim = app.add_subcommand("simulate", "Best, worst and expected processing time");
  sim->add_option("model", model, "BPMN file")->required();
  sim->add_option("--scenario", scenario, "Scenario file")->required();
  auto* mc_opt = sim->add_option("--monte-carlo", mc_n, "Also run N Monte Carlo replications")->check(CLI::PositiveNumber);
  sim->add_option("--seed", seed, "Monte Carlo seed")->needs(mc_opt);
  sim->add_flag("--cycle-time", cycle_time, "Parallel blocks take the longest branch instead of the sum");
  sim->add_option("--format", format, "text or machine")->check(formats);

  auto* desc = app.add_subcommand("describe", "Textual description of the process");
  desc->add_option("model", model, "BPMN file")->required();
  desc->add_flag("--annotate", annotate, "Append source element ids to each sentence");

  auto* analyze = app.add_subcommand("analyze", "Issue register from data-store waste detectors");
  analyze->add_option("model", model, "BPMN file")->required();
  analyze->add_option("--format", format, "text or machine")->check(formats);

  auto* diff = app.add_subcommand("diff", "Compare two variants of a process");
  diff->add_option("model_a", model, "Current (as-is) BPMN file")->required();
  diff->add_option("model_b", model_b, "Redesigned (to-be) BPMN file")->required();
  diff->add_option("--scenario", scenario, "Scenario file for both models")->required();
  diff->add_option("--scenario-b", scenario_b, "Separate scenario for the second model");
  diff->add_flag("--cycle-time", cycle_time, "Parallel blocks take the longest branch instead of the sum");
  diff->add_option("--format", format, "text or machine")->check(formats);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  const bool machine = format == "machine";
  try {
    if (*validate) return cmd_validate(model, verbs, out, err);
    if (*sim) return cmd_simulate(model, scenario, mc_n, seed, cycle_time, machine, out, err);
    if (*desc) return cmd_describe(model, annotate, out, err);
    if (*analyze) return cmd_analyze(model, machine, out, err);
    if (*diff) return cmd_diff(model, model_b, scenario, scenario_b, cycle_time, machine, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kCheckFailed;
  }
  return kUsage;
}

}  // namespace bpmkit::cli
