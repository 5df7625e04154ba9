#include "bpmkit/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>

#include "bpmkit/errors.hpp"

namespace bpmkit {

namespace {

void require_supported(const ProcessModel& m) {
  for (std::size_t i = 0; i < m.nodes().size(); ++i) {
    const auto& n = m.nodes()[i];
    if (n.is_gateway() && n.gateway == GatewayKind::inclusive) {
      throw InclusiveGatewayUnsupported("inclusive gateway '" + n.id + "' is not supported by the simulator");
    }
  }
  if (!is_acyclic(m)) throw CyclicModelError("process '" + m.id() + "' contains a cycle");
}

}  // namespace

Duration path_time(const ExecutionPath& path, const BoundScenario& bound, TimeMode mode) {
  const ProcessModel& m = bound.model();
  if (mode == TimeMode::work_content) {
    Duration total;
    for (const auto& id : path.nodes) total += bound.duration(id);
    return total;
  }
  // Critical path over the flows actually taken.
  std::set<Id> taken(path.flows.begin(), path.flows.end());
  std::map<Id, std::int64_t> finish;
  std::int64_t longest = 0;
  for (const auto& id : path.nodes) {
    auto idx = *m.node_index(id);
    std::int64_t ready = 0;
    for (auto f : m.incoming(idx)) {
      const auto& flow = m.flows()[f];
      auto it = finish.find(flow.source);
      if (taken.contains(flow.id) && it != finish.end()) ready = std::max(ready, it->second);
    }
    finish[id] = ready + bound.duration(idx).seconds();
    longest = std::max(longest, finish[id]);
  }
  return Duration(longest);
}

SimulationReport simulate(const ProcessModel& model, const BoundScenario& bound, TimeMode mode) {
  require_supported(model);
  SimulationReport report;
  report.mode = mode;
  report.expected_exact = 0;
  bool any = false;
  for (auto& path : enumerate_paths(model)) {
    Rational p = 1;
    for (const auto& [gateway, flow] : path.branch_choices) p *= bound.probability(gateway, flow);
    Duration t = path_time(path, bound, mode);
    report.expected_exact += p * t.seconds();
    if (p > 0) {
      if (!any || t < report.best) report.best = t;
      if (!any || t > report.worst) report.worst = t;
      any = true;
    }
    report.per_path.push_back({std::move(path), std::move(p), t});
  }
  if (!any) throw Error("process '" + model.id() + "' has no execution path with positive probability");
  report.expected = Duration(round_half_up(report.expected_exact));
  return report;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct Stats {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;
  std::int64_t min = 0;
  std::int64_t max = 0;

  void add(std::int64_t x) {
    if (count == 0) min = max = x;
    min = std::min(min, x);
    max = std::max(max, x);
    ++count;
    double delta = static_cast<double>(x) - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (static_cast<double>(x) - mean);
  }

  void merge(const Stats& o) {
    if (o.count == 0) return;
    if (count == 0) {
      *this = o;
      return;
    }
    double n1 = static_cast<double>(count), n2 = static_cast<double>(o.count);
    double delta = o.mean - mean;
    double n = n1 + n2;
    mean += delta * n2 / n;
    m2 += o.m2 + delta * delta * n1 * n2 / n;
    count += o.count;
    min = std::min(min, o.min);
    max = std::max(max, o.max);
  }
};

class TokenGame {
 public:
  TokenGame(const ProcessModel& m, const BoundScenario& bound, TimeMode mode) : m_(m), mode_(mode) {
    const auto n = m.nodes().size();
    duration_.resize(n);
    cumulative_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      duration_[i] = bound.duration(i).seconds();
      const auto& node = m.nodes()[i];
      if (node.is_gateway() && node.gateway == GatewayKind::exclusive && m.outgoing(i).size() > 1) {
        double acc = 0.0;
        for (auto f : m.outgoing(i)) {
          double p = to_double(bound.probability(node.id, m.flows()[f].id));
          acc += p;
          cumulative_[i].push_back({acc, p > 0.0});
        }
      }
      if (node.kind == NodeKind::start_event) starts_.push_back(i);
    }
  }

  std::int64_t play(std::mt19937_64& rng) const {
    const auto n = m_.nodes().size();
    std::vector<std::size_t> arrivals(n, 0);
    std::vector<std::int64_t> join_clock(n, 0);
    std::vector<std::pair<std::size_t, std::int64_t>> tokens;
    for (auto s : starts_) tokens.emplace_back(s, 0);
    std::int64_t total = 0;
    std::int64_t finish = 0;
    while (!tokens.empty()) {
      auto [v, clock] = tokens.back();
      tokens.pop_back();
      const auto& node = m_.nodes()[v];
      const auto in = m_.incoming(v);
      if (node.is_gateway() && node.gateway == GatewayKind::parallel && in.size() > 1) {
        join_clock[v] = std::max(join_clock[v], clock);
        if (++arrivals[v] < in.size()) continue;
        clock = join_clock[v];
      }
      total += duration_[v];
      clock += duration_[v];
      finish = std::max(finish, clock);
      const auto outs = m_.outgoing(v);
      if (!cumulative_[v].empty()) {
        tokens.emplace_back(m_.target_index(outs[pick(v, rng)]), clock);
      } else {
        for (auto f : outs) tokens.emplace_back(m_.target_index(f), clock);
      }
    }
    return mode_ == TimeMode::work_content ? total : finish;
  }

 private:
  std::size_t pick(std::size_t v, std::mt19937_64& rng) const {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const auto& cum = cumulative_[v];
    std::size_t last_possible = 0;
    for (std::size_t k = 0; k < cum.size(); ++k) {
      if (!cum[k].second) continue;
      if (u < cum[k].first) return k;
      last_possible = k;
    }
    return last_possible;
  }

  const ProcessModel& m_;
  TimeMode mode_;
  std::vector<std::int64_t> duration_;
  std::vector<std::vector<std::pair<double, bool>>> cumulative_;
  std::vector<std::size_t> starts_;
};

constexpr std::uint64_t kChunk = 4096;

}  // namespace

McReport monte_carlo(const ProcessModel& model, const BoundScenario& bound, std::uint64_t n, std::uint64_t seed,
                     TimeMode mode, unsigned threads) {
  if (n == 0) throw std::invalid_argument("monte_carlo needs at least one replication");
  require_supported(model);
  const TokenGame game(model, bound, mode);

  const std::uint64_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<Stats> partial(chunks);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (auto c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) {
      Stats s;
      const auto end = std::min(n, (c + 1) * kChunk);
      for (auto i = c * kChunk; i < end; ++i) {
        std::mt19937_64 rng(splitmix64(seed ^ splitmix64(i)));
        s.add(game.play(rng));
      }
      partial[c] = s;
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, chunks));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  Stats all;
  for (const auto& s : partial) all.merge(s);
  McReport r;
  r.n = n;
  r.seed = seed;
  r.mean = all.mean;
  r.stddev = std::sqrt(all.m2 / static_cast<double>(all.count));
  r.min = Duration(all.min);
  r.max = Duration(all.max);
  return r;
}

}  // namespace bpmkit
