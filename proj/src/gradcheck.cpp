#include "gradflow/gradcheck.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>

#include "gradflow/error.hpp"

namespace gradflow {

namespace {

void require_realizable(const FlowGraph& flow) {
  if (!face_coherence_check(flow)) {
    throw Error(ErrorCode::NotRealizable, "face walks are not coherent; not a Morse flow cell structure");
  }
}

std::vector<std::vector<int>> adjacency(const SaddleDigraph& g) {
  std::vector<std::vector<int>> out(g.size());
  for (auto [a, b] : g.edges) out[a].push_back(b);
  for (auto& row : out) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  return out;
}

// Shortest directed cycle; ties broken by the lexicographically least
// sequence of saddle ids, starting anywhere on the cycle.
std::optional<std::vector<std::string>> shortest_cycle(const FlowGraph& flow, const SaddleDigraph& g) {
  const int n = g.size();
  const auto out = adjacency(g);
  std::vector<std::vector<int>> in(n);
  for (int a = 0; a < n; ++a) {
    for (int b : out[a]) in[b].push_back(a);
  }

  constexpr int kInf = std::numeric_limits<int>::max();
  // dist_to[t][v]: length of the shortest path v -> t.
  std::vector<std::vector<int>> dist_to(n, std::vector<int>(n, kInf));
  int best = kInf;
  for (int t = 0; t < n; ++t) {
    auto& dist = dist_to[t];
    std::deque<int> queue{t};
    dist[t] = 0;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int u : in[v]) {
        if (dist[u] == kInf) {
          dist[u] = dist[v] + 1;
          queue.push_back(u);
        }
      }
    }
    for (int u : out[t]) {
      if (dist[u] != kInf) best = std::min(best, dist[u] + 1);
    }
  }
  if (best == kInf) return std::nullopt;

  std::vector<int> by_id(n);
  for (int i = 0; i < n; ++i) by_id[i] = i;
  auto id_of = [&](int i) -> const std::string& { return flow.vertex(g.saddles[i]).id; };
  std::sort(by_id.begin(), by_id.end(), [&](int a, int b) { return id_of(a) < id_of(b); });

  // Any prefix of a shortest cycle through `start` that reaches v with r
  // steps left must have dist(v -> start) == r; smaller would close a
  // shorter cycle. Greedy choice of the least id is therefore exact.
  std::optional<std::vector<std::string>> result;
  for (int start : by_id) {
    bool on_cycle = false;
    for (int u : out[start]) on_cycle = on_cycle || dist_to[start][u] == best - 1;
    if (!on_cycle) continue;

    std::vector<std::string> seq{id_of(start)};
    int v = start;
    for (int remaining = best - 1; remaining > 0; --remaining) {
      int pick = -1;
      for (int u : out[v]) {
        if (dist_to[start][u] == remaining && (pick == -1 || id_of(u) < id_of(pick))) pick = u;
      }
      seq.push_back(id_of(pick));
      v = pick;
    }
    if (!result || seq < *result) result = std::move(seq);
  }
  return result;
}

}  // namespace

std::string format_rational(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

SaddleDigraph saddle_digraph(const FlowGraph& flow) {
  SaddleDigraph g;
  std::vector<int> position(flow.vertex_count(), -1);
  for (int v = 0; v < flow.vertex_count(); ++v) {
    if (flow.vertex(v).kind == VertexKind::Saddle) {
      position[v] = g.size();
      g.saddles.push_back(v);
    }
  }
  for (const auto& dart : flow.darts()) {
    if (dart.dir != DartDir::Out) continue;
    const int from = position[dart.vertex];
    const int to = position[flow.dart(dart.partner).vertex];
    if (from != -1 && to != -1) g.edges.emplace_back(from, to);
  }
  return g;
}

CheckReport check_gradient_like(const FlowGraph& flow) {
  require_realizable(flow);
  CheckReport r;
  r.cond_sources_sinks = flow.count(VertexKind::Source) >= 1 && flow.count(VertexKind::Sink) >= 1;
  r.cond_separatrix_endpoints = true;
  r.witness_cycle = shortest_cycle(flow, saddle_digraph(flow));
  r.cond_no_directed_cycle = !r.witness_cycle.has_value();
  r.verdict = r.cond_sources_sinks && r.cond_separatrix_endpoints && r.cond_no_directed_cycle;
  return r;
}

const Rational& EnergyAssignment::at(std::string_view vertex_id) const {
  for (const auto& [id, value] : values) {
    if (id == vertex_id) return value;
  }
  throw std::out_of_range("no energy value for vertex '" + std::string(vertex_id) + "'");
}

std::vector<std::string> energy_violations(const FlowGraph& flow, const EnergyAssignment& energy) {
  std::vector<std::string> bad;
  if (energy.values.size() != static_cast<size_t>(flow.vertex_count())) {
    bad.push_back("value count differs from vertex count");
    return bad;
  }
  Rational saddle_sum = 0;
  std::vector<Rational> value(flow.vertex_count());
  for (int v = 0; v < flow.vertex_count(); ++v) {
    const auto& vert = flow.vertex(v);
    if (energy.values[v].first != vert.id) {
      bad.push_back("value order does not follow vertices at '" + vert.id + "'");
      return bad;
    }
    value[v] = energy.values[v].second;
    switch (vert.kind) {
      case VertexKind::Source:
        if (value[v] != Rational(1)) bad.push_back("source '" + vert.id + "' is not +1");
        break;
      case VertexKind::Sink:
        if (value[v] != Rational(-1)) bad.push_back("sink '" + vert.id + "' is not -1");
        break;
      case VertexKind::Saddle:
        if (value[v] <= Rational(-1) || value[v] >= Rational(1)) bad.push_back("saddle '" + vert.id + "' outside (-1, 1)");
        saddle_sum += value[v];
        break;
    }
  }
  if (saddle_sum != Rational(0)) bad.push_back("saddle values sum to " + format_rational(saddle_sum));
  for (const auto& dart : flow.darts()) {
    if (dart.dir != DartDir::Out) continue;
    const int to = flow.dart(dart.partner).vertex;
    if (!(value[dart.vertex] > value[to])) {
      bad.push_back("energy does not decrease from '" + flow.vertex(dart.vertex).id + "' to '" + flow.vertex(to).id + "'");
    }
  }
  return bad;
}

std::variant<EnergyAssignment, CheckReport> build_energy(const FlowGraph& flow) {
  require_realizable(flow);
  if (flow.count(VertexKind::Source) == 0 || flow.count(VertexKind::Sink) == 0) return check_gradient_like(flow);

  // Longest path ending at each saddle, by Kahn's algorithm; leftover
  // vertices mean a directed cycle.
  const SaddleDigraph g = saddle_digraph(flow);
  const int n = g.size();
  std::vector<std::vector<int>> out(n);
  std::vector<int> indegree(n, 0);
  for (auto [a, b] : g.edges) {
    out[a].push_back(b);
    ++indegree[b];
  }
  std::vector<long long> rank(n, 0);
  std::deque<int> ready;
  for (int v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  int processed = 0;
  while (!ready.empty()) {
    const int v = ready.front();
    ready.pop_front();
    ++processed;
    for (int u : out[v]) {
      rank[u] = std::max(rank[u], rank[v] + 1);
      if (--indegree[u] == 0) ready.push_back(u);
    }
  }
  if (processed != n) return check_gradient_like(flow);

  std::vector<Rational> centered(n);
  if (n > 0) {
    Rational mean = 0;
    for (int v = 0; v < n; ++v) mean += Rational(-rank[v]);
    mean /= n;
    Rational max_abs = 0;
    for (int v = 0; v < n; ++v) {
      centered[v] = Rational(-rank[v]) - mean;
      max_abs = std::max(max_abs, abs(centered[v]));
    }
    for (auto& c : centered) c /= (max_abs + 1);
  }

  EnergyAssignment e;
  int next_saddle = 0;
  for (int v = 0; v < flow.vertex_count(); ++v) {
    const auto& vert = flow.vertex(v);
    switch (vert.kind) {
      case VertexKind::Source: e.values.emplace_back(vert.id, Rational(1)); break;
      case VertexKind::Sink: e.values.emplace_back(vert.id, Rational(-1)); break;
      case VertexKind::Saddle: e.values.emplace_back(vert.id, centered[next_saddle++]); break;
    }
  }
  return e;
}

bool admits_gradient_like(int sources, int sinks, int saddles) {
  const int chi = sources + sinks - saddles;
  if (sources < 0 || sinks < 0 || saddles < 0 || chi > 2 || chi % 2 != 0) {
    throw Error(ErrorCode::InconsistentCounts, "(" + std::to_string(sources) + ", " + std::to_string(sinks) + ", " +
                                                   std::to_string(saddles) + ") fits no closed orientable surface");
  }
  return sources >= 1 && sinks >= 1;
}

nlohmann::json to_json(const CheckReport& r) {
  nlohmann::json j;
  j["cond_sources_sinks"] = r.cond_sources_sinks;
  j["cond_separatrix_endpoints"] = r.cond_separatrix_endpoints;
  j["cond_no_directed_cycle"] = r.cond_no_directed_cycle;
  j["witness_cycle"] = r.witness_cycle ? nlohmann::json(*r.witness_cycle) : nlohmann::json(nullptr);
  j["verdict"] = r.verdict;
  return j;
}

nlohmann::json to_json(const EnergyAssignment& e) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [id, value] : e.values) j[id] = format_rational(value);
  return j;
}

}  // namespace gradflow
