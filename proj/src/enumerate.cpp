#include "gradflow/enumerate.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "gradflow/error.hpp"
#include "gradflow/gradcheck.hpp"

namespace gradflow {

namespace {

// Saddle s owns darts 4s..4s+3 in ccw order Out, In, Out, In. A candidate
// is fixed by (1) a partial matching of saddle Out darts to saddle In darts
// (the saddle connections), (2) a permutation of the unmatched Out darts
// whose cycles are the sinks, each cycle giving the ccw order of the sink's
// darts, and (3) likewise for unmatched In darts and sources. Every flow
// graph with k saddles is isomorphic to at least one such candidate.
class Generator {
 public:
  Generator(int saddles, const std::function<void(const FlowGraph&)>& visit) : k_(saddles), visit_(visit) {
    for (int s = 0; s < k_; ++s) {
      outs_.push_back(4 * s);
      outs_.push_back(4 * s + 2);
      ins_.push_back(4 * s + 1);
      ins_.push_back(4 * s + 3);
    }
    match_.assign(4 * k_, -1);
    used_in_.assign(4 * k_, 0);
  }

  void run() {
    if (k_ == 0) {
      visit_(FlowGraph::polar());
      return;
    }
    match_outs(0);
  }

 private:
  void match_outs(size_t i) {
    if (i == outs_.size()) {
      attach_extrema();
      return;
    }
    const int o = outs_[i];
    match_outs(i + 1);  // o goes to a sink
    for (int in : ins_) {
      if (used_in_[in]) continue;
      used_in_[in] = 1;
      match_[o] = in;
      match_[in] = o;
      match_outs(i + 1);
      match_[o] = match_[in] = -1;
      used_in_[in] = 0;
    }
  }

  void attach_extrema() {
    std::vector<int> free_outs, free_ins;
    for (int o : outs_) {
      if (match_[o] == -1) free_outs.push_back(o);
    }
    for (int in : ins_) {
      if (match_[in] == -1) free_ins.push_back(in);
    }
    const int a = static_cast<int>(free_outs.size());

    std::vector<int> sink_perm(a), source_perm(a);
    std::iota(sink_perm.begin(), sink_perm.end(), 0);
    do {
      std::iota(source_perm.begin(), source_perm.end(), 0);
      do {
        emit(free_outs, free_ins, sink_perm, source_perm);
      } while (std::next_permutation(source_perm.begin(), source_perm.end()));
    } while (std::next_permutation(sink_perm.begin(), sink_perm.end()));
  }

  void emit(const std::vector<int>& free_outs, const std::vector<int>& free_ins, const std::vector<int>& sink_perm,
            const std::vector<int>& source_perm) {
    const int a = static_cast<int>(free_outs.size());
    const int ndarts = 4 * k_ + 2 * a;
    std::vector<VertexKind> kinds(k_, VertexKind::Saddle);
    std::vector<std::vector<int>> rotations;
    for (int s = 0; s < k_; ++s) rotations.push_back({4 * s, 4 * s + 1, 4 * s + 2, 4 * s + 3});
    std::vector<DartDir> dirs(ndarts);
    std::vector<int> partner(ndarts);
    for (int d = 0; d < 4 * k_; ++d) {
      dirs[d] = d % 2 == 0 ? DartDir::Out : DartDir::In;
      partner[d] = match_[d];
    }

    // Sink dart 4k+i absorbs free_outs[i]; source dart 4k+a+j feeds free_ins[j].
    for (int i = 0; i < a; ++i) {
      dirs[4 * k_ + i] = DartDir::In;
      partner[4 * k_ + i] = free_outs[i];
      partner[free_outs[i]] = 4 * k_ + i;
      dirs[4 * k_ + a + i] = DartDir::Out;
      partner[4 * k_ + a + i] = free_ins[i];
      partner[free_ins[i]] = 4 * k_ + a + i;
    }

    auto add_cycles = [&](const std::vector<int>& perm, int base, VertexKind kind) {
      std::vector<char> seen(a, 0);
      for (int i = 0; i < a; ++i) {
        if (seen[i]) continue;
        std::vector<int> rotation;
        for (int j = i; !seen[j]; j = perm[j]) {
          seen[j] = 1;
          rotation.push_back(base + j);
        }
        kinds.push_back(kind);
        rotations.push_back(std::move(rotation));
      }
    };
    add_cycles(sink_perm, 4 * k_, VertexKind::Sink);
    add_cycles(source_perm, 4 * k_ + a, VertexKind::Source);

    if (!connected(rotations, partner, ndarts)) return;

    FlowGraph flow = FlowGraph::assemble(std::move(kinds), std::move(rotations), std::move(dirs), std::move(partner));
    if (!face_coherence_check(flow)) return;
    if (!poincare_hopf_check(flow)) {
      throw std::logic_error("generated flow violates Poincare-Hopf: " + flow_to_json(flow).dump());
    }
    visit_(flow);
  }

  static bool connected(const std::vector<std::vector<int>>& rotations, const std::vector<int>& partner, int ndarts) {
    std::vector<int> vertex_of(ndarts);
    const int nv = static_cast<int>(rotations.size());
    for (int v = 0; v < nv; ++v) {
      for (int d : rotations[v]) vertex_of[d] = v;
    }
    std::vector<int> parent(nv);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    int components = nv;
    for (int d = 0; d < ndarts; ++d) {
      const int a = find(vertex_of[d]);
      const int b = find(vertex_of[partner[d]]);
      if (a != b) {
        parent[a] = b;
        --components;
      }
    }
    return components == 1;
  }

  int k_;
  const std::function<void(const FlowGraph&)>& visit_;
  std::vector<int> outs_, ins_;
  std::vector<int> match_;
  std::vector<char> used_in_;
};

void validate_saddles(int saddles) {
  if (saddles < 0 || saddles > kMaxEnumSaddles) {
    throw Error(ErrorCode::SpecOutOfBounds,
                "saddle count " + std::to_string(saddles) + " outside [0, " + std::to_string(kMaxEnumSaddles) + "]");
  }
}

}  // namespace

void for_each_candidate(int saddles, const std::function<void(const FlowGraph&)>& visit) {
  validate_saddles(saddles);
  Generator(saddles, visit).run();
}

std::vector<EnumeratedFlow> enumerate_flows(const EnumSpec& spec) {
  validate_saddles(spec.saddles);
  std::set<std::vector<int>> codes;
  for_each_candidate(spec.saddles, [&](const FlowGraph& flow) {
    const int sources = flow.count(VertexKind::Source);
    const int sinks = flow.count(VertexKind::Sink);
    if (spec.genus && genus(flow) != *spec.genus) return;
    if (spec.sources && sources != *spec.sources) return;
    if (spec.sinks && sinks != *spec.sinks) return;
    if (spec.max_extrema && sources + sinks > *spec.max_extrema) return;
    codes.insert(canonical_code(flow).code);
  });

  std::vector<EnumeratedFlow> out;
  for (const auto& code : codes) {
    EnumeratedFlow e{CanonicalCode{code, false}, flow_from_code(CanonicalCode{code, false}), 0, false};
    e.genus = genus(e.flow);
    e.gradient_like = check_gradient_like(e.flow).verdict;
    if (spec.gradient_like_only && !e.gradient_like) continue;
    out.push_back(std::move(e));
  }
  return out;
}

CountTable tabulate(const std::vector<EnumeratedFlow>& flows) {
  std::map<std::tuple<int, int, int, int>, std::pair<int, int>> rows;
  for (const auto& e : flows) {
    auto& [classes, gradient_like] = rows[{e.genus, e.flow.count(VertexKind::Saddle), e.flow.count(VertexKind::Source),
                                           e.flow.count(VertexKind::Sink)}];
    ++classes;
    if (e.gradient_like) ++gradient_like;
  }
  CountTable table;
  for (const auto& [key, value] : rows) {
    const auto& [g, k, p, q] = key;
    table.push_back({g, k, p, q, value.first, value.second});
  }
  return table;
}

CountTable count_table(int kmax) {
  validate_saddles(kmax);
  std::vector<EnumeratedFlow> all;
  for (int k = 0; k <= kmax; ++k) {
    EnumSpec spec;
    spec.saddles = k;
    auto flows = enumerate_flows(spec);
    std::move(flows.begin(), flows.end(), std::back_inserter(all));
  }
  return tabulate(all);
}

std::string to_csv(const CountTable& table) {
  std::ostringstream out;
  out << "genus,k,sources,sinks,classes,gradient_like\n";
  for (const auto& r : table) {
    out << r.genus << ',' << r.k << ',' << r.sources << ',' << r.sinks << ',' << r.classes << ',' << r.gradient_like
        << '\n';
  }
  return out.str();
}

nlohmann::json to_json(const CountTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : table) {
    rows.push_back({{"genus", r.genus},
                    {"k", r.k},
                    {"sources", r.sources},
                    {"sinks", r.sinks},
                    {"classes", r.classes},
                    {"gradient_like", r.gradient_like}});
  }
  return rows;
}

}  // namespace gradflow
