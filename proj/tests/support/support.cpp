#include "support.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <stdexcept>

#include "gradflow/equiv.hpp"
#include "gradflow/error.hpp"

#ifndef GRADFLOW_FIXTURE_DIR
#error "GRADFLOW_FIXTURE_DIR must be defined"
#endif

namespace gradflow::testkit {

std::string fixture_path(const std::string& name) { return std::string(GRADFLOW_FIXTURE_DIR) + "/" + name; }

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return nlohmann::json::parse(in);
}

FlowGraph load_flow(const std::string& name) { return flow_from_json(read_json(fixture_path(name))); }

FunctionProfile load_profile(const std::string& name) {
  return profile_from_json(read_json(fixture_path("profiles/" + name)));
}

std::vector<std::string> flow_fixture_names() {
  std::vector<std::string> names;
  for (const auto& entry : std::filesystem::directory_iterator(GRADFLOW_FIXTURE_DIR)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") names.push_back(entry.path().filename());
  }
  std::sort(names.begin(), names.end());
  return names;
}

FlowGraph scramble(const FlowGraph& flow, std::mt19937_64& rng) {
  FlowDescription d = flow.describe();
  std::vector<int> vperm(flow.vertex_count()), dperm(flow.dart_count());
  std::iota(vperm.begin(), vperm.end(), 0);
  std::iota(dperm.begin(), dperm.end(), 0);
  std::shuffle(vperm.begin(), vperm.end(), rng);
  std::shuffle(dperm.begin(), dperm.end(), rng);

  std::map<std::string, std::string> vname, dname;
  for (int v = 0; v < flow.vertex_count(); ++v) vname[flow.vertex(v).id] = "q" + std::to_string(vperm[v]);
  for (int e = 0; e < flow.dart_count(); ++e) dname[flow.dart(e).id] = "h" + std::to_string(dperm[e]);

  FlowDescription out;
  out.special_polar = d.special_polar;
  for (const auto& [id, kind] : d.vertices) out.vertices.emplace_back(vname.at(id), kind);
  std::shuffle(out.vertices.begin(), out.vertices.end(), rng);
  for (auto [id, darts] : d.rotation) {
    for (auto& dart : darts) dart = dname.at(dart);
    if (!darts.empty()) {
      std::uniform_int_distribution<size_t> shift(0, darts.size() - 1);
      std::rotate(darts.begin(), darts.begin() + shift(rng), darts.end());
    }
    out.rotation.emplace_back(vname.at(id), std::move(darts));
  }
  std::shuffle(out.rotation.begin(), out.rotation.end(), rng);
  for (const auto& [id, dir] : d.dart_dir) out.dart_dir.emplace_back(dname.at(id), dir);
  std::shuffle(out.dart_dir.begin(), out.dart_dir.end(), rng);
  std::bernoulli_distribution flip(0.5);
  for (const auto& [a, b] : d.pairing) {
    if (flip(rng)) {
      out.pairing.emplace_back(dname.at(b), dname.at(a));
    } else {
      out.pairing.emplace_back(dname.at(a), dname.at(b));
    }
  }
  std::shuffle(out.pairing.begin(), out.pairing.end(), rng);
  return build(out);
}

std::vector<AdeLabel> all_labels(int max_mu) {
  std::vector<AdeLabel> out;
  const std::vector<std::optional<Sign>> second{std::nullopt, Sign::Plus, Sign::Minus};
  for (Family f : {Family::A, Family::D, Family::E}) {
    for (int mu = 1; mu <= max_mu; ++mu) {
      for (Sign s1 : {Sign::Plus, Sign::Minus}) {
        for (const auto& s2 : second) {
          AdeLabel l{f, mu, s1, s2};
          try {
            validate_label(l);
            out.push_back(l);
          } catch (const Error&) {
          }
        }
      }
    }
  }
  return out;
}

FunctionProfile random_consistent_profile(std::mt19937_64& rng, int max_total, int max_genus) {
  // Pools by class, chosen from the normal forms directly.
  static const std::vector<std::string> minima{"A1:+,+", "A3:+,+", "A5:+,+", "A7:+,+"};
  static const std::vector<std::string> maxima{"A1:+,-", "A3:+,-", "A5:+,-", "A9:+,-"};
  static const std::vector<std::string> saddles{"A1:-", "A3:-,+", "A5:-,-", "D5:+", "D7:-", "E7:+", "E7:-"};
  static const std::vector<std::string> trivial{"A2:+", "A4:-", "D4:+", "D6:+", "E6:+", "E6:-", "E8:+", "E8:-"};
  static const std::vector<std::string> multi{"D4:-", "D6:-", "D8:-"};

  auto pick = [&](const std::vector<std::string>& pool) {
    std::uniform_int_distribution<size_t> i(0, pool.size() - 1);
    return parse_label(pool[i(rng)]);
  };
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  for (;;) {
    const int genus = uniform(0, max_genus);
    const int chi = 2 - 2 * genus;
    const int m = uniform(0, 3);
    const int t = uniform(0, 3);
    const int e = uniform(2, 8);
    // Index sum e - n - 2m must equal chi.
    const int n = e - 2 * m - chi;
    if (n < 0 || e + n + t + m > max_total) continue;
    const int nmin = uniform(1, e - 1);
    FunctionProfile p;
    p.genus = genus;
    for (int i = 0; i < nmin; ++i) p.labels.push_back(pick(minima));
    for (int i = nmin; i < e; ++i) p.labels.push_back(pick(maxima));
    for (int i = 0; i < n; ++i) p.labels.push_back(pick(saddles));
    for (int i = 0; i < t; ++i) p.labels.push_back(pick(trivial));
    for (int i = 0; i < m; ++i) p.labels.push_back(pick(multi));
    std::shuffle(p.labels.begin(), p.labels.end(), rng);
    return p;
  }
}

namespace {

void partitions(int n, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int part = std::min(n, max_part); part >= 1; --part) {
    cur.push_back(part);
    partitions(n - part, part, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  partitions(n, n, cur, out);
  return out;
}

struct NaiveDart {
  std::string id;
  bool at_extremum;
};

class Naive {
 public:
  Naive(int k, const std::vector<int>& sink_degrees, const std::vector<int>& source_degrees) {
    for (int z = 0; z < k; ++z) {
      const std::string v = "z" + std::to_string(z);
      std::vector<std::string> rot;
      for (int i = 0; i < 4; ++i) {
        const std::string id = v + "_" + std::to_string(i);
        rot.push_back(id);
        const DartDir dir = i % 2 == 0 ? DartDir::Out : DartDir::In;
        desc_.dart_dir.emplace_back(id, dir);
        (dir == DartDir::Out ? outs_ : ins_).push_back({id, false});
      }
      desc_.vertices.emplace_back(v, VertexKind::Saddle);
      desc_.rotation.emplace_back(v, rot);
    }
    add_extrema(sink_degrees, "K", VertexKind::Sink, DartDir::In, ins_);
    add_extrema(source_degrees, "S", VertexKind::Source, DartDir::Out, outs_);
    used_.assign(ins_.size(), 0);
  }

  void run(std::set<std::vector<int>>& codes) {
    codes_ = &codes;
    assign(0);
  }

 private:
  void add_extrema(const std::vector<int>& degrees, const std::string& prefix, VertexKind kind, DartDir dir,
                   std::vector<NaiveDart>& into) {
    for (size_t x = 0; x < degrees.size(); ++x) {
      const std::string v = prefix + std::to_string(x);
      std::vector<std::string> rot;
      for (int i = 0; i < degrees[x]; ++i) {
        const std::string id = v + "_" + std::to_string(i);
        rot.push_back(id);
        desc_.dart_dir.emplace_back(id, dir);
        into.push_back({id, true});
      }
      desc_.vertices.emplace_back(v, kind);
      desc_.rotation.emplace_back(v, rot);
    }
  }

  void assign(size_t i) {
    if (i == outs_.size()) {
      emit();
      return;
    }
    for (size_t j = 0; j < ins_.size(); ++j) {
      if (used_[j] || (outs_[i].at_extremum && ins_[j].at_extremum)) continue;
      used_[j] = 1;
      pairs_.emplace_back(outs_[i].id, ins_[j].id);
      assign(i + 1);
      pairs_.pop_back();
      used_[j] = 0;
    }
  }

  void emit() {
    FlowDescription d = desc_;
    d.pairing = pairs_;
    try {
      FlowGraph flow = build(d);
      if (face_coherence_check(flow)) codes_->insert(canonical_code(flow).code);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Disconnected) throw;
    }
  }

  FlowDescription desc_;
  std::vector<NaiveDart> outs_, ins_;
  std::vector<char> used_;
  std::vector<std::pair<std::string, std::string>> pairs_;
  std::set<std::vector<int>>* codes_ = nullptr;
};

}  // namespace

const CountTable& pinned_counts() {
  static const CountTable table = {
      {0, 0, 1, 1, 1, 1},   {0, 1, 1, 2, 1, 1},   {0, 1, 2, 1, 1, 1},  {0, 2, 1, 3, 2, 2},   {0, 2, 2, 2, 7, 6},
      {0, 2, 3, 1, 2, 2},   {0, 3, 1, 4, 9, 9},   {0, 3, 2, 3, 53, 45}, {0, 3, 3, 2, 53, 45}, {0, 3, 4, 1, 9, 9},
      {1, 2, 1, 1, 5, 3},   {1, 3, 1, 2, 65, 39}, {1, 3, 2, 1, 65, 39},
  };
  return table;
}

std::set<std::vector<int>> naive_class_codes(int saddles) {
  std::set<std::vector<int>> codes;
  if (saddles == 0) {
    FlowDescription d;
    d.special_polar = true;
    d.vertices = {{"S", VertexKind::Source}, {"K", VertexKind::Sink}};
    codes.insert(canonical_code(build(d)).code);
    return codes;
  }
  // a saddle Out darts end at sinks; as many saddle In darts start at
  // sources, since the saddle-to-saddle separatrices use equal numbers.
  for (int a = 0; a <= 2 * saddles; ++a) {
    const auto parts = partitions(a);
    for (const auto& sinks : parts) {
      for (const auto& sources : parts) Naive(saddles, sinks, sources).run(codes);
    }
  }
  return codes;
}

}  // namespace gradflow::testkit
