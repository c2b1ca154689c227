#include "gradflow/flowgraph.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "gradflow/error.hpp"

namespace gradflow {

std::string_view to_string(VertexKind k) {
  switch (k) {
    case VertexKind::Source: return "source";
    case VertexKind::Sink: return "sink";
    case VertexKind::Saddle: return "saddle";
  }
  return "?";
}

std::string_view to_string(DartDir d) { return d == DartDir::Out ? "out" : "in"; }

namespace {

VertexKind parse_kind(const std::string& s) {
  if (s == "source") return VertexKind::Source;
  if (s == "sink") return VertexKind::Sink;
  if (s == "saddle") return VertexKind::Saddle;
  throw Error(ErrorCode::MalformedFlow, "unknown vertex kind '" + s + "'");
}

DartDir parse_dir(const std::string& s) {
  if (s == "out") return DartDir::Out;
  if (s == "in") return DartDir::In;
  throw Error(ErrorCode::MalformedFlow, "unknown dart direction '" + s + "'");
}

const std::string& expect_string(const nlohmann::json& j, const char* what) {
  if (!j.is_string()) throw Error(ErrorCode::MalformedFlow, std::string(what) + " must be a string");
  return j.get_ref<const std::string&>();
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

FlowDescription description_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::MalformedFlow, "flow must be a JSON object");
  FlowDescription d;
  if (j.contains("special_polar")) {
    if (!j["special_polar"].is_boolean()) throw Error(ErrorCode::MalformedFlow, "special_polar must be a boolean");
    d.special_polar = j["special_polar"].get<bool>();
  }
  if (!j.contains("vertices") || !j["vertices"].is_array()) {
    throw Error(ErrorCode::MalformedFlow, "missing vertices array");
  }
  for (const auto& v : j["vertices"]) {
    if (!v.is_object() || !v.contains("id") || !v.contains("kind")) {
      throw Error(ErrorCode::MalformedFlow, "vertex entries need id and kind");
    }
    d.vertices.emplace_back(expect_string(v["id"], "vertex id"), parse_kind(expect_string(v["kind"], "vertex kind")));
  }
  if (j.contains("rotation")) {
    if (!j["rotation"].is_object()) throw Error(ErrorCode::MalformedFlow, "rotation must be an object");
    for (const auto& [vid, darts] : j["rotation"].items()) {
      if (!darts.is_array()) throw Error(ErrorCode::MalformedFlow, "rotation of " + vid + " must be an array");
      std::vector<std::string> ids;
      for (const auto& dart : darts) ids.push_back(expect_string(dart, "dart id"));
      d.rotation.emplace_back(vid, std::move(ids));
    }
  }
  if (j.contains("dart_dir")) {
    if (!j["dart_dir"].is_object()) throw Error(ErrorCode::MalformedFlow, "dart_dir must be an object");
    for (const auto& [did, dir] : j["dart_dir"].items()) {
      d.dart_dir.emplace_back(did, parse_dir(expect_string(dir, "dart direction")));
    }
  }
  if (j.contains("pairing")) {
    if (!j["pairing"].is_array()) throw Error(ErrorCode::MalformedFlow, "pairing must be an array");
    for (const auto& p : j["pairing"]) {
      if (!p.is_array() || p.size() != 2) throw Error(ErrorCode::MalformedFlow, "pairing entries must be [dart, dart]");
      d.pairing.emplace_back(expect_string(p[0], "dart id"), expect_string(p[1], "dart id"));
    }
  }
  if (j.contains("genus_hint") && !j["genus_hint"].is_null()) {
    if (!j["genus_hint"].is_number_integer()) throw Error(ErrorCode::MalformedFlow, "genus_hint must be an integer");
    d.genus_hint = j["genus_hint"].get<int>();
  }
  return d;
}

nlohmann::json description_to_json(const FlowDescription& d) {
  nlohmann::json j;
  j["special_polar"] = d.special_polar;
  j["vertices"] = nlohmann::json::array();
  for (const auto& [id, kind] : d.vertices) {
    j["vertices"].push_back({{"id", id}, {"kind", std::string(to_string(kind))}});
  }
  j["rotation"] = nlohmann::json::object();
  for (const auto& [vid, darts] : d.rotation) j["rotation"][vid] = darts;
  j["dart_dir"] = nlohmann::json::object();
  for (const auto& [did, dir] : d.dart_dir) j["dart_dir"][did] = std::string(to_string(dir));
  j["pairing"] = nlohmann::json::array();
  for (const auto& [a, b] : d.pairing) j["pairing"].push_back({a, b});
  if (d.genus_hint) j["genus_hint"] = *d.genus_hint;
  return j;
}

FlowGraph FlowGraph::build(const FlowDescription& description) {
  FlowGraph g;
  g.special_polar_ = description.special_polar;

  std::unordered_map<std::string, int> vertex_index;
  for (const auto& [id, kind] : description.vertices) {
    if (!vertex_index.emplace(id, static_cast<int>(g.vertices_.size())).second) {
      throw Error(ErrorCode::MalformedFlow, "duplicate vertex id '" + id + "'");
    }
    g.vertices_.push_back({id, kind, {}});
  }

  std::unordered_map<std::string, const std::vector<std::string>*> rotation_of;
  for (const auto& [vid, darts] : description.rotation) {
    if (!vertex_index.contains(vid)) throw Error(ErrorCode::MalformedFlow, "rotation for unknown vertex '" + vid + "'");
    if (!rotation_of.emplace(vid, &darts).second) {
      throw Error(ErrorCode::MalformedFlow, "duplicate rotation for vertex '" + vid + "'");
    }
  }

  std::unordered_map<std::string, DartDir> dir_of;
  for (const auto& [did, dir] : description.dart_dir) {
    if (!dir_of.emplace(did, dir).second) throw Error(ErrorCode::MalformedFlow, "duplicate dart_dir for '" + did + "'");
  }

  // Darts are numbered in vertex order, then rotation order.
  std::unordered_map<std::string, int> dart_index;
  for (int v = 0; v < g.vertex_count(); ++v) {
    auto it = rotation_of.find(g.vertices_[v].id);
    if (it == rotation_of.end()) continue;
    for (const auto& did : *it->second) {
      const int d = static_cast<int>(g.darts_.size());
      if (!dart_index.emplace(did, d).second) {
        throw Error(ErrorCode::MalformedFlow, "dart '" + did + "' appears in more than one rotation slot");
      }
      auto dir = dir_of.find(did);
      if (dir == dir_of.end()) throw Error(ErrorCode::MalformedFlow, "no direction for dart '" + did + "'");
      g.darts_.push_back({did, v, dir->second, -1, -1, -1});
      g.vertices_[v].rotation.push_back(d);
    }
  }
  for (const auto& [did, dir] : description.dart_dir) {
    if (!dart_index.contains(did)) throw Error(ErrorCode::MalformedFlow, "direction given for unknown dart '" + did + "'");
  }

  for (const auto& [a, b] : description.pairing) {
    auto ia = dart_index.find(a);
    auto ib = dart_index.find(b);
    if (ia == dart_index.end() || ib == dart_index.end()) {
      throw Error(ErrorCode::BadPairing, "pair [" + a + ", " + b + "] names an unknown dart");
    }
    for (int d : {ia->second, ib->second}) {
      if (g.darts_[d].partner != -1) throw Error(ErrorCode::BadPairing, "dart '" + g.darts_[d].id + "' paired twice");
    }
    if (ia->second == ib->second) throw Error(ErrorCode::BadPairing, "dart '" + a + "' paired with itself");
    g.darts_[ia->second].partner = ib->second;
    g.darts_[ib->second].partner = ia->second;
  }

  g.link_and_validate(description.genus_hint);
  return g;
}

FlowGraph FlowGraph::assemble(std::vector<VertexKind> kinds, std::vector<std::vector<int>> rotations,
                              std::vector<DartDir> dirs, std::vector<int> partner) {
  if (kinds.size() != rotations.size() || dirs.size() != partner.size()) {
    throw Error(ErrorCode::MalformedFlow, "assemble: size mismatch");
  }
  FlowGraph g;
  g.darts_.resize(dirs.size(), Dart{{}, -1, DartDir::Out, -1, -1, -1});
  for (size_t d = 0; d < dirs.size(); ++d) {
    g.darts_[d].id = "d" + std::to_string(d);
    g.darts_[d].dir = dirs[d];
    g.darts_[d].partner = partner[d];
  }
  for (size_t v = 0; v < kinds.size(); ++v) {
    for (int d : rotations[v]) {
      if (d < 0 || d >= static_cast<int>(dirs.size()) || g.darts_[d].vertex != -1) {
        throw Error(ErrorCode::MalformedFlow, "assemble: bad rotation entry");
      }
      g.darts_[d].vertex = static_cast<int>(v);
    }
    g.vertices_.push_back({"v" + std::to_string(v), kinds[v], std::move(rotations[v])});
  }
  for (const auto& dart : g.darts_) {
    if (dart.vertex == -1) throw Error(ErrorCode::MalformedFlow, "assemble: dart '" + dart.id + "' not in any rotation");
    if (dart.partner < 0 || dart.partner >= g.dart_count()) {
      throw Error(ErrorCode::BadPairing, "dart '" + dart.id + "' is unpaired");
    }
  }
  g.link_and_validate(std::nullopt);
  return g;
}

FlowGraph FlowGraph::polar(std::string source_id, std::string sink_id) {
  FlowDescription d;
  d.special_polar = true;
  d.vertices = {{std::move(source_id), VertexKind::Source}, {std::move(sink_id), VertexKind::Sink}};
  return build(d);
}

void FlowGraph::link_and_validate(std::optional<int> genus_hint) {
  if (special_polar_) {
    if (vertices_.size() != 2 || count(VertexKind::Source) != 1 || count(VertexKind::Sink) != 1 || !darts_.empty()) {
      throw Error(ErrorCode::BadSpecialPolar, "special_polar needs exactly one source, one sink and no darts");
    }
    if (genus_hint && *genus_hint != 0) {
      throw Error(ErrorCode::GenusMismatch, "genus_hint " + std::to_string(*genus_hint) + " but derived genus 0");
    }
    return;
  }
  if (vertices_.empty()) throw Error(ErrorCode::MalformedFlow, "no vertices");

  for (const auto& v : vertices_) {
    const int n = static_cast<int>(v.rotation.size());
    for (int i = 0; i < n; ++i) {
      darts_[v.rotation[i]].next = v.rotation[(i + 1) % n];
      darts_[v.rotation[i]].prev = v.rotation[(i + n - 1) % n];
    }
    switch (v.kind) {
      case VertexKind::Saddle: {
        if (n != 4) {
          throw Error(ErrorCode::NonAlternatingSaddle,
                      "saddle '" + v.id + "' has " + std::to_string(n) + " darts, expected 4");
        }
        for (int i = 0; i < n; ++i) {
          if (darts_[v.rotation[i]].dir == darts_[v.rotation[(i + 1) % n]].dir) {
            throw Error(ErrorCode::NonAlternatingSaddle, "saddle '" + v.id + "' darts do not alternate out/in");
          }
        }
        break;
      }
      case VertexKind::Source:
      case VertexKind::Sink: {
        if (n == 0) throw Error(ErrorCode::IsolatedExtremum, std::string(to_string(v.kind)) + " '" + v.id + "' has no darts");
        const DartDir want = v.kind == VertexKind::Source ? DartDir::Out : DartDir::In;
        for (int d : v.rotation) {
          if (darts_[d].dir != want) {
            throw Error(ErrorCode::BadDartDirection, "dart '" + darts_[d].id + "' at " +
                                                         std::string(to_string(v.kind)) + " '" + v.id + "' must be " +
                                                         std::string(to_string(want)));
          }
        }
        break;
      }
    }
  }

  for (int d = 0; d < dart_count(); ++d) {
    const Dart& dart = darts_[d];
    if (dart.partner == -1) throw Error(ErrorCode::BadPairing, "dart '" + dart.id + "' is unpaired");
    const Dart& other = darts_[dart.partner];
    if (other.partner != d || dart.partner == d) {
      throw Error(ErrorCode::BadPairing, "pairing is not an involution at dart '" + dart.id + "'");
    }
    if (other.dir == dart.dir) {
      throw Error(ErrorCode::BadPairing, "darts '" + dart.id + "' and '" + other.id + "' have the same direction");
    }
    if (vertices_[dart.vertex].kind != VertexKind::Saddle && vertices_[other.vertex].kind != VertexKind::Saddle) {
      throw Error(ErrorCode::BadPairing, "darts '" + dart.id + "' and '" + other.id + "' join two extrema");
    }
  }

  UnionFind uf(vertex_count());
  for (const auto& dart : darts_) uf.unite(dart.vertex, darts_[dart.partner].vertex);
  for (int v = 1; v < vertex_count(); ++v) {
    if (uf.find(v) != uf.find(0)) {
      throw Error(ErrorCode::Disconnected, "vertex '" + vertices_[v].id + "' is not connected to '" + vertices_[0].id + "'");
    }
  }

  trace_faces();

  const int chi = vertex_count() - edge_count() + face_count();
  if (chi > 2 || chi % 2 != 0) {
    throw Error(ErrorCode::NonOrientableOrCorrupt, "derived euler characteristic " + std::to_string(chi));
  }
  if (genus_hint && *genus_hint != (2 - chi) / 2) {
    throw Error(ErrorCode::GenusMismatch, "genus_hint " + std::to_string(*genus_hint) + " but derived genus " +
                                              std::to_string((2 - chi) / 2));
  }
}

void FlowGraph::trace_faces() {
  faces_.clear();
  std::vector<char> seen(darts_.size(), 0);
  for (int start = 0; start < dart_count(); ++start) {
    if (seen[start]) continue;
    FaceWalk walk;
    int d = start;
    do {
      seen[d] = 1;
      walk.darts.push_back(d);
      d = darts_[darts_[d].partner].next;
    } while (d != start);
    faces_.push_back(std::move(walk));
  }
}

int FlowGraph::count(VertexKind kind) const {
  return static_cast<int>(std::count_if(vertices_.begin(), vertices_.end(), [&](const Vertex& v) { return v.kind == kind; }));
}

std::optional<int> FlowGraph::find_vertex(std::string_view id) const {
  for (int v = 0; v < vertex_count(); ++v) {
    if (vertices_[v].id == id) return v;
  }
  return std::nullopt;
}

std::optional<int> FlowGraph::find_dart(std::string_view id) const {
  for (int d = 0; d < dart_count(); ++d) {
    if (darts_[d].id == id) return d;
  }
  return std::nullopt;
}

FlowDescription FlowGraph::describe() const {
  FlowDescription d;
  d.special_polar = special_polar_;
  for (const auto& v : vertices_) {
    d.vertices.emplace_back(v.id, v.kind);
    if (v.rotation.empty()) continue;
    std::vector<std::string> ids;
    for (int dart : v.rotation) ids.push_back(darts_[dart].id);
    d.rotation.emplace_back(v.id, std::move(ids));
  }
  for (const auto& dart : darts_) {
    d.dart_dir.emplace_back(dart.id, dart.dir);
    if (dart.dir == DartDir::Out) d.pairing.emplace_back(dart.id, darts_[dart.partner].id);
  }
  return d;
}

FlowGraph build(const FlowDescription& description) { return FlowGraph::build(description); }

FlowGraph flow_from_json(const nlohmann::json& j) { return FlowGraph::build(description_from_json(j)); }

nlohmann::json flow_to_json(const FlowGraph& flow) { return description_to_json(flow.describe()); }

const std::vector<FaceWalk>& faces(const FlowGraph& flow) { return flow.faces(); }

int euler_characteristic(const FlowGraph& flow) {
  // Two extrema and nothing between them: the sphere.
  if (flow.special_polar()) return 2;
  return flow.vertex_count() - flow.edge_count() + flow.face_count();
}

int genus(const FlowGraph& flow) { return (2 - euler_characteristic(flow)) / 2; }

bool poincare_hopf_check(const FlowGraph& flow) {
  return flow.count(VertexKind::Source) + flow.count(VertexKind::Sink) - flow.count(VertexKind::Saddle) ==
         euler_characteristic(flow);
}

bool face_coherence_check(const FlowGraph& flow) {
  for (const auto& face : flow.faces()) {
    const auto& ds = face.darts;
    int changes = 0;
    for (size_t i = 0; i < ds.size(); ++i) {
      if (flow.dart(ds[i]).dir != flow.dart(ds[(i + 1) % ds.size()]).dir) ++changes;
    }
    if (changes != 2) return false;
  }
  return true;
}

FlowGraph reverse(const FlowGraph& flow) {
  FlowDescription d = flow.describe();
  for (auto& [id, kind] : d.vertices) {
    if (kind == VertexKind::Source) {
      kind = VertexKind::Sink;
    } else if (kind == VertexKind::Sink) {
      kind = VertexKind::Source;
    }
  }
  for (auto& [id, dir] : d.dart_dir) dir = opposite(dir);
  return FlowGraph::build(d);
}

}  // namespace gradflow
