#include "gradflow/equiv.hpp"

#include <set>

#include "gradflow/error.hpp"

namespace gradflow {

namespace {

constexpr int kind_code(VertexKind k) {
  switch (k) {
    case VertexKind::Source: return 0;
    case VertexKind::Sink: return 1;
    case VertexKind::Saddle: return 2;
  }
  return 3;
}

// Writes header + encoding from `start` into `scratch` while comparing with `best`. Returns true if the result is strictly
// smaller than `best` (or `best` is empty); stops early once it is larger.
bool encode_from(const FlowGraph& flow, int start, bool mirrored, std::vector<int>& label, std::vector<int>& order,
                 std::vector<int>& scratch, const std::vector<int>& best, const std::vector<int>& header) {
  std::fill(label.begin(), label.end(), -1);
  order.clear();
  scratch.assign(header.begin(), header.end());

  // 0 = tied so far, -1 = already smaller
  int state = best.empty() ? -1 : 0;
  auto emit = [&](int value) {
    const size_t pos = scratch.size();
    scratch.push_back(value);
    if (state == 0) {
      if (value < best[pos]) state = -1;
      else if (value > best[pos]) return false;
    }
    return true;
  };
  auto label_of = [&](int d) {
    if (label[d] == -1) {
      label[d] = static_cast<int>(order.size());
      order.push_back(d);
    }
    return label[d];
  };

  label_of(start);
  for (size_t i = 0; i < order.size(); ++i) {
    const auto& dart = flow.dart(order[i]);
    const int succ = mirrored ? dart.prev : dart.next;
    if (!emit(kind_code(flow.vertex(dart.vertex).kind))) return false;
    if (!emit(dart.dir == DartDir::Out ? 0 : 1)) return false;
    if (!emit(label_of(succ))) return false;
    if (!emit(label_of(dart.partner))) return false;
  }
  return state == -1;
}

}  // namespace

CanonicalCode canonical_code(const FlowGraph& flow, bool include_mirror) {
  CanonicalCode result;
  result.mirror_included = include_mirror;
  const int ndarts = flow.dart_count();
  const std::vector<int> header{flow.count(VertexKind::Source), flow.count(VertexKind::Sink),
                                flow.count(VertexKind::Saddle), ndarts};
  if (flow.special_polar() || ndarts == 0) {
    result.code = header;
    return result;
  }

  std::vector<int> best;
  std::vector<int> scratch;
  std::vector<int> label(ndarts);
  std::vector<int> order;
  order.reserve(ndarts);
  for (int pass = 0; pass < (include_mirror ? 2 : 1); ++pass) {
    for (int start = 0; start < ndarts; ++start) {
      if (encode_from(flow, start, pass == 1, label, order, scratch, best, header)) best.swap(scratch);
    }
  }
  result.code = std::move(best);
  return result;
}

std::string to_string(const CanonicalCode& c) {
  std::string out;
  for (size_t i = 0; i < c.code.size(); ++i) {
    if (i) out += '-';
    out += std::to_string(c.code[i]);
  }
  return out;
}

std::uint64_t stable_hash(const CanonicalCode& c) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : to_string(c)) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

FlowGraph flow_from_code(const CanonicalCode& c) {
  const auto& code = c.code;
  if (code.size() < 4) throw Error(ErrorCode::MalformedFlow, "canonical code too short");
  const int ndarts = code[3];
  if (ndarts == 0) return FlowGraph::polar();
  if (code.size() != 4 + 4 * static_cast<size_t>(ndarts)) {
    throw Error(ErrorCode::MalformedFlow, "canonical code length does not match its dart count");
  }

  std::vector<int> kind(ndarts), next(ndarts), partner(ndarts);
  std::vector<DartDir> dirs(ndarts);
  for (int d = 0; d < ndarts; ++d) {
    const int* row = &code[4 + 4 * d];
    if (row[0] < 0 || row[0] > 2 || row[1] < 0 || row[1] > 1 || row[2] < 0 || row[2] >= ndarts || row[3] < 0 ||
        row[3] >= ndarts) {
      throw Error(ErrorCode::MalformedFlow, "canonical code entry out of range");
    }
    kind[d] = row[0];
    dirs[d] = row[1] == 0 ? DartDir::Out : DartDir::In;
    next[d] = row[2];
    partner[d] = row[3];
  }

  std::vector<VertexKind> kinds;
  std::vector<std::vector<int>> rotations;
  std::vector<char> seen(ndarts, 0);
  for (int start = 0; start < ndarts; ++start) {
    if (seen[start]) continue;
    std::vector<int> rotation;
    int d = start;
    do {
      if (seen[d] || kind[d] != kind[start]) throw Error(ErrorCode::MalformedFlow, "canonical code rotation is not a permutation");
      seen[d] = 1;
      rotation.push_back(d);
      d = next[d];
    } while (d != start);
    constexpr VertexKind by_code[] = {VertexKind::Source, VertexKind::Sink, VertexKind::Saddle};
    kinds.push_back(by_code[kind[start]]);
    rotations.push_back(std::move(rotation));
  }
  // Rebuild so darts follow the usual vertex-then-rotation numbering.
  const FlowGraph raw = FlowGraph::assemble(std::move(kinds), std::move(rotations), std::move(dirs), std::move(partner));
  return FlowGraph::build(raw.describe());
}

bool equivalent(const FlowGraph& a, const FlowGraph& b, bool include_mirror) {
  return canonical_code(a, include_mirror) == canonical_code(b, include_mirror);
}

FlowGraph relabel(const FlowGraph& flow, const std::map<std::string, std::string>& vertex_map,
                  const std::map<std::string, std::string>& dart_map) {
  auto check = [](const std::map<std::string, std::string>& m, auto ids, const char* what) {
    std::set<std::string> images;
    size_t n = 0;
    for (const auto& item : ids) {
      ++n;
      auto it = m.find(item.id);
      if (it == m.end()) throw Error(ErrorCode::NonBijective, std::string(what) + " map misses '" + item.id + "'");
      images.insert(it->second);
    }
    if (m.size() != n) throw Error(ErrorCode::NonBijective, std::string(what) + " map has ids not in the flow");
    if (images.size() != n) throw Error(ErrorCode::NonBijective, std::string(what) + " map is not injective");
  };
  check(vertex_map, flow.vertices(), "vertex");
  check(dart_map, flow.darts(), "dart");

  FlowDescription d = flow.describe();
  for (auto& [id, kind] : d.vertices) id = vertex_map.at(id);
  for (auto& [vid, darts] : d.rotation) {
    vid = vertex_map.at(vid);
    for (auto& did : darts) did = dart_map.at(did);
  }
  for (auto& [did, dir] : d.dart_dir) did = dart_map.at(did);
  for (auto& [a, b] : d.pairing) {
    a = dart_map.at(a);
    b = dart_map.at(b);
  }
  return FlowGraph::build(d);
}

}  // namespace gradflow
