#pragma once

// Combinatorial model of a Morse flow on a closed orientable surface: the
// separatrix graph embedded via a rotation system.
//
// Darts are edge-ends. Each vertex lists its darts in counterclockwise
// order; the pairing involution joins the Out dart of a separatrix (where
// it leaves a vertex along the flow) with its In dart. A saddle carries
// four darts alternating Out, In, Out, In. Sources only emit, sinks only
// absorb, and every separatrix has a saddle at one end at least.
//
// Faces are traced with next = rotation-successor(partner(dart)).

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace gradflow {

enum class VertexKind { Source, Sink, Saddle };
enum class DartDir { Out, In };

std::string_view to_string(VertexKind k);
std::string_view to_string(DartDir d);

inline DartDir opposite(DartDir d) { return d == DartDir::Out ? DartDir::In : DartDir::Out; }

/// Raw, unvalidated flow record; mirrors the flow file.
struct FlowDescription {
  bool special_polar = false;
  std::vector<std::pair<std::string, VertexKind>> vertices;
  std::vector<std::pair<std::string, std::vector<std::string>>> rotation;
  std::vector<std::pair<std::string, DartDir>> dart_dir;
  std::vector<std::pair<std::string, std::string>> pairing;
  std::optional<int> genus_hint;
};

FlowDescription description_from_json(const nlohmann::json& j);
nlohmann::json description_to_json(const FlowDescription& d);

struct FaceWalk {
  std::vector<int> darts;
  bool operator==(const FaceWalk&) const = default;
};

class FlowGraph {
 public:
  struct Vertex {
    std::string id;
    VertexKind kind;
    std::vector<int> rotation;  // dart indices, ccw

    bool operator==(const Vertex&) const = default;
  };

  struct Dart {
    std::string id;
    int vertex;
    DartDir dir;
    int partner;
    int next;  // ccw successor at the same vertex
    int prev;

    bool operator==(const Dart&) const = default;
  };

  /// Validates every structural invariant; throws Error on the first
  /// violation found, naming the offending vertex or dart.
  static FlowGraph build(const FlowDescription& description);

  /// Index-based construction used by generators. rotations[v] lists dart
  /// indices ccw; ids are synthesized as "v<i>" and "d<i>".
  static FlowGraph assemble(std::vector<VertexKind> kinds, std::vector<std::vector<int>> rotations,
                            std::vector<DartDir> dirs, std::vector<int> partner);

  static FlowGraph polar(std::string source_id = "S", std::string sink_id = "K");

  FlowDescription describe() const;

  bool special_polar() const { return special_polar_; }
  std::span<const Vertex> vertices() const { return vertices_; }
  std::span<const Dart> darts() const { return darts_; }
  const Vertex& vertex(int v) const { return vertices_[v]; }
  const Dart& dart(int d) const { return darts_[d]; }

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int dart_count() const { return static_cast<int>(darts_.size()); }
  int edge_count() const { return dart_count() / 2; }
  int count(VertexKind kind) const;

  std::optional<int> find_vertex(std::string_view id) const;
  std::optional<int> find_dart(std::string_view id) const;

  /// Empty for the special polar flow, which counts as two faces (the
  /// hemispheres) but has Euler characteristic 2 by convention.
  const std::vector<FaceWalk>& faces() const { return faces_; }
  int face_count() const { return special_polar_ ? 2 : static_cast<int>(faces_.size()); }

  bool operator==(const FlowGraph&) const = default;

 private:
  FlowGraph() = default;
  void link_and_validate(std::optional<int> genus_hint);
  void trace_faces();

  bool special_polar_ = false;
  std::vector<Vertex> vertices_;
  std::vector<Dart> darts_;
  std::vector<FaceWalk> faces_;
};

FlowGraph build(const FlowDescription& description);
FlowGraph flow_from_json(const nlohmann::json& j);
nlohmann::json flow_to_json(const FlowGraph& flow);

const std::vector<FaceWalk>& faces(const FlowGraph& flow);
int euler_characteristic(const FlowGraph& flow);
int genus(const FlowGraph& flow);

/// #sources + #sinks - #saddles == V - E + F.
bool poincare_hopf_check(const FlowGraph& flow);

/// Every face walk has exactly two maximal runs of edge orientation (one
/// along the flow, one against). Equivalently every face has exactly two
/// corners at extrema.
bool face_coherence_check(const FlowGraph& flow);

/// Time reversal on the same oriented surface: sources and sinks swap and
/// every dart flips direction. Rotations are unchanged.
FlowGraph reverse(const FlowGraph& flow);

}  // namespace gradflow
