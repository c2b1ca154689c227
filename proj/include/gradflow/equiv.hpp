#pragma once

// Canonical codes for flow graphs. Two flows get the same code iff some
// bijection of vertices and darts preserves vertex kinds, dart directions,
// counterclockwise rotations and the pairing, i.e. iff they are related by
// an orientation-preserving homeomorphism of the surface carrying
// trajectories to trajectories.
//
// The code is the lexicographically least breadth-first encoding over all
// starting darts. Each visited dart emits (kind, direction,
// label(rotation successor), label(partner)); labels are handed out in
// discovery order. With include_mirror the reversed-rotation map is also
// tried, which quotients by orientation-reversing homeomorphisms.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gradflow/flowgraph.hpp"

namespace gradflow {

struct CanonicalCode {
  std::vector<int> code;
  bool mirror_included = false;

  auto operator<=>(const CanonicalCode&) const = default;
};

CanonicalCode canonical_code(const FlowGraph& flow, bool include_mirror = false);

/// Hyphen-separated integers.
std::string to_string(const CanonicalCode& c);

/// FNV-1a over to_string(c).
std::uint64_t stable_hash(const CanonicalCode& c);

/// Rebuilds the flow a code was computed from, with darts numbered by their
/// code labels ("d<i>") and vertices ("v<i>") ordered by least dart label.
/// canonical_code(flow_from_code(c)) == c for codes computed without mirror.
FlowGraph flow_from_code(const CanonicalCode& c);

bool equivalent(const FlowGraph& a, const FlowGraph& b, bool include_mirror = false);

/// Renames vertices and darts. Both maps must be bijections defined on
/// exactly the flow's ids; throws Error(NonBijective) otherwise.
FlowGraph relabel(const FlowGraph& flow, const std::map<std::string, std::string>& vertex_map,
                  const std::map<std::string, std::string>& dart_map);

}  // namespace gradflow
