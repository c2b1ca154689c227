#pragma once

// Exhaustive generation of flow graphs with at most three saddles, up to
// orientation-preserving equivalence.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gradflow/equiv.hpp"
#include "gradflow/flowgraph.hpp"

namespace gradflow {

inline constexpr int kMaxEnumSaddles = 3;

struct EnumSpec {
  int saddles = 0;
  std::optional<int> max_extrema;  // bound on #sources + #sinks
  bool gradient_like_only = false;
  std::optional<int> genus;
  std::optional<int> sources;
  std::optional<int> sinks;
};

struct EnumeratedFlow {
  CanonicalCode code;
  FlowGraph flow;  // flow_from_code(code)
  int genus = 0;
  bool gradient_like = false;
};

/// One representative per equivalence class passing the filters, sorted by
/// canonical code. Throws Error(SpecOutOfBounds) for saddles outside
/// [0, kMaxEnumSaddles].
std::vector<EnumeratedFlow> enumerate_flows(const EnumSpec& spec);

/// Invokes `visit` on every labeled candidate the generator produces that
/// passes build and face coherence, before deduplication. Exposed for
/// cross-checking against other generators.
void for_each_candidate(int saddles, const std::function<void(const FlowGraph&)>& visit);

struct CountRow {
  int genus = 0;
  int k = 0;
  int sources = 0;
  int sinks = 0;
  int classes = 0;
  int gradient_like = 0;

  auto operator<=>(const CountRow&) const = default;
};

using CountTable = std::vector<CountRow>;

/// Rows ordered by (genus, k, sources, sinks); only combinations with at
/// least one class appear.
CountTable count_table(int kmax);
CountTable tabulate(const std::vector<EnumeratedFlow>& flows);

std::string to_csv(const CountTable& table);
nlohmann::json to_json(const CountTable& table);

}  // namespace gradflow
