#pragma once

// Gradient-likeness of a combinatorial Morse flow and a constructive
// energy-function witness.
//
// A flow is gradient-like iff it has a source and a sink, every separatrix
// ends at equilibria, and no oriented closed curve is formed by saddle
// connections. The witness assigns +1 to sources, -1 to sinks and values
// in (-1, 1) summing to zero to the saddles, strictly decreasing along
// every saddle connection.

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <boost/rational.hpp>
#include <json.hpp>

#include "gradflow/flowgraph.hpp"

namespace gradflow {

using Rational = boost::rational<long long>;

/// "p/q" with q >= 1.
std::string format_rational(const Rational& r);

struct SaddleDigraph {
  std::vector<int> saddles;  // flow vertex indices, in vertex order
  // Directed edges as positions into `saddles`; one per saddle connection,
  // from the saddle holding the Out dart to the one holding the In dart.
  std::vector<std::pair<int, int>> edges;

  int size() const { return static_cast<int>(saddles.size()); }
};

SaddleDigraph saddle_digraph(const FlowGraph& flow);

struct CheckReport {
  bool cond_sources_sinks = false;
  bool cond_separatrix_endpoints = true;
  bool cond_no_directed_cycle = false;
  std::optional<std::vector<std::string>> witness_cycle;
  bool verdict = false;
};

/// Throws Error(NotRealizable) if the flow fails face_coherence_check.
CheckReport check_gradient_like(const FlowGraph& flow);

struct EnergyAssignment {
  std::vector<std::pair<std::string, Rational>> values;  // vertex order

  const Rational& at(std::string_view vertex_id) const;
};

/// Empty iff the assignment satisfies every normalization and monotonicity
/// requirement on `flow`.
std::vector<std::string> energy_violations(const FlowGraph& flow, const EnergyAssignment& energy);

/// Saddle value from longest-path rank: raw = -rank, centered on the mean,
/// scaled by 1/(max|centered| + 1). Returns the failing CheckReport when no
/// energy exists. Throws Error(NotRealizable) on incoherent faces.
std::variant<EnergyAssignment, CheckReport> build_energy(const FlowGraph& flow);

/// Criterion on singularity counts alone. Throws Error(InconsistentCounts)
/// unless sources + sinks - saddles is even and at most 2.
bool admits_gradient_like(int sources, int sinks, int saddles);

nlohmann::json to_json(const CheckReport& r);
nlohmann::json to_json(const EnergyAssignment& e);

}  // namespace gradflow
