#pragma once

// Shared helpers for the unit tests and the acceptance runner.

#include <random>
#include <set>
#include <string>
#include <vector>

#include "gradflow/enumerate.hpp"
#include "gradflow/flowgraph.hpp"
#include "gradflow/singularity.hpp"

namespace gradflow::testkit {

std::string fixture_path(const std::string& name);
nlohmann::json read_json(const std::string& path);
FlowGraph load_flow(const std::string& name);
FunctionProfile load_profile(const std::string& name);

/// Flow fixtures under tests/fixtures (not the profiles).
std::vector<std::string> flow_fixture_names();

/// Random fresh ids for every vertex and dart, shuffled vertex order, and
/// each rotation list cyclically shifted. Rebuilt through build(), so the
/// result exercises the whole input path.
FlowGraph scramble(const FlowGraph& flow, std::mt19937_64& rng);

/// A random profile passing check_profile_consistency, with at most
/// `max_total` labels and genus in [0, max_genus].
FunctionProfile random_consistent_profile(std::mt19937_64& rng, int max_total = 12, int max_genus = 3);

/// Every valid label with mu <= max_mu.
std::vector<AdeLabel> all_labels(int max_mu);

/// Canonical codes of every flow with `saddles` saddles, from a generator
/// that shares nothing with the library's: extremum degree partitions and
/// then all bijections of Out darts onto In darts, filtered by build() and
/// face coherence.
std::set<std::vector<int>> naive_class_codes(int saddles);

/// Class counts for k <= 3, pinned after the k <= 2 rows were confirmed by
/// naive_class_codes.
const CountTable& pinned_counts();

}  // namespace gradflow::testkit
