#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gradflow/flowgraph.hpp"

namespace gradflow::cli {

/// Exit codes: 0 success (or verdict true), 1 verdict false, 2 input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Graphviz rendering of a flow file: node shape by vertex kind, one
/// directed edge per separatrix in the flow direction.
std::string to_dot(const FlowGraph& flow);

}  // namespace gradflow::cli
