#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "lss/pauli.hpp"

namespace lss {

enum class DependencyRule : std::uint8_t { Serial, Trivial, General };

std::string_view dependency_rule_name(DependencyRule rule);
std::optional<DependencyRule> parse_dependency_rule(std::string_view name);

/// DAG over circuit operation indices. Arcs always point from earlier to
/// later source positions; trivial- and general-rule graphs are stored in
/// transitively reduced form.
struct DependencyGraph {
  std::size_t num_nodes = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;  // sorted (i, j), i < j
  std::vector<std::vector<std::uint32_t>> successors;
  std::vector<std::vector<std::uint32_t>> predecessors;
};

/// Builds the dependency graph for a circuit under the chosen rule:
///   serial  - chain arcs (i, i+1) only;
///   trivial - arc (i, j) iff the supports intersect, transitively reduced;
///   general - arc (i, j) iff the Paulis anticommute, transitively reduced.
DependencyGraph build_dependency(const Circuit& c, DependencyRule rule);

struct GraphMetrics {
  std::size_t d_max = 0;                // longest chain; lower bound on steps
  std::vector<std::size_t> widths;      // node count per depth, depth 1 first
  double avg_width = 0.0;               // |nodes| / d_max
};

/// Depth of a node is 1 + the maximum depth of its predecessors (1 for
/// roots). Throws InvariantViolation if the arc set is cyclic.
GraphMetrics graph_metrics(const DependencyGraph& g);

}  // namespace lss
