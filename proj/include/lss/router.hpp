#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "lss/layout.hpp"
#include "lss/pauli.hpp"

namespace lss {

/// Ancilla patch for one operation: a tree in the layout graph whose leaves
/// are the operation's data vertices (plus one storage or ancillary vertex
/// when attached) and whose internal vertices are all bus tiles.
struct RoutedTree {
  std::vector<VertexId> vertices;                       // sorted
  std::vector<std::pair<VertexId, VertexId>> edges;     // sorted, u < v
  std::vector<VertexId> terminals;                      // sorted data vertices
  std::optional<VertexId> storage_vertex;               // magic-state leaf, pi/8 only

  std::size_t degree(VertexId v) const;
  bool contains(VertexId v) const;
};

/// Bus tiles consumed by already-packed trees within the current time step.
struct Occupancy {
  std::vector<bool> blocked;  // indexed by VertexId; bus vertices only

  explicit Occupancy(std::size_t vertex_count = 0) : blocked(vertex_count, false) {}
  bool is_blocked(VertexId v) const { return v < blocked.size() && blocked[v]; }
  void block(VertexId v) { blocked[v] = true; }
};

/// Minimum-hop path from s to t whose interior vertices are unblocked bus
/// tiles, found with a bidirectional breadth-first search. Endpoints may be
/// any vertex kind. Returns std::nullopt when s and t are disconnected.
std::optional<std::vector<VertexId>> shortest_bus_path(const LayoutGraph& g, VertexId s,
                                                       VertexId t, const Occupancy& occ);

/// Terminal Steiner tree over >= 2 data vertices: pairwise shortest-bus-path
/// distances feed a Kruskal MST on the terminal complete graph, and the
/// chosen connections are embedded component by component, re-routing around
/// vertices already used by this tree. Terminals always end up as leaves with
/// exactly one edge. When require_internal is set the tree is forced to
/// contain at least one internal bus vertex so a storage or ancillary qubit
/// can attach later. Returns std::nullopt when no such tree exists.
std::optional<RoutedTree> terminal_steiner_tree(const LayoutGraph& g,
                                                std::span<const VertexId> terminals,
                                                const Occupancy& occ,
                                                bool require_internal = false);

/// Attaches the closest available special vertex (magic-state storage or
/// ancillary) to the tree as a leaf: the tree acts as a contracted source and
/// the shortest unblocked bus path to any candidate is appended. For a bare
/// single-terminal tree the path starts at the terminal itself. The chosen
/// vertex is recorded in storage_vertex; removing it from availability is the
/// caller's job. Returns std::nullopt when no candidate is reachable.
std::optional<RoutedTree> attach_storage(const LayoutGraph& g, const RoutedTree& tree,
                                         std::span<const VertexId> storage_available,
                                         const Occupancy& occ);

/// Memoizes routing results keyed on the exact inputs (terminals, occupancy
/// and availability), so enabling it never changes a schedule.
class RouteCache {
 public:
  explicit RouteCache(std::size_t max_entries = 1 << 20) : max_entries_(max_entries) {}

  const std::optional<RoutedTree>* find(const std::string& key) const;
  void insert(const std::string& key, std::optional<RoutedTree> value);
  std::size_t size() const { return entries_.size(); }

 private:
  std::size_t max_entries_;
  std::unordered_map<std::string, std::optional<RoutedTree>> entries_;
};

struct PackOptions {
  bool allow_shared_data = false;
  RouteCache* cache = nullptr;
};

struct PackedOp {
  std::size_t candidate_index;  // position in the candidates span
  RoutedTree tree;
};

/// Greedy forest packing: processes candidates in order, routing each
/// operation's tree on the unblocked remainder of the graph. pi/8 rotations
/// attach a storage vertex, pi/4 rotations an ancillary vertex, measurements
/// neither (a single-qubit measurement consumes only its own data vertex).
/// Successfully routed trees claim their bus vertices; failures are skipped.
/// Packed trees are pairwise element-disjoint; data vertices are exclusive
/// unless allow_shared_data lifts terminal-vertex exclusivity.
std::vector<PackedOp> pack_forest(const LayoutGraph& g, std::span<const VertexId> qubit_map,
                                  std::span<const Rotation> candidates,
                                  std::vector<VertexId> storage_available,
                                  std::vector<VertexId> ancillary_available,
                                  const PackOptions& opts = {});

/// Data vertices touched by a rotation under the given qubit map, sorted.
std::vector<VertexId> rotation_terminals(const Rotation& r, std::span<const VertexId> qubit_map);

}  // namespace lss
