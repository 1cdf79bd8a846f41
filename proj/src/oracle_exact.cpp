#include <algorithm>
#include <queue>
#include <set>
#include <unordered_map>

#include "lss/oracle.hpp"

namespace lss::oracle {

namespace {

enum class AttachClass : std::uint8_t { None, Storage, Ancillary };

AttachClass attach_class(const Rotation& r) {
  if (is_pi8(r.angle)) return AttachClass::Storage;
  if (is_pi4(r.angle)) return AttachClass::Ancillary;
  return AttachClass::None;
}

struct CandidateInfo {
  std::vector<VertexId> terminals;
  AttachClass attach = AttachClass::None;
};

/// Exhaustive element-disjoint forest search. Each candidate's ancilla patch
/// is grown as a connected subset of free bus vertices (its spine); the
/// terminals and the chosen storage/ancillary vertex hang off the spine by
/// one edge each, which realizes the single-edge attachment and leaf
/// constraints by construction. Degenerate patches (a bare data vertex, a
/// direct two-terminal edge, a terminal-storage edge) need no spine.
/// Iterative deepening on the total spine size makes the first forest found
/// a minimum-bus one.
class ExactSearch {
 public:
  ExactSearch(const LayoutGraph& g, std::vector<CandidateInfo> candidates,
              bool allow_shared_data)
      : g_(g), cands_(std::move(candidates)), allow_shared_(allow_shared_data) {
    bus_free_.assign(g_.vertex_count(), false);
    for (VertexId v = 0; v < g_.vertex_count(); ++v) {
      if (g_.kind(v) == VertexKind::Bus) bus_free_[v] = true;
    }
    free_bus_total_ = static_cast<std::size_t>(
        std::count(bus_free_.begin(), bus_free_.end(), true));
    data_used_.assign(g_.vertex_count(), false);
    special_free_.assign(g_.vertex_count(), false);
    for (VertexId v : g_.storage_vertices()) special_free_[v] = true;
    for (VertexId v : g_.ancillary_vertices()) special_free_[v] = true;
    current_.resize(cands_.size());
  }

  /// Minimum-total-bus forest, or std::nullopt when the pack is infeasible.
  /// With find_any set, stops at the first feasible forest instead.
  std::optional<ExactForest> run(bool find_any) {
    if (!allow_shared_) {
      std::vector<bool> seen(g_.vertex_count(), false);
      for (const CandidateInfo& info : cands_) {
        for (VertexId t : info.terminals) {
          if (seen[t]) return std::nullopt;
          seen[t] = true;
        }
      }
    }
    lb_.assign(cands_.size(), 0);
    for (std::size_t i = 0; i < cands_.size(); ++i) {
      lb_[i] = single_candidate_min(i);
      if (lb_[i] == kNoTree) return std::nullopt;
    }
    lb_suffix_.assign(cands_.size() + 1, 0);
    for (std::size_t i = cands_.size(); i-- > 0;) {
      lb_suffix_[i] = lb_suffix_[i + 1] + lb_[i];
    }
    for (std::size_t budget = lb_suffix_[0]; budget <= free_bus_total_; ++budget) {
      if (place(0, 0, budget)) {
        return ExactForest{current_, found_cost_};
      }
      if (find_any && budget >= lb_suffix_[0] + kFeasibilitySlack) {
        // A feasible pack admits a forest near the per-candidate minima; past
        // this slack the pack is treated as unroutable.
        break;
      }
    }
    return std::nullopt;
  }

 private:
  static constexpr std::size_t kNoTree = static_cast<std::size_t>(-1);
  static constexpr VertexId kNone = static_cast<VertexId>(-1);
  static constexpr std::size_t kFeasibilitySlack = 24;

  std::size_t single_candidate_min(std::size_t i) {
    if (!precheck(i)) return kNoTree;
    for (std::size_t cap = 0; cap <= free_bus_total_; ++cap) {
      std::size_t found = kNoTree;
      for_each_tree(i, cap, [&](const std::vector<VertexId>& spine, VertexId) {
        found = spine.size();
        return true;
      });
      if (found != kNoTree) return found;
    }
    return kNoTree;
  }

  /// Exact one-candidate routability test on the current free graph: some
  /// free-bus component must touch every terminal (and a free special of the
  /// right kind), or a degenerate patch must apply.
  bool precheck(std::size_t i) const {
    const auto& info = cands_[i];
    const auto& terms = info.terminals;
    if (!allow_shared_) {
      for (VertexId t : terms) {
        if (data_used_[t]) return false;
      }
    }
    if (terms.size() == 1 && info.attach == AttachClass::None) return true;
    if (terms.size() == 1) {
      for (VertexId sp : g_.neighbors(terms[0])) {
        if (is_free_special(sp, info.attach)) return true;
      }
    }
    if (terms.size() == 2 && info.attach == AttachClass::None) {
      const auto& nbrs = g_.neighbors(terms[0]);
      if (std::find(nbrs.begin(), nbrs.end(), terms[1]) != nbrs.end()) return true;
    }

    std::vector<int> component(g_.vertex_count(), -1);
    int num_components = 0;
    for (VertexId v = 0; v < g_.vertex_count(); ++v) {
      if (!bus_free_[v] || component[v] >= 0) continue;
      const int id = num_components++;
      std::vector<VertexId> stack{v};
      component[v] = id;
      while (!stack.empty()) {
        const VertexId u = stack.back();
        stack.pop_back();
        for (VertexId w : g_.neighbors(u)) {
          if (bus_free_[w] && component[w] < 0) {
            component[w] = id;
            stack.push_back(w);
          }
        }
      }
    }
    auto touched = [&](VertexId v) {
      std::vector<bool> hit(static_cast<std::size_t>(num_components), false);
      for (VertexId w : g_.neighbors(v)) {
        if (bus_free_[w]) hit[component[w]] = true;
      }
      return hit;
    };
    std::vector<bool> viable(static_cast<std::size_t>(num_components), true);
    for (VertexId t : terms) {
      const auto hit = touched(t);
      for (int c = 0; c < num_components; ++c) {
        viable[c] = viable[c] && hit[c];
      }
    }
    if (info.attach != AttachClass::None) {
      std::vector<bool> special_hit(static_cast<std::size_t>(num_components), false);
      for (VertexId sp : special_pool(info.attach)) {
        if (!special_free_[sp]) continue;
        for (VertexId w : g_.neighbors(sp)) {
          if (bus_free_[w]) special_hit[component[w]] = true;
        }
      }
      for (int c = 0; c < num_components; ++c) {
        viable[c] = viable[c] && special_hit[c];
      }
    }
    return std::find(viable.begin(), viable.end(), true) != viable.end();
  }

  bool place(std::size_t i, std::size_t cost, std::size_t budget) {
    if (i == cands_.size()) {
      found_cost_ = cost;
      return true;
    }
    if (!precheck(i)) return false;
    const std::size_t cap = budget - cost - lb_suffix_[i + 1];
    return for_each_tree(i, cap, [&](const std::vector<VertexId>& spine, VertexId special) {
      current_[i] = assemble(i, spine, special);
      claim(i, spine, special, true);
      const bool stop = place(i + 1, cost + spine.size(), budget);
      claim(i, spine, special, false);
      return stop;
    });
  }

  void claim(std::size_t i, const std::vector<VertexId>& spine, VertexId special, bool on) {
    for (VertexId v : spine) bus_free_[v] = !on;
    for (VertexId t : cands_[i].terminals) data_used_[t] = on;
    if (special != kNone) special_free_[special] = !on;
  }

  RoutedTree assemble(std::size_t i, const std::vector<VertexId>& spine,
                      VertexId special) const {
    const auto& info = cands_[i];
    RoutedTree tree;
    tree.terminals = info.terminals;
    tree.vertices = info.terminals;
    tree.vertices.insert(tree.vertices.end(), spine.begin(), spine.end());
    if (special != kNone) {
      tree.vertices.push_back(special);
      tree.storage_vertex = special;
    }
    std::sort(tree.vertices.begin(), tree.vertices.end());

    auto add_edge = [&tree](VertexId a, VertexId b) {
      const auto e = std::minmax(a, b);
      tree.edges.emplace_back(e.first, e.second);
    };
    if (spine.empty()) {
      if (info.terminals.size() == 2) {
        add_edge(info.terminals[0], info.terminals[1]);
      } else if (special != kNone) {
        add_edge(info.terminals[0], special);
      }
    } else {
      std::vector<bool> in_spine(g_.vertex_count(), false);
      for (VertexId v : spine) in_spine[v] = true;
      // BFS spanning tree of the spine from its smallest vertex.
      std::vector<bool> seen(g_.vertex_count(), false);
      std::vector<VertexId> order{*std::min_element(spine.begin(), spine.end())};
      seen[order.front()] = true;
      for (std::size_t head = 0; head < order.size(); ++head) {
        for (VertexId w : g_.neighbors(order[head])) {
          if (in_spine[w] && !seen[w]) {
            seen[w] = true;
            add_edge(order[head], w);
            order.push_back(w);
          }
        }
      }
      auto first_spine_neighbor = [&](VertexId v) {
        for (VertexId w : g_.neighbors(v)) {
          if (in_spine[w]) return w;
        }
        throw InvariantViolation("spine does not touch vertex");
      };
      for (VertexId t : info.terminals) add_edge(t, first_spine_neighbor(t));
      if (special != kNone) add_edge(special, first_spine_neighbor(special));
    }
    std::sort(tree.edges.begin(), tree.edges.end());
    return tree;
  }

  /// Yields (spine, special) options for candidate i with |spine| <= cap
  /// until the callback asks to stop; returns that stop request.
  template <typename TryTree>
  bool for_each_tree(std::size_t i, std::size_t cap, TryTree&& try_tree) {
    const auto& info = cands_[i];
    const auto& terms = info.terminals;

    static const std::vector<VertexId> kEmptySpine;
    if (terms.size() == 1 && info.attach == AttachClass::None) {
      return try_tree(kEmptySpine, kNone);  // bare data vertex; nothing else helps
    }
    if (terms.size() == 1) {
      for (VertexId sp : g_.neighbors(terms[0])) {
        if (is_free_special(sp, info.attach) && try_tree(kEmptySpine, sp)) return true;
      }
    }
    if (terms.size() == 2 && info.attach == AttachClass::None) {
      const auto& nbrs = g_.neighbors(terms[0]);
      if (std::find(nbrs.begin(), nbrs.end(), terms[1]) != nbrs.end()) {
        if (try_tree(kEmptySpine, kNone)) return true;
      }
    }
    if (cap == 0) return false;

    std::vector<bool> banned(g_.vertex_count(), false);
    std::vector<bool> in_set(g_.vertex_count(), false);
    std::vector<VertexId> spine;

    auto emit = [&](const std::vector<VertexId>& s) {
      for (VertexId t : terms) {
        bool covered = false;
        for (VertexId w : g_.neighbors(t)) {
          if (in_set[w]) {
            covered = true;
            break;
          }
        }
        if (!covered) return false;
      }
      if (info.attach == AttachClass::None) return try_tree(s, kNone);
      for (VertexId sp : special_pool(info.attach)) {
        if (!special_free_[sp]) continue;
        bool adjacent = false;
        for (VertexId w : g_.neighbors(sp)) {
          if (in_set[w]) {
            adjacent = true;
            break;
          }
        }
        if (adjacent && try_tree(s, sp)) return true;
      }
      return false;
    };

    for (VertexId root = 0; root < g_.vertex_count(); ++root) {
      if (!bus_free_[root]) continue;
      spine.assign(1, root);
      in_set[root] = true;
      std::vector<VertexId> ext;
      for (VertexId w : g_.neighbors(root)) {
        if (bus_free_[w] && !banned[w]) ext.push_back(w);
      }
      const bool stop = grow(spine, std::move(ext), banned, in_set, cap, emit);
      in_set[root] = false;
      if (stop) return true;
      banned[root] = true;  // later roots enumerate subsets without it
    }
    return false;
  }

  const std::vector<VertexId>& special_pool(AttachClass cls) const {
    return cls == AttachClass::Storage ? g_.storage_vertices() : g_.ancillary_vertices();
  }

  bool is_free_special(VertexId v, AttachClass cls) const {
    return special_free_[v] &&
           g_.kind(v) == (cls == AttachClass::Storage ? VertexKind::MagicStorage
                                                      : VertexKind::Ancillary);
  }

  /// Connected-subset enumeration: every connected set of free bus vertices
  /// containing the current root and avoiding banned vertices is produced
  /// exactly once via include/exclude branching on the extension frontier.
  template <typename Emit>
  bool grow(std::vector<VertexId>& spine, std::vector<VertexId> ext, std::vector<bool>& banned,
            std::vector<bool>& in_set, std::size_t cap, Emit&& emit) {
    if (spine.size() > cap) return false;
    if (emit(spine)) return true;
    if (spine.size() == cap) return false;
    std::vector<VertexId> locally_banned;
    bool stop = false;
    while (!ext.empty()) {
      const VertexId v = ext.back();
      ext.pop_back();
      if (banned[v] || in_set[v]) continue;
      spine.push_back(v);
      in_set[v] = true;
      std::vector<VertexId> next_ext = ext;
      for (VertexId w : g_.neighbors(v)) {
        if (bus_free_[w] && !banned[w] && !in_set[w]) next_ext.push_back(w);
      }
      stop = grow(spine, std::move(next_ext), banned, in_set, cap, emit);
      in_set[v] = false;
      spine.pop_back();
      if (stop) break;
      banned[v] = true;
      locally_banned.push_back(v);
    }
    for (VertexId v : locally_banned) banned[v] = false;
    return stop;
  }

  const LayoutGraph& g_;
  std::vector<CandidateInfo> cands_;
  bool allow_shared_;
  std::vector<bool> bus_free_;
  std::vector<bool> data_used_;
  std::vector<bool> special_free_;
  std::size_t free_bus_total_ = 0;
  std::vector<std::size_t> lb_;
  std::vector<std::size_t> lb_suffix_;
  std::size_t found_cost_ = 0;
  std::vector<RoutedTree> current_;
};

std::vector<CandidateInfo> make_candidates(std::span<const Rotation> rotations,
                                           std::span<const VertexId> qubit_map) {
  std::vector<CandidateInfo> infos;
  infos.reserve(rotations.size());
  for (const Rotation& r : rotations) {
    CandidateInfo info;
    info.terminals = rotation_terminals(r, qubit_map);
    info.attach = attach_class(r);
    infos.push_back(std::move(info));
  }
  return infos;
}

}  // namespace

std::optional<ExactForest> exact_min_bus(std::span<const Rotation> candidates,
                                         std::span<const VertexId> qubit_map,
                                         const LayoutGraph& g, bool allow_shared_data) {
  if (candidates.size() > 4) {
    throw CapacityError("exact_min_bus handles at most 4 candidates, got " +
                        std::to_string(candidates.size()));
  }
  if (g.vertex_count() > 70) {
    throw CapacityError("exact_min_bus handles at most 70 vertices, got " +
                        std::to_string(g.vertex_count()));
  }
  ExactSearch search(g, make_candidates(candidates, qubit_map), allow_shared_data);
  return search.run(/*find_any=*/false);
}

std::size_t exact_min_steps(const Circuit& c, const LayoutGraph& g, DependencyRule rule,
                            bool allow_shared_data) {
  const std::size_t m = c.ops.size();
  if (m > 12) {
    throw CapacityError("exact_min_steps handles at most 12 operations, got " +
                        std::to_string(m));
  }
  if (m == 0) return 0;
  c.validate();
  const auto qubit_map = assign_qubits(c.n, g, AssignPolicy::Sequential);
  const DependencyGraph dep = build_dependency(c, rule);

  std::vector<std::uint32_t> ancestors(m, 0);
  for (std::uint32_t j = 0; j < m; ++j) {
    for (std::uint32_t i : dep.predecessors[j]) {
      ancestors[j] |= ancestors[i] | (1u << i);
    }
  }

  std::vector<std::int8_t> feasible_memo(std::size_t{1} << m, -1);
  auto pack_feasible = [&](std::uint32_t pack_mask) {
    std::int8_t& memo = feasible_memo[pack_mask];
    if (memo >= 0) return memo == 1;
    std::vector<Rotation> rotations;
    std::size_t pi8 = 0;
    std::size_t pi4 = 0;
    for (std::uint32_t i = 0; i < m; ++i) {
      if (!(pack_mask & (1u << i))) continue;
      rotations.push_back(c.ops[i]);
      if (is_pi8(c.ops[i].angle)) ++pi8;
      if (is_pi4(c.ops[i].angle)) ++pi4;
    }
    bool ok = pi8 <= g.storage_vertices().size() && pi4 <= g.ancillary_vertices().size() &&
              rotations.size() <= 4;
    if (ok && !allow_shared_data) {
      for (std::size_t a = 0; a < rotations.size() && ok; ++a) {
        for (std::size_t b = a + 1; b < rotations.size() && ok; ++b) {
          ok = trivially_disjoint(rotations[a].pauli, rotations[b].pauli);
        }
      }
    }
    if (ok) {
      ExactSearch search(g, make_candidates(rotations, qubit_map), allow_shared_data);
      ok = search.run(/*find_any=*/true).has_value();
    }
    memo = ok ? 1 : 0;
    return ok;
  };

  const std::uint32_t full = static_cast<std::uint32_t>((std::size_t{1} << m) - 1);
  std::vector<std::int32_t> dist(std::size_t{1} << m, -1);
  dist[0] = 0;
  std::queue<std::uint32_t> queue;
  queue.push(0);
  while (!queue.empty()) {
    const std::uint32_t mask = queue.front();
    queue.pop();
    if (mask == full) return static_cast<std::size_t>(dist[mask]);

    std::uint32_t avail = 0;
    for (std::uint32_t i = 0; i < m; ++i) {
      if (!(mask & (1u << i)) && (ancestors[i] & ~mask) == 0) avail |= 1u << i;
    }
    // A feasible pack's superset dominates it, so only maximal feasible packs
    // generate transitions.
    std::vector<std::uint32_t> feasible_packs;
    for (std::uint32_t sub = avail; sub != 0; sub = (sub - 1) & avail) {
      if (pack_feasible(sub)) feasible_packs.push_back(sub);
    }
    for (std::uint32_t pack : feasible_packs) {
      bool maximal = true;
      for (std::uint32_t i = 0; i < m && maximal; ++i) {
        const std::uint32_t bit = 1u << i;
        if ((avail & bit) && !(pack & bit) && feasible_memo[pack | bit] == 1) {
          maximal = false;
        }
      }
      if (!maximal) continue;
      const std::uint32_t next = mask | pack;
      if (dist[next] < 0) {
        dist[next] = dist[mask] + 1;
        queue.push(next);
      }
    }
  }
  throw SchedulingError(c.ops.front().source_index,
                        "no feasible schedule exists on the given layout");
}

std::optional<std::string> check_forest(std::span<const Rotation> rotations,
                                        std::span<const RoutedTree> trees,
                                        std::span<const VertexId> qubit_map,
                                        const LayoutGraph& g, bool allow_shared_data) {
  if (rotations.size() != trees.size()) {
    return "rotation and tree counts differ";
  }
  std::vector<int> bus_owner(g.vertex_count(), -1);
  std::vector<int> special_owner(g.vertex_count(), -1);
  std::vector<std::vector<int>> vertex_users(g.vertex_count());
  std::set<std::pair<VertexId, VertexId>> all_edges;

  for (std::size_t i = 0; i < trees.size(); ++i) {
    const RoutedTree& tree = trees[i];
    const std::string tag = "tree " + std::to_string(i) + ": ";

    const auto expected_terminals = rotation_terminals(rotations[i], qubit_map);
    if (tree.terminals != expected_terminals) {
      return tag + "terminals do not match the rotation's data vertices";
    }
    for (VertexId v : tree.vertices) {
      if (v >= g.vertex_count()) return tag + "vertex out of range";
      vertex_users[v].push_back(static_cast<int>(i));
    }
    for (VertexId t : tree.terminals) {
      if (!tree.contains(t)) return tag + "terminal missing from vertex set";
    }

    for (const auto& [u, v] : tree.edges) {
      if (!tree.contains(u) || !tree.contains(v)) {
        return tag + "edge endpoint outside the tree";
      }
      const auto& nbrs = g.neighbors(u);
      if (std::find(nbrs.begin(), nbrs.end(), v) == nbrs.end()) {
        return tag + "edge does not exist in the layout";
      }
      if (!all_edges.insert(std::minmax(u, v)).second) {
        return tag + "edge shared between trees";
      }
    }

    if (tree.edges.size() + 1 != tree.vertices.size()) {
      return tag + "edge count is not vertex count minus one";
    }
    if (tree.vertices.size() > 1) {
      std::unordered_map<VertexId, std::vector<VertexId>> adj;
      for (const auto& [u, v] : tree.edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
      }
      std::vector<VertexId> stack{tree.vertices.front()};
      std::set<VertexId> seen{tree.vertices.front()};
      while (!stack.empty()) {
        const VertexId v = stack.back();
        stack.pop_back();
        for (VertexId w : adj[v]) {
          if (seen.insert(w).second) stack.push_back(w);
        }
      }
      if (seen.size() != tree.vertices.size()) return tag + "tree is disconnected";
    }

    const bool bare = tree.vertices.size() == 1;
    std::size_t storage_count = 0;
    std::size_t ancillary_count = 0;
    for (VertexId v : tree.vertices) {
      const VertexKind kind = g.kind(v);
      const std::size_t degree = tree.degree(v);
      const bool is_terminal =
          std::binary_search(tree.terminals.begin(), tree.terminals.end(), v);
      switch (kind) {
        case VertexKind::Bus:
          if (bus_owner[v] >= 0) return tag + "bus vertex shared between trees";
          bus_owner[v] = static_cast<int>(i);
          break;
        case VertexKind::Data:
          if (!is_terminal) return tag + "contains a data vertex it does not require";
          if (!bare && degree != 1) return tag + "terminal is not a leaf with one edge";
          break;
        case VertexKind::MagicStorage:
          ++storage_count;
          if (degree != 1) return tag + "storage vertex is not a leaf with one edge";
          if (special_owner[v] >= 0) return tag + "storage vertex shared between trees";
          special_owner[v] = static_cast<int>(i);
          break;
        case VertexKind::Ancillary:
          ++ancillary_count;
          if (degree != 1) return tag + "ancillary vertex is not a leaf with one edge";
          if (special_owner[v] >= 0) return tag + "ancillary vertex shared between trees";
          special_owner[v] = static_cast<int>(i);
          break;
      }
      if (degree >= 2 && kind != VertexKind::Bus) {
        return tag + "internal vertex is not a bus tile";
      }
    }
    switch (attach_class(rotations[i])) {
      case AttachClass::Storage:
        if (storage_count != 1 || ancillary_count != 0) {
          return tag + "pi/8 rotation needs exactly one storage leaf and no ancillary";
        }
        break;
      case AttachClass::Ancillary:
        if (ancillary_count != 1 || storage_count != 0) {
          return tag + "pi/4 rotation needs exactly one ancillary leaf and no storage";
        }
        break;
      case AttachClass::None:
        if (storage_count != 0 || ancillary_count != 0) {
          return tag + "measurement must not attach storage or ancillary qubits";
        }
        break;
    }
  }

  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (vertex_users[v].size() < 2) continue;
    if (g.kind(v) != VertexKind::Data) {
      return "non-terminal vertex " + std::to_string(v) + " shared between trees";
    }
    if (!allow_shared_data) {
      return "data vertex " + std::to_string(v) + " shared between trees";
    }
  }
  return std::nullopt;
}

}  // namespace lss::oracle
