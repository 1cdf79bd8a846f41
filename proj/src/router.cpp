#include "lss/router.hpp"

#include <algorithm>
#include <cstring>
#include <limits>

namespace lss {

std::size_t RoutedTree::degree(VertexId v) const {
  std::size_t d = 0;
  for (const auto& [a, b] : edges) {
    if (a == v || b == v) ++d;
  }
  return d;
}

bool RoutedTree::contains(VertexId v) const {
  return std::binary_search(vertices.begin(), vertices.end(), v);
}

namespace {

constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();
constexpr VertexId kNone = std::numeric_limits<VertexId>::max();

/// Level-synchronized bidirectional BFS between two disjoint vertex sets.
/// Interior hops are restricted to unblocked bus tiles outside `used`;
/// endpoint vertices are entered but never expanded through. With
/// forbid_direct the single-edge hop from a source straight onto a target is
/// suppressed, forcing at least one interior vertex.
class PathSearch {
 public:
  PathSearch(const LayoutGraph& g, const Occupancy& occ, const std::vector<bool>* used)
      : g_(g), occ_(occ), used_(used) {}

  std::optional<std::vector<VertexId>> run(std::span<const VertexId> sources,
                                           std::span<const VertexId> targets,
                                           bool forbid_direct) {
    const std::size_t n = g_.vertex_count();
    dist_f_.assign(n, kInf);
    dist_b_.assign(n, kInf);
    par_f_.assign(n, kNone);
    par_b_.assign(n, kNone);
    is_source_.assign(n, false);
    is_target_.assign(n, false);

    std::vector<VertexId> frontier_f(sources.begin(), sources.end());
    std::vector<VertexId> frontier_b(targets.begin(), targets.end());
    std::sort(frontier_f.begin(), frontier_f.end());
    frontier_f.erase(std::unique(frontier_f.begin(), frontier_f.end()), frontier_f.end());
    std::sort(frontier_b.begin(), frontier_b.end());
    frontier_b.erase(std::unique(frontier_b.begin(), frontier_b.end()), frontier_b.end());
    for (VertexId s : frontier_f) {
      dist_f_[s] = 0;
      is_source_[s] = true;
    }
    for (VertexId t : frontier_b) {
      if (is_source_[t]) {
        throw InvariantViolation("path search endpoints overlap");
      }
      dist_b_[t] = 0;
      is_target_[t] = true;
    }

    best_len_ = kInf;
    best_meet_ = kNone;
    std::uint32_t level_f = 0;
    std::uint32_t level_b = 0;

    while (!frontier_f.empty() || !frontier_b.empty()) {
      if (level_f + level_b >= best_len_) break;
      const bool forward = frontier_b.empty() ||
                           (!frontier_f.empty() && frontier_f.size() <= frontier_b.size());
      if (forward) {
        frontier_f = expand(frontier_f, ++level_f, dist_f_, par_f_, dist_b_, is_target_,
                            forbid_direct);
      } else {
        frontier_b = expand(frontier_b, ++level_b, dist_b_, par_b_, dist_f_, is_source_,
                            forbid_direct);
      }
    }
    if (best_meet_ == kNone) return std::nullopt;

    std::vector<VertexId> path;
    for (VertexId v = best_meet_; v != kNone; v = par_f_[v]) {
      path.push_back(v);
    }
    std::reverse(path.begin(), path.end());
    for (VertexId v = par_b_[best_meet_]; v != kNone; v = par_b_[v]) {
      path.push_back(v);
    }
    return path;
  }

 private:
  bool interior_ok(VertexId v) const {
    return g_.kind(v) == VertexKind::Bus && !occ_.is_blocked(v) &&
           (used_ == nullptr || !(*used_)[v]);
  }

  std::vector<VertexId> expand(const std::vector<VertexId>& frontier, std::uint32_t level,
                               std::vector<std::uint32_t>& dist_here,
                               std::vector<VertexId>& par_here,
                               const std::vector<std::uint32_t>& dist_other,
                               const std::vector<bool>& other_endpoint, bool forbid_direct) {
    std::vector<VertexId> next;
    for (VertexId u : frontier) {
      for (VertexId w : g_.neighbors(u)) {
        if (dist_here[w] != kInf) continue;
        const bool endpoint_hit = other_endpoint[w];
        if (!endpoint_hit && !interior_ok(w)) continue;
        if (endpoint_hit && forbid_direct && dist_here[u] == 0 && dist_other[w] == 0) {
          continue;  // would be a direct source-target edge
        }
        dist_here[w] = level;
        par_here[w] = u;
        if (dist_other[w] != kInf) {
          const std::uint32_t len = dist_here[w] + dist_other[w];
          if (len < best_len_ || (len == best_len_ && w < best_meet_)) {
            best_len_ = len;
            best_meet_ = w;
          }
        }
        if (!endpoint_hit) next.push_back(w);
      }
    }
    return next;
  }

  const LayoutGraph& g_;
  const Occupancy& occ_;
  const std::vector<bool>* used_;
  std::vector<std::uint32_t> dist_f_, dist_b_;
  std::vector<VertexId> par_f_, par_b_;
  std::vector<bool> is_source_, is_target_;
  std::uint32_t best_len_ = kInf;
  VertexId best_meet_ = kNone;
};

void add_path_to_tree(RoutedTree& tree, const std::vector<VertexId>& path) {
  for (VertexId v : path) {
    if (!tree.contains(v)) {
      tree.vertices.insert(
          std::lower_bound(tree.vertices.begin(), tree.vertices.end(), v), v);
    }
  }
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    auto e = std::minmax(path[k], path[k + 1]);
    tree.edges.emplace_back(e.first, e.second);
  }
  std::sort(tree.edges.begin(), tree.edges.end());
}

}  // namespace

std::optional<std::vector<VertexId>> shortest_bus_path(const LayoutGraph& g, VertexId s,
                                                       VertexId t, const Occupancy& occ) {
  if (s == t) {
    throw ValidationError("shortest_bus_path endpoints must differ");
  }
  const VertexId sources[] = {s};
  const VertexId targets[] = {t};
  return PathSearch(g, occ, nullptr).run(sources, targets, false);
}

std::optional<RoutedTree> terminal_steiner_tree(const LayoutGraph& g,
                                                std::span<const VertexId> terminals,
                                                const Occupancy& occ, bool require_internal) {
  std::vector<VertexId> terms(terminals.begin(), terminals.end());
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  if (terms.size() < 2) {
    throw ValidationError("a terminal Steiner tree needs at least two terminals");
  }
  // A direct terminal-terminal edge is only a valid tree when it IS the whole
  // tree, so it is banned as soon as a third terminal or an attachment point
  // is required.
  const bool forbid_terminal_edge = require_internal || terms.size() >= 3;

  // Complete graph on the terminals, weighted by bus-path length.
  struct PairEdge {
    std::uint32_t length;
    std::uint32_t a, b;  // indices into terms
  };
  std::vector<PairEdge> pair_edges;
  PathSearch search(g, occ, nullptr);
  for (std::uint32_t a = 0; a < terms.size(); ++a) {
    for (std::uint32_t b = a + 1; b < terms.size(); ++b) {
      const VertexId sa[] = {terms[a]};
      const VertexId tb[] = {terms[b]};
      auto path = search.run(sa, tb, forbid_terminal_edge);
      if (!path) continue;
      pair_edges.push_back(
          {static_cast<std::uint32_t>(path->size() - 1), a, b});
    }
  }
  std::sort(pair_edges.begin(), pair_edges.end(), [](const PairEdge& x, const PairEdge& y) {
    return std::tie(x.length, x.a, x.b) < std::tie(y.length, y.a, y.b);
  });

  // Kruskal on the pair graph.
  std::vector<std::uint32_t> dsu(terms.size());
  for (std::uint32_t k = 0; k < dsu.size(); ++k) dsu[k] = k;
  auto find = [&](std::uint32_t v) {
    while (dsu[v] != v) v = dsu[v] = dsu[dsu[v]];
    return v;
  };
  std::vector<std::pair<std::uint32_t, std::uint32_t>> mst;
  for (const PairEdge& e : pair_edges) {
    const auto ra = find(e.a);
    const auto rb = find(e.b);
    if (ra == rb) continue;
    dsu[ra] = rb;
    mst.emplace_back(e.a, e.b);
  }
  if (mst.size() + 1 != terms.size()) return std::nullopt;

  // Embed the spanning structure component by component. Components are
  // joined at their attachment points (a bare terminal, or internal bus
  // vertices once it has any), re-routing around everything already used so
  // terminals stay leaves and no cycle can form.
  std::vector<std::uint32_t> blob(terms.size());
  for (std::uint32_t k = 0; k < blob.size(); ++k) blob[k] = k;
  std::vector<std::vector<VertexId>> blob_vertices(terms.size());
  std::vector<std::vector<std::pair<VertexId, VertexId>>> blob_edges(terms.size());
  for (std::uint32_t k = 0; k < terms.size(); ++k) blob_vertices[k] = {terms[k]};
  std::vector<bool> used(g.vertex_count(), false);
  for (VertexId t : terms) used[t] = true;

  auto attach_points = [&](std::uint32_t blob_id) {
    std::vector<VertexId> points;
    if (blob_edges[blob_id].empty()) {
      points = blob_vertices[blob_id];  // bare terminal
    } else {
      for (VertexId v : blob_vertices[blob_id]) {
        if (g.kind(v) == VertexKind::Bus) points.push_back(v);
      }
    }
    return points;
  };

  PathSearch join_search(g, occ, &used);
  for (const auto& [a, b] : mst) {
    const std::uint32_t ba = blob[a];
    const std::uint32_t bb = blob[b];
    const auto sources = attach_points(ba);
    const auto targets = attach_points(bb);
    if (sources.empty() || targets.empty()) return std::nullopt;
    const bool both_bare = blob_edges[ba].empty() && blob_edges[bb].empty();
    auto path = join_search.run(sources, targets, forbid_terminal_edge && both_bare);
    if (!path) return std::nullopt;

    for (VertexId v : *path) used[v] = true;
    auto& va = blob_vertices[ba];
    auto& ea = blob_edges[ba];
    for (VertexId v : *path) {
      if (std::find(va.begin(), va.end(), v) == va.end()) va.push_back(v);
    }
    for (std::size_t k = 0; k + 1 < path->size(); ++k) {
      auto e = std::minmax((*path)[k], (*path)[k + 1]);
      ea.emplace_back(e.first, e.second);
    }
    va.insert(va.end(), blob_vertices[bb].begin(), blob_vertices[bb].end());
    ea.insert(ea.end(), blob_edges[bb].begin(), blob_edges[bb].end());
    blob_vertices[bb].clear();
    blob_edges[bb].clear();
    for (std::uint32_t k = 0; k < blob.size(); ++k) {
      if (blob[k] == bb) blob[k] = ba;
    }
  }

  RoutedTree tree;
  tree.terminals = terms;
  tree.vertices = blob_vertices[blob[0]];
  std::sort(tree.vertices.begin(), tree.vertices.end());
  tree.edges = blob_edges[blob[0]];
  std::sort(tree.edges.begin(), tree.edges.end());
  return tree;
}

std::optional<RoutedTree> attach_storage(const LayoutGraph& g, const RoutedTree& tree,
                                         std::span<const VertexId> storage_available,
                                         const Occupancy& occ) {
  if (storage_available.empty()) return std::nullopt;

  std::vector<VertexId> sources;
  const bool bare = tree.edges.empty() && tree.vertices.size() == 1;
  if (bare) {
    sources = tree.vertices;
  } else {
    for (VertexId v : tree.vertices) {
      if (g.kind(v) == VertexKind::Bus) sources.push_back(v);
    }
  }
  if (sources.empty()) return std::nullopt;

  // Contract the tree into a super-source and take the shortest unblocked bus
  // path to the nearest available special vertex.
  std::vector<bool> used(g.vertex_count(), false);
  for (VertexId v : tree.vertices) used[v] = true;
  auto path = PathSearch(g, occ, &used).run(sources, storage_available, false);
  if (!path) return std::nullopt;

  RoutedTree result = tree;
  add_path_to_tree(result, *path);
  result.storage_vertex = path->back();
  return result;
}

std::vector<VertexId> rotation_terminals(const Rotation& r,
                                         std::span<const VertexId> qubit_map) {
  std::vector<VertexId> terminals;
  for (std::size_t q : r.pauli.support()) {
    terminals.push_back(qubit_map[q]);
  }
  std::sort(terminals.begin(), terminals.end());
  terminals.erase(std::unique(terminals.begin(), terminals.end()), terminals.end());
  return terminals;
}

const std::optional<RoutedTree>* RouteCache::find(const std::string& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

void RouteCache::insert(const std::string& key, std::optional<RoutedTree> value) {
  if (entries_.size() >= max_entries_) return;
  entries_.emplace(key, std::move(value));
}

namespace {

enum class AttachKind : std::uint8_t { None, Storage, Ancillary };

std::string cache_key(AttachKind kind, const std::vector<VertexId>& terminals,
                      const std::vector<bool>& blocked,
                      const std::vector<VertexId>& available) {
  std::string key;
  key.reserve(1 + 4 * (terminals.size() + available.size() + 2) + blocked.size() / 8 + 1);
  key.push_back(static_cast<char>(kind));
  auto push_u32 = [&key](std::uint32_t v) {
    char bytes[4];
    std::memcpy(bytes, &v, 4);
    key.append(bytes, 4);
  };
  push_u32(static_cast<std::uint32_t>(terminals.size()));
  for (VertexId v : terminals) push_u32(v);
  push_u32(static_cast<std::uint32_t>(available.size()));
  for (VertexId v : available) push_u32(v);
  char packed = 0;
  int filled = 0;
  for (bool b : blocked) {
    packed = static_cast<char>((packed << 1) | (b ? 1 : 0));
    if (++filled == 8) {
      key.push_back(packed);
      packed = 0;
      filled = 0;
    }
  }
  if (filled > 0) key.push_back(static_cast<char>(packed << (8 - filled)));
  return key;
}

std::optional<RoutedTree> route_candidate(const LayoutGraph& g, AttachKind kind,
                                          const std::vector<VertexId>& terminals,
                                          const std::vector<VertexId>& available,
                                          const Occupancy& occ) {
  RoutedTree base;
  if (terminals.size() == 1) {
    base.vertices = terminals;
    base.terminals = terminals;
  } else {
    auto steiner =
        terminal_steiner_tree(g, terminals, occ, /*require_internal=*/kind != AttachKind::None);
    if (!steiner) return std::nullopt;
    base = std::move(*steiner);
  }
  if (kind == AttachKind::None) return base;
  return attach_storage(g, base, available, occ);
}

}  // namespace

std::vector<PackedOp> pack_forest(const LayoutGraph& g, std::span<const VertexId> qubit_map,
                                  std::span<const Rotation> candidates,
                                  std::vector<VertexId> storage_available,
                                  std::vector<VertexId> ancillary_available,
                                  const PackOptions& opts) {
  std::sort(storage_available.begin(), storage_available.end());
  std::sort(ancillary_available.begin(), ancillary_available.end());

  Occupancy occ(g.vertex_count());
  std::vector<bool> used_data(g.vertex_count(), false);
  std::vector<PackedOp> packed;

  for (std::size_t idx = 0; idx < candidates.size(); ++idx) {
    const Rotation& rot = candidates[idx];
    const auto terminals = rotation_terminals(rot, qubit_map);
    if (terminals.empty()) continue;

    if (!opts.allow_shared_data) {
      bool collision = false;
      for (VertexId t : terminals) {
        if (used_data[t]) {
          collision = true;
          break;
        }
      }
      if (collision) continue;
    }

    AttachKind kind = AttachKind::None;
    if (is_pi8(rot.angle)) kind = AttachKind::Storage;
    if (is_pi4(rot.angle)) kind = AttachKind::Ancillary;
    const std::vector<VertexId>& available =
        kind == AttachKind::Ancillary ? ancillary_available : storage_available;

    std::optional<RoutedTree> tree;
    if (opts.cache != nullptr) {
      const std::string key = cache_key(kind, terminals, occ.blocked, available);
      if (const auto* hit = opts.cache->find(key)) {
        tree = *hit;
      } else {
        tree = route_candidate(g, kind, terminals, available, occ);
        opts.cache->insert(key, tree);
      }
    } else {
      tree = route_candidate(g, kind, terminals, available, occ);
    }
    if (!tree) continue;

    for (VertexId v : tree->vertices) {
      if (g.kind(v) == VertexKind::Bus) occ.block(v);
    }
    for (VertexId t : terminals) used_data[t] = true;
    if (tree->storage_vertex) {
      auto& avail = kind == AttachKind::Ancillary ? ancillary_available : storage_available;
      avail.erase(std::remove(avail.begin(), avail.end(), *tree->storage_vertex), avail.end());
    }
    packed.push_back(PackedOp{idx, std::move(*tree)});
  }
  return packed;
}

}  // namespace lss
