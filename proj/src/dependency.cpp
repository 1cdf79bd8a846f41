#include "lss/dependency.hpp"

#include <algorithm>

namespace lss {

std::string_view dependency_rule_name(DependencyRule rule) {
  switch (rule) {
    case DependencyRule::Serial:
      return "serial";
    case DependencyRule::Trivial:
      return "trivial";
    case DependencyRule::General:
      return "general";
  }
  throw InvariantViolation("unreachable rule tag");
}

std::optional<DependencyRule> parse_dependency_rule(std::string_view name) {
  if (name == "serial") return DependencyRule::Serial;
  if (name == "trivial") return DependencyRule::Trivial;
  if (name == "general") return DependencyRule::General;
  return std::nullopt;
}

namespace {

void finalize(DependencyGraph& g) {
  std::sort(g.arcs.begin(), g.arcs.end());
  g.successors.assign(g.num_nodes, {});
  g.predecessors.assign(g.num_nodes, {});
  for (const auto& [i, j] : g.arcs) {
    g.successors[i].push_back(j);
    g.predecessors[j].push_back(i);
  }
}

/// Adds, for each node j, an arc from every dependent predecessor that is not
/// already an ancestor through previously added arcs. Scanning predecessors
/// in descending order and marking each new arc's ancestor cone yields the
/// transitive reduction without materializing the closure.
template <typename Dependent>
DependencyGraph build_reduced(std::size_t m, Dependent&& dependent) {
  DependencyGraph g;
  g.num_nodes = m;
  std::vector<std::vector<std::uint32_t>> preds(m);
  std::vector<std::uint32_t> stamp(m, 0);
  std::vector<std::uint32_t> stack;
  for (std::uint32_t j = 1; j < m; ++j) {
    const std::uint32_t epoch = j;
    auto mark_ancestors = [&](std::uint32_t from) {
      stack.push_back(from);
      while (!stack.empty()) {
        const std::uint32_t v = stack.back();
        stack.pop_back();
        for (std::uint32_t u : preds[v]) {
          if (stamp[u] != epoch) {
            stamp[u] = epoch;
            stack.push_back(u);
          }
        }
      }
    };
    for (std::uint32_t i = j; i-- > 0;) {
      if (stamp[i] == epoch) continue;
      if (!dependent(i, j)) continue;
      g.arcs.emplace_back(i, j);
      preds[j].push_back(i);
      stamp[i] = epoch;
      mark_ancestors(i);
    }
  }
  finalize(g);
  return g;
}

}  // namespace

DependencyGraph build_dependency(const Circuit& c, DependencyRule rule) {
  const std::size_t m = c.ops.size();
  if (rule == DependencyRule::Serial) {
    DependencyGraph g;
    g.num_nodes = m;
    for (std::uint32_t i = 0; i + 1 < m; ++i) {
      g.arcs.emplace_back(i, i + 1);
    }
    finalize(g);
    return g;
  }
  if (rule == DependencyRule::Trivial) {
    return build_reduced(m, [&](std::uint32_t i, std::uint32_t j) {
      return !trivially_disjoint(c.ops[i].pauli, c.ops[j].pauli);
    });
  }
  return build_reduced(m, [&](std::uint32_t i, std::uint32_t j) {
    return !commutes(c.ops[i].pauli, c.ops[j].pauli);
  });
}

GraphMetrics graph_metrics(const DependencyGraph& g) {
  GraphMetrics metrics;
  if (g.num_nodes == 0) return metrics;
  for (const auto& [i, j] : g.arcs) {
    if (i >= j || j >= g.num_nodes) {
      throw InvariantViolation("dependency arcs must respect source order");
    }
  }
  // Arcs satisfy i < j, so ascending node order is topological.
  std::vector<std::size_t> depth(g.num_nodes, 1);
  std::size_t d_max = 1;
  for (std::uint32_t j = 0; j < g.num_nodes; ++j) {
    for (std::uint32_t i : g.predecessors[j]) {
      depth[j] = std::max(depth[j], depth[i] + 1);
    }
    d_max = std::max(d_max, depth[j]);
  }
  metrics.d_max = d_max;
  metrics.widths.assign(d_max, 0);
  for (std::size_t d : depth) {
    ++metrics.widths[d - 1];
  }
  metrics.avg_width = static_cast<double>(g.num_nodes) / static_cast<double>(d_max);
  return metrics;
}

}  // namespace lss
