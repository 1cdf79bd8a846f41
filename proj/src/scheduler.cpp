#include "lss/scheduler.hpp"

#include <algorithm>
#include <chrono>
#include <random>

namespace lss {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

ScheduleResult schedule(const Circuit& c, const LayoutGraph& g, DependencyRule rule,
                        const ScheduleOptions& opts) {
  c.validate();
  const auto qubit_map = assign_qubits(c.n, g, opts.assign, opts.assign_seed);

  const auto dep_start = std::chrono::steady_clock::now();
  const DependencyGraph dep = build_dependency(c, rule);
  const GraphMetrics metrics = graph_metrics(dep);
  const double t_dep = seconds_since(dep_start);

  const auto sch_start = std::chrono::steady_clock::now();
  RouteCache cache(opts.cache_entries);
  std::mt19937_64 order_rng(opts.order_seed.value_or(0));

  std::vector<std::size_t> indegree(dep.num_nodes, 0);
  for (std::uint32_t j = 0; j < dep.num_nodes; ++j) {
    indegree[j] = dep.predecessors[j].size();
  }
  std::vector<std::uint32_t> roots;
  for (std::uint32_t j = 0; j < dep.num_nodes; ++j) {
    if (indegree[j] == 0) roots.push_back(j);
  }

  Schedule result;
  result.layout = g.spec();
  result.rule = rule;
  std::size_t remaining = dep.num_nodes;

  while (remaining > 0) {
    std::vector<std::uint32_t> candidates = roots;
    std::sort(candidates.begin(), candidates.end());
    if (opts.order_seed) {
      std::shuffle(candidates.begin(), candidates.end(), order_rng);
    }
    std::vector<Rotation> rotations;
    rotations.reserve(candidates.size());
    for (std::uint32_t node : candidates) {
      rotations.push_back(c.ops[node]);
    }

    PackOptions pack_opts;
    pack_opts.allow_shared_data = opts.allow_shared_data;
    pack_opts.cache = opts.use_route_cache ? &cache : nullptr;
    auto packed = pack_forest(g, qubit_map, rotations, g.storage_vertices(),
                              g.ancillary_vertices(), pack_opts);
    if (packed.empty()) {
      const std::size_t source = c.ops[candidates.front()].source_index;
      throw SchedulingError(source, "operation " + std::to_string(source) +
                                        " cannot be routed on the given layout");
    }

    std::vector<ScheduledOp> step;
    step.reserve(packed.size());
    std::vector<std::uint32_t> scheduled_nodes;
    for (auto& p : packed) {
      const std::uint32_t node = candidates[p.candidate_index];
      scheduled_nodes.push_back(node);
      step.push_back(ScheduledOp{c.ops[node], std::move(p.tree)});
    }
    std::sort(step.begin(), step.end(), [](const ScheduledOp& a, const ScheduledOp& b) {
      return a.rotation.source_index < b.rotation.source_index;
    });
    result.steps.push_back(std::move(step));

    std::sort(scheduled_nodes.begin(), scheduled_nodes.end());
    std::vector<std::uint32_t> next_roots;
    for (std::uint32_t r : roots) {
      if (!std::binary_search(scheduled_nodes.begin(), scheduled_nodes.end(), r)) {
        next_roots.push_back(r);
      }
    }
    for (std::uint32_t node : scheduled_nodes) {
      for (std::uint32_t succ : dep.successors[node]) {
        if (--indegree[succ] == 0) next_roots.push_back(succ);
      }
    }
    roots = std::move(next_roots);
    remaining -= scheduled_nodes.size();
  }

  Report report;
  report.en = result.steps.size();
  report.lb = c.ops.empty() ? 0 : metrics.d_max;
  report.ub = c.ops.size();
  report.t_dep_s = t_dep;
  report.t_sch_s = seconds_since(sch_start);
  report.t_tot_s = report.t_dep_s + report.t_sch_s;
  return {std::move(result), report};
}

double compute_gap(std::size_t s, std::size_t s_star) {
  if (s_star == 0) {
    throw DomainError("gap reference solution must be positive");
  }
  return 100.0 * (static_cast<double>(s) - static_cast<double>(s_star)) /
         static_cast<double>(s_star);
}

}  // namespace lss
