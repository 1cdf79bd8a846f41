#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lss/dependency.hpp"
#include "lss/layout.hpp"
#include "lss/pauli.hpp"
#include "lss/router.hpp"

namespace lss {

struct ScheduledOp {
  Rotation rotation;
  RoutedTree tree;
};

/// One schedule: time-ordered steps, each a set of operations with
/// element-disjoint routed trees.
struct Schedule {
  std::vector<std::vector<ScheduledOp>> steps;
  LayoutSpec layout;
  DependencyRule rule = DependencyRule::Serial;
};

/// Metrics of a scheduling run. EN is the expected logical cycle count (the
/// number of time steps), bounded below by the dependency-graph depth and
/// above by the circuit length.
struct Report {
  std::size_t en = 0;
  std::size_t lb = 0;
  std::size_t ub = 0;
  double t_dep_s = 0.0;
  double t_sch_s = 0.0;
  double t_tot_s = 0.0;
  std::optional<double> gap_pct;
};

struct ScheduleOptions {
  std::optional<std::uint64_t> order_seed;  // shuffles the per-step candidate order
  bool allow_shared_data = false;
  AssignPolicy assign = AssignPolicy::Sequential;
  std::uint64_t assign_seed = 0;
  bool use_route_cache = true;
  std::size_t cache_entries = 1 << 20;
};

struct ScheduleResult {
  Schedule schedule;
  Report report;
};

/// Earliest-available-first scheduling: while the dependency graph is not
/// empty, take its root nodes as candidates, pack a forest of routed trees,
/// emit the packed operations as one time step and remove them. Storage and
/// ancillary availability reset every step. Throws SchedulingError (naming
/// the operation) when a step cannot place any candidate.
ScheduleResult schedule(const Circuit& c, const LayoutGraph& g, DependencyRule rule,
                        const ScheduleOptions& opts = {});

/// Percentage gap 100 * (s - s_star) / s_star of a solution against a
/// reference. Throws DomainError when s_star is zero.
double compute_gap(std::size_t s, std::size_t s_star);

}  // namespace lss
