#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include "lss/circuit_io.hpp"
#include "lss/layout.hpp"
#include "lss/pauli.hpp"
#include "lss/router.hpp"

namespace lss::test {

inline PauliString random_pauli(std::mt19937_64& rng, std::size_t n, bool allow_identity = false,
                                bool random_sign = false) {
  std::uniform_int_distribution<int> letter(0, 3);
  PauliString p(n);
  do {
    for (std::size_t q = 0; q < n; ++q) {
      p.set_pauli(q, "IXYZ"[letter(rng)]);
    }
  } while (!allow_identity && p.is_identity());
  if (random_sign) {
    p.set_phase(rng() & 1);
  }
  return p;
}

inline std::vector<GateOp> random_gate_circuit(std::mt19937_64& rng, std::size_t n,
                                               std::size_t num_gates) {
  std::uniform_int_distribution<int> kind_pick(0, 8);
  std::uniform_int_distribution<std::size_t> qubit_pick(0, n - 1);
  std::vector<GateOp> gates;
  gates.reserve(num_gates);
  for (std::size_t k = 0; k < num_gates; ++k) {
    GateOp gate;
    gate.kind = static_cast<GateKind>(kind_pick(rng));
    if (gate.kind == GateKind::CNOT && n < 2) {
      gate.kind = GateKind::T;
    }
    gate.targets.push_back(qubit_pick(rng));
    if (gate.kind == GateKind::CNOT) {
      std::size_t other = qubit_pick(rng);
      while (other == gate.targets[0]) other = qubit_pick(rng);
      gate.targets.push_back(other);
    }
    gates.push_back(std::move(gate));
  }
  return gates;
}

/// Random pi/8|pi/4|M circuit with supports of the given maximum weight.
inline Circuit random_rotation_circuit(std::mt19937_64& rng, std::size_t n, std::size_t num_ops,
                                       std::size_t max_weight, double pi4_fraction = 0.0,
                                       double measure_fraction = 0.0) {
  std::uniform_int_distribution<std::size_t> weight_pick(1, std::min(max_weight, n));
  std::uniform_int_distribution<std::size_t> qubit_pick(0, n - 1);
  std::uniform_int_distribution<int> letter(0, 2);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  Circuit c;
  c.n = n;
  for (std::size_t k = 0; k < num_ops; ++k) {
    Rotation op;
    op.source_index = k;
    const double draw = coin(rng);
    if (draw < measure_fraction) {
      op.angle = RotationAngle::Measurement;
    } else if (draw < measure_fraction + pi4_fraction) {
      op.angle = (rng() & 1) ? RotationAngle::PiOver4 : RotationAngle::MinusPiOver4;
    } else {
      op.angle = (rng() & 1) ? RotationAngle::PiOver8 : RotationAngle::MinusPiOver8;
    }
    op.pauli = PauliString(n);
    const std::size_t weight = weight_pick(rng);
    while (op.pauli.weight() < weight) {
      op.pauli.set_pauli(qubit_pick(rng), "XYZ"[letter(rng)]);
    }
    c.ops.push_back(std::move(op));
  }
  return c;
}

/// Reference single-source BFS with the same interior rule as the router.
inline std::optional<std::size_t> reference_path_length(const LayoutGraph& g, VertexId s,
                                                        VertexId t, const Occupancy& occ) {
  std::vector<std::size_t> dist(g.vertex_count(), static_cast<std::size_t>(-1));
  std::vector<VertexId> queue{s};
  dist[s] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const VertexId u = queue[head];
    for (VertexId w : g.neighbors(u)) {
      if (dist[w] != static_cast<std::size_t>(-1)) continue;
      if (w == t) return dist[u] + 1;
      if (g.kind(w) != VertexKind::Bus || occ.is_blocked(w)) continue;
      dist[w] = dist[u] + 1;
      queue.push_back(w);
    }
  }
  return std::nullopt;
}

}  // namespace lss::test
