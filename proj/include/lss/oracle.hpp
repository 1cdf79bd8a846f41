#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "lss/circuit_io.hpp"
#include "lss/dependency.hpp"
#include "lss/layout.hpp"
#include "lss/pauli.hpp"
#include "lss/router.hpp"
#include "lss/tableau.hpp"

namespace lss::oracle {

using Matrix = Eigen::MatrixXcd;

/// Dense matrix of a Pauli string, sign included; qubit 0 is the leftmost
/// tensor factor.
Matrix dense_pauli(const PauliString& p);

/// Dense matrix exp(i*theta*P) of a rotation. Measurements are rejected.
Matrix dense_rotation(const Rotation& r);

/// Ordered product of the circuit's rotation matrices with the first
/// operation leftmost, so a transpiled circuit satisfies
/// product(input) == product(output) * U(tableau). Capped at 6 qubits;
/// measurement operations are rejected.
Matrix circuit_unitary(const Circuit& c);

/// Dense matrix of a single Clifford+T gate embedded in n qubits.
Matrix dense_gate(const GateOp& gate, std::size_t num_qubits);

/// Ordered product of gate matrices, first gate leftmost.
Matrix gate_circuit_unitary(const std::vector<GateOp>& gates, std::size_t num_qubits);

/// True iff A and B are equal up to a global unit phase within tol.
bool approx_equal_up_to_phase(const Matrix& a, const Matrix& b, double tol);

/// True iff u conjugates every Pauli generator onto the corresponding
/// tableau row, signs included.
bool tableau_matches(const CliffordTableau& tableau, const Matrix& u, double tol);

/// Reconstructs a unitary consistent with the tableau (unique up to global
/// phase) from the nullspace of the stacked constraints U*G_k = R_k*U.
/// Capped at 4 qubits.
Matrix tableau_unitary(const CliffordTableau& tableau);

struct ExactForest {
  std::vector<RoutedTree> trees;  // one per candidate, in candidate order
  std::size_t bus_count = 0;
};

/// Exhaustive minimum-bus element-disjoint forest for a pack of candidate
/// rotations, honoring single-edge terminal attachment, exactly one storage
/// (pi/8) or ancillary (pi/4) leaf, bus exclusivity and tree acyclicity.
/// Returns std::nullopt when the pack is infeasible. Desk scale only: at
/// most 4 candidates and ~64 vertices, else CapacityError.
std::optional<ExactForest> exact_min_bus(std::span<const Rotation> candidates,
                                         std::span<const VertexId> qubit_map,
                                         const LayoutGraph& g,
                                         bool allow_shared_data = false);

/// Exact minimum number of time steps over all precedence-feasible
/// partitions of the circuit into routable packs (breadth-first search over
/// scheduled-set states with memoized pack feasibility). Desk scale only: at
/// most 12 operations, else CapacityError.
std::size_t exact_min_steps(const Circuit& c, const LayoutGraph& g, DependencyRule rule,
                            bool allow_shared_data = false);

/// Replays the packing constraints on an already-routed forest: terminal and
/// special-vertex leaf degrees, bus-only interiors, per-tree acyclicity and
/// connectivity, bus exclusivity across trees, and data-vertex exclusivity
/// unless shared data is allowed. Returns an explanation for the first
/// violated constraint, or std::nullopt when the forest is feasible.
std::optional<std::string> check_forest(std::span<const Rotation> rotations,
                                        std::span<const RoutedTree> trees,
                                        std::span<const VertexId> qubit_map,
                                        const LayoutGraph& g, bool allow_shared_data = false);

}  // namespace lss::oracle
