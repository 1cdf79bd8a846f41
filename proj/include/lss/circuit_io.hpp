#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lss/pauli.hpp"
#include "lss/scheduler.hpp"

namespace lss {

enum class GateKind : std::uint8_t { X, Y, Z, H, S, Sdg, T, Tdg, CNOT };

std::string_view gate_name(GateKind kind);

/// One Clifford+T gate; CNOT takes two distinct targets, all others one.
struct GateOp {
  GateKind kind = GateKind::T;
  std::vector<std::size_t> targets;
};

/// Rotation circuit text format: a `qubits <N>` header, then one operation
/// per line as `<angle> <paulistring>` with angle from {pi/8, -pi/8, pi/4,
/// -pi/4, pi/2, -pi/2, M}. A '-' prefix on the Pauli string carries a
/// measurement sign; '#' starts a comment. Throws ParseError with the
/// offending line number.
Circuit parse_rotation_circuit(const std::string& text);
std::string emit_circuit(const Circuit& c);

/// Gate circuit text format: `qubits <N>` header, then `<GATE> <q>[ <q2>]`
/// lines.
std::vector<GateOp> parse_gate_circuit(const std::string& text, std::size_t& num_qubits);
std::string emit_gate_circuit(const std::vector<GateOp>& gates, std::size_t num_qubits);

/// Replaces each Clifford+T gate by its Pauli-rotation sequence (T and S by
/// single Z rotations, Pauli gates by pi/2 rotations, H by a three-rotation
/// pi/4 sequence, CNOT by a two-qubit ZX pi/4 rotation plus single-qubit
/// -pi/4 rotations). Every per-gate sequence matches the gate's unitary up to
/// global phase.
Circuit convert_gates(const std::vector<GateOp>& gates, std::size_t num_qubits);

/// Parameters of the random-circuit generator: m pi/8 rotations over N
/// qubits, mean support fraction n_pct, then N single-qubit Z measurements.
struct RandomSpec {
  std::size_t m = 1;
  std::size_t n = 1;
  double n_pct = 0.5;
  std::uint64_t seed = 0;
};

/// Deterministic random circuit: per rotation the support size is a normal
/// draw round(N(n*n_pct, sd 2)) clamped to [1, n]; support qubits are chosen
/// without replacement and each gets X, Y or Z uniformly.
Circuit gen_random(const RandomSpec& spec);

/// Schedule/report JSON with the time_steps / metrics shape used by the CLI.
std::string emit_schedule_json(const Schedule& schedule, const Report& report);

}  // namespace lss
