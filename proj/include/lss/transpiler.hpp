#pragma once

#include "lss/pauli.hpp"
#include "lss/tableau.hpp"

namespace lss {

struct TranspileResult {
  Circuit circuit;
  CliffordTableau tableau;
};

/// Removes every Clifford rotation from the circuit in a single pass.
/// Cliffords fold into an accumulated tableau C; each pi/8 rotation or
/// measurement that follows is rewritten with conjugate(C, pauli). A
/// conjugated Pauli with its sign bit set flips a rotation's angle sign;
/// measurements keep the sign on the Pauli. Relative order is preserved and
/// the final accumulator is returned alongside the pure pi/8+M circuit.
TranspileResult transpile(const Circuit& c);

/// Greedily forms maximal leading layers of mutually commuting pi/8
/// rotations (measurements close a layer) and combines pairs with identical
/// Pauli strings: equal angle signs fuse into one +-pi/4 rotation, opposite
/// signs cancel. Generated Cliffords are emitted at the layer boundary ahead
/// of the surviving rotations; source indices are renumbered sequentially.
/// Requires a transpile output (only +-pi/8 and M operations).
Circuit merge_commuting_layers(const Circuit& c);

/// Alternates transpile and merge_commuting_layers until a full round leaves
/// the pi/8 count unchanged. Returns the final circuit and the product of the
/// per-round tableaux.
TranspileResult optimize_fixpoint(const Circuit& c);

}  // namespace lss
