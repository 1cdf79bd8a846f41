#pragma once

#include <cstddef>
#include <vector>

#include "lss/pauli.hpp"

namespace lss {

/// Symplectic representation of a Clifford operator C as the images of the 2n
/// Pauli generators under conjugation. Rows alternate X_1, Z_1, ..., X_n, Z_n,
/// with row k holding C * G_k * C^dagger.
class CliffordTableau {
 public:
  /// Tableau of the identity: every row equals its generator, phases zero.
  static CliffordTableau identity(std::size_t num_qubits);

  /// Tableau of a single +-pi/4 or +-pi/2 rotation. A generator that commutes
  /// with the rotation axis is fixed; otherwise a pi/4 rotation about P maps
  /// it to +-i*P*Q and a pi/2 rotation flips its sign.
  static CliffordTableau from_rotation(const Rotation& r);

  std::size_t num_qubits() const { return n_; }

  const PauliString& x_row(std::size_t qubit) const { return rows_[2 * qubit]; }
  const PauliString& z_row(std::size_t qubit) const { return rows_[2 * qubit + 1]; }
  const std::vector<PauliString>& rows() const { return rows_; }

  /// True iff rows preserve the generator commutation structure (conjugated
  /// X_j and Z_j anticommute, all other pairs commute).
  bool is_symplectic() const;

  friend bool operator==(const CliffordTableau& a, const CliffordTableau& b) = default;
  friend CliffordTableau multiply(const CliffordTableau& u, const CliffordTableau& v);

 private:
  CliffordTableau() = default;

  std::size_t n_ = 0;
  std::vector<PauliString> rows_;
};

/// Image C * P * C^dagger of a Pauli operator under conjugation. The result is
/// accumulated row by row with exact phase tracking via multiply_pauli; an
/// odd residual i-count signals a corrupt tableau and throws
/// InvariantViolation.
PauliString conjugate(const CliffordTableau& c, const PauliString& p);

/// Tableau of the operator product U*V: row k of the result is
/// conjugate(U, row k of V).
CliffordTableau multiply(const CliffordTableau& u, const CliffordTableau& v);

}  // namespace lss
