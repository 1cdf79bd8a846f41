#include "lss/tableau.hpp"

#include <bit>
#include <utility>

namespace lss {

namespace {

std::size_t popcount_and(const std::vector<std::uint64_t>& a,
                         const std::vector<std::uint64_t>& b) {
  std::size_t total = 0;
  for (std::size_t w = 0; w < a.size(); ++w) {
    total += static_cast<std::size_t>(std::popcount(a[w] & b[w]));
  }
  return total;
}

}  // namespace

CliffordTableau CliffordTableau::identity(std::size_t num_qubits) {
  if (num_qubits == 0) {
    throw DimensionError("a tableau needs at least one qubit");
  }
  CliffordTableau t;
  t.n_ = num_qubits;
  t.rows_.reserve(2 * num_qubits);
  for (std::size_t q = 0; q < num_qubits; ++q) {
    PauliString x_row(num_qubits);
    x_row.set_x(q, true);
    PauliString z_row(num_qubits);
    z_row.set_z(q, true);
    t.rows_.push_back(std::move(x_row));
    t.rows_.push_back(std::move(z_row));
  }
  return t;
}

CliffordTableau CliffordTableau::from_rotation(const Rotation& r) {
  if (!is_clifford(r.angle)) {
    throw ValidationError("only +-pi/4 and +-pi/2 rotations have a tableau; got angle '" +
                          std::string(angle_token(r.angle)) + "'");
  }
  const PauliString& axis = r.pauli;
  CliffordTableau t = identity(axis.num_qubits());
  for (auto& row : t.rows_) {
    if (commutes(axis, row)) continue;
    if (is_pi2(r.angle)) {
      row.set_phase(!row.phase());
      continue;
    }
    // exp(+-i pi/4 P) Q exp(-+i pi/4 P) = +-i P Q for anticommuting P, Q.
    auto [phi, product] = multiply_pauli(axis, row);
    const int rotation_exp = is_negative(r.angle) ? 3 : 1;
    const UnitPhase total = UnitPhase::from_exponent(rotation_exp) * phi;
    if (!total.is_real()) {
      throw InvariantViolation("pi/4 conjugation produced a non-Hermitian row");
    }
    product.set_phase(total.sign() < 0);
    row = std::move(product);
  }
  return t;
}

bool CliffordTableau::is_symplectic() const {
  for (std::size_t a = 0; a < rows_.size(); ++a) {
    for (std::size_t b = a + 1; b < rows_.size(); ++b) {
      // X_q and Z_q anticommute; every other generator pair commutes.
      const bool want_anticommute = (a / 2 == b / 2);
      if (commutes(rows_[a], rows_[b]) == want_anticommute) return false;
    }
  }
  return true;
}

PauliString conjugate(const CliffordTableau& c, const PauliString& p) {
  if (c.num_qubits() != p.num_qubits()) {
    throw DimensionError("tableau acts on " + std::to_string(c.num_qubits()) +
                         " qubits but the Pauli string has " + std::to_string(p.num_qubits()));
  }
  // mat(P) = (-1)^phase * i^{|x.z|} * Prod_j X_j^{x_j} * Prod_j Z_j^{z_j}, so
  // conjugating factor-by-factor and accumulating the exact unit phase gives
  // C P C^dag = i^exp * mat(acc). Hermiticity forces the exponent even.
  int exp = (p.phase() ? 2 : 0) +
            static_cast<int>(popcount_and(p.x_words(), p.z_words()) % 4);
  PauliString acc(p.num_qubits());
  for (std::size_t q = 0; q < p.num_qubits(); ++q) {
    if (!p.x(q)) continue;
    auto [phi, next] = multiply_pauli(acc, c.x_row(q));
    exp += phi.exponent();
    acc = std::move(next);
  }
  for (std::size_t q = 0; q < p.num_qubits(); ++q) {
    if (!p.z(q)) continue;
    auto [phi, next] = multiply_pauli(acc, c.z_row(q));
    exp += phi.exponent();
    acc = std::move(next);
  }
  const UnitPhase total = UnitPhase::from_exponent(exp);
  if (!total.is_real()) {
    throw InvariantViolation("conjugation left an odd i-count; tableau is corrupt");
  }
  acc.set_phase(total.sign() < 0);
  return acc;
}

CliffordTableau multiply(const CliffordTableau& u, const CliffordTableau& v) {
  if (u.num_qubits() != v.num_qubits()) {
    throw DimensionError("tableau qubit counts differ: " + std::to_string(u.num_qubits()) +
                         " vs " + std::to_string(v.num_qubits()));
  }
  CliffordTableau result = v;
  for (auto& row : result.rows_) {
    row = conjugate(u, row);
  }
  return result;
}

}  // namespace lss
