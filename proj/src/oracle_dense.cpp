#include <cmath>

#include "lss/oracle.hpp"

namespace lss::oracle {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

Matrix pauli_letter(char letter) {
  Matrix m(2, 2);
  switch (letter) {
    case 'I':
      m << 1, 0, 0, 1;
      return m;
    case 'X':
      m << 0, 1, 1, 0;
      return m;
    case 'Y':
      m << 0, -kI, kI, 0;
      return m;
    case 'Z':
      m << 1, 0, 0, -1;
      return m;
    default:
      throw ValidationError(std::string("unknown Pauli letter '") + letter + "'");
  }
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    }
  }
  return out;
}

double angle_radians(RotationAngle a) {
  switch (a) {
    case RotationAngle::PiOver8:
      return M_PI / 8.0;
    case RotationAngle::MinusPiOver8:
      return -M_PI / 8.0;
    case RotationAngle::PiOver4:
      return M_PI / 4.0;
    case RotationAngle::MinusPiOver4:
      return -M_PI / 4.0;
    case RotationAngle::PiOver2:
      return M_PI / 2.0;
    case RotationAngle::MinusPiOver2:
      return -M_PI / 2.0;
    case RotationAngle::Measurement:
      break;
  }
  throw ValidationError("a measurement has no rotation angle");
}

void check_dense_capacity(std::size_t n) {
  if (n > 6) {
    throw CapacityError("dense semantics capped at 6 qubits, got " + std::to_string(n));
  }
  if (n == 0) {
    throw ValidationError("dense semantics need at least one qubit");
  }
}

}  // namespace

Matrix dense_pauli(const PauliString& p) {
  check_dense_capacity(p.num_qubits());
  Matrix m = Matrix::Identity(1, 1);
  for (std::size_t q = 0; q < p.num_qubits(); ++q) {
    m = kron(m, pauli_letter(p.pauli_at(q)));
  }
  if (p.phase()) m = -m;
  return m;
}

Matrix dense_rotation(const Rotation& r) {
  if (is_measurement(r.angle)) {
    throw ValidationError("measurements have no dense unitary");
  }
  const double theta = angle_radians(r.angle);
  const Matrix p = dense_pauli(r.pauli);
  const Eigen::Index dim = p.rows();
  return std::cos(theta) * Matrix::Identity(dim, dim) + kI * std::sin(theta) * p;
}

Matrix circuit_unitary(const Circuit& c) {
  check_dense_capacity(c.n);
  const Eigen::Index dim = Eigen::Index{1} << c.n;
  Matrix u = Matrix::Identity(dim, dim);
  for (const Rotation& op : c.ops) {
    if (is_measurement(op.angle)) {
      throw ValidationError("circuit_unitary cannot include measurements");
    }
    u = u * dense_rotation(op);
  }
  return u;
}

Matrix dense_gate(const GateOp& gate, std::size_t num_qubits) {
  check_dense_capacity(num_qubits);
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  if (gate.kind == GateKind::CNOT) {
    const std::size_t control = gate.targets[0];
    const std::size_t target = gate.targets[1];
    Matrix m = Matrix::Zero(dim, dim);
    for (Eigen::Index basis = 0; basis < dim; ++basis) {
      // Qubit 0 occupies the highest-order bit.
      const auto bit_of = [&](std::size_t q) {
        return (basis >> (num_qubits - 1 - q)) & 1;
      };
      Eigen::Index image = basis;
      if (bit_of(control)) {
        image = basis ^ (Eigen::Index{1} << (num_qubits - 1 - target));
      }
      m(image, basis) = 1;
    }
    return m;
  }

  Matrix local(2, 2);
  const std::complex<double> e_i_pi_4 = std::exp(kI * (M_PI / 4.0));
  switch (gate.kind) {
    case GateKind::X:
    case GateKind::Y:
    case GateKind::Z:
      local = pauli_letter(gate_name(gate.kind)[0]);
      break;
    case GateKind::H:
      local << 1, 1, 1, -1;
      local /= std::sqrt(2.0);
      break;
    case GateKind::S:
      local << 1, 0, 0, kI;
      break;
    case GateKind::Sdg:
      local << 1, 0, 0, -kI;
      break;
    case GateKind::T:
      local << 1, 0, 0, e_i_pi_4;
      break;
    case GateKind::Tdg:
      local << 1, 0, 0, std::conj(e_i_pi_4);
      break;
    case GateKind::CNOT:
      throw InvariantViolation("unreachable");
  }
  Matrix m = Matrix::Identity(1, 1);
  for (std::size_t q = 0; q < num_qubits; ++q) {
    m = kron(m, q == gate.targets[0] ? local : Matrix::Identity(2, 2));
  }
  return m;
}

Matrix gate_circuit_unitary(const std::vector<GateOp>& gates, std::size_t num_qubits) {
  check_dense_capacity(num_qubits);
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  Matrix u = Matrix::Identity(dim, dim);
  for (const GateOp& gate : gates) {
    u = u * dense_gate(gate, num_qubits);
  }
  return u;
}

bool approx_equal_up_to_phase(const Matrix& a, const Matrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  Eigen::Index r = 0;
  Eigen::Index c = 0;
  a.cwiseAbs().maxCoeff(&r, &c);
  const double pivot = std::abs(a(r, c));
  if (pivot < tol) {
    return b.cwiseAbs().maxCoeff() < tol;
  }
  const std::complex<double> lambda = b(r, c) / a(r, c);
  if (std::abs(std::abs(lambda) - 1.0) > tol) return false;
  return ((lambda * a) - b).cwiseAbs().maxCoeff() <= tol;
}

Matrix tableau_unitary(const CliffordTableau& tableau) {
  const std::size_t n = tableau.num_qubits();
  if (n > 4) {
    throw CapacityError("tableau_unitary capped at 4 qubits, got " + std::to_string(n));
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  const Eigen::Index dim2 = dim * dim;
  // U G_k = R_k U  <=>  (G_k^T (x) I - I (x) R_k) vec(U) = 0.
  Matrix constraints(2 * static_cast<Eigen::Index>(n) * dim2, dim2);
  for (std::size_t q = 0; q < n; ++q) {
    for (bool x_generator : {true, false}) {
      PauliString generator(n);
      if (x_generator) {
        generator.set_x(q, true);
      } else {
        generator.set_z(q, true);
      }
      const Matrix g = dense_pauli(generator);
      const Matrix r = dense_pauli(x_generator ? tableau.x_row(q) : tableau.z_row(q));
      const Matrix block =
          kron(g.transpose(), Matrix::Identity(dim, dim)) - kron(Matrix::Identity(dim, dim), r);
      constraints.middleRows((2 * q + (x_generator ? 0 : 1)) * dim2, dim2) = block;
    }
  }
  Eigen::JacobiSVD<Matrix> svd(constraints, Eigen::ComputeThinV);
  const auto& singular = svd.singularValues();
  if (singular(dim2 - 1) > 1e-8 || (dim2 > 1 && singular(dim2 - 2) < 1e-8)) {
    throw InvariantViolation("tableau does not determine a unique unitary");
  }
  Eigen::VectorXcd vec = svd.matrixV().col(dim2 - 1);
  Matrix u = Eigen::Map<Matrix>(vec.data(), dim, dim);
  // Nullspace scaling: normalize to a unitary.
  const double scale = std::sqrt((u.adjoint() * u).trace().real() / static_cast<double>(dim));
  u /= scale;
  if (((u.adjoint() * u) - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() > 1e-8) {
    throw InvariantViolation("reconstructed tableau operator is not unitary");
  }
  return u;
}

bool tableau_matches(const CliffordTableau& tableau, const Matrix& u, double tol) {
  const std::size_t n = tableau.num_qubits();
  check_dense_capacity(n);
  const Matrix u_dag = u.adjoint();
  for (std::size_t q = 0; q < n; ++q) {
    for (bool x_generator : {true, false}) {
      PauliString generator(n);
      if (x_generator) {
        generator.set_x(q, true);
      } else {
        generator.set_z(q, true);
      }
      const Matrix conjugated = u * dense_pauli(generator) * u_dag;
      const Matrix expected =
          dense_pauli(x_generator ? tableau.x_row(q) : tableau.z_row(q));
      if ((conjugated - expected).cwiseAbs().maxCoeff() > tol) return false;
    }
  }
  return true;
}

}  // namespace lss::oracle
