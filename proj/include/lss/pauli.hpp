#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lss/errors.hpp"

namespace lss {

/// A unit complex scalar i^k with k in {0,1,2,3}.
class UnitPhase {
 public:
  constexpr UnitPhase() = default;

  static constexpr UnitPhase from_exponent(int k) {
    UnitPhase p;
    p.exp_ = static_cast<std::uint8_t>(((k % 4) + 4) % 4);
    return p;
  }
  static constexpr UnitPhase one() { return from_exponent(0); }
  static constexpr UnitPhase i() { return from_exponent(1); }
  static constexpr UnitPhase minus_one() { return from_exponent(2); }
  static constexpr UnitPhase minus_i() { return from_exponent(3); }

  constexpr int exponent() const { return exp_; }
  constexpr bool is_real() const { return (exp_ & 1u) == 0; }
  /// Sign of a real phase: +1 for i^0, -1 for i^2.
  constexpr int sign() const { return exp_ == 0 ? 1 : -1; }

  constexpr UnitPhase operator*(UnitPhase rhs) const {
    return from_exponent(exp_ + rhs.exp_);
  }
  std::complex<double> value() const {
    static constexpr double re[4] = {1.0, 0.0, -1.0, 0.0};
    static constexpr double im[4] = {0.0, 1.0, 0.0, -1.0};
    return {re[exp_], im[exp_]};
  }

  friend constexpr bool operator==(UnitPhase a, UnitPhase b) = default;

 private:
  std::uint8_t exp_ = 0;
};

/// A Pauli operator on n qubits in symplectic form: a sign bit (-1)^phase plus
/// X and Z bit vectors. Qubit j carries I/X/Y/Z for (x_j,z_j) =
/// (0,0)/(1,0)/(1,1)/(0,1); the factor i in Y = iXZ is recovered from |x.z|
/// counts when needed, never stored. Bits are packed 64 per word so the
/// commutation test runs in O(n/64).
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::size_t num_qubits);

  /// Parses "IXYZ..." with an optional leading '-'.
  static PauliString from_string(std::string_view text);

  std::size_t num_qubits() const { return n_; }

  bool phase() const { return phase_; }
  void set_phase(bool phase) { phase_ = phase; }

  bool x(std::size_t qubit) const { return bit(x_, qubit); }
  bool z(std::size_t qubit) const { return bit(z_, qubit); }
  void set_x(std::size_t qubit, bool value) { set_bit(x_, qubit, value); }
  void set_z(std::size_t qubit, bool value) { set_bit(z_, qubit, value); }

  char pauli_at(std::size_t qubit) const;
  void set_pauli(std::size_t qubit, char pauli);

  bool touches(std::size_t qubit) const { return x(qubit) || z(qubit); }
  bool is_identity() const;
  /// Number of non-identity sites.
  std::size_t weight() const;
  /// Indices of non-identity sites, ascending.
  std::vector<std::size_t> support() const;

  std::string str() const;

  const std::vector<std::uint64_t>& x_words() const { return x_; }
  const std::vector<std::uint64_t>& z_words() const { return z_; }

  friend bool operator==(const PauliString& a, const PauliString& b) = default;
  friend std::pair<UnitPhase, PauliString> multiply_pauli(const PauliString& p,
                                                          const PauliString& q);

 private:
  static bool bit(const std::vector<std::uint64_t>& words, std::size_t j) {
    return (words[j >> 6] >> (j & 63)) & 1u;
  }
  static void set_bit(std::vector<std::uint64_t>& words, std::size_t j, bool value) {
    if (value) {
      words[j >> 6] |= std::uint64_t{1} << (j & 63);
    } else {
      words[j >> 6] &= ~(std::uint64_t{1} << (j & 63));
    }
  }

  std::size_t n_ = 0;
  bool phase_ = false;
  std::vector<std::uint64_t> x_;
  std::vector<std::uint64_t> z_;
};

/// True iff the symplectic product x_P.z_Q + x_Q.z_P vanishes mod 2.
bool commutes(const PauliString& p, const PauliString& q);

/// True iff the supports of P and Q share no qubit.
bool trivially_disjoint(const PauliString& p, const PauliString& q);

/// Matrix product P*Q decomposed as phi*R with R a pure Pauli string
/// (phase bit zero) whose bit vectors are the elementwise XOR.
std::pair<UnitPhase, PauliString> multiply_pauli(const PauliString& p, const PauliString& q);

/// Rotation angles admitted by the pipeline; Measurement marks a qubit
/// measurement rather than a rotation.
enum class RotationAngle : std::uint8_t {
  PiOver8,
  MinusPiOver8,
  PiOver4,
  MinusPiOver4,
  PiOver2,
  MinusPiOver2,
  Measurement,
};

constexpr bool is_pi8(RotationAngle a) {
  return a == RotationAngle::PiOver8 || a == RotationAngle::MinusPiOver8;
}
constexpr bool is_pi4(RotationAngle a) {
  return a == RotationAngle::PiOver4 || a == RotationAngle::MinusPiOver4;
}
constexpr bool is_pi2(RotationAngle a) {
  return a == RotationAngle::PiOver2 || a == RotationAngle::MinusPiOver2;
}
constexpr bool is_clifford(RotationAngle a) { return is_pi4(a) || is_pi2(a); }
constexpr bool is_measurement(RotationAngle a) { return a == RotationAngle::Measurement; }
constexpr bool is_negative(RotationAngle a) {
  return a == RotationAngle::MinusPiOver8 || a == RotationAngle::MinusPiOver4 ||
         a == RotationAngle::MinusPiOver2;
}

/// Flips the sign of a rotation angle; Measurement is returned unchanged.
RotationAngle negated(RotationAngle a);

std::string_view angle_token(RotationAngle a);
std::optional<RotationAngle> parse_angle_token(std::string_view token);

/// One circuit operation: a Pauli rotation exp(i*theta*P) or a measurement.
struct Rotation {
  RotationAngle angle = RotationAngle::PiOver8;
  PauliString pauli;
  std::size_t source_index = 0;
};

/// An ordered sequence of rotations/measurements on n qubits.
struct Circuit {
  std::size_t n = 0;
  std::vector<Rotation> ops;

  std::size_t pi8_count() const;
  /// Throws ValidationError on dimension mismatches, identity Paulis, or
  /// non-increasing source indices.
  void validate() const;
};

}  // namespace lss
