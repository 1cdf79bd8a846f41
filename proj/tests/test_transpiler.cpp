#include <doctest.h>

#include <chrono>
#include <random>

#include "lss/circuit_io.hpp"
#include "lss/oracle.hpp"
#include "lss/transpiler.hpp"
#include "test_util.hpp"

using namespace lss;

namespace {

Circuit rotation_circuit(std::size_t n,
                         std::initializer_list<std::pair<const char*, RotationAngle>> ops) {
  Circuit c;
  c.n = n;
  for (const auto& [pauli, angle] : ops) {
    Rotation r;
    r.angle = angle;
    r.pauli = PauliString::from_string(pauli);
    r.source_index = c.ops.size();
    c.ops.push_back(std::move(r));
  }
  return c;
}

/// Rotation product (measurements dropped) and the frame-pulled measurement
/// observables L_k * P_k * L_k^dagger, where L_k is the product of the
/// rotations preceding the k-th measurement. Both are invariant under
/// transpilation and layer merging.
struct CircuitSemantics {
  oracle::Matrix product;
  std::vector<oracle::Matrix> observables;
};

CircuitSemantics circuit_semantics(const Circuit& c) {
  const Eigen::Index dim = Eigen::Index{1} << c.n;
  CircuitSemantics out{oracle::Matrix::Identity(dim, dim), {}};
  for (const Rotation& op : c.ops) {
    if (is_measurement(op.angle)) {
      out.observables.push_back(out.product * oracle::dense_pauli(op.pauli) *
                                out.product.adjoint());
    } else {
      out.product = out.product * oracle::dense_rotation(op);
    }
  }
  return out;
}

/// Checks product(input) == product(output) * U(tableau) up to global phase
/// and that every measurement observable is preserved exactly.
void check_equivalence(const Circuit& input, const Circuit& output,
                       const CliffordTableau& tableau, double tol = 1e-9) {
  const CircuitSemantics in = circuit_semantics(input);
  const CircuitSemantics out = circuit_semantics(output);
  const oracle::Matrix u = oracle::tableau_unitary(tableau);
  REQUIRE(oracle::approx_equal_up_to_phase(out.product * u, in.product, tol));
  REQUIRE(in.observables.size() == out.observables.size());
  for (std::size_t k = 0; k < in.observables.size(); ++k) {
    REQUIRE((in.observables[k] - out.observables[k]).cwiseAbs().maxCoeff() < tol);
  }
}

}  // namespace

TEST_CASE("transpiling a pure T circuit is the identity") {
  const auto c = rotation_circuit(
      1, {{"Z", RotationAngle::PiOver8}, {"Z", RotationAngle::PiOver8}});
  const auto [out, tableau] = transpile(c);
  CHECK(out.ops.size() == 2);
  CHECK(out.ops[0].pauli == c.ops[0].pauli);
  CHECK(out.ops[0].angle == RotationAngle::PiOver8);
  CHECK(tableau == CliffordTableau::identity(1));
}

TEST_CASE("Z pi/4 commutes past Z pi/8 unchanged") {
  Circuit c = rotation_circuit(1, {{"Z", RotationAngle::PiOver4},
                                   {"Z", RotationAngle::PiOver8},
                                   {"Z", RotationAngle::Measurement}});
  const auto [out, tableau] = transpile(c);
  REQUIRE(out.ops.size() == 2);
  CHECK(out.ops[0].angle == RotationAngle::PiOver8);
  CHECK(out.ops[0].pauli == PauliString::from_string("Z"));
  CHECK(out.ops[1].angle == RotationAngle::Measurement);
  CHECK(out.ops[1].pauli == PauliString::from_string("Z"));
  CHECK(tableau ==
        CliffordTableau::from_rotation(Rotation{RotationAngle::PiOver4,
                                                PauliString::from_string("Z"), 0}));
  check_equivalence(c, out, tableau);
}

TEST_CASE("an H prefix turns Z rotations into X rotations") {
  Circuit c;
  c.n = 1;
  const Circuit h = convert_gates({GateOp{GateKind::H, {0}}}, 1);
  c.ops = h.ops;
  Rotation t;
  t.angle = RotationAngle::PiOver8;
  t.pauli = PauliString::from_string("Z");
  t.source_index = c.ops.size();
  c.ops.push_back(t);
  Rotation m;
  m.angle = RotationAngle::Measurement;
  m.pauli = PauliString::from_string("Z");
  m.source_index = c.ops.size();
  c.ops.push_back(m);

  const auto [out, tableau] = transpile(c);
  REQUIRE(out.ops.size() == 2);
  CHECK(is_pi8(out.ops[0].angle));
  CHECK(out.ops[0].pauli.pauli_at(0) == 'X');
  CHECK(is_measurement(out.ops[1].angle));
  CHECK(out.ops[1].pauli.pauli_at(0) == 'X');
  // H swaps the X and Z rows.
  CHECK(tableau.x_row(0).pauli_at(0) == 'Z');
  CHECK(tableau.z_row(0).pauli_at(0) == 'X');
  check_equivalence(c, out, tableau);
}

TEST_CASE("merge cancels opposite pi/8 pairs") {
  const auto c = rotation_circuit(
      1, {{"Z", RotationAngle::PiOver8}, {"Z", RotationAngle::MinusPiOver8}});
  CHECK(merge_commuting_layers(c).ops.empty());
}

TEST_CASE("merge fuses equal pi/8 pairs into a pi/4") {
  const auto c = rotation_circuit(
      1, {{"Z", RotationAngle::PiOver8}, {"Z", RotationAngle::PiOver8}});
  const auto merged = merge_commuting_layers(c);
  REQUIRE(merged.ops.size() == 1);
  CHECK(merged.ops[0].angle == RotationAngle::PiOver4);
  CHECK(merged.ops[0].pauli == PauliString::from_string("Z"));
}

TEST_CASE("merge reaches across commuting neighbours") {
  const auto c = rotation_circuit(2, {{"ZI", RotationAngle::PiOver8},
                                      {"IX", RotationAngle::PiOver8},
                                      {"ZI", RotationAngle::PiOver8}});
  const auto merged = merge_commuting_layers(c);
  REQUIRE(merged.ops.size() == 2);
  CHECK(merged.ops[0].angle == RotationAngle::PiOver4);
  CHECK(merged.ops[0].pauli == PauliString::from_string("ZI"));
  CHECK(merged.ops[1].angle == RotationAngle::PiOver8);
  CHECK(merged.ops[1].pauli == PauliString::from_string("IX"));
}

TEST_CASE("anticommuting rotation closes the layer") {
  const auto c = rotation_circuit(1, {{"Z", RotationAngle::PiOver8},
                                      {"X", RotationAngle::PiOver8},
                                      {"Z", RotationAngle::PiOver8}});
  const auto merged = merge_commuting_layers(c);
  CHECK(merged.ops.size() == 3);  // nothing fuses across the X barrier
}

TEST_CASE("merge rejects Clifford input") {
  const auto c = rotation_circuit(1, {{"Z", RotationAngle::PiOver4}});
  CHECK_THROWS_AS(merge_commuting_layers(c), ValidationError);
}

TEST_CASE("fixpoint of an already-minimal circuit is stable") {
  const auto c = rotation_circuit(2, {{"ZX", RotationAngle::PiOver8},
                                      {"XZ", RotationAngle::PiOver8}});
  const auto [out, tableau] = optimize_fixpoint(c);
  CHECK(out.ops.size() == 2);
  CHECK(tableau == CliffordTableau::identity(2));
}

TEST_CASE("T then T collapses to an absorbed pi/4") {
  const auto c = rotation_circuit(
      1, {{"Z", RotationAngle::PiOver8}, {"Z", RotationAngle::PiOver8}});
  const auto [out, tableau] = optimize_fixpoint(c);
  CHECK(out.ops.empty());
  CHECK(tableau ==
        CliffordTableau::from_rotation(Rotation{RotationAngle::PiOver4,
                                                PauliString::from_string("Z"), 0}));
}

TEST_CASE("random circuits: equivalence, purity, monotone pi/8 count") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng() % 4;
    const auto gates = test::random_gate_circuit(rng, n, 4 + rng() % 20);
    const Circuit c = convert_gates(gates, n);

    const auto [out, tableau] = transpile(c);
    for (const Rotation& op : out.ops) {
      REQUIRE_FALSE(is_clifford(op.angle));
    }
    check_equivalence(c, out, tableau);

    const auto [fixed, total] = optimize_fixpoint(c);
    CHECK(fixed.pi8_count() <= out.pi8_count());
    check_equivalence(c, fixed, total);
  }
}

TEST_CASE("fixpoint pi/8 count never exceeds the input T count") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 30; ++trial) {
    const auto gates = test::random_gate_circuit(rng, 3, 30);
    std::size_t t_count = 0;
    for (const GateOp& g : gates) {
      if (g.kind == GateKind::T || g.kind == GateKind::Tdg) ++t_count;
    }
    const Circuit c = convert_gates(gates, 3);
    const auto [fixed, tableau] = optimize_fixpoint(c);
    CHECK(fixed.pi8_count() <= t_count);
  }
}

TEST_CASE("transpile scales roughly linearly in circuit length") {
  // Smoke check only; the acceptance suite measures the real ratio.
  std::mt19937_64 rng(41);
  const std::size_t n = 10;
  const auto small_gates = test::random_gate_circuit(rng, n, 2000);
  const auto big_gates = test::random_gate_circuit(rng, n, 20000);
  const Circuit small_c = convert_gates(small_gates, n);
  const Circuit big_c = convert_gates(big_gates, n);

  const auto t0 = std::chrono::steady_clock::now();
  (void)transpile(small_c);
  const auto t1 = std::chrono::steady_clock::now();
  (void)transpile(big_c);
  const auto t2 = std::chrono::steady_clock::now();
  const double small_s = std::chrono::duration<double>(t1 - t0).count();
  const double big_s = std::chrono::duration<double>(t2 - t1).count();
  CHECK(big_s < 100.0 * std::max(small_s, 1e-4));
}
