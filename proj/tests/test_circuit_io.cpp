#include <doctest.h>

#include <random>

#include "lss/circuit_io.hpp"
#include "lss/oracle.hpp"
#include "test_util.hpp"

using namespace lss;

TEST_CASE("parse a rotation circuit") {
  const Circuit c = parse_rotation_circuit("qubits 4\npi/8 IXYI\nM ZZII\n");
  CHECK(c.n == 4);
  REQUIRE(c.ops.size() == 2);
  CHECK(c.ops[0].angle == RotationAngle::PiOver8);
  CHECK(c.ops[0].pauli.support() == std::vector<std::size_t>{1, 2});
  CHECK(c.ops[1].angle == RotationAngle::Measurement);
  CHECK(c.ops[0].source_index == 0);
  CHECK(c.ops[1].source_index == 1);
}

TEST_CASE("parse a negative rotation") {
  const Circuit c = parse_rotation_circuit("qubits 2\n-pi/4 XY\n");
  REQUIRE(c.ops.size() == 1);
  CHECK(c.ops[0].angle == RotationAngle::MinusPiOver4);
  CHECK(c.ops[0].pauli.x(0));
  CHECK_FALSE(c.ops[0].pauli.z(0));
  CHECK(c.ops[0].pauli.x(1));
  CHECK(c.ops[0].pauli.z(1));
}

TEST_CASE("parse errors carry line numbers") {
  CHECK_THROWS_WITH_AS(parse_rotation_circuit("qubits 2\npi/8 XYZ\n"),
                       doctest::Contains("line 2"), ParseError);
  CHECK_THROWS_AS(parse_rotation_circuit(""), ParseError);
  CHECK_THROWS_AS(parse_rotation_circuit("qubits 0\n"), ParseError);
  CHECK_THROWS_AS(parse_rotation_circuit("pi/8 X\n"), ParseError);
  CHECK_THROWS_AS(parse_rotation_circuit("qubits 1\npi/7 X\n"), ParseError);
  CHECK_THROWS_AS(parse_rotation_circuit("qubits 2\npi/8 II\n"), ParseError);
  try {
    parse_rotation_circuit("qubits 2\npi/8 XX\nbogus\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("comments and blank lines are ignored") {
  const Circuit c = parse_rotation_circuit(
      "# a comment\nqubits 2\n\npi/8 XX  # trailing comment\n");
  CHECK(c.n == 2);
  CHECK(c.ops.size() == 1);
}

TEST_CASE("emit and parse round-trip") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    Circuit c = test::random_rotation_circuit(rng, 4, 12, 3, 0.3, 0.1);
    // Give one measurement a sign to exercise the '-' Pauli form.
    for (auto& op : c.ops) {
      if (is_measurement(op.angle)) {
        op.pauli.set_phase(true);
        break;
      }
    }
    const std::string text = emit_circuit(c);
    const Circuit back = parse_rotation_circuit(text);
    REQUIRE(back.ops.size() == c.ops.size());
    CHECK(back.n == c.n);
    for (std::size_t k = 0; k < c.ops.size(); ++k) {
      CHECK(back.ops[k].angle == c.ops[k].angle);
      CHECK(back.ops[k].pauli == c.ops[k].pauli);
      CHECK(back.ops[k].source_index == c.ops[k].source_index);
    }
    CHECK(emit_circuit(back) == text);
  }
}

TEST_CASE("empty circuit emits just the header") {
  Circuit c;
  c.n = 3;
  CHECK(emit_circuit(c) == "qubits 3\n");
}

TEST_CASE("gate circuit parsing") {
  std::size_t n = 0;
  const auto gates = parse_gate_circuit("qubits 2\nH 0\nCNOT 0 1\nT 1\n", n);
  CHECK(n == 2);
  REQUIRE(gates.size() == 3);
  CHECK(gates[0].kind == GateKind::H);
  CHECK(gates[1].kind == GateKind::CNOT);
  CHECK(gates[1].targets == std::vector<std::size_t>{0, 1});

  CHECK_THROWS_AS(parse_gate_circuit("qubits 2\nCNOT 0 0\n", n), ParseError);
  CHECK_THROWS_AS(parse_gate_circuit("qubits 2\nT 5\n", n), ParseError);
  CHECK_THROWS_AS(parse_gate_circuit("qubits 2\nFOO 0\n", n), ParseError);
  CHECK_THROWS_AS(parse_gate_circuit("qubits 2\nCNOT 1\n", n), ParseError);
}

TEST_CASE("every gate conversion matches its unitary up to global phase") {
  const std::vector<GateOp> singles = {
      {GateKind::X, {0}}, {GateKind::Y, {0}}, {GateKind::Z, {0}},
      {GateKind::H, {0}}, {GateKind::S, {0}}, {GateKind::Sdg, {0}},
      {GateKind::T, {0}}, {GateKind::Tdg, {0}},
  };
  for (const GateOp& gate : singles) {
    CAPTURE(gate_name(gate.kind));
    const Circuit c = convert_gates({gate}, 1);
    CHECK(oracle::approx_equal_up_to_phase(oracle::circuit_unitary(c),
                                           oracle::dense_gate(gate, 1), 1e-12));
  }
  for (const auto& targets : {std::vector<std::size_t>{0, 1}, std::vector<std::size_t>{1, 0}}) {
    const GateOp cnot{GateKind::CNOT, targets};
    const Circuit c = convert_gates({cnot}, 2);
    CHECK(oracle::approx_equal_up_to_phase(oracle::circuit_unitary(c),
                                           oracle::dense_gate(cnot, 2), 1e-12));
  }
}

TEST_CASE("T converts to a single pi/8 Z rotation") {
  const Circuit c = convert_gates({GateOp{GateKind::T, {0}}}, 1);
  REQUIRE(c.ops.size() == 1);
  CHECK(is_pi8(c.ops[0].angle));
  CHECK(c.ops[0].pauli == PauliString::from_string("Z"));
}

TEST_CASE("random gate lists convert equivalently (dense oracle, tol 1e-9)") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 4;
    const auto gates = test::random_gate_circuit(rng, n, 1 + rng() % 25);
    const Circuit c = convert_gates(gates, n);
    REQUIRE(oracle::approx_equal_up_to_phase(oracle::circuit_unitary(c),
                                             oracle::gate_circuit_unitary(gates, n), 1e-9));
  }
}

TEST_CASE("gen_random is deterministic") {
  const RandomSpec spec{3, 4, 0.5, 1234};
  const Circuit a = gen_random(spec);
  const Circuit b = gen_random(spec);
  REQUIRE(a.ops.size() == b.ops.size());
  for (std::size_t k = 0; k < a.ops.size(); ++k) {
    CHECK(a.ops[k].angle == b.ops[k].angle);
    CHECK(a.ops[k].pauli == b.ops[k].pauli);
  }
}

TEST_CASE("gen_random shape: m rotations then N measurements, all +pi/8") {
  const RandomSpec spec{20, 6, 0.5, 9};
  const Circuit c = gen_random(spec);
  REQUIRE(c.ops.size() == 26);
  for (std::size_t k = 0; k < 20; ++k) {
    CHECK(c.ops[k].angle == RotationAngle::PiOver8);
    CHECK(c.ops[k].pauli.weight() >= 1);
    CHECK(c.ops[k].pauli.weight() <= 6);
  }
  for (std::size_t k = 20; k < 26; ++k) {
    CHECK(c.ops[k].angle == RotationAngle::Measurement);
    CHECK(c.ops[k].pauli.weight() == 1);
    CHECK(c.ops[k].pauli.pauli_at(k - 20) == 'Z');
  }
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("gen_random sample mean tracks N * n_pct") {
  const RandomSpec spec{10000, 10, 0.5, 77};
  const Circuit c = gen_random(spec);
  double total = 0.0;
  for (std::size_t k = 0; k < spec.m; ++k) {
    total += static_cast<double>(c.ops[k].pauli.weight());
  }
  const double mean = total / static_cast<double>(spec.m);
  CHECK(mean > 4.5);
  CHECK(mean < 5.5);
}

TEST_CASE("gen_random clamps the support size") {
  const RandomSpec spec{1, 1, 0.15, 5};
  const Circuit c = gen_random(spec);
  REQUIRE(c.ops.size() == 2);
  CHECK(c.ops[0].pauli.weight() == 1);
  CHECK(c.ops[0].pauli.touches(0));

  const RandomSpec wide{200, 2, 0.9, 6};
  const Circuit w = gen_random(wide);
  for (std::size_t k = 0; k < wide.m; ++k) {
    CHECK(w.ops[k].pauli.weight() >= 1);
    CHECK(w.ops[k].pauli.weight() <= 2);
  }
}

TEST_CASE("gen_random rejects bad specs") {
  CHECK_THROWS_AS(gen_random(RandomSpec{0, 1, 0.5, 0}), ValidationError);
  CHECK_THROWS_AS(gen_random(RandomSpec{1, 0, 0.5, 0}), ValidationError);
  CHECK_THROWS_AS(gen_random(RandomSpec{1, 1, 0.0, 0}), ValidationError);
  CHECK_THROWS_AS(gen_random(RandomSpec{1, 1, 1.5, 0}), ValidationError);
}
