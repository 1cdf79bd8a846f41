#include <doctest.h>

#include <random>

#include "lss/oracle.hpp"
#include "lss/pauli.hpp"
#include "test_util.hpp"

using namespace lss;

namespace {

/// All pure Pauli strings on n qubits (no sign), identity included.
std::vector<PauliString> all_paulis(std::size_t n) {
  std::vector<PauliString> out;
  const std::size_t total = std::size_t{1} << (2 * n);
  for (std::size_t code = 0; code < total; ++code) {
    PauliString p(n);
    std::size_t bits = code;
    for (std::size_t q = 0; q < n; ++q) {
      p.set_pauli(q, "IXYZ"[bits & 3]);
      bits >>= 2;
    }
    out.push_back(std::move(p));
  }
  return out;
}

bool dense_commutes(const PauliString& p, const PauliString& q) {
  const auto a = oracle::dense_pauli(p);
  const auto b = oracle::dense_pauli(q);
  return (a * b - b * a).cwiseAbs().maxCoeff() < 1e-12;
}

}  // namespace

TEST_CASE("pauli string basics") {
  const auto p = PauliString::from_string("IXYZ");
  CHECK(p.num_qubits() == 4);
  CHECK(p.pauli_at(0) == 'I');
  CHECK(p.pauli_at(1) == 'X');
  CHECK(p.pauli_at(2) == 'Y');
  CHECK(p.pauli_at(3) == 'Z');
  CHECK(p.weight() == 3);
  CHECK_FALSE(p.phase());
  CHECK(p.str() == "IXYZ");

  const auto m = PauliString::from_string("-ZZ");
  CHECK(m.phase());
  CHECK(m.str() == "-ZZ");

  CHECK(PauliString::from_string("II").is_identity());
  CHECK(p.support() == std::vector<std::size_t>{1, 2, 3});
}

TEST_CASE("commutes on the named examples") {
  CHECK_FALSE(commutes(PauliString::from_string("X"), PauliString::from_string("Z")));
  CHECK(commutes(PauliString::from_string("X"), PauliString::from_string("X")));
  // XY vs ZZ: the dense 4x4 commutator is zero.
  CHECK(commutes(PauliString::from_string("XY"), PauliString::from_string("ZZ")));
  CHECK(dense_commutes(PauliString::from_string("XY"), PauliString::from_string("ZZ")));
}

TEST_CASE("commutes mismatched sizes") {
  CHECK_THROWS_AS(commutes(PauliString::from_string("X"), PauliString::from_string("XX")),
                  DimensionError);
  CHECK_THROWS_AS(multiply_pauli(PauliString::from_string("X"), PauliString::from_string("XX")),
                  DimensionError);
  CHECK_THROWS_AS(
      trivially_disjoint(PauliString::from_string("X"), PauliString::from_string("XX")),
      DimensionError);
}

TEST_CASE("multiply_pauli on the named examples") {
  {
    const auto [phi, r] = multiply_pauli(PauliString::from_string("X"),
                                         PauliString::from_string("X"));
    CHECK(phi == UnitPhase::one());
    CHECK(r.is_identity());
  }
  {
    const auto [phi, r] = multiply_pauli(PauliString::from_string("X"),
                                         PauliString::from_string("Z"));
    CHECK(phi == UnitPhase::minus_i());
    CHECK(r.str() == "Y");
  }
  {
    const auto [phi, r] = multiply_pauli(PauliString::from_string("Y"),
                                         PauliString::from_string("Z"));
    CHECK(phi == UnitPhase::i());
    CHECK(r.str() == "X");
  }
}

TEST_CASE("trivially_disjoint on the named examples") {
  CHECK(trivially_disjoint(PauliString::from_string("XI"), PauliString::from_string("IZ")));
  // R1 and R3 of the four-rotation example both touch qubit 2.
  CHECK_FALSE(
      trivially_disjoint(PauliString::from_string("IXYI"), PauliString::from_string("IYIY")));
  CHECK_FALSE(trivially_disjoint(PauliString::from_string("XI"), PauliString::from_string("XI")));
}

TEST_CASE("commutes agrees with the dense commutator exhaustively (n <= 4)") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto paulis = all_paulis(n);
    for (std::size_t a = 0; a < paulis.size(); ++a) {
      for (std::size_t b = a; b < paulis.size(); ++b) {
        REQUIRE(commutes(paulis[a], paulis[b]) == dense_commutes(paulis[a], paulis[b]));
      }
    }
  }
}

TEST_CASE("multiply_pauli agrees with dense products exhaustively (n <= 3)") {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto paulis = all_paulis(n);
    for (const auto& p : paulis) {
      for (const auto& q : paulis) {
        const auto [phi, r] = multiply_pauli(p, q);
        CHECK_FALSE(r.phase());
        const auto dense =
            (phi.value() * oracle::dense_pauli(r)).eval();
        REQUIRE((oracle::dense_pauli(p) * oracle::dense_pauli(q) - dense).cwiseAbs().maxCoeff() <
                1e-12);
      }
    }
  }
}

TEST_CASE("trivially disjoint implies commuting, converse fails") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 500; ++k) {
    const auto p = test::random_pauli(rng, 5);
    const auto q = test::random_pauli(rng, 5);
    if (trivially_disjoint(p, q)) {
      CHECK(commutes(p, q));
    }
  }
  // Witness for the failing converse.
  CHECK(commutes(PauliString::from_string("XX"), PauliString::from_string("ZZ")));
  CHECK_FALSE(
      trivially_disjoint(PauliString::from_string("XX"), PauliString::from_string("ZZ")));
}

TEST_CASE("commutes is symmetric and controls the multiply phase swap") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 500; ++k) {
    const auto p = test::random_pauli(rng, 4, false, true);
    const auto q = test::random_pauli(rng, 4, false, true);
    CHECK(commutes(p, q) == commutes(q, p));
    const auto [phi_pq, r_pq] = multiply_pauli(p, q);
    const auto [phi_qp, r_qp] = multiply_pauli(q, p);
    CHECK(r_pq == r_qp);
    const int delta = ((phi_pq.exponent() - phi_qp.exponent()) % 4 + 4) % 4;
    CHECK(delta == (commutes(p, q) ? 0 : 2));
  }
}

TEST_CASE("multiply_pauli is associative up to exact phase") {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 300; ++k) {
    const auto a = test::random_pauli(rng, 3, true, true);
    const auto b = test::random_pauli(rng, 3, true, true);
    const auto c = test::random_pauli(rng, 3, true, true);
    const auto [phi_ab, ab] = multiply_pauli(a, b);
    const auto [phi_ab_c, ab_c] = multiply_pauli(ab, c);
    const auto [phi_bc, bc] = multiply_pauli(b, c);
    const auto [phi_a_bc, a_bc] = multiply_pauli(a, bc);
    CHECK(ab_c == a_bc);
    CHECK(phi_ab * phi_ab_c == phi_bc * phi_a_bc);
  }
}

TEST_CASE("circuit validation") {
  Circuit c;
  c.n = 2;
  Rotation r;
  r.angle = RotationAngle::PiOver8;
  r.pauli = PauliString::from_string("XI");
  r.source_index = 0;
  c.ops.push_back(r);
  CHECK_NOTHROW(c.validate());

  Circuit bad = c;
  bad.ops[0].pauli = PauliString::from_string("II");
  CHECK_THROWS_AS(bad.validate(), ValidationError);

  Circuit mismatched = c;
  mismatched.ops[0].pauli = PauliString::from_string("XII");
  CHECK_THROWS_AS(mismatched.validate(), ValidationError);

  Circuit unordered = c;
  unordered.ops.push_back(r);  // duplicate source_index 0
  CHECK_THROWS_AS(unordered.validate(), ValidationError);
}
