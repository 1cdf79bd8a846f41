#include "lss/transpiler.hpp"

#include <cstdlib>
#include <map>
#include <utility>

namespace lss {

TranspileResult transpile(const Circuit& c) {
  c.validate();
  CliffordTableau accumulator = CliffordTableau::identity(c.n == 0 ? 1 : c.n);
  Circuit out;
  out.n = c.n;
  out.ops.reserve(c.ops.size());
  for (const Rotation& op : c.ops) {
    if (is_clifford(op.angle)) {
      accumulator = multiply(accumulator, CliffordTableau::from_rotation(op));
      continue;
    }
    Rotation rewritten = op;
    rewritten.pauli = conjugate(accumulator, op.pauli);
    if (is_pi8(op.angle) && rewritten.pauli.phase()) {
      // exp(i*theta*(-P)) = exp(-i*theta*P): fold the sign into the angle.
      rewritten.angle = negated(op.angle);
      rewritten.pauli.set_phase(false);
    }
    out.ops.push_back(std::move(rewritten));
  }
  return {std::move(out), std::move(accumulator)};
}

namespace {

struct MergeGroup {
  int net = 0;  // (+pi/8 count) - (-pi/8 count) within the layer
  PauliString pauli;
};

void flush_layer(std::vector<MergeGroup>& groups, std::vector<Rotation>& out) {
  // Cliffords first, then survivors, both in first-occurrence order. Every
  // group member commutes with the whole layer, so this order is free.
  for (const MergeGroup& g : groups) {
    const RotationAngle quarter =
        g.net > 0 ? RotationAngle::PiOver4 : RotationAngle::MinusPiOver4;
    for (int k = 0; k < std::abs(g.net) / 2; ++k) {
      out.push_back(Rotation{quarter, g.pauli, 0});
    }
  }
  for (const MergeGroup& g : groups) {
    if (std::abs(g.net) % 2 == 1) {
      const RotationAngle eighth =
          g.net > 0 ? RotationAngle::PiOver8 : RotationAngle::MinusPiOver8;
      out.push_back(Rotation{eighth, g.pauli, 0});
    }
  }
  groups.clear();
}

}  // namespace

Circuit merge_commuting_layers(const Circuit& c) {
  c.validate();
  for (const Rotation& op : c.ops) {
    if (is_clifford(op.angle)) {
      throw ValidationError("merge_commuting_layers expects a transpiled circuit, found angle '" +
                            std::string(angle_token(op.angle)) + "'");
    }
  }

  Circuit out;
  out.n = c.n;
  std::vector<MergeGroup> groups;
  std::map<std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>>, std::size_t>
      group_index;

  auto close_layer = [&] {
    flush_layer(groups, out.ops);
    group_index.clear();
  };

  for (const Rotation& op : c.ops) {
    if (is_measurement(op.angle)) {
      close_layer();
      out.ops.push_back(op);
      continue;
    }
    const bool joins = [&] {
      for (const MergeGroup& g : groups) {
        if (!commutes(op.pauli, g.pauli)) return false;
      }
      return true;
    }();
    if (!joins) close_layer();

    auto key = std::make_pair(op.pauli.x_words(), op.pauli.z_words());
    auto [it, inserted] = group_index.try_emplace(std::move(key), groups.size());
    if (inserted) {
      groups.push_back(MergeGroup{0, op.pauli});
    }
    groups[it->second].net += op.angle == RotationAngle::PiOver8 ? 1 : -1;
  }
  close_layer();

  for (std::size_t k = 0; k < out.ops.size(); ++k) {
    out.ops[k].source_index = k;
  }
  return out;
}

TranspileResult optimize_fixpoint(const Circuit& c) {
  Circuit current = c;
  CliffordTableau total = CliffordTableau::identity(c.n == 0 ? 1 : c.n);
  bool first_round = true;
  while (true) {
    TranspileResult round = transpile(current);
    total = first_round ? round.tableau : multiply(round.tableau, total);
    first_round = false;
    Circuit merged = merge_commuting_layers(round.circuit);
    if (merged.pi8_count() == round.circuit.pi8_count()) {
      // No pair combined, so the merge changed nothing and we are stable.
      return {std::move(round.circuit), std::move(total)};
    }
    current = std::move(merged);
  }
}

}  // namespace lss
