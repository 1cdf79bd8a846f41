#include "lss/circuit_io.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <json.hpp>

namespace lss {

std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::X:
      return "X";
    case GateKind::Y:
      return "Y";
    case GateKind::Z:
      return "Z";
    case GateKind::H:
      return "H";
    case GateKind::S:
      return "S";
    case GateKind::Sdg:
      return "Sdg";
    case GateKind::T:
      return "T";
    case GateKind::Tdg:
      return "Tdg";
    case GateKind::CNOT:
      return "CNOT";
  }
  throw InvariantViolation("unreachable gate kind");
}

namespace {

std::optional<GateKind> parse_gate_name(std::string_view name) {
  if (name == "X") return GateKind::X;
  if (name == "Y") return GateKind::Y;
  if (name == "Z") return GateKind::Z;
  if (name == "H") return GateKind::H;
  if (name == "S") return GateKind::S;
  if (name == "Sdg") return GateKind::Sdg;
  if (name == "T") return GateKind::T;
  if (name == "Tdg") return GateKind::Tdg;
  if (name == "CNOT") return GateKind::CNOT;
  return std::nullopt;
}

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream stream(text);
  std::string raw;
  std::size_t number = 0;
  while (std::getline(stream, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) {
      raw.erase(hash);
    }
    std::istringstream line(raw);
    std::vector<std::string> tokens;
    std::string token;
    while (line >> token) tokens.push_back(token);
    if (!tokens.empty()) lines.push_back(Line{number, std::move(tokens)});
  }
  return lines;
}

std::size_t parse_header(const std::vector<Line>& lines) {
  if (lines.empty()) {
    throw ParseError(1, "missing 'qubits <N>' header");
  }
  const Line& head = lines.front();
  if (head.tokens.size() != 2 || head.tokens[0] != "qubits") {
    throw ParseError(head.number, "expected 'qubits <N>' header");
  }
  std::size_t n = 0;
  try {
    n = std::stoull(head.tokens[1]);
  } catch (const std::exception&) {
    throw ParseError(head.number, "bad qubit count '" + head.tokens[1] + "'");
  }
  if (n == 0) {
    throw ParseError(head.number, "qubit count must be positive");
  }
  return n;
}

}  // namespace

Circuit parse_rotation_circuit(const std::string& text) {
  const auto lines = tokenize(text);
  Circuit c;
  c.n = parse_header(lines);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const Line& line = lines[k];
    if (line.tokens.size() != 2) {
      throw ParseError(line.number, "expected '<angle> <paulistring>'");
    }
    const auto angle = parse_angle_token(line.tokens[0]);
    if (!angle) {
      throw ParseError(line.number, "unknown angle token '" + line.tokens[0] + "'");
    }
    std::string_view pauli_text = line.tokens[1];
    bool negative = false;
    if (!pauli_text.empty() && pauli_text.front() == '-') {
      negative = true;
      pauli_text.remove_prefix(1);
    }
    if (pauli_text.size() != c.n) {
      throw ParseError(line.number, "Pauli string length " + std::to_string(pauli_text.size()) +
                                        " does not match qubit count " + std::to_string(c.n));
    }
    Rotation op;
    op.source_index = c.ops.size();
    try {
      op.pauli = PauliString::from_string(pauli_text);
    } catch (const ValidationError& e) {
      throw ParseError(line.number, e.what());
    }
    op.angle = *angle;
    if (op.pauli.is_identity()) {
      throw ParseError(line.number, "operation must touch at least one qubit");
    }
    if (negative) {
      if (is_measurement(op.angle)) {
        op.pauli.set_phase(true);
      } else {
        op.angle = negated(op.angle);  // exp(i*theta*(-P)) == exp(-i*theta*P)
      }
    }
    c.ops.push_back(std::move(op));
  }
  return c;
}

std::string emit_circuit(const Circuit& c) {
  std::string out = "qubits " + std::to_string(c.n) + "\n";
  for (const Rotation& op : c.ops) {
    out.append(angle_token(op.angle));
    out.push_back(' ');
    out.append(op.pauli.str());
    out.push_back('\n');
  }
  return out;
}

std::vector<GateOp> parse_gate_circuit(const std::string& text, std::size_t& num_qubits) {
  const auto lines = tokenize(text);
  num_qubits = parse_header(lines);
  std::vector<GateOp> gates;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const Line& line = lines[k];
    const auto kind = parse_gate_name(line.tokens[0]);
    if (!kind) {
      throw ParseError(line.number, "unknown gate '" + line.tokens[0] + "'");
    }
    const std::size_t arity = *kind == GateKind::CNOT ? 2 : 1;
    if (line.tokens.size() != 1 + arity) {
      throw ParseError(line.number, std::string(gate_name(*kind)) + " takes " +
                                        std::to_string(arity) + " qubit argument(s)");
    }
    GateOp gate;
    gate.kind = *kind;
    for (std::size_t t = 1; t < line.tokens.size(); ++t) {
      std::size_t q = 0;
      try {
        q = std::stoull(line.tokens[t]);
      } catch (const std::exception&) {
        throw ParseError(line.number, "bad qubit index '" + line.tokens[t] + "'");
      }
      if (q >= num_qubits) {
        throw ParseError(line.number, "qubit index " + std::to_string(q) + " out of range");
      }
      gate.targets.push_back(q);
    }
    if (gate.kind == GateKind::CNOT && gate.targets[0] == gate.targets[1]) {
      throw ParseError(line.number, "CNOT control and target must differ");
    }
    gates.push_back(std::move(gate));
  }
  return gates;
}

std::string emit_gate_circuit(const std::vector<GateOp>& gates, std::size_t num_qubits) {
  std::string out = "qubits " + std::to_string(num_qubits) + "\n";
  for (const GateOp& gate : gates) {
    out.append(gate_name(gate.kind));
    for (std::size_t q : gate.targets) {
      out.push_back(' ');
      out.append(std::to_string(q));
    }
    out.push_back('\n');
  }
  return out;
}

namespace {

Rotation single_qubit_rotation(std::size_t n, std::size_t qubit, char pauli,
                               RotationAngle angle) {
  Rotation r;
  r.angle = angle;
  r.pauli = PauliString(n);
  r.pauli.set_pauli(qubit, pauli);
  return r;
}

}  // namespace

Circuit convert_gates(const std::vector<GateOp>& gates, std::size_t num_qubits) {
  Circuit c;
  c.n = num_qubits;
  for (const GateOp& gate : gates) {
    for (std::size_t q : gate.targets) {
      if (q >= num_qubits) {
        throw ValidationError("gate target " + std::to_string(q) + " out of range");
      }
    }
    switch (gate.kind) {
      case GateKind::X:
        c.ops.push_back(single_qubit_rotation(num_qubits, gate.targets[0], 'X',
                                              RotationAngle::PiOver2));
        break;
      case GateKind::Y:
        c.ops.push_back(single_qubit_rotation(num_qubits, gate.targets[0], 'Y',
                                              RotationAngle::PiOver2));
        break;
      case GateKind::Z:
        c.ops.push_back(single_qubit_rotation(num_qubits, gate.targets[0], 'Z',
                                              RotationAngle::PiOver2));
        break;
      case GateKind::H:
        // exp(-i pi/4 Z) exp(-i pi/4 X) exp(-i pi/4 Z) = -i H.
        c.ops.push_back(single_qubit_rotation(num_qubits, gate.targets[0], 'Z',
                                              RotationAngle::MinusPiOver4));
        c.ops.push_back(single_qubit_rotation(num_qubits, gate.targets[0], 'X',
                                              RotationAngle::MinusPiOver4));
        c.ops.push_back(single_qubit_rotation(num_qubits, gate.targets[0], 'Z',
                                              RotationAngle::MinusPiOver4));
        break;
      case GateKind::S:
        c.ops.push_back(single_qubit_rotation(num_qubits, gate.targets[0], 'Z',
                                              RotationAngle::MinusPiOver4));
        break;
      case GateKind::Sdg:
        c.ops.push_back(single_qubit_rotation(num_qubits, gate.targets[0], 'Z',
                                              RotationAngle::PiOver4));
        break;
      case GateKind::T:
        // T = diag(1, e^{i pi/4}) = e^{i pi/8} exp(-i pi/8 Z).
        c.ops.push_back(single_qubit_rotation(num_qubits, gate.targets[0], 'Z',
                                              RotationAngle::MinusPiOver8));
        break;
      case GateKind::Tdg:
        c.ops.push_back(single_qubit_rotation(num_qubits, gate.targets[0], 'Z',
                                              RotationAngle::PiOver8));
        break;
      case GateKind::CNOT: {
        // exp(i pi/4 Z.X) exp(-i pi/4 Z_c) exp(-i pi/4 X_t) = CNOT up to phase;
        // the three factors commute.
        Rotation zx;
        zx.angle = RotationAngle::PiOver4;
        zx.pauli = PauliString(num_qubits);
        zx.pauli.set_pauli(gate.targets[0], 'Z');
        zx.pauli.set_pauli(gate.targets[1], 'X');
        c.ops.push_back(std::move(zx));
        c.ops.push_back(single_qubit_rotation(num_qubits, gate.targets[0], 'Z',
                                              RotationAngle::MinusPiOver4));
        c.ops.push_back(single_qubit_rotation(num_qubits, gate.targets[1], 'X',
                                              RotationAngle::MinusPiOver4));
        break;
      }
    }
  }
  for (std::size_t k = 0; k < c.ops.size(); ++k) {
    c.ops[k].source_index = k;
  }
  return c;
}

Circuit gen_random(const RandomSpec& spec) {
  if (spec.m < 1 || spec.n < 1 || spec.n_pct <= 0.0 || spec.n_pct > 1.0) {
    throw ValidationError("random spec needs m >= 1, N >= 1 and 0 < n_pct <= 1");
  }
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> support_size(static_cast<double>(spec.n) * spec.n_pct, 2.0);
  std::uniform_int_distribution<int> letter(0, 2);

  Circuit c;
  c.n = spec.n;
  c.ops.reserve(spec.m + spec.n);
  std::vector<std::size_t> indices(spec.n);
  for (std::size_t q = 0; q < spec.n; ++q) indices[q] = q;

  for (std::size_t k = 0; k < spec.m; ++k) {
    const double draw = std::nearbyint(support_size(rng));  // round half to even
    const std::size_t size = static_cast<std::size_t>(
        std::clamp(draw, 1.0, static_cast<double>(spec.n)));
    for (std::size_t i = 0; i < size; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, spec.n - 1);
      std::swap(indices[i], indices[pick(rng)]);
    }
    Rotation op;
    op.angle = RotationAngle::PiOver8;
    op.pauli = PauliString(spec.n);
    op.source_index = k;
    for (std::size_t i = 0; i < size; ++i) {
      op.pauli.set_pauli(indices[i], "XYZ"[letter(rng)]);
    }
    c.ops.push_back(std::move(op));
  }
  for (std::size_t q = 0; q < spec.n; ++q) {
    Rotation m;
    m.angle = RotationAngle::Measurement;
    m.pauli = PauliString(spec.n);
    m.pauli.set_pauli(q, 'Z');
    m.source_index = spec.m + q;
    c.ops.push_back(std::move(m));
  }
  return c;
}

std::string emit_schedule_json(const Schedule& schedule, const Report& report) {
  nlohmann::json root;
  root["time_steps"] = nlohmann::json::array();
  for (const auto& step : schedule.steps) {
    nlohmann::json step_json;
    step_json["ops"] = nlohmann::json::array();
    for (const ScheduledOp& op : step) {
      nlohmann::json op_json;
      op_json["source_index"] = op.rotation.source_index;
      op_json["angle"] = std::string(angle_token(op.rotation.angle));
      op_json["pauli"] = op.rotation.pauli.str();
      nlohmann::json tree;
      tree["vertices"] = op.tree.vertices;
      tree["edges"] = nlohmann::json::array();
      for (const auto& [u, v] : op.tree.edges) {
        tree["edges"].push_back({u, v});
      }
      op_json["tree"] = std::move(tree);
      // The attach vertex is a magic-state storage qubit only for pi/8
      // rotations; a pi/4 rotation's ancillary leaf stays inside the tree.
      if (is_pi8(op.rotation.angle) && op.tree.storage_vertex) {
        op_json["storage_vertex"] = *op.tree.storage_vertex;
      } else {
        op_json["storage_vertex"] = nullptr;
      }
      step_json["ops"].push_back(std::move(op_json));
    }
    root["time_steps"].push_back(std::move(step_json));
  }
  nlohmann::json metrics;
  metrics["EN"] = report.en;
  metrics["LB"] = report.lb;
  metrics["UB"] = report.ub;
  metrics["t_dep_s"] = report.t_dep_s;
  metrics["t_sch_s"] = report.t_sch_s;
  metrics["rule"] = std::string(dependency_rule_name(schedule.rule));
  metrics["layout"] = nlohmann::json::parse(layout_spec_to_json(schedule.layout));
  root["metrics"] = std::move(metrics);
  return root.dump(2) + "\n";
}

}  // namespace lss
