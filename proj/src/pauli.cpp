#include "lss/pauli.hpp"

#include <bit>

namespace lss {

namespace {

std::size_t word_count(std::size_t n) { return (n + 63) / 64; }

void check_same_size(const PauliString& p, const PauliString& q) {
  if (p.num_qubits() != q.num_qubits()) {
    throw DimensionError("Pauli strings act on different qubit counts: " +
                         std::to_string(p.num_qubits()) + " vs " +
                         std::to_string(q.num_qubits()));
  }
}

std::size_t popcount_and(const std::vector<std::uint64_t>& a,
                         const std::vector<std::uint64_t>& b) {
  std::size_t total = 0;
  for (std::size_t w = 0; w < a.size(); ++w) {
    total += static_cast<std::size_t>(std::popcount(a[w] & b[w]));
  }
  return total;
}

}  // namespace

PauliString::PauliString(std::size_t num_qubits)
    : n_(num_qubits), x_(word_count(num_qubits), 0), z_(word_count(num_qubits), 0) {}

PauliString PauliString::from_string(std::string_view text) {
  bool phase = false;
  if (!text.empty() && text.front() == '-') {
    phase = true;
    text.remove_prefix(1);
  }
  if (!text.empty() && text.front() == '+') {
    text.remove_prefix(1);
  }
  PauliString result(text.size());
  result.set_phase(phase);
  for (std::size_t j = 0; j < text.size(); ++j) {
    result.set_pauli(j, text[j]);
  }
  return result;
}

char PauliString::pauli_at(std::size_t qubit) const {
  const bool xb = x(qubit);
  const bool zb = z(qubit);
  if (xb && zb) return 'Y';
  if (xb) return 'X';
  if (zb) return 'Z';
  return 'I';
}

void PauliString::set_pauli(std::size_t qubit, char pauli) {
  switch (pauli) {
    case 'I':
      set_x(qubit, false);
      set_z(qubit, false);
      return;
    case 'X':
      set_x(qubit, true);
      set_z(qubit, false);
      return;
    case 'Y':
      set_x(qubit, true);
      set_z(qubit, true);
      return;
    case 'Z':
      set_x(qubit, false);
      set_z(qubit, true);
      return;
    default:
      throw ValidationError(std::string("unknown Pauli letter '") + pauli + "'");
  }
}

bool PauliString::is_identity() const {
  for (std::size_t w = 0; w < x_.size(); ++w) {
    if ((x_[w] | z_[w]) != 0) return false;
  }
  return true;
}

std::size_t PauliString::weight() const {
  std::size_t total = 0;
  for (std::size_t w = 0; w < x_.size(); ++w) {
    total += static_cast<std::size_t>(std::popcount(x_[w] | z_[w]));
  }
  return total;
}

std::vector<std::size_t> PauliString::support() const {
  std::vector<std::size_t> sites;
  sites.reserve(weight());
  for (std::size_t j = 0; j < n_; ++j) {
    if (touches(j)) sites.push_back(j);
  }
  return sites;
}

std::string PauliString::str() const {
  std::string out;
  out.reserve(n_ + 1);
  if (phase_) out.push_back('-');
  for (std::size_t j = 0; j < n_; ++j) {
    out.push_back(pauli_at(j));
  }
  return out;
}

bool commutes(const PauliString& p, const PauliString& q) {
  check_same_size(p, q);
  const std::size_t crossings =
      popcount_and(p.x_words(), q.z_words()) + popcount_and(q.x_words(), p.z_words());
  return (crossings & 1u) == 0;
}

bool trivially_disjoint(const PauliString& p, const PauliString& q) {
  check_same_size(p, q);
  const auto& px = p.x_words();
  const auto& pz = p.z_words();
  const auto& qx = q.x_words();
  const auto& qz = q.z_words();
  for (std::size_t w = 0; w < px.size(); ++w) {
    if ((px[w] | pz[w]) & (qx[w] | qz[w])) return false;
  }
  return true;
}

std::pair<UnitPhase, PauliString> multiply_pauli(const PauliString& p, const PauliString& q) {
  check_same_size(p, q);
  PauliString r(p.num_qubits());
  for (std::size_t w = 0; w < r.x_.size(); ++w) {
    r.x_[w] = p.x_[w] ^ q.x_[w];
    r.z_[w] = p.z_[w] ^ q.z_[w];
  }
  // Writing each operand as i^{|x.z|} X^x Z^z times its sign, the product
  // reorders Z^{z_p} past X^{x_q} at cost (-1)^{z_p.x_q} and the leftover
  // i-count is |x_p.z_p| + |x_q.z_q| - |x_r.z_r|.
  const std::size_t y_p = popcount_and(p.x_words(), p.z_words());
  const std::size_t y_q = popcount_and(q.x_words(), q.z_words());
  const std::size_t y_r = popcount_and(r.x_words(), r.z_words());
  const std::size_t anti = popcount_and(p.z_words(), q.x_words());
  const int sign_exp = 2 * static_cast<int>((p.phase() ? 1 : 0) + (q.phase() ? 1 : 0) + (anti & 1u));
  const int i_exp = static_cast<int>(y_p % 4 + y_q % 4) - static_cast<int>(y_r % 4);
  return {UnitPhase::from_exponent(sign_exp + i_exp), std::move(r)};
}

RotationAngle negated(RotationAngle a) {
  switch (a) {
    case RotationAngle::PiOver8:
      return RotationAngle::MinusPiOver8;
    case RotationAngle::MinusPiOver8:
      return RotationAngle::PiOver8;
    case RotationAngle::PiOver4:
      return RotationAngle::MinusPiOver4;
    case RotationAngle::MinusPiOver4:
      return RotationAngle::PiOver4;
    case RotationAngle::PiOver2:
      return RotationAngle::MinusPiOver2;
    case RotationAngle::MinusPiOver2:
      return RotationAngle::PiOver2;
    case RotationAngle::Measurement:
      return RotationAngle::Measurement;
  }
  throw InvariantViolation("unreachable angle tag");
}

std::string_view angle_token(RotationAngle a) {
  switch (a) {
    case RotationAngle::PiOver8:
      return "pi/8";
    case RotationAngle::MinusPiOver8:
      return "-pi/8";
    case RotationAngle::PiOver4:
      return "pi/4";
    case RotationAngle::MinusPiOver4:
      return "-pi/4";
    case RotationAngle::PiOver2:
      return "pi/2";
    case RotationAngle::MinusPiOver2:
      return "-pi/2";
    case RotationAngle::Measurement:
      return "M";
  }
  throw InvariantViolation("unreachable angle tag");
}

std::optional<RotationAngle> parse_angle_token(std::string_view token) {
  if (token == "pi/8") return RotationAngle::PiOver8;
  if (token == "-pi/8") return RotationAngle::MinusPiOver8;
  if (token == "pi/4") return RotationAngle::PiOver4;
  if (token == "-pi/4") return RotationAngle::MinusPiOver4;
  if (token == "pi/2") return RotationAngle::PiOver2;
  if (token == "-pi/2") return RotationAngle::MinusPiOver2;
  if (token == "M") return RotationAngle::Measurement;
  return std::nullopt;
}

std::size_t Circuit::pi8_count() const {
  std::size_t count = 0;
  for (const auto& op : ops) {
    if (is_pi8(op.angle)) ++count;
  }
  return count;
}

void Circuit::validate() const {
  std::size_t previous = 0;
  bool first = true;
  for (const auto& op : ops) {
    if (op.pauli.num_qubits() != n) {
      throw ValidationError("rotation qubit count " + std::to_string(op.pauli.num_qubits()) +
                            " does not match circuit qubit count " + std::to_string(n));
    }
    if (op.pauli.is_identity()) {
      throw ValidationError("operation " + std::to_string(op.source_index) +
                            " has an all-identity Pauli");
    }
    if (!first && op.source_index <= previous) {
      throw ValidationError("source indices are not strictly increasing");
    }
    previous = op.source_index;
    first = false;
  }
}

}  // namespace lss
