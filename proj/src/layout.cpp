#include "lss/layout.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include <json.hpp>

namespace lss {

std::string_view layout_style_name(LayoutStyle style) {
  return style == LayoutStyle::Compact ? "compact" : "parallelizable";
}

std::optional<LayoutStyle> parse_layout_style(std::string_view name) {
  if (name == "compact") return LayoutStyle::Compact;
  if (name == "parallelizable") return LayoutStyle::Parallelizable;
  return std::nullopt;
}

std::optional<VertexId> LayoutGraph::at(int row, int col) const {
  for (VertexId v = 0; v < vertices_.size(); ++v) {
    if (vertices_[v].row == row && vertices_[v].col == col) return v;
  }
  return std::nullopt;
}

LayoutGraph build_layout(const LayoutSpec& spec) {
  if (spec.aisles < 1 || spec.patches_per_aisle < 1) {
    throw ValidationError("a layout needs at least one aisle and one patch per aisle");
  }
  const int a = static_cast<int>(spec.aisles);
  const int p = static_cast<int>(spec.patches_per_aisle);
  // Interior footprint (shared by both styles): width 2P for P patch columns
  // interleaved with P bus-column slots, height 3A+1 for a top-aisle slot row
  // plus A * (two patch rows and one bus row). The ring wraps around it.
  const int rows = 3 * a + 3;
  const int cols = 2 * p + 2;

  const std::size_t boundary_capacity = 2 * static_cast<std::size_t>(rows + cols);
  if (spec.n_storage + spec.n_ancillary > boundary_capacity) {
    throw CapacityError("boundary holds " + std::to_string(boundary_capacity) +
                        " special qubits; requested " +
                        std::to_string(spec.n_storage + spec.n_ancillary));
  }

  std::map<std::pair<int, int>, VertexKind> cells;
  // Boundary bus ring.
  for (int c = 0; c < cols; ++c) {
    cells[{0, c}] = VertexKind::Bus;
    cells[{rows - 1, c}] = VertexKind::Bus;
  }
  for (int r = 1; r + 1 < rows; ++r) {
    cells[{r, 0}] = VertexKind::Bus;
    cells[{r, cols - 1}] = VertexKind::Bus;
  }

  if (spec.style == LayoutStyle::Compact) {
    // Patches packed side by side in columns 1..P; first aisle directly
    // under the top ring so every top qubit keeps a bus neighbour.
    for (int aisle = 0; aisle < a; ++aisle) {
      const int r0 = 1 + 3 * aisle;
      for (int patch = 0; patch < p; ++patch) {
        cells[{r0, 1 + patch}] = VertexKind::Data;
        cells[{r0 + 1, 1 + patch}] = VertexKind::Data;
      }
      for (int c = 1; c + 1 < cols; ++c) {
        cells[{r0 + 2, c}] = VertexKind::Bus;  // bus row beneath the aisle
      }
    }
  } else {
    // Patches at odd columns with a two-tile bus column to the right of each,
    // and a P-tile bus aisle above the first patch row.
    for (int patch = 0; patch < p; ++patch) {
      cells[{1, 1 + 2 * patch}] = VertexKind::Bus;
    }
    for (int aisle = 0; aisle < a; ++aisle) {
      const int r0 = 2 + 3 * aisle;
      for (int patch = 0; patch < p; ++patch) {
        cells[{r0, 1 + 2 * patch}] = VertexKind::Data;
        cells[{r0 + 1, 1 + 2 * patch}] = VertexKind::Data;
        cells[{r0, 2 + 2 * patch}] = VertexKind::Bus;
        cells[{r0 + 1, 2 + 2 * patch}] = VertexKind::Bus;
      }
      for (int c = 1; c + 1 < cols; ++c) {
        cells[{r0 + 2, c}] = VertexKind::Bus;
      }
    }
  }

  // Storage then ancillary qubits on the outside of the ring, clockwise from
  // the top-left corner.
  std::vector<std::pair<int, int>> boundary;
  boundary.reserve(boundary_capacity);
  for (int c = 0; c < cols; ++c) boundary.emplace_back(-1, c);
  for (int r = 0; r < rows; ++r) boundary.emplace_back(r, cols);
  for (int c = cols - 1; c >= 0; --c) boundary.emplace_back(rows, c);
  for (int r = rows - 1; r >= 0; --r) boundary.emplace_back(r, -1);
  for (std::size_t k = 0; k < spec.n_storage + spec.n_ancillary; ++k) {
    cells[boundary[k]] =
        k < spec.n_storage ? VertexKind::MagicStorage : VertexKind::Ancillary;
  }

  LayoutGraph g;
  g.spec_ = spec;
  g.rows_ = rows;
  g.cols_ = cols;
  g.vertices_.reserve(cells.size());
  std::map<std::pair<int, int>, VertexId> ids;
  for (const auto& [coord, kind] : cells) {  // row-major: map key order
    const VertexId v = static_cast<VertexId>(g.vertices_.size());
    g.vertices_.push_back(LayoutVertex{kind, coord.first, coord.second});
    ids.emplace(coord, v);
    switch (kind) {
      case VertexKind::Bus:
        ++g.bus_count_;
        break;
      case VertexKind::Data:
        g.data_.push_back(v);
        break;
      case VertexKind::MagicStorage:
        g.storage_.push_back(v);
        break;
      case VertexKind::Ancillary:
        g.ancillary_.push_back(v);
        break;
    }
  }
  g.adjacency_.resize(g.vertices_.size());
  const auto is_special = [&g](VertexId v) {
    return g.vertices_[v].kind == VertexKind::MagicStorage ||
           g.vertices_[v].kind == VertexKind::Ancillary;
  };
  for (const auto& [coord, v] : ids) {
    const auto [r, c] = coord;
    for (const auto& [nr, nc] : {std::pair{r, c + 1}, std::pair{r + 1, c}}) {
      auto it = ids.find({nr, nc});
      if (it == ids.end()) continue;
      // Neighbouring boundary specials cannot interact; leave them unlinked.
      if (is_special(v) && is_special(it->second)) continue;
      g.adjacency_[v].push_back(it->second);
      g.adjacency_[it->second].push_back(v);
      g.edges_.emplace_back(v, it->second);
    }
  }
  for (auto& nbrs : g.adjacency_) {
    std::sort(nbrs.begin(), nbrs.end());
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  return g;
}

std::vector<VertexId> assign_qubits(std::size_t num_qubits, const LayoutGraph& g,
                                    AssignPolicy policy, std::uint64_t seed) {
  const auto& data = g.data_vertices();
  if (num_qubits > data.size()) {
    throw CapacityError("circuit needs " + std::to_string(num_qubits) +
                        " data vertices but the layout has " + std::to_string(data.size()));
  }
  std::vector<VertexId> order = data;
  if (policy == AssignPolicy::Random) {
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  order.resize(num_qubits);
  return order;
}

std::string layout_spec_to_json(const LayoutSpec& spec) {
  nlohmann::json j;
  j["style"] = std::string(layout_style_name(spec.style));
  j["aisles"] = spec.aisles;
  j["patches_per_aisle"] = spec.patches_per_aisle;
  j["n_storage"] = spec.n_storage;
  j["n_ancillary"] = spec.n_ancillary;
  return j.dump();
}

LayoutSpec layout_spec_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(1, std::string("bad layout JSON: ") + e.what());
  }
  LayoutSpec spec;
  try {
    const auto style = parse_layout_style(j.at("style").get<std::string>());
    if (!style) {
      throw ValidationError("unknown layout style '" + j.at("style").get<std::string>() + "'");
    }
    spec.style = *style;
    spec.aisles = j.at("aisles").get<std::size_t>();
    spec.patches_per_aisle = j.at("patches_per_aisle").get<std::size_t>();
    spec.n_storage = j.at("n_storage").get<std::size_t>();
    spec.n_ancillary = j.at("n_ancillary").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(1, std::string("bad layout JSON: ") + e.what());
  }
  return spec;
}

}  // namespace lss
