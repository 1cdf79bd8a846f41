#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lss/errors.hpp"
#include "lss/pauli.hpp"

namespace lss {

enum class LayoutStyle : std::uint8_t { Compact, Parallelizable };

std::string_view layout_style_name(LayoutStyle style);
std::optional<LayoutStyle> parse_layout_style(std::string_view name);

/// Central-zone parameters: A aisles of P two-qubit data patches each, plus
/// boundary magic-state storage and ancillary qubits. Data capacity is 2*A*P.
struct LayoutSpec {
  LayoutStyle style = LayoutStyle::Compact;
  std::size_t aisles = 1;
  std::size_t patches_per_aisle = 1;
  std::size_t n_storage = 1;
  std::size_t n_ancillary = 1;

  std::size_t data_capacity() const { return 2 * aisles * patches_per_aisle; }
};

enum class VertexKind : std::uint8_t { Bus, Data, MagicStorage, Ancillary };

using VertexId = std::uint32_t;

struct LayoutVertex {
  VertexKind kind;
  int row;
  int col;
};

/// Adjacency graph of the logical tiles: typed vertices on grid coordinates
/// with edges between 4-neighbouring tiles. Immutable once built.
class LayoutGraph {
 public:
  const LayoutSpec& spec() const { return spec_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  const LayoutVertex& vertex(VertexId v) const { return vertices_[v]; }
  VertexKind kind(VertexId v) const { return vertices_[v].kind; }
  const std::vector<VertexId>& neighbors(VertexId v) const { return adjacency_[v]; }
  const std::vector<std::pair<VertexId, VertexId>>& edges() const { return edges_; }

  /// Data vertices in row-major order.
  const std::vector<VertexId>& data_vertices() const { return data_; }
  const std::vector<VertexId>& storage_vertices() const { return storage_; }
  const std::vector<VertexId>& ancillary_vertices() const { return ancillary_; }

  std::size_t bus_count() const { return bus_count_; }
  std::optional<VertexId> at(int row, int col) const;

  friend LayoutGraph build_layout(const LayoutSpec& spec);

 private:
  LayoutSpec spec_;
  std::vector<LayoutVertex> vertices_;
  std::vector<std::vector<VertexId>> adjacency_;
  std::vector<std::pair<VertexId, VertexId>> edges_;
  std::vector<VertexId> data_;
  std::vector<VertexId> storage_;
  std::vector<VertexId> ancillary_;
  std::size_t bus_count_ = 0;
  int rows_ = 0;
  int cols_ = 0;
};

/// Constructs the central-zone graph for the given spec. Both styles share
/// one bounding box and boundary bus ring; the parallelizable style fills in
/// one two-tile bus column beside every patch plus a top bus aisle of P
/// tiles, which is exactly P*(2A+1) extra bus tiles over compact. Storage and
/// ancillary vertices sit just outside the ring, storage first, clockwise
/// from the top-left corner. Throws CapacityError when the boundary cannot
/// hold them all.
LayoutGraph build_layout(const LayoutSpec& spec);

enum class AssignPolicy : std::uint8_t { Sequential, Random };

/// Injective map from circuit qubits to data vertices. Sequential maps qubit
/// k to the k-th data vertex in row-major order; Random applies a seeded
/// permutation. Throws CapacityError when the layout has too few data
/// vertices.
std::vector<VertexId> assign_qubits(std::size_t num_qubits, const LayoutGraph& g,
                                    AssignPolicy policy, std::uint64_t seed = 0);

std::string layout_spec_to_json(const LayoutSpec& spec);
LayoutSpec layout_spec_from_json(const std::string& text);

}  // namespace lss
