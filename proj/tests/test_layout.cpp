#include <doctest.h>

#include <set>

#include "lss/layout.hpp"

using namespace lss;

namespace {

LayoutSpec make_spec(LayoutStyle style, std::size_t a, std::size_t p, std::size_t storage = 2,
                     std::size_t ancillary = 1) {
  LayoutSpec spec;
  spec.style = style;
  spec.aisles = a;
  spec.patches_per_aisle = p;
  spec.n_storage = storage;
  spec.n_ancillary = ancillary;
  return spec;
}

}  // namespace

TEST_CASE("one compact patch carries two data qubits") {
  const LayoutGraph g = build_layout(make_spec(LayoutStyle::Compact, 1, 1));
  CHECK(g.data_vertices().size() == 2);
  CHECK(g.storage_vertices().size() == 2);
  CHECK(g.ancillary_vertices().size() == 1);
}

TEST_CASE("parallelizable minus compact bus count is P(2A+1)") {
  const auto delta = [](std::size_t a, std::size_t p) {
    const LayoutGraph compact = build_layout(make_spec(LayoutStyle::Compact, a, p));
    const LayoutGraph parallel = build_layout(make_spec(LayoutStyle::Parallelizable, a, p));
    REQUIRE(parallel.bus_count() > compact.bus_count());
    return parallel.bus_count() - compact.bus_count();
  };
  CHECK(delta(1, 2) == 6);  // 2 * (2*1 + 1)
  for (std::size_t a = 1; a <= 6; ++a) {
    for (std::size_t p = 1; p <= 6; ++p) {
      REQUIRE(delta(a, p) == p * (2 * a + 1));
    }
  }
}

TEST_CASE("layout structural invariants") {
  for (const LayoutStyle style : {LayoutStyle::Compact, LayoutStyle::Parallelizable}) {
    for (std::size_t a = 1; a <= 3; ++a) {
      for (std::size_t p = 1; p <= 3; ++p) {
        const LayoutGraph g = build_layout(make_spec(style, a, p, 3, 2));
        CHECK(g.data_vertices().size() == 2 * a * p);

        // Degree bound and edge symmetry.
        std::set<std::pair<VertexId, VertexId>> edge_set(g.edges().begin(), g.edges().end());
        CHECK(edge_set.size() == g.edges().size());
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
          CHECK(g.neighbors(v).size() <= 4);
          for (VertexId w : g.neighbors(v)) {
            const auto& back = g.neighbors(w);
            CHECK(std::find(back.begin(), back.end(), v) != back.end());
            const int dr = std::abs(g.vertex(v).row - g.vertex(w).row);
            const int dc = std::abs(g.vertex(v).col - g.vertex(w).col);
            CHECK(dr + dc == 1);  // 4-neighbourhood only
          }
        }

        // Every non-bus vertex touches the bus; the bus subgraph is connected.
        std::vector<VertexId> bus;
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
          if (g.kind(v) == VertexKind::Bus) {
            bus.push_back(v);
            continue;
          }
          bool has_bus_neighbor = false;
          for (VertexId w : g.neighbors(v)) {
            has_bus_neighbor = has_bus_neighbor || g.kind(w) == VertexKind::Bus;
          }
          CHECK(has_bus_neighbor);
        }
        std::set<VertexId> seen{bus.front()};
        std::vector<VertexId> stack{bus.front()};
        while (!stack.empty()) {
          const VertexId v = stack.back();
          stack.pop_back();
          for (VertexId w : g.neighbors(v)) {
            if (g.kind(w) == VertexKind::Bus && seen.insert(w).second) stack.push_back(w);
          }
        }
        CHECK(seen.size() == bus.size());
      }
    }
  }
}

TEST_CASE("storage and ancillary vertices sit on the boundary, storage first") {
  const LayoutGraph g = build_layout(make_spec(LayoutStyle::Compact, 1, 2, 3, 2));
  REQUIRE(g.storage_vertices().size() == 3);
  REQUIRE(g.ancillary_vertices().size() == 2);
  for (VertexId v : g.storage_vertices()) {
    CHECK(g.vertex(v).row == -1);  // clockwise from the top-left corner
    CHECK(g.neighbors(v).size() == 1);
    CHECK(g.kind(g.neighbors(v).front()) == VertexKind::Bus);
  }
  // Storage occupies the first boundary slots, ancillary the following ones.
  CHECK(g.vertex(g.storage_vertices()[0]).col == 0);
  CHECK(g.vertex(g.storage_vertices()[1]).col == 1);
  CHECK(g.vertex(g.storage_vertices()[2]).col == 2);
  CHECK(g.vertex(g.ancillary_vertices()[0]).col == 3);
}

TEST_CASE("boundary capacity error") {
  CHECK_THROWS_AS(build_layout(make_spec(LayoutStyle::Compact, 1, 1, 500, 1)), CapacityError);
  CHECK_THROWS_AS(build_layout(make_spec(LayoutStyle::Compact, 0, 1)), ValidationError);
}

TEST_CASE("sequential assignment is row-major over data vertices") {
  const LayoutGraph g = build_layout(make_spec(LayoutStyle::Compact, 1, 1));
  const auto map = assign_qubits(2, g, AssignPolicy::Sequential);
  REQUIRE(map.size() == 2);
  // q0 on the patch's top tile, q1 on the bottom tile.
  CHECK(g.vertex(map[0]).row < g.vertex(map[1]).row);
  CHECK(g.vertex(map[0]).col == g.vertex(map[1]).col);

  CHECK_THROWS_AS(assign_qubits(3, g, AssignPolicy::Sequential), CapacityError);
}

TEST_CASE("random assignment is a seeded permutation") {
  const LayoutGraph g = build_layout(make_spec(LayoutStyle::Parallelizable, 2, 2));
  const auto a = assign_qubits(5, g, AssignPolicy::Random, 99);
  const auto b = assign_qubits(5, g, AssignPolicy::Random, 99);
  CHECK(a == b);
  std::set<VertexId> unique(a.begin(), a.end());
  CHECK(unique.size() == a.size());
  for (VertexId v : a) {
    CHECK(g.kind(v) == VertexKind::Data);
  }
}

TEST_CASE("layout spec JSON round-trip") {
  const LayoutSpec spec = make_spec(LayoutStyle::Parallelizable, 2, 3, 4, 5);
  const LayoutSpec back = layout_spec_from_json(layout_spec_to_json(spec));
  CHECK(back.style == spec.style);
  CHECK(back.aisles == spec.aisles);
  CHECK(back.patches_per_aisle == spec.patches_per_aisle);
  CHECK(back.n_storage == spec.n_storage);
  CHECK(back.n_ancillary == spec.n_ancillary);
  CHECK_THROWS_AS(layout_spec_from_json("{\"style\": \"weird\"}"), ValidationError);
  CHECK_THROWS_AS(layout_spec_from_json("not json"), ParseError);
  CHECK_THROWS_AS(layout_spec_from_json("{\"style\": \"compact\"}"), ParseError);
}
