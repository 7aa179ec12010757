#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace tas::meshgen {

enum class CellKind { triangle, quadrilateral, hexahedron };

constexpr int vertices_per_cell(CellKind kind) {
  switch (kind) {
    case CellKind::triangle: return 3;
    case CellKind::quadrilateral: return 4;
    case CellKind::hexahedron: return 8;
  }
  return 0;
}

constexpr int facets_per_cell(CellKind kind) {
  switch (kind) {
    case CellKind::triangle: return 3;
    case CellKind::quadrilateral: return 4;
    case CellKind::hexahedron: return 6;
  }
  return 0;
}

struct BoundaryFacet {
  int cell;                      // owning cell index
  int local_facet;               // facet number within the cell
  std::array<int, 4> vertices;   // global vertex ids; unused slots are -1
  int n_vertices;
};

// Structured mesh of the unit square or cube with n_per_axis cells per axis.
//
// Conventions (fixed so that dof numbering and refinement are reproducible):
//  - vertices are numbered lexicographically by (x, y, z):
//    id = (ix*(n+1) + iy)*(n+1) + iz in 3D, ix*(n+1) + iy in 2D;
//  - quadrilateral (ix, iy) has vertices (a, b, c, d) counterclockwise with
//    a=(ix,iy), b=(ix+1,iy), c=(ix+1,iy+1), d=(ix,iy+1), cell id ix*n + iy;
//  - each quadrilateral splits into triangles along the a->c diagonal:
//    (a, b, c) then (a, c, d), cell ids 2*(ix*n+iy) and 2*(ix*n+iy)+1;
//  - hexahedron (ix, iy, iz) lists its z-low face counterclockwise, then the
//    z-high face, cell id (ix*n + iy)*n + iz;
//  - local facets are axis-ordered: x-low, x-high, y-low, y-high(, z-low,
//    z-high) for tensor cells and the edges (a,b), (b,c), (c,a) for triangles.
struct Mesh {
  int dim = 2;
  CellKind cell_kind = CellKind::quadrilateral;
  int n_per_axis = 1;
  std::vector<std::array<double, 3>> vertices;
  std::vector<int> cells;  // flat, vertices_per_cell(cell_kind) ids per cell
  std::vector<BoundaryFacet> boundary_facets;

  double h() const { return 1.0 / n_per_axis; }
  int n_cells() const { return int(cells.size()) / vertices_per_cell(cell_kind); }
  int n_vertices() const { return int(vertices.size()); }
  std::span<const int> cell(int c) const {
    int stride = vertices_per_cell(cell_kind);
    return {cells.data() + std::size_t(c) * stride, std::size_t(stride)};
  }
  double cell_measure(int c) const;
};

Mesh unit_square(int n, CellKind kind = CellKind::quadrilateral);
Mesh unit_cube(int n);

// Halves h by rebuilding the same structured mesh with 2*n_per_axis cells per
// axis, so refine(refine(unit_square(n))) is identical to unit_square(4n).
Mesh refine_uniform(const Mesh& mesh);

// Interior facets of the structured mesh; each is shared by exactly two cells,
// so n_cells*facets_per_cell == 2*interior + boundary.
std::int64_t interior_facet_count(const Mesh& mesh);

}  // namespace tas::meshgen
