#include "tas/mesh.hpp"

#include "tas/error.hpp"

namespace tas::meshgen {

namespace {

void check_n(int n) {
  if (n < 1) throw InvalidInputError("mesh: n_per_axis must be >= 1");
}

}  // namespace

double Mesh::cell_measure(int) const {
  double h = this->h();
  switch (cell_kind) {
    case CellKind::triangle: return 0.5 * h * h;
    case CellKind::quadrilateral: return h * h;
    case CellKind::hexahedron: return h * h * h;
  }
  return 0.0;
}

Mesh unit_square(int n, CellKind kind) {
  check_n(n);
  if (kind == CellKind::hexahedron)
    throw InvalidInputError("unit_square: hexahedra require unit_cube");

  Mesh mesh;
  mesh.dim = 2;
  mesh.cell_kind = kind;
  mesh.n_per_axis = n;
  double h = 1.0 / n;

  mesh.vertices.reserve(std::size_t(n + 1) * (n + 1));
  for (int ix = 0; ix <= n; ++ix)
    for (int iy = 0; iy <= n; ++iy)
      mesh.vertices.push_back({ix * h, iy * h, 0.0});

  auto vid = [n](int ix, int iy) { return ix * (n + 1) + iy; };

  // Facet helper: local facet ids follow the header conventions.
  auto add_facet = [&mesh](int cell, int local, int v0, int v1) {
    mesh.boundary_facets.push_back({cell, local, {v0, v1, -1, -1}, 2});
  };

  if (kind == CellKind::quadrilateral) {
    mesh.cells.reserve(std::size_t(n) * n * 4);
    for (int ix = 0; ix < n; ++ix) {
      for (int iy = 0; iy < n; ++iy) {
        int a = vid(ix, iy), b = vid(ix + 1, iy);
        int c = vid(ix + 1, iy + 1), d = vid(ix, iy + 1);
        mesh.cells.insert(mesh.cells.end(), {a, b, c, d});
        int cell = ix * n + iy;
        if (ix == 0) add_facet(cell, 0, d, a);
        if (ix == n - 1) add_facet(cell, 1, b, c);
        if (iy == 0) add_facet(cell, 2, a, b);
        if (iy == n - 1) add_facet(cell, 3, c, d);
      }
    }
  } else {
    mesh.cells.reserve(std::size_t(n) * n * 6);
    for (int ix = 0; ix < n; ++ix) {
      for (int iy = 0; iy < n; ++iy) {
        int a = vid(ix, iy), b = vid(ix + 1, iy);
        int c = vid(ix + 1, iy + 1), d = vid(ix, iy + 1);
        mesh.cells.insert(mesh.cells.end(), {a, b, c});  // below the diagonal
        mesh.cells.insert(mesh.cells.end(), {a, c, d});  // above the diagonal
        int lower = 2 * (ix * n + iy), upper = lower + 1;
        if (iy == 0) add_facet(lower, 0, a, b);
        if (ix == n - 1) add_facet(lower, 1, b, c);
        if (iy == n - 1) add_facet(upper, 1, c, d);
        if (ix == 0) add_facet(upper, 2, d, a);
      }
    }
  }
  return mesh;
}

Mesh unit_cube(int n) {
  check_n(n);
  Mesh mesh;
  mesh.dim = 3;
  mesh.cell_kind = CellKind::hexahedron;
  mesh.n_per_axis = n;
  double h = 1.0 / n;

  mesh.vertices.reserve(std::size_t(n + 1) * (n + 1) * (n + 1));
  for (int ix = 0; ix <= n; ++ix)
    for (int iy = 0; iy <= n; ++iy)
      for (int iz = 0; iz <= n; ++iz)
        mesh.vertices.push_back({ix * h, iy * h, iz * h});

  auto vid = [n](int ix, int iy, int iz) {
    return (ix * (n + 1) + iy) * (n + 1) + iz;
  };
  auto add_facet = [&mesh](int cell, int local, std::array<int, 4> v) {
    mesh.boundary_facets.push_back({cell, local, v, 4});
  };

  mesh.cells.reserve(std::size_t(n) * n * n * 8);
  for (int ix = 0; ix < n; ++ix) {
    for (int iy = 0; iy < n; ++iy) {
      for (int iz = 0; iz < n; ++iz) {
        int v000 = vid(ix, iy, iz), v100 = vid(ix + 1, iy, iz);
        int v110 = vid(ix + 1, iy + 1, iz), v010 = vid(ix, iy + 1, iz);
        int v001 = vid(ix, iy, iz + 1), v101 = vid(ix + 1, iy, iz + 1);
        int v111 = vid(ix + 1, iy + 1, iz + 1), v011 = vid(ix, iy + 1, iz + 1);
        mesh.cells.insert(mesh.cells.end(),
                          {v000, v100, v110, v010, v001, v101, v111, v011});
        int cell = (ix * n + iy) * n + iz;
        if (ix == 0) add_facet(cell, 0, {v000, v010, v011, v001});
        if (ix == n - 1) add_facet(cell, 1, {v100, v110, v111, v101});
        if (iy == 0) add_facet(cell, 2, {v000, v100, v101, v001});
        if (iy == n - 1) add_facet(cell, 3, {v010, v110, v111, v011});
        if (iz == 0) add_facet(cell, 4, {v000, v100, v110, v010});
        if (iz == n - 1) add_facet(cell, 5, {v001, v101, v111, v011});
      }
    }
  }
  return mesh;
}

Mesh refine_uniform(const Mesh& mesh) {
  int n2 = 2 * mesh.n_per_axis;
  if (mesh.dim == 3) return unit_cube(n2);
  return unit_square(n2, mesh.cell_kind);
}

std::int64_t interior_facet_count(const Mesh& mesh) {
  std::int64_t n = mesh.n_per_axis;
  switch (mesh.cell_kind) {
    case CellKind::quadrilateral: return 2 * n * (n - 1);
    case CellKind::triangle: return n * n + 2 * n * (n - 1);
    case CellKind::hexahedron: return 3 * n * n * (n - 1);
  }
  return 0;
}

}  // namespace tas::meshgen
