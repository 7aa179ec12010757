#include <cmath>

#include "tas/element.hpp"
#include "tas/error.hpp"
#include "tas/femcore.hpp"

namespace tas::femcore {

using meshgen::CellKind;
using meshgen::Mesh;

namespace {

void check_capability(const Mesh& mesh, Family family, int degree) {
  if (degree < 1 || degree > 3)
    throw CapabilityError("build_space: degree must be in 1..3");
  if (mesh.dim == 3) {
    if (family == Family::dg)
      throw CapabilityError("build_space: DG is not implemented on hexahedra");
    if (degree > 2)
      throw CapabilityError("build_space: 3D CG supports degree 1..2 only");
  }
}

int tensor_local_dim(int degree, int dim) {
  int d1 = degree + 1;
  return dim == 3 ? d1 * d1 * d1 : d1 * d1;
}

}  // namespace

FunctionSpace build_space(std::shared_ptr<const Mesh> mesh, Family family,
                          int degree) {
  const Mesh& m = *mesh;
  check_capability(m, family, degree);

  FunctionSpace space;
  space.mesh = std::move(mesh);
  space.family = family;
  space.degree = degree;

  int n = m.n_per_axis;
  int p = degree;
  std::int64_t lat = std::int64_t(p) * n;  // lattice cells per axis

  if (m.cell_kind == CellKind::triangle)
    space.local_dim = (p + 1) * (p + 2) / 2;
  else
    space.local_dim = tensor_local_dim(p, m.dim);

  int n_cells = m.n_cells();
  space.dof_map.resize(std::size_t(n_cells) * space.local_dim);

  if (family == Family::dg) {
    space.n_dofs = std::int64_t(n_cells) * space.local_dim;
    for (std::int64_t d = 0; d < space.n_dofs; ++d) space.dof_map[d] = d;
    return space;
  }

  // CG: dofs live on the global lattice, numbered like mesh vertices.
  auto lat2 = [lat](std::int64_t lx, std::int64_t ly) {
    return lx * (lat + 1) + ly;
  };
  auto lat3 = [lat](std::int64_t lx, std::int64_t ly, std::int64_t lz) {
    return (lx * (lat + 1) + ly) * (lat + 1) + lz;
  };

  if (m.dim == 3) {
    space.n_dofs = (lat + 1) * (lat + 1) * (lat + 1);
    std::size_t out = 0;
    for (int cx = 0; cx < n; ++cx)
      for (int cy = 0; cy < n; ++cy)
        for (int cz = 0; cz < n; ++cz)
          for (int i = 0; i <= p; ++i)
            for (int j = 0; j <= p; ++j)
              for (int k = 0; k <= p; ++k)
                space.dof_map[out++] =
                    lat3(std::int64_t(cx) * p + i, std::int64_t(cy) * p + j,
                         std::int64_t(cz) * p + k);
    for (std::int64_t lx = 0; lx <= lat; ++lx)
      for (std::int64_t ly = 0; ly <= lat; ++ly)
        for (std::int64_t lz = 0; lz <= lat; ++lz)
          if (lx == 0 || lx == lat || ly == 0 || ly == lat || lz == 0 ||
              lz == lat)
            space.constrained_dofs.push_back(lat3(lx, ly, lz));
    return space;
  }

  space.n_dofs = (lat + 1) * (lat + 1);
  if (m.cell_kind == CellKind::quadrilateral) {
    std::size_t out = 0;
    for (int cx = 0; cx < n; ++cx)
      for (int cy = 0; cy < n; ++cy)
        for (int i = 0; i <= p; ++i)
          for (int j = 0; j <= p; ++j)
            space.dof_map[out++] =
                lat2(std::int64_t(cx) * p + i, std::int64_t(cy) * p + j);
  } else {
    // Triangle nodes (i, j) land on the same lattice: the lower triangle at
    // (i+j, j), the upper at (i, i+j).
    TriangleBasis basis = TriangleBasis::make(p);
    std::size_t out = 0;
    for (int cx = 0; cx < n; ++cx) {
      for (int cy = 0; cy < n; ++cy) {
        for (int t = 0; t < 2; ++t) {
          for (int a = 0; a < space.local_dim; ++a) {
            auto [i, j] = basis.nodes[a];
            std::int64_t lx = t == 0 ? i + j : i;
            std::int64_t ly = t == 0 ? j : i + j;
            space.dof_map[out++] = lat2(std::int64_t(cx) * p + lx,
                                        std::int64_t(cy) * p + ly);
          }
        }
      }
    }
  }
  for (std::int64_t lx = 0; lx <= lat; ++lx)
    for (std::int64_t ly = 0; ly <= lat; ++ly)
      if (lx == 0 || lx == lat || ly == 0 || ly == lat)
        space.constrained_dofs.push_back(lat2(lx, ly));
  return space;
}

FunctionSpace build_space(const Mesh& mesh, Family family, int degree) {
  return build_space(std::make_shared<Mesh>(mesh), family, degree);
}

std::vector<std::array<double, 3>> dof_coordinates(const FunctionSpace& space) {
  const Mesh& m = *space.mesh;
  int p = space.degree;
  std::vector<std::array<double, 3>> coords(std::size_t(space.n_dofs));

  if (space.family == Family::cg) {
    std::int64_t lat = std::int64_t(p) * m.n_per_axis;
    double step = 1.0 / double(lat);
    if (m.dim == 3) {
      std::size_t out = 0;
      for (std::int64_t lx = 0; lx <= lat; ++lx)
        for (std::int64_t ly = 0; ly <= lat; ++ly)
          for (std::int64_t lz = 0; lz <= lat; ++lz)
            coords[out++] = {lx * step, ly * step, lz * step};
    } else {
      std::size_t out = 0;
      for (std::int64_t lx = 0; lx <= lat; ++lx)
        for (std::int64_t ly = 0; ly <= lat; ++ly)
          coords[out++] = {lx * step, ly * step, 0.0};
    }
    return coords;
  }

  // DG: nodes cell by cell.
  double h = m.h();
  int n = m.n_per_axis;
  if (m.cell_kind == CellKind::quadrilateral) {
    std::size_t out = 0;
    for (int cx = 0; cx < n; ++cx)
      for (int cy = 0; cy < n; ++cy)
        for (int i = 0; i <= p; ++i)
          for (int j = 0; j <= p; ++j)
            coords[out++] = {(cx + double(i) / p) * h, (cy + double(j) / p) * h,
                             0.0};
  } else {
    TriangleBasis basis = TriangleBasis::make(p);
    std::size_t out = 0;
    for (int cx = 0; cx < n; ++cx) {
      for (int cy = 0; cy < n; ++cy) {
        for (int t = 0; t < 2; ++t) {
          for (int a = 0; a < space.local_dim; ++a) {
            double x = double(basis.nodes[a][0]) / p;
            double y = double(basis.nodes[a][1]) / p;
            // affine maps of the two triangles in a quad
            double px = t == 0 ? x + y : x;
            double py = t == 0 ? y : x + y;
            coords[out++] = {(cx + px) * h, (cy + py) * h, 0.0};
          }
        }
      }
    }
  }
  return coords;
}

std::vector<double> interpolate(const FunctionSpace& space,
                                const ScalarField& f) {
  auto coords = dof_coordinates(space);
  std::vector<double> values(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) values[i] = f(coords[i]);
  return values;
}

std::vector<double> AssembledSystem::expand(
    const std::vector<double>& free_solution) const {
  std::vector<double> full = dirichlet_values;
  for (std::size_t i = 0; i < free_to_global.size(); ++i)
    full[std::size_t(free_to_global[i])] = free_solution[i];
  return full;
}

}  // namespace tas::femcore
