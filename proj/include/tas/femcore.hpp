#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "tas/linsolve.hpp"
#include "tas/mesh.hpp"

namespace tas::femcore {

enum class Family { cg, dg };

using ScalarField = std::function<double(std::array<double, 3>)>;

// Manufactured Poisson case: -laplace(exact) = source with exact = 0 on the
// boundary of the unit square/cube.
struct MmsCase {
  std::string id;
  int dim = 2;
  ScalarField exact;
  ScalarField source;
};

// Built-in cases: test1/test2 on the unit square, test3/test4 on the cube.
MmsCase mms_case(const std::string& id);

// Scalar Lagrange space. CG spaces of degree p live on the global
// (p*n + 1)^dim lattice, numbered lexicographically by (x, y, z) exactly like
// mesh vertices (the triangle nodes are a subset of the same lattice, so quads
// and triangles of equal degree share dof counts). DG dofs are cell-major
// blocks of local_dim.
struct FunctionSpace {
  std::shared_ptr<const meshgen::Mesh> mesh;
  Family family = Family::cg;
  int degree = 1;
  std::int64_t n_dofs = 0;
  int local_dim = 0;
  std::vector<std::int64_t> dof_map;  // n_cells x local_dim, cell-major
  std::vector<std::int64_t> constrained_dofs;  // sorted boundary dofs; empty for DG

  std::span<const std::int64_t> cell_dofs(int c) const {
    return {dof_map.data() + std::size_t(c) * local_dim, std::size_t(local_dim)};
  }
};

// Supported combinations: 2D quadrilaterals/triangles with CG or SIP-DG for
// degrees 1..3, and 3D hexahedra with CG for degrees 1..2. Anything else
// throws CapabilityError.
FunctionSpace build_space(std::shared_ptr<const meshgen::Mesh> mesh,
                          Family family, int degree);
FunctionSpace build_space(const meshgen::Mesh& mesh, Family family, int degree);

// Node position of every dof (CG lattice points, DG per-cell nodes).
std::vector<std::array<double, 3>> dof_coordinates(const FunctionSpace& space);

// Nodal interpolant of f.
std::vector<double> interpolate(const FunctionSpace& space, const ScalarField& f);

// Constrained linear system: `matrix` and `rhs` cover the free dofs only,
// with the Dirichlet data already lifted into the rhs.
struct AssembledSystem {
  linsolve::SparseMatrix matrix;
  std::vector<double> rhs;
  std::vector<std::int64_t> free_to_global;
  std::vector<double> dirichlet_values;  // length n_dofs, zero at free dofs

  // Scatter a free-dof solution back to a full coefficient vector.
  std::vector<double> expand(const std::vector<double>& free_solution) const;
};

// Interior penalty sigma = (p+1)(p+d)/(2d) and its boundary companion
// gamma = 2*sigma.
struct SipPenalty {
  double sigma;
  double gamma;
};
SipPenalty sip_penalty(int degree, int dim);

// quad_points = 0 selects the degree-exact default (degree + 2 Gauss points
// per direction for cell rules and the matching facet rules). A positive
// value pins the 1D point count for every rule in the assembly; 3 reproduces
// the fixed three-point convention of classic tutorial solvers, which is the
// convention behind part of the bundled reference accuracy tables.
AssembledSystem assemble_cg(const FunctionSpace& space, const MmsCase& mms,
                            int quad_points = 0);

// Symmetric interior penalty DG form. The penalty on a facet is
// sigma * rho_e with the geometric weight rho_e = mean over the adjacent
// cells of area(boundary(E)) / (2 vol(E)) (= 2/h on squares, (2+sqrt(2))/h on
// the structured right triangles); Dirichlet facets use gamma * rho of the
// owning cell. The plain 1/h weight is not coercive for degree >= 2 on these
// meshes, so the geometric weight is the documented form reconstruction.
AssembledSystem assemble_sip_dg(const FunctionSpace& space, const MmsCase& mms,
                                int quad_points = 0);

// Unconstrained stiffness (cell integrals only, no boundary or facet terms);
// every row sums to zero since constants lie in the kernel.
linsolve::SparseMatrix assemble_stiffness(const FunctionSpace& space,
                                          int quad_points = 0);

// Jump-penalty energy sum over facets: sigma*rho_e int [u]^2 on interior
// facets plus gamma*rho int u^2 on boundary facets. Vanishes (to rounding)
// for the DG interpolant of any continuous function that is zero on the
// boundary.
double sip_jump_energy(const FunctionSpace& space,
                       const std::vector<double>& coeffs);

}  // namespace tas::femcore
