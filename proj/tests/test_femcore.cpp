#include <doctest.h>

#include <cmath>
#include <memory>
#include <vector>

#include "tas/errnorm.hpp"
#include "tas/error.hpp"
#include "tas/femcore.hpp"
#include "tas/linsolve.hpp"
#include "tas/mesh.hpp"

using namespace tas;
using femcore::Family;
using meshgen::CellKind;

namespace {

std::shared_ptr<meshgen::Mesh> make_mesh(CellKind kind, int n) {
  return std::make_shared<meshgen::Mesh>(kind == CellKind::hexahedron
                                             ? meshgen::unit_cube(n)
                                             : meshgen::unit_square(n, kind));
}

// Full pipeline: mesh -> space -> assemble -> solve -> L2 error.
double solve_err(const std::string& case_id, CellKind kind, Family family,
                 int degree, int n, int quad_points = 0) {
  femcore::MmsCase mms = femcore::mms_case(case_id);
  auto mesh = make_mesh(kind, n);
  femcore::FunctionSpace space = femcore::build_space(mesh, family, degree);
  femcore::AssembledSystem sys =
      family == Family::cg ? femcore::assemble_cg(space, mms, quad_points)
                           : femcore::assemble_sip_dg(space, mms, quad_points);
  linsolve::SolveReport rep = linsolve::pcg(
      sys.matrix, sys.rhs, linsolve::Preconditioner::ssor, 1e-12, 0);
  REQUIRE(rep.converged);
  std::vector<double> u = sys.expand(rep.solution);
  return errnorm::l2_error(space, u, mms.exact, 4, quad_points);
}

}  // namespace

TEST_SUITE("femcore") {

TEST_CASE("manufactured cases: values and source consistency") {
  femcore::MmsCase t1 = femcore::mms_case("test1");
  CHECK(t1.dim == 2);
  CHECK(t1.exact({0.25, 0.25, 0.0}) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(t1.source({0.25, 0.25, 0.0}) ==
        doctest::Approx(8.0 * M_PI * M_PI).epsilon(1e-14));

  femcore::MmsCase t3 = femcore::mms_case("test3");
  CHECK(t3.dim == 3);
  CHECK(t3.exact({0.25, 0.25, 0.25}) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(t3.source({0.25, 0.25, 0.25}) ==
        doctest::Approx(12.0 * M_PI * M_PI).epsilon(1e-14));

  femcore::MmsCase t4 = femcore::mms_case("test4");
  std::array<double, 3> p4 = {0.1, 0.2, 0.3};
  CHECK(t4.source(p4) ==
        doctest::Approx(149.0 * M_PI * M_PI * t4.exact(p4)).epsilon(1e-12));

  // -laplace(u) == f for the non-polynomial case, by central differences
  femcore::MmsCase t2 = femcore::mms_case("test2");
  std::array<double, 3> p = {0.3, 0.7, 0.0};
  double fd = 1e-5, lap = 0.0;
  for (int axis = 0; axis < 2; ++axis) {
    auto hi = p, lo = p;
    hi[std::size_t(axis)] += fd;
    lo[std::size_t(axis)] -= fd;
    lap += (t2.exact(hi) - 2.0 * t2.exact(p) + t2.exact(lo)) / (fd * fd);
  }
  CHECK(-lap == doctest::Approx(t2.source(p)).epsilon(1e-5));

  CHECK_THROWS_AS(femcore::mms_case("test9"), InvalidInputError);
}

TEST_CASE("space construction: dof counts and constraints") {
  CHECK(femcore::build_space(*make_mesh(CellKind::quadrilateral, 2), Family::cg, 1)
            .n_dofs == 9);
  CHECK(femcore::build_space(*make_mesh(CellKind::quadrilateral, 2), Family::cg, 2)
            .n_dofs == 25);
  CHECK(femcore::build_space(*make_mesh(CellKind::triangle, 2), Family::cg, 2)
            .n_dofs == 25);
  CHECK(femcore::build_space(*make_mesh(CellKind::quadrilateral, 2), Family::dg, 2)
            .n_dofs == 36);
  CHECK(femcore::build_space(*make_mesh(CellKind::triangle, 10), Family::dg, 1)
            .n_dofs == 600);
  CHECK(femcore::build_space(*make_mesh(CellKind::triangle, 10), Family::dg, 2)
            .n_dofs == 1200);
  CHECK(femcore::build_space(*make_mesh(CellKind::hexahedron, 4), Family::cg, 1)
            .n_dofs == 125);

  femcore::FunctionSpace q1 =
      femcore::build_space(make_mesh(CellKind::quadrilateral, 2), Family::cg, 1);
  CHECK(q1.constrained_dofs.size() == 8);
  // cell (0,0) in lattice order: (0,0), (0,1), (1,0), (1,1)
  auto dofs = q1.cell_dofs(0);
  CHECK(dofs[0] == 0);
  CHECK(dofs[1] == 1);
  CHECK(dofs[2] == 3);
  CHECK(dofs[3] == 4);

  femcore::FunctionSpace q2 =
      femcore::build_space(make_mesh(CellKind::quadrilateral, 2), Family::cg, 2);
  CHECK(q2.constrained_dofs.size() == 16);

  femcore::FunctionSpace dg =
      femcore::build_space(make_mesh(CellKind::quadrilateral, 2), Family::dg, 1);
  CHECK(dg.constrained_dofs.empty());
}

TEST_CASE("capability limits") {
  auto cube = make_mesh(CellKind::hexahedron, 2);
  CHECK_THROWS_AS(femcore::build_space(cube, Family::dg, 1), CapabilityError);
  CHECK_THROWS_AS(femcore::build_space(cube, Family::cg, 3), CapabilityError);
  auto square = make_mesh(CellKind::quadrilateral, 2);
  CHECK_THROWS_AS(femcore::build_space(square, Family::cg, 0), CapabilityError);
  CHECK_THROWS_AS(femcore::build_space(square, Family::cg, 4), CapabilityError);
  CHECK_NOTHROW(femcore::build_space(make_mesh(CellKind::triangle, 2),
                                     Family::dg, 3));
}

TEST_CASE("nodal interpolation reproduces functions inside the space") {
  struct Probe {
    CellKind kind;
    Family family;
    int degree;
    femcore::ScalarField f;
  };
  std::vector<Probe> probes = {
      {CellKind::quadrilateral, Family::cg, 2,
       [](std::array<double, 3> p) { return p[0] * p[0] + p[1] * p[1] - p[0] * p[1]; }},
      {CellKind::triangle, Family::cg, 2,
       [](std::array<double, 3> p) { return p[0] * p[0] + p[1] * p[1] - p[0] * p[1]; }},
      {CellKind::quadrilateral, Family::dg, 3,
       [](std::array<double, 3> p) { return p[0] * p[0] * p[0] * p[1] - p[1] * p[1]; }},
      {CellKind::triangle, Family::dg, 3,
       [](std::array<double, 3> p) { return p[0] * p[0] * p[0] - 2.0 * p[0] * p[1] * p[1]; }},
      {CellKind::hexahedron, Family::cg, 2,
       [](std::array<double, 3> p) { return p[0] * p[0] + p[1] * p[2]; }},
  };
  for (const Probe& probe : probes) {
    auto mesh = make_mesh(probe.kind, probe.kind == CellKind::hexahedron ? 2 : 3);
    femcore::FunctionSpace space =
        femcore::build_space(mesh, probe.family, probe.degree);
    std::vector<double> coeffs = femcore::interpolate(space, probe.f);
    CHECK(errnorm::l2_error(space, coeffs, probe.f) < 1e-12);
  }
}

TEST_CASE("sip penalty follows (p+1)(p+d)/(2d)") {
  CHECK(femcore::sip_penalty(1, 2).sigma == doctest::Approx(1.5));
  CHECK(femcore::sip_penalty(1, 2).gamma == doctest::Approx(3.0));
  CHECK(femcore::sip_penalty(2, 2).sigma == doctest::Approx(3.0));
  CHECK(femcore::sip_penalty(3, 2).sigma == doctest::Approx(5.0));
  CHECK(femcore::sip_penalty(1, 3).sigma == doctest::Approx(4.0 / 3.0));
}

TEST_CASE("single-free-dof CG1 system has the classic 8/3 diagonal") {
  femcore::MmsCase mms = femcore::mms_case("test1");
  femcore::FunctionSpace space =
      femcore::build_space(make_mesh(CellKind::quadrilateral, 2), Family::cg, 1);
  femcore::AssembledSystem sys = femcore::assemble_cg(space, mms);
  REQUIRE(sys.matrix.n == 1);
  REQUIRE(sys.matrix.nnz() == 1);
  CHECK(sys.matrix.values[0] == doctest::Approx(8.0 / 3.0).epsilon(1e-14));
  CHECK(sys.free_to_global.size() == 1);
  CHECK(sys.free_to_global[0] == 4);  // the center vertex
  CHECK(sys.dirichlet_values.size() == 9);
}

TEST_CASE("unconstrained stiffness annihilates constants") {
  for (CellKind kind : {CellKind::quadrilateral, CellKind::triangle}) {
    for (Family family : {Family::cg, Family::dg}) {
      femcore::FunctionSpace space =
          femcore::build_space(make_mesh(kind, 3), family, 2);
      linsolve::SparseMatrix a = femcore::assemble_stiffness(space);
      std::vector<double> ones(std::size_t(space.n_dofs), 1.0);
      std::vector<double> y(std::size_t(space.n_dofs), 0.0);
      a.multiply(ones.data(), y.data());
      double worst = 0.0;
      for (double v : y) worst = std::max(worst, std::abs(v));
      CHECK(worst < 1e-12);
    }
  }
}

TEST_CASE("assembled SIP systems are symmetric") {
  femcore::MmsCase mms = femcore::mms_case("test2");
  for (CellKind kind : {CellKind::quadrilateral, CellKind::triangle}) {
    femcore::FunctionSpace space =
        femcore::build_space(make_mesh(kind, 3), Family::dg, 2);
    femcore::AssembledSystem sys = femcore::assemble_sip_dg(space, mms);
    std::int64_t n = sys.matrix.n;
    std::vector<double> dense(std::size_t(n) * std::size_t(n), 0.0);
    double scale = 0.0;
    for (std::int64_t r = 0; r < n; ++r)
      for (std::int64_t k = sys.matrix.row_offsets[std::size_t(r)];
           k < sys.matrix.row_offsets[std::size_t(r) + 1]; ++k) {
        dense[std::size_t(r) * std::size_t(n) +
              std::size_t(sys.matrix.col_indices[std::size_t(k)])] =
            sys.matrix.values[std::size_t(k)];
        scale = std::max(scale, std::abs(sys.matrix.values[std::size_t(k)]));
      }
    double worst = 0.0;
    for (std::int64_t r = 0; r < n; ++r)
      for (std::int64_t c = 0; c < n; ++c)
        worst = std::max(worst,
                         std::abs(dense[std::size_t(r) * std::size_t(n) + std::size_t(c)] -
                                  dense[std::size_t(c) * std::size_t(n) + std::size_t(r)]));
    CHECK(worst <= 1e-12 * scale);
  }
}

TEST_CASE("jump energy: zero for conforming zero-boundary data, exact for x+y") {
  // continuous Q2 bubble, zero on the boundary: every penalty term vanishes
  femcore::FunctionSpace q2 =
      femcore::build_space(make_mesh(CellKind::quadrilateral, 3), Family::dg, 2);
  auto bubble = [](std::array<double, 3> p) {
    return p[0] * (1.0 - p[0]) * p[1] * (1.0 - p[1]);
  };
  CHECK(femcore::sip_jump_energy(q2, femcore::interpolate(q2, bubble)) < 1e-18);

  // u = x + y is continuous, so only the boundary terms survive:
  //   gamma * rho * integral of u^2 over the boundary, in closed form
  auto linear = [](std::array<double, 3> p) { return p[0] + p[1]; };
  int n = 2;
  femcore::FunctionSpace dq =
      femcore::build_space(make_mesh(CellKind::quadrilateral, n), Family::dg, 1);
  CHECK(femcore::sip_jump_energy(dq, femcore::interpolate(dq, linear)) ==
        doctest::Approx(32.0 * n).epsilon(1e-12));
  femcore::FunctionSpace dt =
      femcore::build_space(make_mesh(CellKind::triangle, n), Family::dg, 1);
  CHECK(femcore::sip_jump_energy(dt, femcore::interpolate(dt, linear)) ==
        doctest::Approx(16.0 * (2.0 + std::sqrt(2.0)) * n).epsilon(1e-12));

  // a one-cell indicator is discontinuous: the energy must be positive
  std::vector<double> indicator(std::size_t(dq.n_dofs), 0.0);
  for (std::int64_t d : dq.cell_dofs(0)) indicator[std::size_t(d)] = 1.0;
  CHECK(femcore::sip_jump_energy(dq, indicator) > 1.0);
}

TEST_CASE("assembly input checking") {
  femcore::MmsCase t1 = femcore::mms_case("test1");
  femcore::MmsCase t3 = femcore::mms_case("test3");
  femcore::FunctionSpace cg =
      femcore::build_space(make_mesh(CellKind::quadrilateral, 2), Family::cg, 1);
  femcore::FunctionSpace dg =
      femcore::build_space(make_mesh(CellKind::quadrilateral, 2), Family::dg, 1);
  CHECK_THROWS_AS(femcore::assemble_cg(dg, t1), InvalidInputError);
  CHECK_THROWS_AS(femcore::assemble_sip_dg(cg, t1), InvalidInputError);
  CHECK_THROWS_AS(femcore::assemble_cg(cg, t3), InvalidInputError);
}

// End-to-end accuracy oracles.  The values below were frozen from an
// independent prototype of the same discretizations and rules; they pin the
// full pipeline to six significant digits.
TEST_CASE("frozen accuracy oracles: CG quads") {
  CHECK(solve_err("test1", CellKind::quadrilateral, Family::cg, 1, 2) ==
        doctest::Approx(4.99466082350436e-01).epsilon(1e-6));
  CHECK(solve_err("test1", CellKind::quadrilateral, Family::cg, 1, 4) ==
        doctest::Approx(1.21817663829531e-01).epsilon(1e-6));
  CHECK(solve_err("test1", CellKind::quadrilateral, Family::cg, 1, 10) ==
        doctest::Approx(1.94536021572939e-02).epsilon(1e-6));
  CHECK(solve_err("test2", CellKind::quadrilateral, Family::cg, 2, 10) ==
        doctest::Approx(2.64403208191421e-03).epsilon(1e-6));
  CHECK(solve_err("test2", CellKind::quadrilateral, Family::cg, 3, 10) ==
        doctest::Approx(2.25118085778524e-04).epsilon(1e-6));
}

TEST_CASE("frozen accuracy oracles: the fixed three-point convention") {
  CHECK(solve_err("test2", CellKind::quadrilateral, Family::cg, 1, 10, 3) ==
        doctest::Approx(3.55569869094412e-02).epsilon(1e-6));
  CHECK(solve_err("test2", CellKind::quadrilateral, Family::cg, 2, 10, 3) ==
        doctest::Approx(2.20425337457247e-03).epsilon(1e-6));
  CHECK(solve_err("test2", CellKind::quadrilateral, Family::cg, 3, 10, 3) ==
        doctest::Approx(3.11663341349138e-04).epsilon(1e-6));
  // under the adapted rules the same solves land elsewhere
  CHECK(solve_err("test2", CellKind::quadrilateral, Family::cg, 1, 10) ==
        doctest::Approx(3.55309681025978e-02).epsilon(1e-6));
}

TEST_CASE("frozen accuracy oracles: CG triangles") {
  CHECK(solve_err("test2", CellKind::triangle, Family::cg, 1, 10) ==
        doctest::Approx(7.17760092690226e-02).epsilon(1e-6));
  CHECK(solve_err("test2", CellKind::triangle, Family::cg, 2, 10) ==
        doctest::Approx(4.96497123727685e-03).epsilon(1e-6));
  CHECK(solve_err("test2", CellKind::triangle, Family::cg, 3, 10) ==
        doctest::Approx(5.01657316195368e-04).epsilon(1e-6));
}

TEST_CASE("frozen accuracy oracles: SIP-DG") {
  CHECK(solve_err("test1", CellKind::quadrilateral, Family::dg, 1, 4) ==
        doctest::Approx(9.00964977814872e-02).epsilon(1e-6));
  CHECK(solve_err("test2", CellKind::quadrilateral, Family::dg, 1, 10) ==
        doctest::Approx(2.95787838350823e-02).epsilon(1e-6));
  CHECK(solve_err("test2", CellKind::quadrilateral, Family::dg, 2, 10) ==
        doctest::Approx(1.75973584486621e-03).epsilon(1e-6));
  CHECK(solve_err("test2", CellKind::triangle, Family::dg, 1, 10) ==
        doctest::Approx(4.05360006901755e-02).epsilon(1e-6));
  CHECK(solve_err("test2", CellKind::triangle, Family::dg, 2, 10) ==
        doctest::Approx(3.22376263152592e-03).epsilon(1e-6));
}

TEST_CASE("frozen accuracy oracles: 3D hexes") {
  CHECK(solve_err("test3", CellKind::hexahedron, Family::cg, 1, 4) ==
        doctest::Approx(9.55096320113073e-02).epsilon(1e-6));
  CHECK(solve_err("test3", CellKind::hexahedron, Family::cg, 2, 2) ==
        doctest::Approx(2.39615661952100e-02).epsilon(1e-6));
}

TEST_CASE("DG3 converges at fourth order") {
  double coarse = solve_err("test1", CellKind::quadrilateral, Family::dg, 3, 2);
  double fine = solve_err("test1", CellKind::quadrilateral, Family::dg, 3, 4);
  CHECK(coarse / fine > 10.0);
}

}  // TEST_SUITE
