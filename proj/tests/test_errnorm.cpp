#include <doctest.h>

#include <cmath>
#include <memory>
#include <vector>

#include "tas/errnorm.hpp"
#include "tas/error.hpp"
#include "tas/femcore.hpp"
#include "tas/mesh.hpp"

using namespace tas;
using femcore::Family;
using meshgen::CellKind;

TEST_SUITE("errnorm") {

TEST_CASE("digits of accuracy and size") {
  CHECK(errnorm::doa(1e-3) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(errnorm::doa(0.5) == doctest::Approx(std::log10(2.0)).epsilon(1e-14));
  CHECK(errnorm::dos(1000) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(errnorm::dos(1) == doctest::Approx(0.0));

  CHECK_THROWS_AS(errnorm::doa(0.0), OutOfDomainError);
  CHECK_THROWS_AS(errnorm::doa(-1.0), OutOfDomainError);
  CHECK_THROWS_AS(errnorm::doa(std::numeric_limits<double>::infinity()),
                  OutOfDomainError);
  CHECK_THROWS_AS(errnorm::doa(std::nan("")), OutOfDomainError);
  CHECK_THROWS_AS(errnorm::dos(0), OutOfDomainError);
  CHECK_THROWS_AS(errnorm::dos(-5), OutOfDomainError);
}

TEST_CASE("zero coefficients measure the norm of the exact solution") {
  // ||sin(2 pi x) sin(2 pi y)||_{L2} = 1/2 on the unit square;
  // the 3D analogue with three sine factors gives sqrt(1/8).
  femcore::MmsCase t1 = femcore::mms_case("test1");
  for (CellKind kind : {CellKind::quadrilateral, CellKind::triangle}) {
    auto mesh = std::make_shared<meshgen::Mesh>(meshgen::unit_square(7, kind));
    femcore::FunctionSpace space = femcore::build_space(mesh, Family::cg, 2);
    std::vector<double> zero(std::size_t(space.n_dofs), 0.0);
    CHECK(errnorm::l2_error(space, zero, t1.exact) ==
          doctest::Approx(0.5).epsilon(1e-9));
  }
  femcore::MmsCase t3 = femcore::mms_case("test3");
  auto cube = std::make_shared<meshgen::Mesh>(meshgen::unit_cube(5));
  femcore::FunctionSpace space = femcore::build_space(cube, Family::cg, 2);
  std::vector<double> zero(std::size_t(space.n_dofs), 0.0);
  CHECK(errnorm::l2_error(space, zero, t3.exact) ==
        doctest::Approx(std::sqrt(0.125)).epsilon(1e-9));
}

TEST_CASE("quadrature overrides change the rule, refined rules converge") {
  femcore::MmsCase t2 = femcore::mms_case("test2");
  auto mesh = std::make_shared<meshgen::Mesh>(
      meshgen::unit_square(4, CellKind::quadrilateral));
  femcore::FunctionSpace space = femcore::build_space(mesh, Family::cg, 3);
  std::vector<double> coeffs = femcore::interpolate(space, t2.exact);

  double adapted = errnorm::l2_error(space, coeffs, t2.exact);
  double coarse = errnorm::l2_error(space, coeffs, t2.exact, 4, 2);

  // two points per direction cannot integrate a cubic's square
  CHECK(std::abs(coarse - adapted) / adapted > 1e-6);

  // the default for degree 3 with boost 4 is six points per direction, so an
  // explicit override of six must reproduce it bit for bit; same for boost 8
  // against an override of eight
  CHECK(errnorm::l2_error(space, coeffs, t2.exact, 4, 6) == adapted);
  CHECK(errnorm::l2_error(space, coeffs, t2.exact, 8) ==
        errnorm::l2_error(space, coeffs, t2.exact, 4, 8));

  // refining the rule converges: the tail left at ten points is a small
  // fraction of the tail left at six
  double e10 = errnorm::l2_error(space, coeffs, t2.exact, 4, 10);
  double e12 = errnorm::l2_error(space, coeffs, t2.exact, 4, 12);
  CHECK(std::abs(e10 - e12) < 1e-2 * std::abs(adapted - e12));
  CHECK(std::abs(e10 - e12) / e12 < 1e-6);
}

TEST_CASE("coefficient vector must match the space") {
  femcore::MmsCase t1 = femcore::mms_case("test1");
  auto mesh = std::make_shared<meshgen::Mesh>(
      meshgen::unit_square(3, CellKind::quadrilateral));
  femcore::FunctionSpace space = femcore::build_space(mesh, Family::cg, 1);
  std::vector<double> wrong(std::size_t(space.n_dofs) + 1, 0.0);
  CHECK_THROWS_AS(errnorm::l2_error(space, wrong, t1.exact), InvalidInputError);
}

}  // TEST_SUITE
