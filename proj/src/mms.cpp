#include <cmath>
#include <numbers>

#include "tas/error.hpp"
#include "tas/femcore.hpp"

namespace tas::femcore {

namespace {
constexpr double pi = std::numbers::pi;
}

MmsCase mms_case(const std::string& id) {
  MmsCase c;
  c.id = id;
  if (id == "test1") {
    c.dim = 2;
    c.exact = [](std::array<double, 3> p) {
      return std::sin(2 * pi * p[0]) * std::sin(2 * pi * p[1]);
    };
    c.source = [](std::array<double, 3> p) {
      return 8 * pi * pi * std::sin(2 * pi * p[0]) * std::sin(2 * pi * p[1]);
    };
  } else if (id == "test2") {
    c.dim = 2;
    c.exact = [](std::array<double, 3> p) {
      return std::sin(2 * pi * p[0] * p[0]) * std::sin(2 * pi * p[1] * p[1]);
    };
    c.source = [](std::array<double, 3> p) {
      double x = p[0], y = p[1];
      double sx = std::sin(2 * pi * x * x), cx = std::cos(2 * pi * x * x);
      double sy = std::sin(2 * pi * y * y), cy = std::cos(2 * pi * y * y);
      return 16 * pi * pi * x * x * sx * sy + 16 * pi * pi * y * y * sx * sy -
             4 * pi * cx * sy - 4 * pi * sx * cy;
    };
  } else if (id == "test3") {
    c.dim = 3;
    c.exact = [](std::array<double, 3> p) {
      return std::sin(2 * pi * p[0]) * std::sin(2 * pi * p[1]) *
             std::sin(2 * pi * p[2]);
    };
    c.source = [](std::array<double, 3> p) {
      return 12 * pi * pi * std::sin(2 * pi * p[0]) * std::sin(2 * pi * p[1]) *
             std::sin(2 * pi * p[2]);
    };
  } else if (id == "test4") {
    c.dim = 3;
    c.exact = [](std::array<double, 3> p) {
      return 5 * std::sin(6 * pi * p[0]) * std::sin(7 * pi * p[1]) *
             std::sin(8 * pi * p[2]);
    };
    c.source = [](std::array<double, 3> p) {
      // (36 + 49 + 64) pi^2 = 149 pi^2 times the solution
      return 149 * pi * pi * 5 * std::sin(6 * pi * p[0]) *
             std::sin(7 * pi * p[1]) * std::sin(8 * pi * p[2]);
    };
  } else {
    throw InvalidInputError("mms_case: unknown case id '" + id +
                            "' (expected test1..test4)");
  }
  return c;
}

}  // namespace tas::femcore
