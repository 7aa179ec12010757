#pragma once

#include <array>
#include <vector>

namespace tas::femcore {

// Lagrange basis of degree <= 3 on [0,1] with equispaced nodes k/degree,
// stored as monomial coefficients (tiny Vandermonde inverse).
struct Lagrange1D {
  int degree = 1;
  std::array<std::array<double, 4>, 4> coeff{};  // coeff[i][k] x^k of basis i

  static Lagrange1D make(int degree);
  // values/derivs must hold degree+1 entries.
  void eval(double x, double* values, double* derivs) const;
};

// Total-degree Lagrange basis on the reference triangle (0,0)-(1,0)-(0,1),
// nodes (i/p, j/p) with i+j <= p, enumerated j-outer then i.
struct TriangleBasis {
  int degree = 1;
  int local_dim = 3;
  std::vector<std::array<int, 2>> nodes;  // (i, j) lattice indices
  std::vector<double> coeff;              // local_dim x local_dim monomial rows

  static TriangleBasis make(int degree);
  // values/dx/dy must hold local_dim entries.
  void eval(double x, double y, double* values, double* dx, double* dy) const;
};

}  // namespace tas::femcore
