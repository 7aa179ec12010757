#pragma once

#include <vector>

namespace tas::quadrature {

// Gauss-Legendre rule mapped to [0,1]; exact for polynomials of degree 2m-1.
struct Rule1D {
  std::vector<double> points;
  std::vector<double> weights;
};

Rule1D gauss_legendre(int m);

// Product rule on the reference triangle (0,0)-(1,0)-(0,1), built by collapsing
// an m x m Gauss-Legendre grid (Duffy transform). Weights sum to 1/2 and the
// rule is exact for total degree 2m-2.
struct TriangleRule {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> w;
};

TriangleRule duffy_triangle(int m);

}  // namespace tas::quadrature
