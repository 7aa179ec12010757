#include "tas/element.hpp"

#include <cmath>
#include <cstddef>

#include "tas/error.hpp"

namespace tas::femcore {

namespace {

// Gauss-Jordan inverse with partial pivoting for the small Vandermonde
// systems (at most 10x10 for cubic triangles).
std::vector<double> invert(std::vector<double> a, int n) {
  std::vector<double> inv(std::size_t(n) * n, 0.0);
  for (int i = 0; i < n; ++i) inv[std::size_t(i) * n + i] = 1.0;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[std::size_t(r) * n + col]) >
          std::abs(a[std::size_t(pivot) * n + col]))
        pivot = r;
    for (int k = 0; k < n; ++k) {
      std::swap(a[std::size_t(col) * n + k], a[std::size_t(pivot) * n + k]);
      std::swap(inv[std::size_t(col) * n + k], inv[std::size_t(pivot) * n + k]);
    }
    double d = a[std::size_t(col) * n + col];
    for (int k = 0; k < n; ++k) {
      a[std::size_t(col) * n + k] /= d;
      inv[std::size_t(col) * n + k] /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      double f = a[std::size_t(r) * n + col];
      if (f == 0.0) continue;
      for (int k = 0; k < n; ++k) {
        a[std::size_t(r) * n + k] -= f * a[std::size_t(col) * n + k];
        inv[std::size_t(r) * n + k] -= f * inv[std::size_t(col) * n + k];
      }
    }
  }
  return inv;
}

}  // namespace

Lagrange1D Lagrange1D::make(int degree) {
  if (degree < 1 || degree > 3)
    throw CapabilityError("Lagrange1D: degree must be in 1..3");
  int n = degree + 1;
  std::vector<double> v(std::size_t(n) * n);
  for (int i = 0; i < n; ++i) {
    double x = double(i) / degree;
    double p = 1.0;
    for (int k = 0; k < n; ++k) {
      v[std::size_t(i) * n + k] = p;
      p *= x;
    }
  }
  // Row i of V^-T holds the monomial coefficients of the basis function that
  // is 1 at node i and 0 at the others.
  std::vector<double> vinv = invert(std::move(v), n);
  Lagrange1D basis;
  basis.degree = degree;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      basis.coeff[i][k] = vinv[std::size_t(k) * n + i];
  return basis;
}

void Lagrange1D::eval(double x, double* values, double* derivs) const {
  int n = degree + 1;
  for (int i = 0; i < n; ++i) {
    double v = coeff[i][n - 1];
    double d = 0.0;
    for (int k = n - 2; k >= 0; --k) {
      d = d * x + v;
      v = v * x + coeff[i][k];
    }
    values[i] = v;
    derivs[i] = d;
  }
}

TriangleBasis TriangleBasis::make(int degree) {
  if (degree < 1 || degree > 3)
    throw CapabilityError("TriangleBasis: degree must be in 1..3");
  TriangleBasis basis;
  basis.degree = degree;
  basis.local_dim = (degree + 1) * (degree + 2) / 2;
  int n = basis.local_dim;

  for (int j = 0; j <= degree; ++j)
    for (int i = 0; i + j <= degree; ++i)
      basis.nodes.push_back({i, j});

  // Monomials x^a y^b with a+b <= degree, enumerated like the nodes.
  std::vector<std::array<int, 2>> mono;
  for (int b = 0; b <= degree; ++b)
    for (int a = 0; a + b <= degree; ++a)
      mono.push_back({a, b});

  std::vector<double> v(std::size_t(n) * n);
  for (int r = 0; r < n; ++r) {
    double x = double(basis.nodes[r][0]) / degree;
    double y = double(basis.nodes[r][1]) / degree;
    for (int c = 0; c < n; ++c)
      v[std::size_t(r) * n + c] =
          std::pow(x, mono[c][0]) * std::pow(y, mono[c][1]);
  }
  std::vector<double> vinv = invert(std::move(v), n);
  basis.coeff.resize(std::size_t(n) * n);
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < n; ++c)
      basis.coeff[std::size_t(i) * n + c] = vinv[std::size_t(c) * n + i];
  return basis;
}

void TriangleBasis::eval(double x, double y, double* values, double* dx,
                         double* dy) const {
  int n = local_dim;
  // Monomial powers and their derivatives at (x, y), in coefficient order.
  double mx[10], my[10], mdx[10], mdy[10];
  {
    int c = 0;
    for (int b = 0; b <= degree; ++b) {
      for (int a = 0; a + b <= degree; ++a) {
        double xa = std::pow(x, a), yb = std::pow(y, b);
        mx[c] = xa * yb;
        mdx[c] = a == 0 ? 0.0 : a * std::pow(x, a - 1) * yb;
        mdy[c] = b == 0 ? 0.0 : b * xa * std::pow(y, b - 1);
        my[c] = 0.0;
        ++c;
      }
    }
  }
  (void)my;
  for (int i = 0; i < n; ++i) {
    const double* row = coeff.data() + std::size_t(i) * n;
    double v = 0.0, gx = 0.0, gy = 0.0;
    for (int c = 0; c < n; ++c) {
      v += row[c] * mx[c];
      gx += row[c] * mdx[c];
      gy += row[c] * mdy[c];
    }
    values[i] = v;
    dx[i] = gx;
    dy[i] = gy;
  }
}

}  // namespace tas::femcore
