#pragma once

// Shared cell-evaluation tables used by assembly and error integration.

#include <vector>

#include "tas/element.hpp"
#include "tas/quadrature.hpp"

namespace tas::femcore::detail {

// 1D Lagrange values/derivatives tabulated at an m-point Gauss rule.
struct Tensor1D {
  int p = 1;
  int m = 1;
  quadrature::Rule1D rule;
  std::vector<double> val;  // [q * (p+1) + i]
  std::vector<double> der;

  double v(int q, int i) const { return val[std::size_t(q) * (p + 1) + i]; }
  double d(int q, int i) const { return der[std::size_t(q) * (p + 1) + i]; }
};

inline Tensor1D make_tensor1d(int p, int m) {
  Tensor1D t;
  t.p = p;
  t.m = m;
  t.rule = quadrature::gauss_legendre(m);
  Lagrange1D basis = Lagrange1D::make(p);
  t.val.resize(std::size_t(m) * (p + 1));
  t.der.resize(std::size_t(m) * (p + 1));
  for (int q = 0; q < m; ++q)
    basis.eval(t.rule.points[q], &t.val[std::size_t(q) * (p + 1)],
               &t.der[std::size_t(q) * (p + 1)]);
  return t;
}

// 1D stiffness and mass matrices of the tabulated basis on [0,1].
inline void one_d_matrices(const Tensor1D& t, std::vector<double>& k1,
                           std::vector<double>& m1) {
  int n = t.p + 1;
  k1.assign(std::size_t(n) * n, 0.0);
  m1.assign(std::size_t(n) * n, 0.0);
  for (int q = 0; q < t.m; ++q) {
    double w = t.rule.weights[q];
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        k1[std::size_t(i) * n + j] += w * t.d(q, i) * t.d(q, j);
        m1[std::size_t(i) * n + j] += w * t.v(q, i) * t.v(q, j);
      }
    }
  }
}

// Triangle basis values and reference gradients at a Duffy rule.
struct TriTable {
  TriangleBasis basis;
  quadrature::TriangleRule rule;
  int nq = 0;
  std::vector<double> val;  // [q * local_dim + a]
  std::vector<double> gx;
  std::vector<double> gy;

  double v(int q, int a) const { return val[std::size_t(q) * basis.local_dim + a]; }
};

inline TriTable make_tri_table(int p, int m) {
  TriTable t;
  t.basis = TriangleBasis::make(p);
  t.rule = quadrature::duffy_triangle(m);
  t.nq = int(t.rule.w.size());
  int nl = t.basis.local_dim;
  t.val.resize(std::size_t(t.nq) * nl);
  t.gx.resize(std::size_t(t.nq) * nl);
  t.gy.resize(std::size_t(t.nq) * nl);
  for (int q = 0; q < t.nq; ++q)
    t.basis.eval(t.rule.x[q], t.rule.y[q], &t.val[std::size_t(q) * nl],
                 &t.gx[std::size_t(q) * nl], &t.gy[std::size_t(q) * nl]);
  return t;
}

// The two triangles of a quad are affine images of the reference triangle:
// lower (t=0): (x, y) = h*(cx + X + Y, cy + Y),
// upper (t=1): (x, y) = h*(cx + X, cy + X + Y).
inline void tri_map(int t, double cx, double cy, double h, double X, double Y,
                    double& x, double& y) {
  if (t == 0) {
    x = (cx + X + Y) * h;
    y = (cy + Y) * h;
  } else {
    x = (cx + X) * h;
    y = (cy + X + Y) * h;
  }
}

// Physical gradient in units of 1/h: grad_phys = (1/h) * J^-T grad_ref.
inline void tri_unit_grad(int t, double gX, double gY, double& gx, double& gy) {
  if (t == 0) {
    gx = gX;
    gy = gY - gX;
  } else {
    gx = gX - gY;
    gy = gY;
  }
}

}  // namespace tas::femcore::detail
