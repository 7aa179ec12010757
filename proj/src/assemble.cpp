#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

#include "fem_internal.hpp"
#include "tas/error.hpp"
#include "tas/femcore.hpp"

namespace tas::femcore {

using linsolve::SparseMatrix;
using linsolve::TripletBuffer;
using meshgen::CellKind;
using meshgen::Mesh;

namespace {

int default_points(int degree) { return degree + 2; }

void check_case_dim(const FunctionSpace& space, const MmsCase& mms) {
  if (mms.dim != space.mesh->dim)
    throw InvalidInputError("assemble: case '" + mms.id + "' is " +
                            std::to_string(mms.dim) + "D but the mesh is " +
                            std::to_string(space.mesh->dim) + "D");
}

// ---- cell stiffness -------------------------------------------------------

// Tensor-product local stiffness; h-independent in 2D, scaled by h in 3D.
std::vector<double> tensor_kloc(int p, int m, int dim, double h) {
  detail::Tensor1D t = detail::make_tensor1d(p, m);
  std::vector<double> k1, m1;
  detail::one_d_matrices(t, k1, m1);
  int n1 = p + 1;
  auto at = [n1](const std::vector<double>& a, int i, int j) {
    return a[std::size_t(i) * n1 + j];
  };
  if (dim == 2) {
    int nl = n1 * n1;
    std::vector<double> k(std::size_t(nl) * nl);
    for (int i1 = 0; i1 < n1; ++i1)
      for (int j1 = 0; j1 < n1; ++j1)
        for (int i2 = 0; i2 < n1; ++i2)
          for (int j2 = 0; j2 < n1; ++j2)
            k[std::size_t(i1 * n1 + j1) * nl + (i2 * n1 + j2)] =
                at(k1, i1, i2) * at(m1, j1, j2) +
                at(m1, i1, i2) * at(k1, j1, j2);
    return k;
  }
  int nl = n1 * n1 * n1;
  std::vector<double> k(std::size_t(nl) * nl);
  for (int i1 = 0; i1 < n1; ++i1)
    for (int j1 = 0; j1 < n1; ++j1)
      for (int l1 = 0; l1 < n1; ++l1)
        for (int i2 = 0; i2 < n1; ++i2)
          for (int j2 = 0; j2 < n1; ++j2)
            for (int l2 = 0; l2 < n1; ++l2) {
              double v = at(k1, i1, i2) * at(m1, j1, j2) * at(m1, l1, l2) +
                         at(m1, i1, i2) * at(k1, j1, j2) * at(m1, l1, l2) +
                         at(m1, i1, i2) * at(m1, j1, j2) * at(k1, l1, l2);
              k[std::size_t((i1 * n1 + j1) * n1 + l1) * nl +
                ((i2 * n1 + j2) * n1 + l2)] = h * v;
            }
  return k;
}

// Local stiffness of one triangle type; h-independent.
std::vector<double> tri_kloc(const detail::TriTable& t, int type) {
  int nl = t.basis.local_dim;
  std::vector<double> k(std::size_t(nl) * nl, 0.0);
  for (int q = 0; q < t.nq; ++q) {
    double w = t.rule.w[q];
    double g[10][2];
    for (int a = 0; a < nl; ++a)
      detail::tri_unit_grad(type, t.gx[std::size_t(q) * nl + a],
                            t.gy[std::size_t(q) * nl + a], g[a][0], g[a][1]);
    for (int a = 0; a < nl; ++a)
      for (int b = 0; b < nl; ++b)
        k[std::size_t(a) * nl + b] += w * (g[a][0] * g[b][0] + g[a][1] * g[b][1]);
  }
  return k;
}

// ---- Dirichlet bookkeeping ------------------------------------------------

struct FreeMap {
  std::vector<std::int64_t> global_to_free;  // -1 at constrained dofs
  std::vector<std::int64_t> free_to_global;
  std::vector<double> values;  // Dirichlet data, zero at free dofs
};

FreeMap make_free_map(const FunctionSpace& space, const ScalarField& g) {
  FreeMap fm;
  fm.global_to_free.assign(std::size_t(space.n_dofs), 0);
  fm.values.assign(std::size_t(space.n_dofs), 0.0);
  for (std::int64_t c : space.constrained_dofs)
    fm.global_to_free[std::size_t(c)] = -1;
  if (!space.constrained_dofs.empty()) {
    auto coords = dof_coordinates(space);
    for (std::int64_t c : space.constrained_dofs)
      fm.values[std::size_t(c)] = g(coords[std::size_t(c)]);
  }
  std::int64_t next = 0;
  for (std::size_t i = 0; i < fm.global_to_free.size(); ++i) {
    if (fm.global_to_free[i] < 0) continue;
    fm.global_to_free[i] = next++;
    fm.free_to_global.push_back(std::int64_t(i));
  }
  return fm;
}

// ---- cell load vectors ----------------------------------------------------

void add_tensor_load(const FunctionSpace& space, const ScalarField& f, int m,
                     const FreeMap* fm, std::vector<double>& rhs) {
  const Mesh& mesh = *space.mesh;
  int p = space.degree;
  int n = mesh.n_per_axis;
  int dim = mesh.dim;
  double h = mesh.h();
  detail::Tensor1D t = detail::make_tensor1d(p, m);
  int n1 = p + 1;

  std::vector<double> local(std::size_t(space.local_dim));
  int n_cells = mesh.n_cells();
  for (int c = 0; c < n_cells; ++c) {
    int cx, cy, cz = 0;
    if (dim == 3) {
      cz = c % n;
      cy = (c / n) % n;
      cx = c / (n * n);
    } else {
      cy = c % n;
      cx = c / n;
    }
    std::fill(local.begin(), local.end(), 0.0);
    if (dim == 2) {
      for (int qi = 0; qi < m; ++qi) {
        for (int qj = 0; qj < m; ++qj) {
          double x = (cx + t.rule.points[qi]) * h;
          double y = (cy + t.rule.points[qj]) * h;
          double w = t.rule.weights[qi] * t.rule.weights[qj] * h * h *
                     f({x, y, 0.0});
          for (int i = 0; i < n1; ++i)
            for (int j = 0; j < n1; ++j)
              local[std::size_t(i) * n1 + j] += w * t.v(qi, i) * t.v(qj, j);
        }
      }
    } else {
      for (int qi = 0; qi < m; ++qi) {
        for (int qj = 0; qj < m; ++qj) {
          for (int qk = 0; qk < m; ++qk) {
            double x = (cx + t.rule.points[qi]) * h;
            double y = (cy + t.rule.points[qj]) * h;
            double z = (cz + t.rule.points[qk]) * h;
            double w = t.rule.weights[qi] * t.rule.weights[qj] *
                       t.rule.weights[qk] * h * h * h * f({x, y, z});
            for (int i = 0; i < n1; ++i)
              for (int j = 0; j < n1; ++j)
                for (int k = 0; k < n1; ++k)
                  local[std::size_t((i * n1 + j) * n1 + k)] +=
                      w * t.v(qi, i) * t.v(qj, j) * t.v(qk, k);
          }
        }
      }
    }
    auto dofs = space.cell_dofs(c);
    for (int a = 0; a < space.local_dim; ++a) {
      std::int64_t row = dofs[a];
      if (fm) {
        row = fm->global_to_free[std::size_t(row)];
        if (row < 0) continue;
      }
      rhs[std::size_t(row)] += local[std::size_t(a)];
    }
  }
}

void add_tri_load(const FunctionSpace& space, const ScalarField& f, int m,
                  const FreeMap* fm, std::vector<double>& rhs) {
  const Mesh& mesh = *space.mesh;
  int n = mesh.n_per_axis;
  double h = mesh.h();
  detail::TriTable t = detail::make_tri_table(space.degree, m);
  int nl = t.basis.local_dim;

  std::vector<double> local(std::size_t(nl), 0.0);
  for (int c = 0; c < mesh.n_cells(); ++c) {
    int type = c % 2;
    int q2 = c / 2;
    int cy = q2 % n, cx = q2 / n;
    std::fill(local.begin(), local.end(), 0.0);
    for (int q = 0; q < t.nq; ++q) {
      double x, y;
      detail::tri_map(type, cx, cy, h, t.rule.x[q], t.rule.y[q], x, y);
      double w = t.rule.w[q] * h * h * f({x, y, 0.0});
      for (int a = 0; a < nl; ++a)
        local[std::size_t(a)] += w * t.v(q, a);
    }
    auto dofs = space.cell_dofs(c);
    for (int a = 0; a < nl; ++a) {
      std::int64_t row = dofs[a];
      if (fm) {
        row = fm->global_to_free[std::size_t(row)];
        if (row < 0) continue;
      }
      rhs[std::size_t(row)] += local[std::size_t(a)];
    }
  }
}

// Scatter the (free x free) block of a local matrix, lifting Dirichlet
// columns into the rhs.
void scatter_constrained(const std::vector<double>& kloc,
                         std::span<const std::int64_t> dofs, const FreeMap& fm,
                         TripletBuffer& trip, std::vector<double>& rhs) {
  int nl = int(dofs.size());
  for (int a = 0; a < nl; ++a) {
    std::int64_t fa = fm.global_to_free[std::size_t(dofs[a])];
    if (fa < 0) continue;
    for (int b = 0; b < nl; ++b) {
      std::int64_t gb = dofs[b];
      std::int64_t fb = fm.global_to_free[std::size_t(gb)];
      double k = kloc[std::size_t(a) * nl + b];
      if (fb >= 0)
        trip.add(fa, fb, k);
      else
        rhs[std::size_t(fa)] -= k * fm.values[std::size_t(gb)];
    }
  }
}

}  // namespace

SipPenalty sip_penalty(int degree, int dim) {
  double sigma = double((degree + 1) * (degree + dim)) / (2.0 * dim);
  return {sigma, 2.0 * sigma};
}

AssembledSystem assemble_cg(const FunctionSpace& space, const MmsCase& mms,
                            int quad_points) {
  if (space.family != Family::cg)
    throw InvalidInputError("assemble_cg: space is not a CG space");
  check_case_dim(space, mms);
  const Mesh& mesh = *space.mesh;
  int p = space.degree;
  int m = quad_points > 0 ? quad_points : default_points(p);

  FreeMap fm = make_free_map(space, mms.exact);
  AssembledSystem sys;
  sys.free_to_global = fm.free_to_global;
  sys.dirichlet_values = fm.values;
  sys.rhs.assign(fm.free_to_global.size(), 0.0);

  TripletBuffer trip;
  trip.reserve(std::size_t(mesh.n_cells()) * space.local_dim * space.local_dim);

  if (mesh.cell_kind == CellKind::triangle) {
    detail::TriTable t = detail::make_tri_table(p, m);
    std::vector<double> kloc[2] = {tri_kloc(t, 0), tri_kloc(t, 1)};
    for (int c = 0; c < mesh.n_cells(); ++c)
      scatter_constrained(kloc[c % 2], space.cell_dofs(c), fm, trip, sys.rhs);
    add_tri_load(space, mms.source, m, &fm, sys.rhs);
  } else {
    std::vector<double> kloc = tensor_kloc(p, m, mesh.dim, mesh.h());
    for (int c = 0; c < mesh.n_cells(); ++c)
      scatter_constrained(kloc, space.cell_dofs(c), fm, trip, sys.rhs);
    add_tensor_load(space, mms.source, m, &fm, sys.rhs);
  }

  sys.matrix = trip.compress(std::int64_t(fm.free_to_global.size()));
  return sys;
}

linsolve::SparseMatrix assemble_stiffness(const FunctionSpace& space,
                                          int quad_points) {
  const Mesh& mesh = *space.mesh;
  int p = space.degree;
  int m = quad_points > 0 ? quad_points : default_points(p);

  TripletBuffer trip;
  trip.reserve(std::size_t(mesh.n_cells()) * space.local_dim * space.local_dim);
  auto scatter = [&](const std::vector<double>& kloc, int c) {
    auto dofs = space.cell_dofs(c);
    int nl = int(dofs.size());
    for (int a = 0; a < nl; ++a)
      for (int b = 0; b < nl; ++b)
        trip.add(dofs[a], dofs[b], kloc[std::size_t(a) * nl + b]);
  };

  if (mesh.cell_kind == CellKind::triangle) {
    detail::TriTable t = detail::make_tri_table(p, m);
    std::vector<double> kloc[2] = {tri_kloc(t, 0), tri_kloc(t, 1)};
    for (int c = 0; c < mesh.n_cells(); ++c) scatter(kloc[c % 2], c);
  } else {
    std::vector<double> kloc = tensor_kloc(p, m, mesh.dim, mesh.h());
    for (int c = 0; c < mesh.n_cells(); ++c) scatter(kloc, c);
  }
  return trip.compress(space.n_dofs);
}

// ---- SIP-DG ----------------------------------------------------------------

namespace {

// Everything below is 2D: DG spaces are restricted to quads and triangles.

// Quadrilateral facet tables: endpoint traces of the 1D basis and the facet
// mass matrix at the facet rule.
struct QuadFaceData {
  int p;
  std::vector<double> e0, e1, d0, d1;  // 1D traces and derivatives at 0 and 1
  detail::Tensor1D face;               // tangential values at facet points
  std::vector<double> mf;              // facet mass matrix
};

QuadFaceData make_quad_face_data(int p, int mf_points) {
  QuadFaceData f;
  f.p = p;
  int n1 = p + 1;
  Lagrange1D basis = Lagrange1D::make(p);
  f.e0.resize(n1);
  f.e1.resize(n1);
  f.d0.resize(n1);
  f.d1.resize(n1);
  basis.eval(0.0, f.e0.data(), f.d0.data());
  basis.eval(1.0, f.e1.data(), f.d1.data());
  f.face = detail::make_tensor1d(p, mf_points);
  std::vector<double> k1;
  detail::one_d_matrices(f.face, k1, f.mf);
  return f;
}

// X factor of an interior facet block: rows from side r, columns from side c.
// ev/dn are the endpoint trace and outward-axis derivative of each side; pen
// is the full penalty coefficient including the facet measure.
std::vector<double> face_x_factor(const std::vector<double>& ev_r,
                                  const std::vector<double>& dn_r, double sgn_r,
                                  const std::vector<double>& ev_c,
                                  const std::vector<double>& dn_c, double sgn_c,
                                  double pen) {
  int n1 = int(ev_r.size());
  std::vector<double> x(std::size_t(n1) * n1);
  for (int a = 0; a < n1; ++a)
    for (int b = 0; b < n1; ++b)
      x[std::size_t(a) * n1 + b] = -0.5 * sgn_r * ev_r[a] * dn_c[b] -
                                   0.5 * sgn_c * dn_r[a] * ev_c[b] +
                                   pen * sgn_r * sgn_c * ev_r[a] * ev_c[b];
  return x;
}

// Triangle facet trace tables for one (triangle type, edge, orientation).
struct TriFaceSide {
  int type;
  std::vector<double> val;  // [q * nl + a]
  std::vector<double> dn;   // outward-normal derivative in units of 1/h
};

TriFaceSide make_tri_side(const TriangleBasis& basis,
                          const quadrature::Rule1D& rule, int type,
                          double rx0, double ry0, double rx1, double ry1,
                          double nx, double ny) {
  // Edge parametrized from (rx0, ry0) to (rx1, ry1) in reference coordinates.
  TriFaceSide side;
  side.type = type;
  int nl = basis.local_dim;
  int nq = int(rule.points.size());
  side.val.resize(std::size_t(nq) * nl);
  side.dn.resize(std::size_t(nq) * nl);
  std::vector<double> gx(nl), gy(nl);
  for (int q = 0; q < nq; ++q) {
    double s = rule.points[q];
    double X = rx0 + s * (rx1 - rx0);
    double Y = ry0 + s * (ry1 - ry0);
    basis.eval(X, Y, &side.val[std::size_t(q) * nl], gx.data(), gy.data());
    for (int a = 0; a < nl; ++a) {
      double px, py;
      detail::tri_unit_grad(type, gx[a], gy[a], px, py);
      side.dn[std::size_t(q) * nl + a] = nx * px + ny * py;
    }
  }
  return side;
}

// Integrated facet block between two sides; scale folds the facet measure
// over h, pen the full penalty coefficient.
std::vector<double> tri_face_block(const TriFaceSide& r, double sgn_r,
                                   const TriFaceSide& c, double sgn_c,
                                   const quadrature::Rule1D& rule, double scale,
                                   double pen) {
  int nl = int(r.val.size() / rule.points.size());
  int nq = int(rule.points.size());
  std::vector<double> block(std::size_t(nl) * nl, 0.0);
  for (int q = 0; q < nq; ++q) {
    double w = rule.weights[q];
    const double* vr = &r.val[std::size_t(q) * nl];
    const double* dr = &r.dn[std::size_t(q) * nl];
    const double* vc = &c.val[std::size_t(q) * nl];
    const double* dc = &c.dn[std::size_t(q) * nl];
    for (int a = 0; a < nl; ++a)
      for (int b = 0; b < nl; ++b)
        block[std::size_t(a) * nl + b] +=
            w * scale *
            (-0.5 * sgn_r * vr[a] * dc[b] - 0.5 * sgn_c * dr[a] * vc[b] +
             pen * sgn_r * sgn_c * vr[a] * vc[b]);
  }
  return block;
}

void scatter_block(const std::vector<double>& block,
                   std::span<const std::int64_t> rows,
                   std::span<const std::int64_t> cols, TripletBuffer& trip) {
  int nr = int(rows.size()), nc = int(cols.size());
  for (int a = 0; a < nr; ++a)
    for (int b = 0; b < nc; ++b)
      trip.add(rows[a], cols[b], block[std::size_t(a) * nc + b]);
}

}  // namespace

AssembledSystem assemble_sip_dg(const FunctionSpace& space, const MmsCase& mms,
                                int quad_points) {
  if (space.family != Family::dg)
    throw InvalidInputError("assemble_sip_dg: space is not a DG space");
  check_case_dim(space, mms);
  const Mesh& mesh = *space.mesh;
  int p = space.degree;
  int m = quad_points > 0 ? quad_points : default_points(p);
  int n = mesh.n_per_axis;
  double h = mesh.h();
  auto [sigma, gamma] = sip_penalty(p, 2);

  AssembledSystem sys;
  sys.free_to_global.resize(std::size_t(space.n_dofs));
  for (std::int64_t i = 0; i < space.n_dofs; ++i) sys.free_to_global[i] = i;
  sys.dirichlet_values.assign(std::size_t(space.n_dofs), 0.0);
  sys.rhs.assign(std::size_t(space.n_dofs), 0.0);

  TripletBuffer trip;
  int nl = space.local_dim;
  trip.reserve(std::size_t(mesh.n_cells()) * nl * nl * 4);

  if (mesh.cell_kind == CellKind::quadrilateral) {
    // rho_e = 2/h on both sides of every facet; facet measure h folds the
    // penalty and consistency terms into h-free block factors.
    double pen = sigma * 2.0;            // sigma * rho * h
    double bpen = gamma * 2.0;           // gamma * rho * h
    std::vector<double> kloc = tensor_kloc(p, m, 2, h);
    for (int c = 0; c < mesh.n_cells(); ++c) {
      auto dofs = space.cell_dofs(c);
      scatter_block(kloc, dofs, dofs, trip);
    }

    QuadFaceData fd = make_quad_face_data(p, m);
    int n1 = p + 1;
    // Outward-axis derivative per side of a facet with normal +axis:
    // low (left/bottom) side uses the x=1 traces, high side the x=0 traces.
    auto x_ll = face_x_factor(fd.e1, fd.d1, +1, fd.e1, fd.d1, +1, pen);
    auto x_lh = face_x_factor(fd.e1, fd.d1, +1, fd.e0, fd.d0, -1, pen);
    auto x_hl = face_x_factor(fd.e0, fd.d0, -1, fd.e1, fd.d1, +1, pen);
    auto x_hh = face_x_factor(fd.e0, fd.d0, -1, fd.e0, fd.d0, -1, pen);

    auto cell_id = [n](int cx, int cy) { return cx * n + cy; };
    std::vector<double> block(std::size_t(nl) * nl);

    // axis 0: facet between (cx, cy) and (cx+1, cy); axis 1: (cx, cy+1).
    for (int axis = 0; axis < 2; ++axis) {
      const std::vector<double>* xs[2][2] = {{&x_ll, &x_lh}, {&x_hl, &x_hh}};
      for (int cx = 0; cx < (axis == 0 ? n - 1 : n); ++cx) {
        for (int cy = 0; cy < (axis == 0 ? n : n - 1); ++cy) {
          int c_lo = cell_id(cx, cy);
          int c_hi = axis == 0 ? cell_id(cx + 1, cy) : cell_id(cx, cy + 1);
          std::array<std::span<const std::int64_t>, 2> dofs = {
              space.cell_dofs(c_lo), space.cell_dofs(c_hi)};
          for (int sr = 0; sr < 2; ++sr) {
            for (int sc = 0; sc < 2; ++sc) {
              const std::vector<double>& x = *xs[sr][sc];
              // axis 0: block = X[i_r][i_c] * Mf[j_r][j_c]; axis 1 swaps roles.
              for (int ir = 0; ir < n1; ++ir)
                for (int jr = 0; jr < n1; ++jr)
                  for (int ic = 0; ic < n1; ++ic)
                    for (int jc = 0; jc < n1; ++jc) {
                      double v =
                          axis == 0
                              ? x[std::size_t(ir) * n1 + ic] *
                                    fd.mf[std::size_t(jr) * n1 + jc]
                              : fd.mf[std::size_t(ir) * n1 + ic] *
                                    x[std::size_t(jr) * n1 + jc];
                      block[std::size_t(ir * n1 + jr) * nl + (ic * n1 + jc)] = v;
                    }
              scatter_block(block, dofs[sr], dofs[sc], trip);
            }
          }
        }
      }
    }

    // Boundary facets: Nitsche-style Dirichlet terms with g = exact.
    // side: 0 x-low, 1 x-high, 2 y-low, 3 y-high.
    for (int side = 0; side < 4; ++side) {
      bool high = side == 1 || side == 3;
      bool xaxis = side <= 1;
      const std::vector<double>& ev = high ? fd.e1 : fd.e0;
      std::vector<double> dn = high ? fd.d1 : fd.d0;
      if (!high)
        for (double& v : dn) v = -v;  // outward normal points to -axis
      std::vector<double> xb(std::size_t(n1) * n1);
      for (int a = 0; a < n1; ++a)
        for (int b = 0; b < n1; ++b)
          xb[std::size_t(a) * n1 + b] =
              -ev[a] * dn[b] - dn[a] * ev[b] + bpen * ev[a] * ev[b];

      for (int k = 0; k < n; ++k) {
        int cx = xaxis ? (high ? n - 1 : 0) : k;
        int cy = xaxis ? k : (high ? n - 1 : 0);
        auto dofs = space.cell_dofs(cell_id(cx, cy));
        for (int ar = 0; ar < n1; ++ar)
          for (int br = 0; br < n1; ++br)
            for (int ac = 0; ac < n1; ++ac)
              for (int bc = 0; bc < n1; ++bc) {
                double v = xaxis ? xb[std::size_t(ar) * n1 + ac] *
                                       fd.mf[std::size_t(br) * n1 + bc]
                                 : fd.mf[std::size_t(ar) * n1 + ac] *
                                       xb[std::size_t(br) * n1 + bc];
                block[std::size_t(ar * n1 + br) * nl + (ac * n1 + bc)] = v;
              }
        scatter_block(block, dofs, dofs, trip);

        // rhs: -(dn v) g + gamma rho v g on the facet
        for (int q = 0; q < fd.face.m; ++q) {
          double s = fd.face.rule.points[q];
          double w = fd.face.rule.weights[q];
          double x = xaxis ? (high ? 1.0 : 0.0) : (cx + s) * h;
          double y = xaxis ? (cy + s) * h : (high ? 1.0 : 0.0);
          double g = mms.exact({x, y, 0.0});
          if (g == 0.0) continue;
          for (int a = 0; a < n1; ++a)
            for (int b = 0; b < n1; ++b) {
              int local = xaxis ? a * n1 + b : b * n1 + a;
              double trace = fd.face.v(q, b);
              sys.rhs[std::size_t(dofs[local])] +=
                  w * g * trace * (-dn[a] + bpen * ev[a]);
            }
        }
      }
    }
    add_tensor_load(space, mms.source, m, nullptr, sys.rhs);
  } else {
    // Triangles: rho_e = (2+sqrt(2))/h on every facet.
    double rho_h = 2.0 + std::sqrt(2.0);  // rho * h
    double pen = sigma * rho_h;
    double bpen = gamma * rho_h;
    detail::TriTable ct = detail::make_tri_table(p, m);
    std::vector<double> kloc[2] = {tri_kloc(ct, 0), tri_kloc(ct, 1)};
    for (int c = 0; c < mesh.n_cells(); ++c) {
      auto dofs = space.cell_dofs(c);
      scatter_block(kloc[c % 2], dofs, dofs, trip);
    }

    TriangleBasis basis = TriangleBasis::make(p);
    quadrature::Rule1D rule = quadrature::gauss_legendre(m);
    double rt2 = std::sqrt(2.0);

    // Interior facet sides; the minus side runs its edge parameter backwards
    // so both tables sample the same physical points.
    // diagonal of a quad: lower triangle edge (0,1)->(0,0), upper (1,0)->(0,0)
    auto diag_p = make_tri_side(basis, rule, 0, 0, 1, 0, 0, -1 / rt2, 1 / rt2);
    auto diag_m = make_tri_side(basis, rule, 1, 1, 0, 0, 0, -1 / rt2, 1 / rt2);
    // vertical facet: lower-left triangle edge (1,0)->(0,1), right quad's
    // upper triangle edge (0,0)->(0,1) reversed
    auto vert_p = make_tri_side(basis, rule, 0, 1, 0, 0, 1, 1, 0);
    auto vert_m = make_tri_side(basis, rule, 1, 0, 0, 0, 1, 1, 0);
    // horizontal facet: upper triangle edge (1,0)->(0,1), upper quad's lower
    // triangle edge (1,0)->(0,0)
    auto horz_p = make_tri_side(basis, rule, 1, 1, 0, 0, 1, 0, 1);
    auto horz_m = make_tri_side(basis, rule, 0, 1, 0, 0, 0, 0, 1);

    struct FaceKind {
      const TriFaceSide* plus;
      const TriFaceSide* minus;
      double scale;  // facet length / h
    };
    FaceKind diag{&diag_p, &diag_m, rt2};
    FaceKind vert{&vert_p, &vert_m, 1.0};
    FaceKind horz{&horz_p, &horz_m, 1.0};

    auto scatter_face = [&](const FaceKind& fk, int cell_p, int cell_m) {
      std::array<const TriFaceSide*, 2> sides = {fk.plus, fk.minus};
      std::array<double, 2> sgn = {+1.0, -1.0};
      std::array<std::span<const std::int64_t>, 2> dofs = {
          space.cell_dofs(cell_p), space.cell_dofs(cell_m)};
      for (int sr = 0; sr < 2; ++sr)
        for (int sc = 0; sc < 2; ++sc)
          scatter_block(tri_face_block(*sides[sr], sgn[sr], *sides[sc], sgn[sc],
                                       rule, fk.scale, pen),
                        dofs[sr], dofs[sc], trip);
    };

    auto lower = [n](int cx, int cy) { return 2 * (cx * n + cy); };
    for (int cx = 0; cx < n; ++cx) {
      for (int cy = 0; cy < n; ++cy) {
        scatter_face(diag, lower(cx, cy), lower(cx, cy) + 1);
        if (cx < n - 1) scatter_face(vert, lower(cx, cy), lower(cx + 1, cy) + 1);
        if (cy < n - 1) scatter_face(horz, lower(cx, cy) + 1, lower(cx, cy + 1));
      }
    }

    // Boundary facets (type, edge in reference coordinates, outward normal).
    auto bottom = make_tri_side(basis, rule, 0, 0, 0, 1, 0, 0, -1);
    auto right = make_tri_side(basis, rule, 0, 1, 0, 0, 1, 1, 0);
    auto top = make_tri_side(basis, rule, 1, 1, 0, 0, 1, 0, 1);
    auto left = make_tri_side(basis, rule, 1, 0, 1, 0, 0, -1, 0);

    auto scatter_boundary = [&](const TriFaceSide& side, int cell,
                                auto phys_point) {
      auto dofs = space.cell_dofs(cell);
      // bilinear part
      int nq = int(rule.points.size());
      std::vector<double> block(std::size_t(nl) * nl, 0.0);
      for (int q = 0; q < nq; ++q) {
        double w = rule.weights[q];
        const double* v = &side.val[std::size_t(q) * nl];
        const double* d = &side.dn[std::size_t(q) * nl];
        for (int a = 0; a < nl; ++a)
          for (int b = 0; b < nl; ++b)
            block[std::size_t(a) * nl + b] +=
                w * (-v[a] * d[b] - d[a] * v[b] + bpen * v[a] * v[b]);
      }
      scatter_block(block, dofs, dofs, trip);
      // Dirichlet rhs
      for (int q = 0; q < nq; ++q) {
        double x, y;
        phys_point(rule.points[q], x, y);
        double g = mms.exact({x, y, 0.0});
        if (g == 0.0) continue;
        double w = rule.weights[q];
        const double* v = &side.val[std::size_t(q) * nl];
        const double* d = &side.dn[std::size_t(q) * nl];
        for (int a = 0; a < nl; ++a)
          sys.rhs[std::size_t(dofs[a])] += w * g * (-d[a] + bpen * v[a]);
      }
    };

    for (int k = 0; k < n; ++k) {
      int cx = k;
      scatter_boundary(bottom, lower(cx, 0), [&](double s, double& x, double& y) {
        x = (cx + s) * h;
        y = 0.0;
      });
      scatter_boundary(top, lower(cx, n - 1) + 1,
                       [&](double s, double& x, double& y) {
                         x = (cx + 1 - s) * h;
                         y = 1.0;
                       });
      int cy = k;
      scatter_boundary(right, lower(n - 1, cy),
                       [&](double s, double& x, double& y) {
                         x = 1.0;
                         y = (cy + s) * h;
                       });
      scatter_boundary(left, lower(0, cy) + 1,
                       [&](double s, double& x, double& y) {
                         x = 0.0;
                         y = (cy + 1 - s) * h;
                       });
    }
    add_tri_load(space, mms.source, m, nullptr, sys.rhs);
  }

  sys.matrix = trip.compress(space.n_dofs);
  return sys;
}

double sip_jump_energy(const FunctionSpace& space,
                       const std::vector<double>& coeffs) {
  if (space.family != Family::dg)
    throw InvalidInputError("sip_jump_energy: space is not a DG space");
  const Mesh& mesh = *space.mesh;
  int p = space.degree;
  int m = default_points(p);
  int n = mesh.n_per_axis;
  int nl = space.local_dim;
  auto [sigma, gamma] = sip_penalty(p, 2);

  double energy = 0.0;
  auto side_value = [&](const double* val, int q,
                        std::span<const std::int64_t> dofs) {
    double u = 0.0;
    for (int a = 0; a < nl; ++a)
      u += val[std::size_t(q) * nl + a] * coeffs[std::size_t(dofs[a])];
    return u;
  };

  if (mesh.cell_kind == CellKind::quadrilateral) {
    QuadFaceData fd = make_quad_face_data(p, m);
    int n1 = p + 1;
    auto cell_id = [n](int cx, int cy) { return cx * n + cy; };
    auto trace = [&](std::span<const std::int64_t> dofs, bool at_one, bool xaxis,
                     int q) {
      const std::vector<double>& e = at_one ? fd.e1 : fd.e0;
      double u = 0.0;
      for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n1; ++j) {
          int local = xaxis ? i * n1 + j : j * n1 + i;
          u += e[i] * fd.face.v(q, j) * coeffs[std::size_t(dofs[local])];
        }
      return u;
    };
    for (int axis = 0; axis < 2; ++axis) {
      for (int cx = 0; cx < (axis == 0 ? n - 1 : n); ++cx) {
        for (int cy = 0; cy < (axis == 0 ? n : n - 1); ++cy) {
          auto lo = space.cell_dofs(cell_id(cx, cy));
          auto hi = space.cell_dofs(axis == 0 ? cell_id(cx + 1, cy)
                                              : cell_id(cx, cy + 1));
          for (int q = 0; q < fd.face.m; ++q) {
            double jump = trace(lo, true, axis == 0, q) -
                          trace(hi, false, axis == 0, q);
            energy += 2.0 * sigma * fd.face.rule.weights[q] * jump * jump;
          }
        }
      }
    }
    for (int side = 0; side < 4; ++side) {
      bool high = side == 1 || side == 3;
      bool xaxis = side <= 1;
      for (int k = 0; k < n; ++k) {
        int cx = xaxis ? (high ? n - 1 : 0) : k;
        int cy = xaxis ? k : (high ? n - 1 : 0);
        auto dofs = space.cell_dofs(cell_id(cx, cy));
        for (int q = 0; q < fd.face.m; ++q) {
          double u = trace(dofs, high, xaxis, q);
          energy += 2.0 * gamma * fd.face.rule.weights[q] * u * u;
        }
      }
    }
    return energy;
  }

  TriangleBasis basis = TriangleBasis::make(p);
  quadrature::Rule1D rule = quadrature::gauss_legendre(m);
  double rt2 = std::sqrt(2.0);
  double rho_h = 2.0 + rt2;
  auto diag_p = make_tri_side(basis, rule, 0, 0, 1, 0, 0, -1 / rt2, 1 / rt2);
  auto diag_m = make_tri_side(basis, rule, 1, 1, 0, 0, 0, -1 / rt2, 1 / rt2);
  auto vert_p = make_tri_side(basis, rule, 0, 1, 0, 0, 1, 1, 0);
  auto vert_m = make_tri_side(basis, rule, 1, 0, 0, 0, 1, 1, 0);
  auto horz_p = make_tri_side(basis, rule, 1, 1, 0, 0, 1, 0, 1);
  auto horz_m = make_tri_side(basis, rule, 0, 1, 0, 0, 0, 0, 1);
  auto bottom = make_tri_side(basis, rule, 0, 0, 0, 1, 0, 0, -1);
  auto right = make_tri_side(basis, rule, 0, 1, 0, 0, 1, 1, 0);
  auto top = make_tri_side(basis, rule, 1, 1, 0, 0, 1, 0, 1);
  auto left = make_tri_side(basis, rule, 1, 0, 1, 0, 0, -1, 0);

  auto lower = [n](int cx, int cy) { return 2 * (cx * n + cy); };
  auto face_energy = [&](const TriFaceSide& sp, const TriFaceSide& sm,
                         int cell_p, int cell_m, double scale) {
    auto dp = space.cell_dofs(cell_p);
    auto dm = space.cell_dofs(cell_m);
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      double jump =
          side_value(sp.val.data(), int(q), dp) - side_value(sm.val.data(), int(q), dm);
      energy += sigma * rho_h * scale * rule.weights[q] * jump * jump;
    }
  };
  for (int cx = 0; cx < n; ++cx) {
    for (int cy = 0; cy < n; ++cy) {
      face_energy(diag_p, diag_m, lower(cx, cy), lower(cx, cy) + 1, rt2);
      if (cx < n - 1)
        face_energy(vert_p, vert_m, lower(cx, cy), lower(cx + 1, cy) + 1, 1.0);
      if (cy < n - 1)
        face_energy(horz_p, horz_m, lower(cx, cy) + 1, lower(cx, cy + 1), 1.0);
    }
  }
  auto boundary_energy = [&](const TriFaceSide& side, int cell) {
    auto dofs = space.cell_dofs(cell);
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      double u = side_value(side.val.data(), int(q), dofs);
      energy += gamma * rho_h * rule.weights[q] * u * u;
    }
  };
  for (int k = 0; k < n; ++k) {
    boundary_energy(bottom, lower(k, 0));
    boundary_energy(top, lower(k, n - 1) + 1);
    boundary_energy(right, lower(n - 1, k));
    boundary_energy(left, lower(0, k) + 1);
  }
  return energy;
}

}  // namespace tas::femcore
