#include "tas/errnorm.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

#include "fem_internal.hpp"
#include "tas/error.hpp"

namespace tas::errnorm {

using femcore::FunctionSpace;
using femcore::ScalarField;
using meshgen::CellKind;
using meshgen::Mesh;

double l2_error(const FunctionSpace& space, const std::vector<double>& coeffs,
                const ScalarField& exact, int quad_boost, int points_override) {
  if (std::int64_t(coeffs.size()) != space.n_dofs)
    throw InvalidInputError("l2_error: coefficient vector has " +
                            std::to_string(coeffs.size()) + " entries, space has " +
                            std::to_string(space.n_dofs) + " dofs");
  if (quad_boost < 0) throw InvalidInputError("l2_error: negative quad_boost");

  const Mesh& mesh = *space.mesh;
  int p = space.degree;
  int m = points_override > 0 ? points_override : p + quad_boost / 2 + 1;
  int n = mesh.n_per_axis;
  double h = mesh.h();
  double acc = 0.0;

  if (mesh.cell_kind == CellKind::triangle) {
    femcore::detail::TriTable t = femcore::detail::make_tri_table(p, m);
    int nl = t.basis.local_dim;
    for (int c = 0; c < mesh.n_cells(); ++c) {
      int type = c % 2;
      int q2 = c / 2;
      int cy = q2 % n, cx = q2 / n;
      auto dofs = space.cell_dofs(c);
      for (int q = 0; q < t.nq; ++q) {
        double uh = 0.0;
        for (int a = 0; a < nl; ++a)
          uh += t.v(q, a) * coeffs[std::size_t(dofs[a])];
        double x, y;
        femcore::detail::tri_map(type, cx, cy, h, t.rule.x[q], t.rule.y[q], x, y);
        double d = uh - exact({x, y, 0.0});
        acc += t.rule.w[q] * h * h * d * d;
      }
    }
    return std::sqrt(acc);
  }

  femcore::detail::Tensor1D t = femcore::detail::make_tensor1d(p, m);
  int n1 = p + 1;
  int dim = mesh.dim;
  for (int c = 0; c < mesh.n_cells(); ++c) {
    int cx, cy, cz = 0;
    if (dim == 3) {
      cz = c % n;
      cy = (c / n) % n;
      cx = c / (n * n);
    } else {
      cy = c % n;
      cx = c / n;
    }
    auto dofs = space.cell_dofs(c);
    if (dim == 2) {
      for (int qi = 0; qi < m; ++qi) {
        for (int qj = 0; qj < m; ++qj) {
          double uh = 0.0;
          for (int i = 0; i < n1; ++i) {
            double row = 0.0;
            for (int j = 0; j < n1; ++j)
              row += t.v(qj, j) * coeffs[std::size_t(dofs[i * n1 + j])];
            uh += t.v(qi, i) * row;
          }
          double x = (cx + t.rule.points[qi]) * h;
          double y = (cy + t.rule.points[qj]) * h;
          double d = uh - exact({x, y, 0.0});
          acc += t.rule.weights[qi] * t.rule.weights[qj] * h * h * d * d;
        }
      }
    } else {
      for (int qi = 0; qi < m; ++qi) {
        for (int qj = 0; qj < m; ++qj) {
          for (int qk = 0; qk < m; ++qk) {
            double uh = 0.0;
            for (int i = 0; i < n1; ++i) {
              double plane = 0.0;
              for (int j = 0; j < n1; ++j) {
                double row = 0.0;
                for (int k = 0; k < n1; ++k)
                  row += t.v(qk, k) *
                         coeffs[std::size_t(dofs[(i * n1 + j) * n1 + k])];
                plane += t.v(qj, j) * row;
              }
              uh += t.v(qi, i) * plane;
            }
            double x = (cx + t.rule.points[qi]) * h;
            double y = (cy + t.rule.points[qj]) * h;
            double z = (cz + t.rule.points[qk]) * h;
            double d = uh - exact({x, y, z});
            acc += t.rule.weights[qi] * t.rule.weights[qj] *
                   t.rule.weights[qk] * h * h * h * d * d;
          }
        }
      }
    }
  }
  return std::sqrt(acc);
}

double doa(double err) {
  if (!std::isfinite(err) || err <= 0.0)
    throw OutOfDomainError("doa: error must be finite and positive, got " +
                           std::to_string(err));
  return -std::log10(err);
}

double dos(std::int64_t n_dofs) {
  if (n_dofs < 1)
    throw OutOfDomainError("dos: dof count must be >= 1, got " +
                           std::to_string(n_dofs));
  return std::log10(double(n_dofs));
}

}  // namespace tas::errnorm
