#include "tas/linsolve.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

#include "tas/error.hpp"

namespace tas::linsolve {

void SparseMatrix::multiply(const double* x, double* y) const {
  for (std::int64_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::int64_t k = row_offsets[i]; k < row_offsets[i + 1]; ++k)
      s += values[k] * x[col_indices[k]];
    y[i] = s;
  }
}

void TripletBuffer::reserve(std::size_t nnz_estimate) {
  rows.reserve(nnz_estimate);
  cols.reserve(nnz_estimate);
  values.reserve(nnz_estimate);
}

SparseMatrix TripletBuffer::compress(std::int64_t n) const {
  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), std::size_t(0));
  std::sort(order.begin(), order.end(), [this](std::size_t a, std::size_t b) {
    if (rows[a] != rows[b]) return rows[a] < rows[b];
    return cols[a] < cols[b];
  });

  SparseMatrix m;
  m.n = n;
  m.row_offsets.assign(std::size_t(n) + 1, 0);
  std::int64_t last_row = -1;
  for (std::size_t idx = 0; idx < order.size(); ++idx) {
    std::size_t t = order[idx];
    if (!m.col_indices.empty() && rows[t] == last_row &&
        cols[t] == m.col_indices.back()) {
      m.values.back() += values[t];
      continue;
    }
    last_row = rows[t];
    m.col_indices.push_back(cols[t]);
    m.values.push_back(values[t]);
    m.row_offsets[std::size_t(rows[t]) + 1] += 1;
  }
  for (std::int64_t i = 0; i < n; ++i) m.row_offsets[i + 1] += m.row_offsets[i];
  return m;
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

// SSOR(omega = 1) preconditioner M = (D+L) D^-1 (D+U), applied via two
// triangular sweeps over the CSR rows.
struct Ssor {
  const SparseMatrix& a;
  std::vector<std::int64_t> diag;  // index of a_ii in values
  explicit Ssor(const SparseMatrix& m) : a(m), diag(m.n) {
    for (std::int64_t i = 0; i < m.n; ++i) {
      diag[i] = -1;
      for (std::int64_t k = m.row_offsets[i]; k < m.row_offsets[i + 1]; ++k)
        if (m.col_indices[k] == i) {
          diag[i] = k;
          break;
        }
      if (diag[i] < 0 || m.values[diag[i]] <= 0.0)
        throw NotSpdError("pcg: non-positive diagonal entry");
    }
  }
  void apply(const std::vector<double>& r, std::vector<double>& z) const {
    std::int64_t n = a.n;
    // forward: (D+L) y = r
    for (std::int64_t i = 0; i < n; ++i) {
      double s = r[i];
      for (std::int64_t k = a.row_offsets[i]; k < diag[i]; ++k)
        if (a.col_indices[k] < i) s -= a.values[k] * z[a.col_indices[k]];
      z[i] = s / a.values[diag[i]];
    }
    // scale by D, backward: (D+U) z = D y
    for (std::int64_t i = n - 1; i >= 0; --i) {
      double s = z[i] * a.values[diag[i]];
      for (std::int64_t k = diag[i] + 1; k < a.row_offsets[i + 1]; ++k)
        if (a.col_indices[k] > i) s -= a.values[k] * z[a.col_indices[k]];
      z[i] = s / a.values[diag[i]];
    }
  }
};

}  // namespace

SolveReport pcg(const SparseMatrix& a, const std::vector<double>& b,
                Preconditioner precond, double rtol, std::int64_t max_iter) {
  if (a.n != std::int64_t(b.size()))
    throw InvalidInputError("pcg: dimension mismatch between matrix and rhs");
  SolveReport report;
  report.solution.assign(b.size(), 0.0);
  if (a.n == 0) {
    report.converged = true;
    return report;
  }
  if (max_iter <= 0)
    max_iter = 10 * std::int64_t(std::sqrt(double(a.n))) + 100;

  double bnorm = norm2(b);
  if (bnorm == 0.0) {
    report.converged = true;
    return report;
  }

  std::vector<double> jac;
  std::unique_ptr<Ssor> ssor;
  if (precond == Preconditioner::jacobi) {
    jac.assign(a.n, 0.0);
    for (std::int64_t i = 0; i < a.n; ++i) {
      for (std::int64_t k = a.row_offsets[i]; k < a.row_offsets[i + 1]; ++k)
        if (a.col_indices[k] == i) jac[i] = a.values[k];
      if (jac[i] <= 0.0) throw NotSpdError("pcg: non-positive diagonal entry");
    }
  } else if (precond == Preconditioner::ssor) {
    ssor = std::make_unique<Ssor>(a);
  }

  auto apply_precond = [&](const std::vector<double>& r,
                           std::vector<double>& z) {
    switch (precond) {
      case Preconditioner::none:
        z = r;
        break;
      case Preconditioner::jacobi:
        for (std::int64_t i = 0; i < a.n; ++i) z[i] = r[i] / jac[i];
        break;
      case Preconditioner::ssor:
        ssor->apply(r, z);
        break;
    }
  };

  std::vector<double>& x = report.solution;
  std::vector<double> r = b;
  std::vector<double> z(b.size()), p(b.size()), q(b.size());
  apply_precond(r, z);
  p = z;
  double rz = dot(r, z);

  for (std::int64_t it = 1; it <= max_iter; ++it) {
    a.multiply(p.data(), q.data());
    double pq = dot(p, q);
    if (pq <= 0.0)
      throw NotSpdError("pcg: p^T A p <= 0, matrix is not positive definite");
    double alpha = rz / pq;
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * q[i];
    }
    report.iterations = it;
    double rel = norm2(r) / bnorm;
    if (rel <= rtol) {
      // Guard against recurrence drift: accept only the true residual.
      a.multiply(x.data(), q.data());
      for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - q[i];
      rel = norm2(r) / bnorm;
      if (rel <= rtol) {
        report.converged = true;
        report.final_relative_residual = rel;
        return report;
      }
    }
    report.final_relative_residual = rel;
    apply_precond(r, z);
    double rz_next = dot(r, z);
    double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = z[i] + beta * p[i];
  }
  return report;
}

}  // namespace tas::linsolve
