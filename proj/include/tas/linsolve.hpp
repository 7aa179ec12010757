#pragma once

#include <cstdint>
#include <vector>

namespace tas::linsolve {

// Square CSR matrix; column indices are sorted within each row.
struct SparseMatrix {
  std::int64_t n = 0;
  std::vector<std::int64_t> row_offsets;  // n + 1 entries
  std::vector<std::int64_t> col_indices;
  std::vector<double> values;

  std::int64_t nnz() const { return std::int64_t(values.size()); }
  void multiply(const double* x, double* y) const;
};

// Accumulates (row, col, value) triplets; compress() sorts them and sums
// duplicates, which keeps assembly deterministic regardless of insert order.
struct TripletBuffer {
  std::vector<std::int64_t> rows;
  std::vector<std::int64_t> cols;
  std::vector<double> values;

  void reserve(std::size_t nnz_estimate);
  void add(std::int64_t row, std::int64_t col, double value) {
    rows.push_back(row);
    cols.push_back(col);
    values.push_back(value);
  }
  SparseMatrix compress(std::int64_t n) const;
};

enum class Preconditioner { none, jacobi, ssor };

struct SolveReport {
  std::vector<double> solution;
  std::int64_t iterations = 0;
  bool converged = false;
  double final_relative_residual = 0.0;
};

// Preconditioned conjugate gradients with x0 = 0 and the stopping rule
// ||b - A x||_2 / ||b||_2 <= rtol (the true residual is re-checked before
// declaring convergence). max_iter = 0 selects 10*floor(sqrt(n)) + 100.
// Throws NotSpdError if a search direction yields p^T A p <= 0.
SolveReport pcg(const SparseMatrix& a, const std::vector<double>& b,
                Preconditioner precond = Preconditioner::jacobi,
                double rtol = 1e-7, std::int64_t max_iter = 0);

}  // namespace tas::linsolve
