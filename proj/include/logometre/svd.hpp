#pragma once

#include <cstddef>
#include <vector>

namespace logometre {

/// Row-major dense matrix of doubles.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  bool operator==(const DenseMatrix&) const = default;
};

/// Thin SVD A = U diag(s) V^T with s sorted descending. For an m x n input,
/// U is m x p, V is n x p and s has p = min(m, n) entries. Columns of U
/// belonging to zero singular values are left as zero vectors.
struct SvdResult {
  DenseMatrix u;
  std::vector<double> singular_values;
  DenseMatrix v;
  std::size_t sweeps = 0;
};

/// One-sided (Hestenes) Jacobi SVD with a fixed cyclic sweep order. Fully
/// deterministic and accurate to a few ulps relative to the largest
/// singular value.
SvdResult jacobi_svd(const DenseMatrix& a);

}  // namespace logometre
