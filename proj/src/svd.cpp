#include "logometre/svd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace logometre {

namespace {

constexpr std::size_t kMaxSweeps = 80;

DenseMatrix transpose(const DenseMatrix& a) {
  DenseMatrix t(a.cols, a.rows);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < a.cols; ++j) t(j, i) = a(i, j);
  }
  return t;
}

// Requires rows >= cols.
SvdResult jacobi_tall(const DenseMatrix& a) {
  const std::size_t m = a.rows;
  const std::size_t n = a.cols;
  // same orthogonality threshold as LAPACK's xGESVJ
  const double tol = std::sqrt(static_cast<double>(m)) * std::numeric_limits<double>::epsilon();

  // column-major working copies
  std::vector<double> w(m * n);
  std::vector<double> v(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) w[j * m + i] = a(i, j);
    v[j * n + j] = 1.0;
  }

  SvdResult out;
  for (std::size_t sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      double* wp = w.data() + p * m;
      double* vp = v.data() + p * n;
      for (std::size_t q = p + 1; q < n; ++q) {
        double* wq = w.data() + q * m;
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          alpha += wp[i] * wp[i];
          beta += wq[i] * wq[i];
          gamma += wp[i] * wq[i];
        }
        if (gamma == 0.0 || std::abs(gamma) <= tol * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const double x = wp[i];
          const double y = wq[i];
          wp[i] = c * x - s * y;
          wq[i] = s * x + c * y;
        }
        double* vq = v.data() + q * n;
        for (std::size_t i = 0; i < n; ++i) {
          const double x = vp[i];
          const double y = vq[i];
          vp[i] = c * x - s * y;
          vq[i] = s * x + c * y;
        }
      }
    }
    out.sweeps = sweep + 1;
    if (!rotated) break;
  }

  std::vector<double> norms(n);
  for (std::size_t j = 0; j < n; ++j) {
    double ss = 0.0;
    for (std::size_t i = 0; i < m; ++i) ss += w[j * m + i] * w[j * m + i];
    norms[j] = std::sqrt(ss);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return norms[x] > norms[y]; });

  out.u = DenseMatrix(m, n);
  out.v = DenseMatrix(n, n);
  out.singular_values.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto j = order[k];
    const double sigma = norms[j];
    out.singular_values[k] = sigma;
    if (sigma > 0.0) {
      for (std::size_t i = 0; i < m; ++i) out.u(i, k) = w[j * m + i] / sigma;
    }
    for (std::size_t i = 0; i < n; ++i) out.v(i, k) = v[j * n + i];
  }
  return out;
}

}  // namespace

SvdResult jacobi_svd(const DenseMatrix& a) {
  if (a.rows >= a.cols) return jacobi_tall(a);
  auto r = jacobi_tall(transpose(a));
  std::swap(r.u, r.v);
  return r;
}

}  // namespace logometre
