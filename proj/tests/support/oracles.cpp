#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace oracle {

using boost::multiprecision::cpp_int;
using Mat = std::vector<std::vector<long double>>;

Hypergeometric::Hypergeometric(unsigned max_total) : max_(max_total) {
  binom_.resize(max_total + 1);
  for (unsigned n = 0; n <= max_total; ++n) {
    binom_[n].assign(n + 1, 1);
    for (unsigned k = 1; k < n; ++k) binom_[n][k] = binom_[n - 1][k - 1] + binom_[n - 1][k];
  }
}

std::vector<double> Hypergeometric::log10p_row(unsigned T, unsigned F, unsigned t, unsigned& lo, unsigned& hi) const {
  if (T > max_ || F > T || t > T) throw std::invalid_argument("counts out of range");
  lo = t + F > T ? t + F - T : 0;
  hi = std::min(F, t);
  std::vector<double> out(hi - lo + 1, 0.0);
  if (T == 0 || F == 0 || t == 0) return out;

  // Exact numerators C(F, i) C(T-F, t-i) and their cumulative sums.
  std::vector<cpp_int> w(hi - lo + 1);
  for (unsigned i = lo; i <= hi; ++i) {
    w[i - lo] = binom_[F][i] * binom_[T - F][t - i];
  }
  const cpp_int& total = binom_[T][t];
  std::vector<cpp_int> lower(w.size()), upper(w.size());
  cpp_int acc = 0;
  for (std::size_t i = 0; i < w.size(); ++i) lower[i] = (acc += w[i]);
  acc = 0;
  for (std::size_t i = w.size(); i-- > 0;) upper[i] = (acc += w[i]);
  if (lower.back() != total) throw std::logic_error("Vandermonde identity violated");

  const long double log_total = std::log10(total.convert_to<long double>());
  for (unsigned f = lo; f <= hi; ++f) {
    const bool over = static_cast<std::uint64_t>(f) * T >= static_cast<std::uint64_t>(t) * F;
    const cpp_int& tail = over ? upper[f - lo] : lower[f - lo];
    const long double l = std::log10(tail.convert_to<long double>()) - log_total;
    out[f - lo] = static_cast<double>(over ? -l : l);
  }
  return out;
}

double Hypergeometric::log10p(unsigned T, unsigned F, unsigned t, unsigned f) const {
  unsigned lo = 0, hi = 0;
  const auto row = log10p_row(T, F, t, lo, hi);
  if (f < lo || f > hi) throw std::invalid_argument("f outside support");
  return row[f - lo];
}

namespace {

// Householder reduction to tridiagonal form (diagonal d, off-diagonal e).
void tridiagonalize(Mat a, std::vector<long double>& d, std::vector<long double>& e) {
  const std::size_t n = a.size();
  for (std::size_t k = 0; k + 2 < n; ++k) {
    long double alpha = 0;
    for (std::size_t i = k + 1; i < n; ++i) alpha += a[i][k] * a[i][k];
    alpha = std::sqrt(alpha);
    if (alpha == 0) continue;
    if (a[k + 1][k] > 0) alpha = -alpha;
    std::vector<long double> v(n, 0);
    v[k + 1] = a[k + 1][k] - alpha;
    for (std::size_t i = k + 2; i < n; ++i) v[i] = a[i][k];
    long double vv = 0;
    for (auto x : v) vv += x * x;
    if (vv == 0) continue;
    // A <- H A H with H = I - 2 v v^T / (v^T v)
    std::vector<long double> p(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) p[i] += a[i][j] * v[j];
      p[i] *= 2 / vv;
    }
    long double vp = 0;
    for (std::size_t i = 0; i < n; ++i) vp += v[i] * p[i];
    const long double kfac = vp / vv;
    for (std::size_t i = 0; i < n; ++i) p[i] -= kfac * v[i];
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) a[i][j] -= v[i] * p[j] + p[i] * v[j];
    }
  }
  d.assign(n, 0);
  e.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = a[i][i];
    if (i + 1 < n) e[i] = a[i + 1][i];
  }
}

// Number of eigenvalues of the tridiagonal matrix strictly below x.
std::size_t sturm_count(const std::vector<long double>& d, const std::vector<long double>& e, long double x) {
  std::size_t count = 0;
  long double q = 1;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const long double off = i == 0 ? 0 : e[i - 1] * e[i - 1];
    q = d[i] - x - (i == 0 ? 0 : off / q);
    if (q == 0) q = -1e-300L;
    if (q < 0) ++count;
  }
  return count;
}

// Solves (A - shift I) x = b by Gaussian elimination with partial pivoting.
std::vector<long double> shifted_solve(const Mat& a, long double shift, std::vector<long double> b) {
  const std::size_t n = a.size();
  Mat m = a;
  for (std::size_t i = 0; i < n; ++i) m[i][i] -= shift;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    }
    std::swap(m[col], m[piv]);
    std::swap(b[col], b[piv]);
    if (m[col][col] == 0) m[col][col] = 1e-30L;
    for (std::size_t r = col + 1; r < n; ++r) {
      const long double factor = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
      b[r] -= factor * b[col];
    }
  }
  std::vector<long double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    long double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= m[i][c] * x[c];
    x[i] = s / m[i][i];
  }
  return x;
}

void normalize(std::vector<long double>& v) {
  long double s = 0;
  for (auto x : v) s += x * x;
  s = std::sqrt(s);
  for (auto& x : v) x /= s;
}

}  // namespace

void symmetric_eigen(const Mat& a, std::vector<long double>& values, Mat& vecs) {
  const std::size_t n = a.size();
  std::vector<long double> d, e;
  tridiagonalize(a, d, e);

  // Gershgorin bounds, then bisection for each eigenvalue index.
  long double lo = 0, hi = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const long double r = (i > 0 ? std::abs(e[i - 1]) : 0) + (i + 1 < n ? std::abs(e[i]) : 0);
    lo = std::min(lo, d[i] - r);
    hi = std::max(hi, d[i] + r);
  }
  lo -= 1;
  hi += 1;
  values.assign(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    long double a_lo = lo, a_hi = hi;
    for (int it = 0; it < 200; ++it) {
      const long double mid = (a_lo + a_hi) / 2;
      if (mid == a_lo || mid == a_hi) break;
      if (sturm_count(d, e, mid) > k) a_hi = mid;
      else a_lo = mid;
    }
    values[k] = (a_lo + a_hi) / 2;
  }

  // Inverse iteration on the original matrix; vectors of nearby eigenvalues
  // are orthogonalized against each other.
  vecs.assign(n, std::vector<long double>(n, 0));
  std::vector<std::vector<long double>> found;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<long double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = 1.0L + 0.1L * static_cast<long double>((i * 7 + k * 3) % 11);
    const long double scale = std::max<long double>(1, std::abs(values[k]));
    const long double shift = values[k] + 1e-16L * scale;
    for (int it = 0; it < 6; ++it) {
      x = shifted_solve(a, shift, x);
      for (std::size_t j = 0; j < found.size(); ++j) {
        if (std::abs(values[j] - values[k]) > 1e-9L * scale) continue;
        long double dot = 0;
        for (std::size_t i = 0; i < n; ++i) dot += x[i] * found[j][i];
        for (std::size_t i = 0; i < n; ++i) x[i] -= dot * found[j][i];
      }
      normalize(x);
    }
    found.push_back(x);
    for (std::size_t i = 0; i < n; ++i) vecs[i][k] = x[i];
  }
}

DenseCa dense_ca(const std::vector<std::vector<double>>& counts, double rel, double abs_floor) {
  const std::size_t n = counts.size();
  long double total = 0;
  std::vector<long double> r(n, 0), c(n, 0);
  bool symmetric = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      total += counts[i][j];
      r[i] += counts[i][j];
      c[j] += counts[i][j];
      if (counts[i][j] != counts[j][i]) symmetric = false;
    }
  }
  for (auto& x : r) x /= total;
  for (auto& x : c) x /= total;
  Mat s(n, std::vector<long double>(n));
  DenseCa out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const long double e = r[i] * c[j];
      s[i][j] = (counts[i][j] / total - e) / std::sqrt(e);
      out.total_inertia += s[i][j] * s[i][j];
    }
  }

  struct Axis {
    long double sigma;
    std::vector<long double> u, v;
  };
  std::vector<Axis> axes;
  std::vector<long double> values;
  Mat vecs;
  if (symmetric) {
    symmetric_eigen(s, values, vecs);
    for (std::size_t k = 0; k < n; ++k) {
      Axis ax{std::abs(values[k]), {}, {}};
      for (std::size_t i = 0; i < n; ++i) {
        ax.u.push_back(vecs[i][k]);
        ax.v.push_back(values[k] < 0 ? -vecs[i][k] : vecs[i][k]);
      }
      axes.push_back(std::move(ax));
    }
  } else {
    // Eigenpairs of [[0, S], [S^T, 0]] are (+-sigma, (u, +-v) / sqrt 2).
    Mat big(2 * n, std::vector<long double>(2 * n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) big[i][n + j] = big[n + j][i] = s[i][j];
    }
    symmetric_eigen(big, values, vecs);
    const long double root2 = std::sqrt(2.0L);
    for (std::size_t k = 0; k < 2 * n; ++k) {
      if (!(values[k] > 0)) continue;
      Axis ax{values[k], {}, {}};
      for (std::size_t i = 0; i < n; ++i) {
        ax.u.push_back(vecs[i][k] * root2);
        ax.v.push_back(vecs[n + i][k] * root2);
      }
      axes.push_back(std::move(ax));
    }
  }
  std::stable_sort(axes.begin(), axes.end(), [](const Axis& a, const Axis& b) { return a.sigma > b.sigma; });

  const long double sigma1 = axes.empty() ? 0 : axes.front().sigma;
  const long double cutoff = std::max<long double>(rel * sigma1, abs_floor);
  out.f.assign(n, {});
  out.g.assign(n, {});
  for (const auto& ax : axes) {
    if (!(ax.sigma > cutoff)) break;
    out.sigma.push_back(ax.sigma);
    for (std::size_t i = 0; i < n; ++i) {
      out.f[i].push_back(ax.u[i] * ax.sigma / std::sqrt(r[i]));
      out.g[i].push_back(ax.v[i] * ax.sigma / std::sqrt(c[i]));
    }
  }
  return out;
}

}  // namespace oracle
