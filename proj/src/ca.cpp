#include "logometre/ca.hpp"

#include "logometre/error.hpp"

#include <algorithm>
#include <cmath>

namespace logometre {

namespace {

// Drops labels with a zero row or column sum until every margin is positive.
std::vector<std::size_t> positive_margin_indices(const DenseMatrix& counts) {
  const std::size_t n = counts.rows;
  std::vector<bool> keep(n, true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!keep[i]) continue;
      double row = 0.0, col = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (!keep[j]) continue;
        row += counts(i, j);
        col += counts(j, i);
      }
      if (row <= 0.0 || col <= 0.0) {
        keep[i] = false;
        changed = true;
      }
    }
  }
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < n; ++i) {
    if (keep[i]) kept.push_back(i);
  }
  return kept;
}

}  // namespace

CaSolution correspondence_analysis(const std::vector<std::string>& labels, const DenseMatrix& counts) {
  if (counts.rows != counts.cols || counts.rows != labels.size()) {
    throw Error(errors::kInvalidArgument, "contingency table must be square and match its labels");
  }
  double grand = 0.0;
  for (double x : counts.data) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw Error(errors::kInvalidArgument, "contingency table entries must be finite and non-negative");
    }
    grand += x;
  }
  if (grand <= 0.0) throw Error(errors::kZeroMatrix, "contingency table has grand total 0");

  const auto kept = positive_margin_indices(counts);
  CaSolution sol;
  {
    std::size_t next = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (next < kept.size() && kept[next] == i) {
        sol.labels.push_back(labels[i]);
        ++next;
      } else {
        sol.dropped_labels.push_back(labels[i]);
      }
    }
  }
  const std::size_t n = kept.size();
  double total = 0.0;
  for (auto i : kept) {
    for (auto j : kept) total += counts(i, j);
  }
  if (n == 0 || total <= 0.0) {
    throw Error(errors::kZeroMatrix, "no label with positive margins remains");
  }

  DenseMatrix p(n, n);
  sol.row_masses.assign(n, 0.0);
  sol.col_masses.assign(n, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const double v = counts(kept[a], kept[b]) / total;
      p(a, b) = v;
      sol.row_masses[a] += v;
      sol.col_masses[b] += v;
    }
  }

  DenseMatrix s(n, n);
  double inertia = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double expected = sol.row_masses[i] * sol.col_masses[j];
      const double v = (p(i, j) - expected) / std::sqrt(expected);
      s(i, j) = v;
      inertia += v * v;
    }
  }
  sol.total_inertia = inertia;

  const auto svd = jacobi_svd(s);
  const double sigma1 = svd.singular_values.empty() ? 0.0 : svd.singular_values.front();
  const double cutoff = std::max(kRankCutoff * sigma1, kSingularFloor);
  std::size_t k_max = 0;
  while (k_max < svd.singular_values.size() && svd.singular_values[k_max] > cutoff) ++k_max;

  sol.singular_values.assign(svd.singular_values.begin(), svd.singular_values.begin() + static_cast<std::ptrdiff_t>(k_max));
  sol.row_coords = DenseMatrix(n, k_max);
  sol.col_coords = DenseMatrix(n, k_max);
  for (std::size_t k = 0; k < k_max; ++k) {
    const double sigma = sol.singular_values[k];
    for (std::size_t i = 0; i < n; ++i) {
      sol.row_coords(i, k) = svd.u(i, k) * sigma / std::sqrt(sol.row_masses[i]);
      sol.col_coords(i, k) = svd.v(i, k) * sigma / std::sqrt(sol.col_masses[i]);
    }
    std::size_t arg = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (std::abs(sol.row_coords(i, k)) > std::abs(sol.row_coords(arg, k))) arg = i;
    }
    if (sol.row_coords(arg, k) < 0.0) {
      for (std::size_t i = 0; i < n; ++i) {
        sol.row_coords(i, k) = -sol.row_coords(i, k);
        sol.col_coords(i, k) = -sol.col_coords(i, k);
      }
    }
  }

  double retained = 0.0;
  for (double sigma : sol.singular_values) retained += sigma * sigma;
  for (double sigma : sol.singular_values) sol.inertia_pct.push_back(100.0 * sigma * sigma / retained);

  sol.contributions = DenseMatrix(n, k_max);
  sol.cos2 = DenseMatrix(n, k_max);
  for (std::size_t i = 0; i < n; ++i) {
    double dist2 = 0.0;
    for (std::size_t k = 0; k < k_max; ++k) dist2 += sol.row_coords(i, k) * sol.row_coords(i, k);
    for (std::size_t k = 0; k < k_max; ++k) {
      const double f2 = sol.row_coords(i, k) * sol.row_coords(i, k);
      const double sigma = sol.singular_values[k];
      sol.contributions(i, k) = sol.row_masses[i] * f2 / (sigma * sigma);
      sol.cos2(i, k) = dist2 > 0.0 ? f2 / dist2 : 0.0;
    }
  }
  return sol;
}

CaSolution correspondence_analysis(const CooccurrenceMatrix& m) {
  DenseMatrix counts(m.size(), m.size());
  for (std::size_t i = 0; i < m.counts.size(); ++i) counts.data[i] = static_cast<double>(m.counts[i]);
  return correspondence_analysis(m.labels, counts);
}

std::vector<ProjectedPoint> project(const CaSolution& sol, std::size_t axis_x, std::size_t axis_y) {
  const auto check = [&](std::size_t axis) {
    if (axis < 1 || axis > sol.axes()) {
      throw Error(errors::kAxisOutOfRange, "axis " + std::to_string(axis) + " outside 1.." +
                                               std::to_string(sol.axes()));
    }
  };
  check(axis_x);
  check(axis_y);
  const auto kx = axis_x - 1;
  const auto ky = axis_y - 1;
  std::vector<ProjectedPoint> points;
  points.reserve(sol.size());
  for (std::size_t i = 0; i < sol.size(); ++i) {
    ProjectedPoint pt;
    pt.lemma = sol.labels[i];
    pt.x = sol.row_coords(i, kx);
    pt.y = sol.row_coords(i, ky);
    pt.ctr_x = sol.contributions(i, kx);
    pt.ctr_y = sol.contributions(i, ky);
    pt.cos2 = kx == ky ? sol.cos2(i, kx) : sol.cos2(i, kx) + sol.cos2(i, ky);
    points.push_back(std::move(pt));
  }
  return points;
}

}  // namespace logometre
