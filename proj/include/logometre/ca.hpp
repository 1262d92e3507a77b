#pragma once

#include "logometre/cooccurrence.hpp"
#include "logometre/svd.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace logometre {

/// Correspondence analysis of a square labeled contingency table.
///
/// With P = counts / n, masses r = P 1 and c = P^T 1, and standardized
/// residuals S = D_r^{-1/2} (P - r c^T) D_c^{-1/2} = U diag(sigma) V^T:
///   row_coords F = D_r^{-1/2} U diag(sigma)   (principal coordinates)
///   col_coords G = D_c^{-1/2} V diag(sigma)
///   ctr[i][k]  = r_i F_ik^2 / sigma_k^2
///   cos2[i][k] = F_ik^2 / sum_k' F_ik'^2
/// Only axes with sigma_k above the rank cutoff are retained. Each axis is
/// oriented so its row point of largest |coordinate| is positive.
struct CaSolution {
  std::vector<std::string> labels;
  std::vector<double> singular_values;  // K retained, descending
  DenseMatrix row_coords;               // N x K
  DenseMatrix col_coords;               // N x K
  std::vector<double> row_masses;
  std::vector<double> col_masses;
  std::vector<double> inertia_pct;      // per retained axis, sums to 100
  DenseMatrix contributions;            // N x K
  DenseMatrix cos2;                     // N x K
  double total_inertia = 0.0;           // chi^2 / n
  std::vector<std::string> dropped_labels;  // zero-margin rows removed

  std::size_t axes() const noexcept { return singular_values.size(); }
  std::size_t size() const noexcept { return labels.size(); }
};

/// Relative rank cutoff on singular values.
inline constexpr double kRankCutoff = 1e-12;
/// Absolute noise floor; CA singular values never exceed 1.
inline constexpr double kSingularFloor = 1e-13;

/// Labels with an all-zero row or column are dropped (iteratively) and listed
/// in `dropped_labels`. Throws ZeroMatrix when nothing is left to analyze.
CaSolution correspondence_analysis(const std::vector<std::string>& labels, const DenseMatrix& counts);
CaSolution correspondence_analysis(const CooccurrenceMatrix& m);

struct ProjectedPoint {
  std::string lemma;
  double x = 0.0, y = 0.0;
  double ctr_x = 0.0, ctr_y = 0.0;
  double cos2 = 0.0;  // quality on the plane: cos2_x + cos2_y (once when x == y)
};

/// Points of the factor plane spanned by two 1-based axes, in label order.
std::vector<ProjectedPoint> project(const CaSolution& sol, std::size_t axis_x, std::size_t axis_y);

/// Mass-weighted k-means over selected principal coordinates. Initialization
/// is k-means++ from a seeded mt19937_64; an emptied cluster is re-seeded with
/// the point farthest from its own centroid. Cluster ids are renumbered in
/// order of first appearance along the labels.
struct IsotopyClustering {
  std::vector<std::size_t> axes_used;  // 1-based
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> labels;
  std::vector<std::size_t> assignment;  // parallel to labels
  std::size_t iterations = 0;
  double within_inertia = 0.0;

  std::size_t cluster_of(std::string_view lemma) const;
};

inline constexpr std::uint64_t kDefaultSeed = 42;

IsotopyClustering cluster_isotopies(const CaSolution& sol, std::size_t k, const std::vector<std::size_t>& axes,
                                    std::uint64_t seed = kDefaultSeed);

}  // namespace logometre
