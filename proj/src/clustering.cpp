#include "logometre/ca.hpp"

#include "logometre/error.hpp"

#include <algorithm>
#include <limits>
#include <random>

namespace logometre {

namespace {

constexpr std::size_t kMaxIterations = 300;

// Uniform double in [0, 1) from the raw engine output; avoids the
// implementation-defined std::uniform_real_distribution.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double squared_distance(const std::vector<double>& points, std::size_t i, const std::vector<double>& centroids,
                        std::size_t c, std::size_t dim) {
  double d = 0.0;
  for (std::size_t a = 0; a < dim; ++a) {
    const double diff = points[i * dim + a] - centroids[c * dim + a];
    d += diff * diff;
  }
  return d;
}

}  // namespace

std::size_t IsotopyClustering::cluster_of(std::string_view lemma) const {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == lemma) return assignment[i];
  }
  throw Error(errors::kInvalidArgument, "lemma '" + std::string(lemma) + "' is not clustered");
}

IsotopyClustering cluster_isotopies(const CaSolution& sol, std::size_t k, const std::vector<std::size_t>& axes,
                                    std::uint64_t seed) {
  const std::size_t n = sol.size();
  if (k < 2) throw Error(errors::kInvalidArgument, "cluster count must be at least 2");
  if (n < k) {
    throw Error(errors::kTooFewPoints,
                std::to_string(n) + " points cannot form " + std::to_string(k) + " clusters");
  }
  if (axes.empty()) throw Error(errors::kAxisOutOfRange, "no axes selected for clustering");
  for (auto a : axes) {
    if (a < 1 || a > sol.axes()) {
      throw Error(errors::kAxisOutOfRange, "axis " + std::to_string(a) + " outside 1.." +
                                               std::to_string(sol.axes()));
    }
  }

  IsotopyClustering out;
  out.axes_used = axes;
  out.k = k;
  out.seed = seed;
  out.labels = sol.labels;
  out.assignment.assign(n, 0);

  if (k == n) {
    for (std::size_t i = 0; i < n; ++i) out.assignment[i] = i;
    return out;
  }

  const std::size_t dim = axes.size();
  std::vector<double> points(n * dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < dim; ++a) points[i * dim + a] = sol.row_coords(i, axes[a] - 1);
  }
  const auto& mass = sol.row_masses;

  // k-means++ seeding, draws weighted by mass * D^2
  std::mt19937_64 rng(seed);
  std::vector<double> centroids(k * dim);
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  const auto set_centroid = [&](std::size_t c, std::size_t i) {
    std::copy_n(points.begin() + static_cast<std::ptrdiff_t>(i * dim), dim,
                centroids.begin() + static_cast<std::ptrdiff_t>(c * dim));
  };
  const auto draw = [&](const std::vector<double>& weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    if (!(total > 0.0)) return std::size_t{0};
    const double target = unit_uniform(rng) * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      acc += weights[i];
      if (target < acc) return i;
    }
    return weights.size() - 1;
  };
  set_centroid(0, draw(mass));
  std::vector<double> weights(n);
  for (std::size_t c = 1; c < k; ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      nearest[i] = std::min(nearest[i], squared_distance(points, i, centroids, c - 1, dim));
      weights[i] = mass[i] * nearest[i];
    }
    set_centroid(c, draw(weights));
  }

  std::vector<std::size_t> assignment(n, k);
  std::vector<std::size_t> sizes(k);
  for (std::size_t iter = 0; iter < kMaxIterations; ++iter) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t best = 0;
      double best_d = squared_distance(points, i, centroids, 0, dim);
      for (std::size_t c = 1; c < k; ++c) {
        const double d = squared_distance(points, i, centroids, c, dim);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (assignment[i] != best) {
        assignment[i] = best;
        changed = true;
      }
    }

    std::fill(sizes.begin(), sizes.end(), 0);
    for (auto c : assignment) ++sizes[c];
    for (std::size_t c = 0; c < k; ++c) {
      if (sizes[c] > 0) continue;
      std::size_t far = n;
      double far_d = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (sizes[assignment[i]] < 2) continue;
        const double d = squared_distance(points, i, centroids, assignment[i], dim);
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      --sizes[assignment[far]];
      assignment[far] = c;
      sizes[c] = 1;
      changed = true;
    }

    std::vector<double> sum(k * dim, 0.0);
    std::vector<double> wsum(k, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto c = assignment[i];
      wsum[c] += mass[i];
      for (std::size_t a = 0; a < dim; ++a) sum[c * dim + a] += mass[i] * points[i * dim + a];
    }
    for (std::size_t c = 0; c < k; ++c) {
      for (std::size_t a = 0; a < dim; ++a) centroids[c * dim + a] = sum[c * dim + a] / wsum[c];
    }
    out.iterations = iter + 1;
    if (!changed) break;
  }

  // renumber by first appearance
  std::vector<std::size_t> relabel(k, k);
  std::size_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    auto& r = relabel[assignment[i]];
    if (r == k) r = next++;
    out.assignment[i] = r;
  }
  for (std::size_t i = 0; i < n; ++i) {
    out.within_inertia += mass[i] * squared_distance(points, i, centroids, assignment[i], dim);
  }
  return out;
}

}  // namespace logometre
