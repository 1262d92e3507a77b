#include "logometre/ca.hpp"
#include "logometre/error.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

using namespace logometre;

namespace {

DenseMatrix dense(const std::vector<std::vector<double>>& rows) {
  DenseMatrix m(rows.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::vector<std::string> labels_for(std::size_t n) {
  std::vector<std::string> l;
  for (std::size_t i = 0; i < n; ++i) l.push_back("l" + std::to_string(i));
  return l;
}

// Compares a solution against the dense oracle, allowing one sign flip per
// axis (applied jointly to rows and columns).
void expect_matches_oracle(const CaSolution& sol, const oracle::DenseCa& ref, double sigma_tol, double coord_tol) {
  ASSERT_EQ(sol.axes(), ref.sigma.size());
  for (std::size_t k = 0; k < sol.axes(); ++k) {
    EXPECT_NEAR(sol.singular_values[k], static_cast<double>(ref.sigma[k]), sigma_tol);
    // Degenerate singular values leave the axes undetermined.
    const bool isolated = (k == 0 || ref.sigma[k - 1] - ref.sigma[k] > 1e-6) &&
                          (k + 1 == ref.sigma.size() || ref.sigma[k] - ref.sigma[k + 1] > 1e-6);
    if (!isolated) continue;
    double dot = 0;
    for (std::size_t i = 0; i < sol.size(); ++i) dot += sol.row_coords(i, k) * static_cast<double>(ref.f[i][k]);
    const double sign = dot < 0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < sol.size(); ++i) {
      EXPECT_NEAR(sol.row_coords(i, k), sign * static_cast<double>(ref.f[i][k]), coord_tol);
      EXPECT_NEAR(sol.col_coords(i, k), sign * static_cast<double>(ref.g[i][k]), coord_tol);
    }
  }
}

void expect_invariants(const CaSolution& sol, double tol) {
  const std::size_t n = sol.size(), K = sol.axes();
  double sum_sq = 0;
  for (double s : sol.singular_values) sum_sq += s * s;
  EXPECT_NEAR(sum_sq, sol.total_inertia, tol);
  EXPECT_NEAR(std::accumulate(sol.inertia_pct.begin(), sol.inertia_pct.end(), 0.0), K ? 100.0 : 0.0, 1e-9);
  for (std::size_t k = 0; k < K; ++k) {
    double centre = 0, centre_c = 0, ctr = 0;
    for (std::size_t i = 0; i < n; ++i) {
      centre += sol.row_masses[i] * sol.row_coords(i, k);
      centre_c += sol.col_masses[i] * sol.col_coords(i, k);
      ctr += sol.contributions(i, k);
    }
    EXPECT_NEAR(centre, 0.0, tol);
    EXPECT_NEAR(centre_c, 0.0, tol);
    EXPECT_NEAR(ctr, 1.0, tol);
    for (std::size_t l = 0; l < K; ++l) {
      double ortho = 0;
      for (std::size_t i = 0; i < n; ++i) ortho += sol.row_masses[i] * sol.row_coords(i, k) * sol.row_coords(i, l);
      EXPECT_NEAR(ortho, k == l ? sol.singular_values[k] * sol.singular_values[k] : 0.0, tol);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    double c2 = 0;
    for (std::size_t k = 0; k < K; ++k) c2 += sol.cos2(i, k);
    if (K > 0) EXPECT_NEAR(c2, 1.0, 1e-9);
  }
}

}  // namespace

TEST(Ca, MatchesOracleOnRandomSymmetricTables) {
  testutil::Rng rng(51);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 3 + testutil::pick(rng, 6);
    const auto counts = testutil::random_symmetric_counts(rng, n, trial % 2 ? 9 : 200);
    const auto sol = correspondence_analysis(labels_for(n), dense(counts));
    expect_matches_oracle(sol, oracle::dense_ca(counts), 1e-10, 1e-9);
    expect_invariants(sol, 1e-10);
  }
}

TEST(Ca, MatchesOracleOnNonSymmetricTables) {
  testutil::Rng rng(52);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 3 + testutil::pick(rng, 5);
    std::vector<std::vector<double>> counts(n, std::vector<double>(n));
    for (auto& row : counts) {
      for (auto& x : row) x = static_cast<double>(1 + testutil::pick(rng, 30));
    }
    const auto sol = correspondence_analysis(labels_for(n), dense(counts));
    expect_matches_oracle(sol, oracle::dense_ca(counts), 1e-10, 1e-9);
  }
}

TEST(Ca, KnownThreeByThree) {
  // Planted sentence fixture table.
  const auto sol = correspondence_analysis({"a", "b", "c"}, dense({{0, 3, 1}, {3, 0, 0}, {1, 0, 0}}));
  const auto ref = oracle::dense_ca({{0, 3, 1}, {3, 0, 0}, {1, 0, 0}});
  expect_matches_oracle(sol, ref, 1e-12, 1e-10);
  EXPECT_EQ(sol.row_masses, (std::vector<double>{0.5, 0.375, 0.125}));
  // Chi-square / n computed by hand: sum (p - rc)^2 / rc.
  double inertia = 0;
  const double p[3][3] = {{0, 3.0 / 8, 1.0 / 8}, {3.0 / 8, 0, 0}, {1.0 / 8, 0, 0}};
  const double r[3] = {0.5, 0.375, 0.125};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) inertia += (p[i][j] - r[i] * r[j]) * (p[i][j] - r[i] * r[j]) / (r[i] * r[j]);
  }
  EXPECT_NEAR(sol.total_inertia, inertia, 1e-14);
}

TEST(Ca, RankOneIndependenceHasNoInertia) {
  const std::vector<double> r{1, 2, 3, 4, 5};
  DenseMatrix m(5, 5);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) m(i, j) = r[i] * r[j];
  }
  const auto sol = correspondence_analysis(labels_for(5), m);
  EXPECT_LE(sol.total_inertia, 1e-12);
  EXPECT_EQ(sol.axes(), 0u);
  EXPECT_TRUE(sol.inertia_pct.empty());
}

TEST(Ca, SignConvention) {
  testutil::Rng rng(53);
  const auto counts = testutil::random_symmetric_counts(rng, 7, 20);
  const auto sol = correspondence_analysis(labels_for(7), dense(counts));
  for (std::size_t k = 0; k < sol.axes(); ++k) {
    std::size_t arg = 0;
    for (std::size_t i = 1; i < sol.size(); ++i) {
      if (std::abs(sol.row_coords(i, k)) > std::abs(sol.row_coords(arg, k))) arg = i;
    }
    EXPECT_GT(sol.row_coords(arg, k), 0.0);
  }
}

TEST(Ca, ZeroMarginsDropped) {
  const auto sol = correspondence_analysis({"a", "b", "z", "c"}, dense({{0, 2, 0, 1}, {2, 0, 0, 3}, {0, 0, 0, 0}, {1, 3, 0, 0}}));
  EXPECT_EQ(sol.labels, (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(sol.dropped_labels, std::vector<std::string>{"z"});
  EXPECT_EQ(sol.row_coords.rows, 3u);
}

TEST(Ca, Errors) {
  try {
    correspondence_analysis(labels_for(3), DenseMatrix(3, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), errors::kZeroMatrix);
  }
  EXPECT_THROW(correspondence_analysis(labels_for(2), DenseMatrix(3, 3)), Error);
  DenseMatrix neg(2, 2, 1.0);
  neg(0, 1) = -1;
  EXPECT_THROW(correspondence_analysis(labels_for(2), neg), Error);
}

TEST(Ca, FromCooccurrenceMatrix) {
  CooccurrenceMatrix m;
  m.labels = {"a", "b", "c"};
  m.counts = {0, 3, 1, 3, 0, 0, 1, 0, 0};
  const auto sol = correspondence_analysis(m);
  EXPECT_EQ(sol.labels, m.labels);
  // b and c share a profile, leaving a single axis.
  EXPECT_EQ(sol.axes(), 1u);
}

TEST(Project, PlaneAndErrors) {
  testutil::Rng rng(54);
  const auto counts = testutil::random_symmetric_counts(rng, 6, 30);
  const auto sol = correspondence_analysis(labels_for(6), dense(counts));
  ASSERT_GE(sol.axes(), 2u);
  const auto pts = project(sol, 1, 2);
  ASSERT_EQ(pts.size(), 6u);
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(pts[i].lemma, sol.labels[i]);
    EXPECT_EQ(pts[i].x, sol.row_coords(i, 0));
    EXPECT_EQ(pts[i].y, sol.row_coords(i, 1));
    EXPECT_EQ(pts[i].ctr_x, sol.contributions(i, 0));
    EXPECT_NEAR(pts[i].cos2, sol.cos2(i, 0) + sol.cos2(i, 1), 1e-15);
  }
  const auto same = project(sol, 1, 1);
  EXPECT_NEAR(same[0].cos2, sol.cos2(0, 0), 1e-15);
  for (auto [x, y] : std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, sol.axes() + 1}}) {
    try {
      project(sol, x, y);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), errors::kAxisOutOfRange);
    }
  }
}

// Properties.

TEST(CaProperty, PermutationEquivariance) {
  testutil::Rng rng(55);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t n = 4 + testutil::pick(rng, 8);
    const auto counts = testutil::random_symmetric_counts(rng, n, 25);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::vector<double>> permuted(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) permuted[i][j] = counts[perm[i]][perm[j]];
    }
    const auto a = correspondence_analysis(labels_for(n), dense(counts));
    const auto b = correspondence_analysis(labels_for(n), dense(permuted));
    ASSERT_EQ(a.axes(), b.axes());
    for (std::size_t k = 0; k < a.axes(); ++k) {
      EXPECT_NEAR(a.singular_values[k], b.singular_values[k], 1e-12);
      const bool isolated = (k == 0 || a.singular_values[k - 1] - a.singular_values[k] > 1e-6) &&
                            (k + 1 == a.axes() || a.singular_values[k] - a.singular_values[k + 1] > 1e-6);
      if (!isolated) continue;
      for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(b.row_coords(i, k), a.row_coords(perm[i], k), 1e-9);
    }
  }
}

TEST(CaProperty, ScaleInvariance) {
  testutil::Rng rng(56);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 3 + testutil::pick(rng, 10);
    auto counts = testutil::random_symmetric_counts(rng, n, 40);
    const auto a = correspondence_analysis(labels_for(n), dense(counts));
    for (auto& row : counts) {
      for (auto& x : row) x *= 7;
    }
    const auto b = correspondence_analysis(labels_for(n), dense(counts));
    ASSERT_EQ(a.axes(), b.axes());
    EXPECT_NEAR(a.total_inertia, b.total_inertia, 1e-12);
    for (std::size_t k = 0; k < a.axes(); ++k) {
      EXPECT_NEAR(a.singular_values[k], b.singular_values[k], 1e-12);
      for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(a.row_coords(i, k), b.row_coords(i, k), 1e-9);
    }
  }
}

TEST(CaProperty, TransitionFormulas) {
  // Duality: F = D_r^-1 P G / sigma, so each row point is the barycenter of
  // the column points weighted by its profile, rescaled.
  testutil::Rng rng(57);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 4 + testutil::pick(rng, 12);
    const auto counts = testutil::random_symmetric_counts(rng, n, 15);
    const auto sol = correspondence_analysis(labels_for(n), dense(counts));
    double total = 0;
    for (const auto& row : counts) total += std::accumulate(row.begin(), row.end(), 0.0);
    for (std::size_t k = 0; k < sol.axes(); ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        double bary = 0;
        for (std::size_t j = 0; j < n; ++j) bary += counts[i][j] / total / sol.row_masses[i] * sol.col_coords(j, k);
        EXPECT_NEAR(bary / sol.singular_values[k], sol.row_coords(i, k), 1e-9);
      }
    }
  }
}

TEST(CaProperty, InvariantsOnLargerTables) {
  testutil::Rng rng(58);
  for (std::size_t n : {20u, 60u}) {
    const auto counts = testutil::random_symmetric_counts(rng, n, 12);
    expect_invariants(correspondence_analysis(labels_for(n), dense(counts)), 1e-10);
  }
}

TEST(CaProperty, SymmetricInputDuality) {
  testutil::Rng rng(59);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 3 + testutil::pick(rng, 20);
    const auto sol = correspondence_analysis(labels_for(n), dense(testutil::random_symmetric_counts(rng, n, 30)));
    EXPECT_EQ(sol.row_masses, sol.col_masses);
    for (std::size_t k = 0; k < sol.axes(); ++k) {
      const double sign = sol.row_coords(0, k) * sol.col_coords(0, k) < 0 ? -1.0 : 1.0;
      for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(sol.col_coords(i, k), sign * sol.row_coords(i, k), 1e-10);
    }
  }
}
