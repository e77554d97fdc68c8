#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "thetaforge/error.hpp"
#include "thetaforge/graph.hpp"
#include "thetaforge/linalg.hpp"

namespace tf = thetaforge;

namespace {

tf::SymMatrix random_sym(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  tf::SymMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m.set(i, j, d(rng));
  return m;
}

}  // namespace

TEST(Linalg, SetMirrorsEntries) {
  tf::SymMatrix m(3);
  m.set(0, 2, 4.0);
  m.add(2, 0, 1.0);
  EXPECT_EQ(m(2, 0), 5.0);
  EXPECT_EQ(m(0, 2), 5.0);
  EXPECT_THROW(m.set(0, 1, std::nan("")), tf::Error);
}

TEST(Linalg, FromDenseChecksShapeAndSymmetry) {
  Eigen::MatrixXd rect(2, 3);
  rect.setZero();
  EXPECT_THROW(tf::SymMatrix::from_dense(rect), tf::Error);
  Eigen::MatrixXd skew(2, 2);
  skew << 1, 2, 0, 1;
  EXPECT_THROW(tf::SymMatrix::from_dense(skew), tf::Error);
  Eigen::MatrixXd near(2, 2);
  near << 1, 2, 2 + 1e-14, 1;
  EXPECT_EQ(tf::SymMatrix::from_dense(near)(0, 1), tf::SymMatrix::from_dense(near)(1, 0));
}

TEST(Linalg, CycleSpectrum) {
  // Adjacency eigenvalues of C_n are 2 cos(2 pi k / n).
  const int n = 7;
  const auto d = tf::eig(tf::adjacency_matrix(tf::cycle_graph(n)));
  std::vector<double> expected;
  for (int k = 0; k < n; ++k) expected.push_back(2 * std::cos(2 * std::numbers::pi * k / n));
  std::sort(expected.begin(), expected.end());
  for (int k = 0; k < n; ++k) EXPECT_NEAR(d.eigenvalues(k), expected[k], 1e-12);
}

TEST(Linalg, EigenvectorsReconstruct) {
  std::mt19937_64 rng(3);
  const auto m = random_sym(9, rng);
  const auto d = tf::eig(m);
  const Eigen::MatrixXd back = d.eigenvectors * d.eigenvalues.asDiagonal() * d.eigenvectors.transpose();
  EXPECT_LT((back - m.dense()).cwiseAbs().maxCoeff(), 1e-12);
  for (int k = 0; k < 9; ++k) {
    int first = 0;
    while (std::abs(d.eigenvectors(first, k)) < 1e-14) ++first;
    EXPECT_GT(d.eigenvectors(first, k), 0.0);
  }
  EXPECT_DOUBLE_EQ(tf::min_eigenvalue(m), d.eigenvalues(0));
  EXPECT_DOUBLE_EQ(tf::max_eigenvalue(m), d.eigenvalues(8));
}

TEST(Linalg, PsdTolerance) {
  EXPECT_TRUE(tf::is_psd(tf::SymMatrix::ones(4)));
  tf::SymMatrix m = tf::SymMatrix::identity(2);
  m.set(0, 1, 1.0 + 1e-10);  // lambda_min ~ -1e-10
  EXPECT_TRUE(tf::is_psd(m, 1e-8));
  EXPECT_FALSE(tf::is_psd(m, 1e-12));
  m.set(0, 1, 2.0);
  EXPECT_FALSE(tf::is_psd(m));
}

TEST(Linalg, KroneckerMixedProduct) {
  std::mt19937_64 rng(5);
  const auto a = random_sym(3, rng), b = random_sym(2, rng);
  const auto c = random_sym(3, rng), d = random_sym(2, rng);
  const Eigen::MatrixXd lhs = tf::kron(a, b).dense() * tf::kron(c, d).dense();
  const Eigen::MatrixXd ac = a.dense() * c.dense(), bd = b.dense() * d.dense();
  for (int i = 0; i < 3; ++i)
    for (int s = 0; s < 2; ++s)
      for (int j = 0; j < 3; ++j)
        for (int t = 0; t < 2; ++t) EXPECT_NEAR(lhs(i * 2 + s, j * 2 + t), ac(i, j) * bd(s, t), 1e-12);
}

TEST(Linalg, NormsAndProducts) {
  std::mt19937_64 rng(8);
  const auto a = random_sym(5, rng), b = random_sym(5, rng);
  EXPECT_NEAR(tf::hs_inner(a, b), (a.dense().cwiseProduct(b.dense())).sum(), 1e-12);
  EXPECT_NEAR(tf::opnorm(a), std::max(-tf::min_eigenvalue(a), tf::max_eigenvalue(a)), 1e-12);
  const auto h = tf::hadamard(a, b);
  EXPECT_DOUBLE_EQ(h(1, 3), a(1, 3) * b(1, 3));
  EXPECT_THROW(tf::hadamard(a, tf::SymMatrix(4)), tf::Error);
}

TEST(Linalg, DiagonalPseudoInverseSqrt) {
  const std::vector<double> v{4.0, 0.0, 0.25};
  const auto d = tf::diag_pseudo_inv_sqrt(tf::SymMatrix::diagonal(v));
  EXPECT_DOUBLE_EQ(d(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(d(1, 1), 0.0);
  EXPECT_DOUBLE_EQ(d(2, 2), 2.0);
  EXPECT_THROW(tf::diag_pseudo_inv_sqrt(tf::SymMatrix::ones(2)), tf::Error);
  const std::vector<double> neg{1.0, -1.0};
  EXPECT_THROW(tf::diag_pseudo_inv_sqrt(tf::SymMatrix::diagonal(neg)), tf::Error);
}

TEST(Linalg, CholeskyAndGramFactor) {
  EXPECT_FALSE(tf::cholesky(tf::SymMatrix::ones(3)).has_value());
  const auto l = tf::cholesky(tf::SymMatrix::identity(3) * 4.0);
  ASSERT_TRUE(l.has_value());
  EXPECT_NEAR((*l)(2, 2), 2.0, 1e-15);

  // Rank-2 PSD matrix: the factor has two columns and reproduces it.
  Eigen::VectorXd u(4), v(4);
  u << 1, 2, 0, -1;
  v << 0, 1, 1, 1;
  const auto m = tf::SymMatrix::outer(u) + tf::SymMatrix::outer(v);
  const auto w = tf::gram_factor(m);
  EXPECT_EQ(w.cols(), 2);
  EXPECT_LT((w * w.transpose() - m.dense()).cwiseAbs().maxCoeff(), 1e-12);

  tf::SymMatrix bad = tf::SymMatrix::identity(2);
  bad.set(0, 1, 3.0);
  EXPECT_THROW(tf::gram_factor(bad), tf::Error);
}
