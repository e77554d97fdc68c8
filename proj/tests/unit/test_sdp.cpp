#include <gtest/gtest.h>

#include <random>

#include "thetaforge/error.hpp"
#include "thetaforge/sdp.hpp"

namespace tf = thetaforge;

namespace {

tf::SymMatrix random_sym(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  tf::SymMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m.set(i, j, d(rng));
  return m;
}

tf::SdpProblem trace_one(const tf::SymMatrix& c, tf::Sense sense) {
  tf::SdpProblem p;
  p.dim = c.dim();
  p.sense = sense;
  p.objective = tf::SparseSym::from_dense(c);
  p.equalities.push_back({tf::SparseSym::identity(c.dim()), 1.0, "trace"});
  return p;
}

}  // namespace

TEST(SparseSym, SelectorPicksOneEntry) {
  Eigen::MatrixXd x(3, 3);
  x << 1, 2, 3, 2, 5, 6, 3, 6, 9;
  EXPECT_DOUBLE_EQ(tf::SparseSym::selector(0, 2).dot(x), 3.0);
  EXPECT_DOUBLE_EQ(tf::SparseSym::selector(1, 1).dot(x), 5.0);
  EXPECT_DOUBLE_EQ(tf::SparseSym::ones(3).dot(x), x.sum());
  EXPECT_DOUBLE_EQ(tf::SparseSym::identity(3).dot(x), 15.0);
  const auto d = tf::SparseSym::selector(0, 2).to_dense(3);
  EXPECT_DOUBLE_EQ(d(0, 2), 0.5);
  EXPECT_DOUBLE_EQ(d(2, 0), 0.5);
}

// min/max <C, X> over the spectraplex is the extreme eigenvalue of C.
TEST(Sdp, SpectraplexGivesExtremeEigenvalues) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    const auto c = random_sym(6, rng);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c.dense());
    const auto lo = tf::solve(trace_one(c, tf::Sense::Minimize));
    ASSERT_EQ(lo.status, tf::SdpStatus::Optimal);
    EXPECT_NEAR(lo.primal_value, es.eigenvalues()(0), 1e-7);
    const auto hi = tf::solve(trace_one(c, tf::Sense::Maximize));
    ASSERT_EQ(hi.status, tf::SdpStatus::Optimal);
    EXPECT_NEAR(hi.primal_value, es.eigenvalues()(5), 1e-7);
    EXPECT_NEAR(hi.dual_value, es.eigenvalues()(5), 1e-7);
    // For the max problem the trace multiplier is the optimal value itself.
    EXPECT_NEAR(hi.equality_multipliers[0], es.eigenvalues()(5), 1e-6);
  }
}

TEST(Sdp, InequalitiesAreRespected) {
  // max X_01 with X_00 = X_11 = 1 and X_01 <= 0.3 (as -X_01 >= -0.3).
  tf::SdpProblem p;
  p.dim = 2;
  p.sense = tf::Sense::Maximize;
  p.objective = tf::SparseSym::selector(0, 1);
  p.equalities.push_back({tf::SparseSym::selector(0, 0), 1.0, "a"});
  p.equalities.push_back({tf::SparseSym::selector(1, 1), 1.0, "b"});
  p.inequalities.push_back({tf::SparseSym::selector(0, 1, -1.0), -0.3, "cap"});
  const auto s = tf::solve(p);
  ASSERT_EQ(s.status, tf::SdpStatus::Optimal);
  EXPECT_NEAR(s.primal_value, 0.3, 1e-7);
  EXPECT_NEAR(s.X(0, 1), 0.3, 1e-7);
  // Active; dual value b.y = -0.3 y must reproduce 0.3.
  EXPECT_NEAR(s.inequality_multipliers[0], -1.0, 1e-6);
  EXPECT_NEAR(s.dual_value, 0.3, 1e-7);
}

TEST(Sdp, DetectsInfeasibility) {
  tf::SdpProblem p;
  p.dim = 2;
  p.sense = tf::Sense::Minimize;
  p.objective = tf::SparseSym::identity(2);
  p.equalities.push_back({tf::SparseSym::selector(0, 0), -1.0, "negative diagonal"});
  const auto s = tf::solve(p);
  EXPECT_NE(s.status, tf::SdpStatus::Optimal);
}

TEST(Sdp, DropsDependentEqualities) {
  tf::SymMatrix c = tf::SymMatrix::identity(3);
  auto p = trace_one(c, tf::Sense::Minimize);
  p.equalities.push_back({tf::SparseSym::identity(3).scaled(2.0), 2.0, "twice the trace"});
  const auto s = tf::solve(p);
  ASSERT_EQ(s.status, tf::SdpStatus::Optimal);
  // Either copy may go; pivoting keeps the larger row.
  ASSERT_EQ(s.dropped_equalities.size(), 1u);
  EXPECT_EQ(s.equality_multipliers[s.dropped_equalities[0]], 0.0);
  EXPECT_NEAR(s.primal_value, 1.0, 1e-7);
}

TEST(Sdp, WeakDualityOnFeasibleIterates) {
  std::mt19937_64 rng(4);
  tf::SdpOptions opts;
  opts.record_history = true;
  const auto s = tf::solve(trace_one(random_sym(5, rng), tf::Sense::Minimize), opts);
  ASSERT_EQ(s.status, tf::SdpStatus::Optimal);
  ASSERT_FALSE(s.history.empty());
  for (const auto& h : s.history) {
    if (h.primal_residual < 1e-9 && h.dual_residual < 1e-9) {
      EXPECT_GE(h.primal_value, h.dual_value - 1e-7) << "iteration " << h.iteration;
    }
  }
}

TEST(Sdp, RejectsMalformedProblems) {
  tf::SdpProblem p;
  p.dim = 0;
  EXPECT_THROW(tf::solve(p), tf::Error);
  p.dim = 2;
  p.equalities.push_back({tf::SparseSym::selector(0, 3), 1.0, "outside"});
  EXPECT_THROW(tf::solve(p), tf::Error);
  p.dim = tf::kMaxSdpDim + 1;
  p.equalities.clear();
  EXPECT_THROW(tf::solve(p), tf::Error);
}

TEST(Sdp, FeasibilityCheck) {
  auto p = trace_one(tf::SymMatrix::identity(2), tf::Sense::Minimize);
  p.inequalities.push_back({tf::SparseSym::selector(0, 1), 0.1, "corr"});
  tf::SymMatrix good = tf::SymMatrix::identity(2) * 0.5;
  good.set(0, 1, 0.2);
  EXPECT_TRUE(tf::check_feasible(p, good, 1e-9).passed);

  tf::SymMatrix bad = good;
  bad.set(0, 1, 0.0);
  const auto r = tf::check_feasible(p, bad, 1e-9);
  EXPECT_FALSE(r.passed);
  EXPECT_NEAR(r.worst_violation, 0.1, 1e-15);

  tf::SymMatrix not_psd = good;
  not_psd.set(0, 1, 0.9);
  EXPECT_FALSE(tf::check_feasible(p, not_psd, 1e-9).psd);
  EXPECT_THROW(tf::check_feasible(p, tf::SymMatrix(3), 1e-9), tf::Error);
}

TEST(Sdp, ProblemSerializes) {
  const auto j = tf::to_json(trace_one(tf::SymMatrix::identity(2), tf::Sense::Maximize));
  EXPECT_EQ(j.at("dim"), 2);
  EXPECT_EQ(j.at("equalities").size(), 1u);
}
