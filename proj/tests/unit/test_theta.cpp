#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "thetaforge/combinatorics.hpp"
#include "thetaforge/error.hpp"
#include "thetaforge/theta.hpp"

namespace tf = thetaforge;
using tf::ThetaForm;
using tf::ThetaKind;

namespace {

// Closed form for odd cycles.
double odd_cycle_theta(int n) {
  const double c = std::cos(std::numbers::pi / n);
  return n * c / (1.0 + c);
}

double bar(const tf::Graph& g, ThetaKind k, ThetaForm f = ThetaForm::MinForm) {
  return tf::theta_bar(g, k, f).value;
}

}  // namespace

TEST(Theta, PentagonAllKindsAndForms) {
  const auto c5 = tf::cycle_graph(5);
  for (auto k : {ThetaKind::Lovasz, ThetaKind::Schrijver}) {
    EXPECT_NEAR(bar(c5, k, ThetaForm::MinForm), std::sqrt(5.0), 1e-6);
    EXPECT_NEAR(bar(c5, k, ThetaForm::MaxForm), std::sqrt(5.0), 1e-6);
  }
  EXPECT_NEAR(bar(c5, ThetaKind::Szegedy), std::sqrt(5.0), 1e-6);
}

TEST(Theta, OddCyclesMatchClosedForm) {
  for (int n : {7, 9, 11}) {
    const auto c = tf::cycle_graph(n);
    // theta(C_n) is the bar value of the complement.
    EXPECT_NEAR(tf::theta(c, ThetaKind::Lovasz).value, odd_cycle_theta(n), 1e-6) << n;
    // vertex-transitive: theta(G) theta(G^c) = n
    EXPECT_NEAR(bar(c, ThetaKind::Lovasz), n / odd_cycle_theta(n), 1e-6) << n;
  }
}

TEST(Theta, CompleteAndEmptyGraphs) {
  for (int n = 1; n <= 6; ++n) {
    for (auto k : {ThetaKind::Lovasz, ThetaKind::Schrijver, ThetaKind::Szegedy}) {
      EXPECT_NEAR(bar(tf::complete_graph(n), k), n, 1e-6);
      EXPECT_DOUBLE_EQ(bar(tf::empty_graph(n), k), 1.0);
    }
  }
}

TEST(Theta, Petersen) {
  const auto p = tf::petersen_graph();
  EXPECT_NEAR(tf::theta(p, ThetaKind::Lovasz).value, 4.0, 1e-6);
  EXPECT_NEAR(bar(p, ThetaKind::Lovasz), 2.5, 1e-6);
  EXPECT_NEAR(bar(p, ThetaKind::Lovasz, ThetaForm::MaxForm), 2.5, 1e-6);
}

TEST(Theta, MinFormWitnessHasConstantDiagonal) {
  const auto c7 = tf::cycle_graph(7);
  const auto r = tf::theta_bar(c7, ThetaKind::Lovasz);
  for (int i = 0; i < 7; ++i) EXPECT_NEAR(r.witness(i, i), r.value - 1.0, 1e-7);
  for (const auto& e : c7.edges()) EXPECT_NEAR(r.witness(e.u, e.v), -1.0, 1e-7);
  EXPECT_TRUE(tf::is_psd(r.witness, 1e-6));
}

TEST(Theta, SzegedyHasNoMaxForm) {
  EXPECT_THROW(tf::theta_bar(tf::cycle_graph(5), ThetaKind::Szegedy, ThetaForm::MaxForm), tf::Error);
  EXPECT_THROW(tf::max_form_problem(tf::cycle_graph(5), ThetaKind::Szegedy), tf::Error);
}

TEST(Theta, KindParsing) {
  EXPECT_EQ(tf::parse_theta_kind("schrijver"), ThetaKind::Schrijver);
  EXPECT_EQ(tf::parse_theta_form("max"), ThetaForm::MaxForm);
  EXPECT_THROW(tf::parse_theta_kind("shannon"), tf::Error);
  EXPECT_THROW(tf::parse_theta_form("mid"), tf::Error);
}

TEST(Theta, ConversionsPreserveObjective) {
  for (const auto& g : {tf::cycle_graph(5), tf::cycle_graph(7), tf::petersen_graph()}) {
    for (bool nonneg : {false, true}) {
      const auto kind = nonneg ? ThetaKind::Schrijver : ThetaKind::Lovasz;
      const auto r = tf::theta_bar(g, kind, ThetaForm::MaxForm);
      ASSERT_TRUE(r.b_matrix.has_value());
      const auto t = tf::convert_B_to_T(*r.b_matrix, g, nonneg, 1e-6);
      const double lambda = tf::max_eigenvalue(tf::SymMatrix::identity(g.order()) + t);
      EXPECT_NEAR(lambda, r.b_matrix->dense().sum(), 1e-6);
      const auto b = tf::convert_T_to_B(t, g, nonneg);
      EXPECT_NEAR(b.dense().trace(), 1.0, 1e-9);
      EXPECT_NEAR(b.dense().sum(), lambda, 1e-6);
      if (nonneg) {
        EXPECT_GE(b.dense().minCoeff(), -1e-12);
      }
    }
  }
}

TEST(Theta, ConversionRejectsBadInputs) {
  const auto c5 = tf::cycle_graph(5);
  EXPECT_THROW(tf::convert_B_to_T(tf::SymMatrix::identity(4), c5), tf::Error);  // dimension
  EXPECT_THROW(tf::convert_B_to_T(tf::SymMatrix::identity(5), c5), tf::Error);  // trace 5
  tf::SymMatrix off = tf::SymMatrix::identity(5) * 0.2;
  off.set(0, 2, 0.05);  // 0 and 2 are not adjacent in C5
  EXPECT_THROW(tf::convert_B_to_T(off, c5), tf::Error);

  tf::SymMatrix t(5);
  t.set(0, 0, 0.5);
  EXPECT_THROW(tf::convert_T_to_B(t, c5), tf::Error);  // nonzero diagonal
  tf::SymMatrix neg(5);
  neg.set(0, 1, -0.2);
  EXPECT_THROW(tf::convert_T_to_B(neg, c5, true), tf::Error);  // sign
}

TEST(Theta, SandwichOnRandomGraphs) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 15; ++i) {
    const auto g = tf::random_graph(2 + i % 8, 0.5, rng);
    const auto s = tf::sandwich_report(g);
    EXPECT_TRUE(s.monotone) << tf::serialize_graph(g);
    ASSERT_TRUE(s.alpha.has_value());
    EXPECT_EQ(*s.alpha, tf::independence_number(g));
  }
}

TEST(Theta, Reciprocity) {
  const auto r = tf::reciprocity_check(tf::petersen_graph());
  EXPECT_NEAR(r.lovasz_product, 10.0, 1e-5);
  EXPECT_NEAR(r.schrijver_szegedy_product, 10.0, 1e-5);
  ASSERT_TRUE(r.vertex_transitive.has_value());
  EXPECT_TRUE(*r.vertex_transitive);

  // Not vertex-transitive; the inequality still holds.
  const auto p = tf::reciprocity_check(tf::path_graph(4));
  EXPECT_GE(p.lovasz_product, 4.0 - 1e-6);
  EXPECT_FALSE(*p.vertex_transitive);
}

TEST(Theta, SchrijverSeparation) {
  // Complement of Hamming(6, {1,2,3}).
  const auto h = tf::complement(tf::schrijver_graph());
  EXPECT_NEAR(bar(h, ThetaKind::Schrijver), 4.0, 1e-4);
  EXPECT_NEAR(bar(h, ThetaKind::Lovasz), 16.0 / 3.0, 1e-4);
}

TEST(Theta, MinFormAtPinnedValue) {
  const auto c5 = tf::cycle_graph(5);
  const auto r = tf::theta_bar(c5, ThetaKind::Lovasz);
  const auto report = tf::check_feasible(tf::min_form_problem_at(c5, ThetaKind::Lovasz, r.value),
                                         r.witness, 1e-6);
  EXPECT_TRUE(report.passed);
  // Below the optimum the pinned program has no PSD solution.
  const auto low = tf::solve(tf::min_form_problem_at(c5, ThetaKind::Lovasz, 2.0));
  EXPECT_NE(low.status, tf::SdpStatus::Optimal);
}
