#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "thetaforge/combinatorics.hpp"
#include "thetaforge/error.hpp"
#include "thetaforge/homrelax.hpp"

namespace tf = thetaforge;
using tf::HomAnswer;
using tf::HomVariant;

namespace {

tf::ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const tf::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return tf::ErrorCode::InvalidInput;
}

const tf::Graph& c5() {
  static const tf::Graph g = tf::cycle_graph(5);
  return g;
}

}  // namespace

TEST(HomRelax, VariantNames) {
  EXPECT_EQ(tf::parse_hom_variant("B"), HomVariant::B);
  EXPECT_EQ(tf::parse_hom_variant("plus"), HomVariant::Plus);
  EXPECT_EQ(tf::parse_hom_variant("+"), HomVariant::Plus);
  EXPECT_EQ(tf::parse_hom_variant("v"), HomVariant::V);
  EXPECT_EQ(tf::to_string(HomVariant::Plus), "plus");
  EXPECT_THROW(tf::parse_hom_variant("W"), tf::Error);
}

TEST(HomRelax, DecideB) {
  const auto k2 = tf::complete_graph(2), k3 = tf::complete_graph(3);
  const auto yes = tf::decide(k2, c5(), HomVariant::B);
  EXPECT_EQ(yes.answer, HomAnswer::Yes);
  EXPECT_NEAR(yes.values.at("theta_bar_h"), std::sqrt(5.0), 1e-6);
  // sqrt 5 < 3, so K3 does not even B-map into C5.
  EXPECT_EQ(tf::decide(k3, c5(), HomVariant::B).answer, HomAnswer::No);
  EXPECT_EQ(tf::decide(c5(), k3, HomVariant::B).answer, HomAnswer::Yes);
}

TEST(HomRelax, DecidePlusAndV) {
  const auto k3 = tf::complete_graph(3);
  for (auto v : {HomVariant::Plus, HomVariant::V}) {
    EXPECT_EQ(tf::decide(c5(), k3, v).answer, HomAnswer::Yes);
    EXPECT_EQ(tf::decide(k3, c5(), v).answer, HomAnswer::No);
    const auto same = tf::decide(tf::petersen_graph(), tf::petersen_graph(), v);
    EXPECT_EQ(same.answer, HomAnswer::Yes);
    EXPECT_FALSE(same.reason.empty());
  }
}

TEST(HomRelax, CertificateBVerifies) {
  const auto cert = tf::construct_certificate_B(tf::complete_graph(2), c5());
  EXPECT_EQ(cert.C.dim(), 10);
  const auto rep = tf::verify_certificate(cert, tf::complete_graph(2), c5(), 1e-8);
  EXPECT_TRUE(rep.passed);
  for (const char* name : {"psd", "block_sum", "adjacency_zero", "diagonal_block"}) {
    ASSERT_NE(rep.find(name), nullptr) << name;
    EXPECT_TRUE(rep.find(name)->passed) << name;
  }
  EXPECT_EQ(rep.find("nonnegative"), nullptr);
}

TEST(HomRelax, VerificationLocatesCorruption) {
  auto cert = tf::construct_certificate_B(tf::complete_graph(2), c5());
  // 0 ~ 1 in K2 but 0 and 2 are not adjacent in C5.
  cert.C.set(0 * 5 + 0, 1 * 5 + 2, 0.3);
  const auto rep = tf::verify_certificate(cert, tf::complete_graph(2), c5(), 1e-8);
  EXPECT_FALSE(rep.passed);
  const auto* adj = rep.find("adjacency_zero");
  ASSERT_NE(adj, nullptr);
  EXPECT_FALSE(adj->passed);
  EXPECT_NEAR(adj->worst, 0.3, 1e-12);
  EXPECT_EQ(adj->where, (std::array<int, 4>{0, 1, 0, 2}));
}

TEST(HomRelax, CertificatePreconditions) {
  EXPECT_EQ(code_of([] { tf::construct_certificate_B(tf::complete_graph(3), c5()); }),
            tf::ErrorCode::PreconditionFailed);
  EXPECT_EQ(code_of([] { tf::construct_certificate_V(tf::complete_graph(3), c5()); }),
            tf::ErrorCode::PreconditionFailed);
  EXPECT_EQ(code_of([] {
              tf::assemble_certificate(tf::SymMatrix(2), tf::SymMatrix::identity(3), false);
            }),
            tf::ErrorCode::DegenerateLambda);
}

TEST(HomRelax, CertificateVHasNonnegativeGram) {
  const auto k3 = tf::complete_graph(3);
  const auto cert = tf::construct_certificate_V(c5(), k3);
  const auto rep = tf::verify_certificate(cert, c5(), k3, 1e-8);
  EXPECT_TRUE(rep.passed);
  ASSERT_NE(rep.find("nonnegative"), nullptr);
  EXPECT_GE(cert.C.dense().minCoeff(), -1e-8);
}

TEST(HomRelax, EdgelessTargetGivesDegenerateCertificate) {
  const auto e3 = tf::empty_graph(3);
  const auto cert = tf::construct_certificate_B(tf::empty_graph(2), e3);
  EXPECT_TRUE(tf::verify_certificate(cert, tf::empty_graph(2), e3).passed);
}

TEST(HomRelax, ClassicalHomomorphismsCertifyAllVariants) {
  std::mt19937_64 rng(17);
  int tried = 0;
  for (int i = 0; i < 60 && tried < 10; ++i) {
    const auto g = tf::random_graph(2 + i % 5, 0.5, rng);
    const auto h = tf::random_graph(2 + (i / 2) % 5, 0.6, rng);
    const auto f = tf::find_homomorphism(g, h);
    if (!f) continue;
    ++tried;
    for (auto v : {HomVariant::B, HomVariant::Plus, HomVariant::V}) {
      const auto cert = tf::certificate_from_homomorphism(g, h, *f, v);
      EXPECT_TRUE(tf::verify_certificate(cert, g, h).passed);
      EXPECT_EQ(tf::gram_factor(cert.C).cols(), 1);  // v v^T
    }
  }
  EXPECT_EQ(tried, 10);
}

TEST(HomRelax, YFeasibleForRandomPairs) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 6; ++i) {
    auto g = tf::random_graph(3 + i % 4, 0.5, rng);
    auto h = tf::random_graph(3 + (i + 1) % 4, 0.5, rng);
    auto tg = tf::theta_bar(g, tf::ThetaKind::Lovasz).value;
    auto th = tf::theta_bar(h, tf::ThetaKind::Lovasz).value;
    if (tg > th) {
      std::swap(g, h);
      std::swap(tg, th);
    }
    const auto cert = tf::construct_certificate_B(g, h);
    ASSERT_TRUE(tf::verify_certificate(cert, g, h).passed);
    const auto zh = tf::theta_bar(h, tf::ThetaKind::Lovasz).witness;
    const auto y = tf::construct_Y(cert, zh);
    EXPECT_TRUE(tf::check_feasible(tf::min_form_problem_at(g, tf::ThetaKind::Lovasz, th), y, 1e-6).passed);
  }
}

TEST(HomRelax, VectorExtraction) {
  const auto k2 = tf::complete_graph(2);
  const auto cert = tf::construct_certificate_B(k2, c5());
  const auto vs = tf::extract_vectors(cert, k2, c5());
  const auto r = tf::check_vector_conditions(vs, k2, c5(), HomVariant::B, 1e-6, &cert.C);
  EXPECT_TRUE(r.passed);
  EXPECT_LT(r.gram_error, 1e-6);
  EXPECT_LT(r.norm_error, 1e-6);

  auto broken = cert;
  broken.C.set(0, 1, 0.5);
  EXPECT_EQ(code_of([&] { tf::extract_vectors(broken, k2, c5()); }), tf::ErrorCode::NotVerified);
}

TEST(HomRelax, GramFeasibility) {
  const auto yes = tf::gram_feasibility(tf::complete_graph(2), c5(), HomVariant::B);
  EXPECT_EQ(yes.answer, HomAnswer::Yes);
  ASSERT_TRUE(yes.certificate.has_value());
  EXPECT_TRUE(tf::verify_certificate(*yes.certificate, tf::complete_graph(2), c5(), 1e-6).passed);

  EXPECT_EQ(tf::gram_feasibility(tf::complete_graph(3), c5(), HomVariant::B).answer, HomAnswer::No);
  EXPECT_EQ(tf::gram_feasibility(c5(), tf::complete_graph(3), HomVariant::V).answer, HomAnswer::Yes);
  EXPECT_THROW(tf::gram_feasibility(tf::petersen_graph(), tf::complete_graph(16), HomVariant::B), tf::Error);
}

TEST(HomRelax, GuardedRounding) {
  EXPECT_EQ(tf::guarded_floor(3.9999999), 4);
  EXPECT_EQ(tf::guarded_floor(3.99), 3);
  EXPECT_EQ(tf::guarded_ceil(5.0000001), 5);
  EXPECT_EQ(tf::guarded_ceil(5.01), 6);
  EXPECT_EQ(tf::guarded_floor(2.5), 2);
}

TEST(HomRelax, DerivedQuantitiesOfPentagon) {
  const auto d = tf::derived_quantities(c5());
  EXPECT_NEAR(d.theta_bar, std::sqrt(5.0), 1e-6);
  EXPECT_EQ(d.beta, 2);
  EXPECT_EQ(d.beta_chi, 3);
  EXPECT_EQ(d.chi_vect, 3);
  EXPECT_EQ(d.omega_vect, 2);
  EXPECT_EQ(d.beta_minus, d.omega_vect);
  EXPECT_EQ(d.alpha_star_upper, d.omega_vect);
  EXPECT_EQ(d.chi_star_lower, d.chi_vect);
}

TEST(HomRelax, HomProductAgreesWithDecide) {
  const auto k2 = tf::complete_graph(2), k3 = tf::complete_graph(3);
  const auto up = tf::hom_product_check(k2, k3);
  EXPECT_NEAR(up.theta_of_homprod, 2.0, 1e-5);
  EXPECT_TRUE(up.consistent);
  const auto down = tf::hom_product_check(k3, k2);
  EXPECT_LT(down.theta_of_homprod, 3.0 - 1e-3);
  EXPECT_TRUE(down.consistent);
}

TEST(HomRelax, SchrijverCharacterization) {
  const auto k2 = tf::complete_graph(2);
  const auto yes = tf::schrijver_iff(k2, c5());
  EXPECT_TRUE(yes.decision);
  ASSERT_TRUE(yes.certificate.has_value());
  const auto rep = tf::verify_schrijver_certificate(*yes.certificate, k2, c5());
  EXPECT_TRUE(rep.passed);
  EXPECT_NE(rep.find("adjacent_diagonal_nonpositive"), nullptr);

  const auto no = tf::schrijver_iff(tf::complete_graph(3), c5());
  EXPECT_FALSE(no.decision);
  EXPECT_FALSE(no.certificate.has_value());
}

TEST(HomRelax, CertificateJsonRoundTrip) {
  const auto k2 = tf::complete_graph(2);
  const auto cert = tf::construct_certificate_B(k2, c5());
  const auto j = tf::certificate_to_json(cert);
  EXPECT_EQ(j.at("dim"), 10);
  EXPECT_EQ(j.at("entries").size(), 55u);
  const auto back = tf::certificate_from_json(j, k2, c5());
  EXPECT_EQ(back.variant, HomVariant::B);
  EXPECT_LT((back.C.dense() - cert.C.dense()).cwiseAbs().maxCoeff(), 1e-15);

  auto tampered = j;
  tampered["entries"][1] = 0.7;  // row 1, column 0: the (x=0, s=0)-(x=0, s=1) block entry
  EXPECT_EQ(code_of([&] { tf::certificate_from_json(tampered, k2, c5()); }),
            tf::ErrorCode::CertificateInvalid);
  auto short_entries = j;
  short_entries["entries"].erase(0);
  EXPECT_EQ(code_of([&] { tf::certificate_from_json(short_entries, k2, c5()); }),
            tf::ErrorCode::InvalidInput);
  EXPECT_NE(code_of([&] { tf::certificate_from_json(j, tf::complete_graph(3), c5()); }),
            tf::ErrorCode::CertificateInvalid);
  EXPECT_EQ(code_of([&] { tf::certificate_from_json(nlohmann::json::object(), k2, c5()); }),
            tf::ErrorCode::InvalidInput);
}
