#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "thetaforge/graph.hpp"
#include "thetaforge/linalg.hpp"
#include "thetaforge/sdp.hpp"
#include "thetaforge/theta.hpp"

namespace thetaforge {

enum class HomVariant { B, Plus, V };
std::string_view to_string(HomVariant v) noexcept;
HomVariant parse_hom_variant(std::string_view text);

/// Gram matrix C indexed by (x, s) with row x * |V(h)| + s.
struct HomCertificate {
  HomVariant variant = HomVariant::B;
  int g_size = 0;
  int h_size = 0;
  SymMatrix C;
};

enum class HomAnswer { Yes, No, Unknown };
std::string_view to_string(HomAnswer a) noexcept;

struct HomDecision {
  HomAnswer answer = HomAnswer::Unknown;
  std::string reason;
  std::map<std::string, double> values;
  std::optional<HomCertificate> certificate;  // filled by gram_feasibility on Yes
};

HomDecision decide(const Graph& g, const Graph& h, HomVariant variant, double tol = 1e-6,
                   const SdpOptions& options = {});

/// Explicit certificate for G ->_B H from a max-form witness of h and a
/// min-form witness of g. Throws PreconditionFailed when theta_bar(g) >
/// theta_bar(h) + 1e-6.
HomCertificate construct_certificate_B(const Graph& g, const Graph& h, const SdpOptions& options = {});

/// Same construction with the nonnegative Schrijver witness of h and the
/// Szegedy witness of g; needs theta+_bar(g) <= theta-_bar(h) + 1e-6.
HomCertificate construct_certificate_V(const Graph& g, const Graph& h, const SdpOptions& options = {});

/// The same formula with explicit witnesses: i_plus_t is I + T for h and
/// lambda = psi^T (I + T) psi for its top eigenvector psi. The diagonal of
/// z_g is reset to lambda - 1 (valid when z_g's value is <= lambda). Throws
/// DegenerateLambda when lambda <= 1 + 1e-9.
SymMatrix assemble_certificate(const SymMatrix& z_g, const SymMatrix& i_plus_t, bool perron);

/// The 0/1 certificate of a classical homomorphism f: C = v v^T with
/// v_(x,s) = [s = f(x)].
HomCertificate certificate_from_homomorphism(const Graph& g, const Graph& h,
                                             const std::vector<Vertex>& f, HomVariant variant);

/// Y_xy = sum_st Z_st C_(x,s),(y,t), with the diagonal raised to
/// max_s Z_ss where it falls short (adding a nonnegative diagonal).
SymMatrix construct_Y(const SymMatrix& c, int g_size, int h_size, const SymMatrix& z_h);
SymMatrix construct_Y(const HomCertificate& cert, const SymMatrix& z_h);

struct ConditionResult {
  std::string name;
  bool passed = true;
  double worst = 0.0;
  std::array<int, 4> where{-1, -1, -1, -1};  // x, y, s, t of the worst entry
};

struct CertificateReport {
  std::vector<ConditionResult> conditions;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  bool passed = false;

  const ConditionResult* find(std::string_view name) const;
};

CertificateReport verify_certificate(const HomCertificate& cert, const Graph& g, const Graph& h,
                                     double tol = 1e-8);

struct VectorSystem {
  int g_size = 0;
  int h_size = 0;
  Eigen::MatrixXd vectors;  // row x * h_size + s holds w_s^x
  Eigen::VectorXd w;
};

/// Throws NotVerified unless verify_certificate passes at `tol`.
VectorSystem extract_vectors(const HomCertificate& cert, const Graph& g, const Graph& h,
                             double tol = 1e-8);

struct VectorReport {
  double sum_error = 0.0;        // max_x |sum_s w_s^x - w|
  double norm_error = 0.0;       // | |w| - 1 |
  double adjacency_error = 0.0;  // x ~ y, s !~ t
  double block_error = 0.0;      // <w_s^x, w_t^x>, s != t
  double negativity = 0.0;       // -min inner product
  double gram_error = 0.0;       // against the certificate, if given
  bool passed = false;
};

VectorReport check_vector_conditions(const VectorSystem& vs, const Graph& g, const Graph& h,
                                     HomVariant variant, double tol = 1e-6,
                                     const SymMatrix* certificate = nullptr);

inline constexpr int kGramFeasibilityLimit = 150;

/// Direct SDP search for a certificate (eliminating w_0^x = w - sum_{s>0} w_s^x).
/// Yes only when the recovered certificate verifies at 1e-6.
HomDecision gram_feasibility(const Graph& g, const Graph& h, HomVariant variant,
                             const SdpOptions& options = {});

struct DerivedQuantities {
  double theta_bar = 0.0;
  double theta_minus_bar = 0.0;
  double theta_plus_bar = 0.0;
  int beta = 0;
  int beta_chi = 0;
  int chi_vect = 0;
  int omega_vect = 0;
  int beta_minus = 0;
  int alpha_star_upper = 0;
  int chi_star_lower = 0;
};

/// Values within `guard` of an integer are snapped before floor/ceil.
int guarded_floor(double v, double guard = 1e-6);
int guarded_ceil(double v, double guard = 1e-6);

DerivedQuantities derived_quantities(const Graph& g, const SdpOptions& options = {});

struct HomProductCheck {
  double theta_of_homprod = 0.0;
  double schrijver_of_homprod = 0.0;
  int n_g = 0;
  bool consistent = false;
};

HomProductCheck hom_product_check(const Graph& g, const Graph& h, const SdpOptions& options = {});

struct SchrijverIff {
  bool decision = false;
  double theta_minus_bar_g = 0.0;
  double theta_minus_bar_h = 0.0;
  std::optional<SymMatrix> certificate;
};

SchrijverIff schrijver_iff(const Graph& g, const Graph& h, const SdpOptions& options = {});

/// The five Gram conditions of the Schrijver characterization plus PSD.
CertificateReport verify_schrijver_certificate(const SymMatrix& c, const Graph& g, const Graph& h,
                                               double tol = 1e-8);

nlohmann::json certificate_to_json(const HomCertificate& cert);
/// Parses and re-verifies; throws CertificateInvalid when verification fails.
HomCertificate certificate_from_json(const nlohmann::json& j, const Graph& g, const Graph& h,
                                     double tol = 1e-8);

}  // namespace thetaforge
