#pragma once

#include <optional>
#include <string_view>

#include "thetaforge/graph.hpp"
#include "thetaforge/linalg.hpp"
#include "thetaforge/sdp.hpp"

namespace thetaforge {

// All "bar" quantities take the argument graph G and constrain pairs i ~ j
// of G itself: theta_bar(G) = theta(complement(G)).
enum class ThetaKind { Lovasz, Schrijver, Szegedy };
enum class ThetaForm { MinForm, MaxForm };

std::string_view to_string(ThetaKind kind) noexcept;
std::string_view to_string(ThetaForm form) noexcept;
ThetaKind parse_theta_kind(std::string_view text);
ThetaForm parse_theta_form(std::string_view text);

struct ThetaResult {
  double value = 0.0;
  ThetaKind kind = ThetaKind::Lovasz;
  ThetaForm form = ThetaForm::MinForm;
  // MinForm: Z with Z_ii = value - 1. MaxForm: I + T.
  SymMatrix witness;
  // MaxForm only: the B matrix solved for (Tr B = 1, <B,J> = objective).
  std::optional<SymMatrix> b_matrix;
  double gap = 0.0;
  int iterations = 0;
  SdpStatus status = SdpStatus::Optimal;
};

ThetaResult theta_bar(const Graph& g, ThetaKind kind, ThetaForm form = ThetaForm::MinForm,
                      const SdpOptions& options = {});

/// Plain theta, theta^-, theta^+ of g (evaluated on the complement).
ThetaResult theta(const Graph& g, ThetaKind kind, ThetaForm form = ThetaForm::MinForm,
                  const SdpOptions& options = {});

/// min Z_00 (+1) with Z_ii = Z_00 and the edge conditions of `kind`.
SdpProblem min_form_problem(const Graph& g, ThetaKind kind);

/// Feasibility version with the diagonal pinned: Z_ii = lambda - 1.
SdpProblem min_form_problem_at(const Graph& g, ThetaKind kind, double lambda);

/// max <B,J>, Tr B = 1, B_ij = 0 for i !~ j (i != j); Schrijver adds B >= 0.
/// Throws UnsupportedForm for Szegedy.
SdpProblem max_form_problem(const Graph& g, ThetaKind kind);

/// T = D^{-1/2} (B - D) D^{-1/2}, snapped to 0 off the edge pattern. With
/// nonnegative = true (Schrijver), tiny negative entries are clamped to 0.
SymMatrix convert_B_to_T(const SymMatrix& b, const Graph& g, bool nonnegative = false,
                         double tol = 1e-7);

/// B = psi psi^T o (I + T) with psi the top eigenvector of I + T (taken
/// entrywise nonnegative when T >= 0).
SymMatrix convert_T_to_B(const SymMatrix& t, const Graph& g, bool nonnegative = false,
                         double tol = 1e-7);

struct SandwichReport {
  std::optional<int> alpha;
  double theta_minus = 0.0;
  double theta = 0.0;
  double theta_plus = 0.0;
  std::optional<int> chi_of_complement;
  bool monotone = false;
};

/// alpha <= theta^- <= theta <= theta^+ <= chi(complement); brute-force
/// endpoints are skipped when the graph is too large for them.
SandwichReport sandwich_report(const Graph& g, const SdpOptions& options = {});

struct ReciprocityReport {
  double lovasz_product = 0.0;            // theta(G) theta(G^c)
  double schrijver_szegedy_product = 0.0; // theta^-(G) theta^+(G^c)
  int n = 0;
  std::optional<bool> vertex_transitive;
};

ReciprocityReport reciprocity_check(const Graph& g, const SdpOptions& options = {});

}  // namespace thetaforge
