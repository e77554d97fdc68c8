#include "thetaforge/theta.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "thetaforge/combinatorics.hpp"
#include "thetaforge/error.hpp"

namespace thetaforge {

std::string_view to_string(ThetaKind kind) noexcept {
  switch (kind) {
    case ThetaKind::Lovasz: return "lovasz";
    case ThetaKind::Schrijver: return "schrijver";
    case ThetaKind::Szegedy: return "szegedy";
  }
  return "?";
}

std::string_view to_string(ThetaForm form) noexcept {
  return form == ThetaForm::MinForm ? "min" : "max";
}

ThetaKind parse_theta_kind(std::string_view text) {
  if (text == "lovasz") return ThetaKind::Lovasz;
  if (text == "schrijver") return ThetaKind::Schrijver;
  if (text == "szegedy") return ThetaKind::Szegedy;
  throw Error(ErrorCode::InvalidInput, "unknown theta kind '" + std::string(text) + "'");
}

ThetaForm parse_theta_form(std::string_view text) {
  if (text == "min") return ThetaForm::MinForm;
  if (text == "max") return ThetaForm::MaxForm;
  throw Error(ErrorCode::InvalidInput, "unknown theta form '" + std::string(text) + "'");
}

namespace {

std::string pair_label(const char* what, int i, int j) {
  return std::string(what) + "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

void add_edge_conditions(SdpProblem& p, const Graph& g, ThetaKind kind) {
  for (const auto& e : g.edges()) {
    if (kind == ThetaKind::Schrijver) {
      // Z_ij <= -1  <=>  -Z_ij >= 1
      p.inequalities.push_back({SparseSym::selector(e.u, e.v, -1.0), 1.0, pair_label("edge", e.u, e.v)});
    } else {
      p.equalities.push_back({SparseSym::selector(e.u, e.v), -1.0, pair_label("edge", e.u, e.v)});
    }
  }
  if (kind == ThetaKind::Szegedy) {
    const int n = g.order();
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (!g.adjacent(i, j))
          p.inequalities.push_back({SparseSym::selector(i, j), -1.0, pair_label("floor", i, j)});
  }
}

void require_solved(const SdpSolution& s, const char* what) {
  if (s.status != SdpStatus::Optimal) {
    throw Error(ErrorCode::SolverFailure, std::string(what) + " ended with status " +
                                              std::string(to_string(s.status)));
  }
}

// Pattern check shared by both conversions: entries off the edge pattern
// must vanish, and (optionally) all entries must be nonnegative.
void require_pattern(const SymMatrix& m, const Graph& g, bool nonnegative, double tol,
                     const char* what) {
  const int n = g.order();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!g.adjacent(i, j) && std::abs(m(i, j)) > tol) {
        throw Error(ErrorCode::InfeasibleInput,
                    std::string(what) + " nonzero at non-adjacent pair " + pair_label("", i, j));
      }
      if (nonnegative && m(i, j) < -tol) {
        throw Error(ErrorCode::InfeasibleInput,
                    std::string(what) + " negative at " + pair_label("", i, j));
      }
    }
  }
}

// No pair is constrained: Z = 0 is optimal for the min form and B = I/n
// (T = 0) for the max form, so the value is exactly 1.
ThetaResult edgeless(int n, ThetaKind kind, ThetaForm form) {
  ThetaResult r;
  r.value = 1.0;
  r.kind = kind;
  r.form = form;
  r.witness = form == ThetaForm::MinForm ? SymMatrix(n) : SymMatrix::identity(n);
  if (form == ThetaForm::MaxForm) r.b_matrix = SymMatrix::identity(n) * (1.0 / n);
  return r;
}

}  // namespace

SdpProblem min_form_problem(const Graph& g, ThetaKind kind) {
  SdpProblem p;
  p.dim = g.order();
  p.sense = Sense::Minimize;
  p.objective.add(0, 0, 1.0);
  // lambda - 1 is carried by Z_00 itself; the other diagonal entries follow it.
  for (int i = 1; i < g.order(); ++i) {
    SparseSym a;
    a.add(i, i, 1.0);
    a.add(0, 0, -1.0);
    p.equalities.push_back({std::move(a), 0.0, "diag(" + std::to_string(i) + ")"});
  }
  add_edge_conditions(p, g, kind);
  return p;
}

SdpProblem min_form_problem_at(const Graph& g, ThetaKind kind, double lambda) {
  SdpProblem p;
  p.dim = g.order();
  p.sense = Sense::Minimize;
  for (int i = 0; i < g.order(); ++i) {
    p.equalities.push_back({SparseSym::selector(i, i), lambda - 1.0, "diag(" + std::to_string(i) + ")"});
  }
  add_edge_conditions(p, g, kind);
  return p;
}

SdpProblem max_form_problem(const Graph& g, ThetaKind kind) {
  if (kind == ThetaKind::Szegedy) {
    throw Error(ErrorCode::UnsupportedForm, "no max form is available for the Szegedy number");
  }
  const int n = g.order();
  SdpProblem p;
  p.dim = n;
  p.sense = Sense::Maximize;
  p.objective = SparseSym::ones(n);
  p.equalities.push_back({SparseSym::identity(n), 1.0, "trace"});
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!g.adjacent(i, j)) {
        p.equalities.push_back({SparseSym::selector(i, j), 0.0, pair_label("nonedge", i, j)});
      } else if (kind == ThetaKind::Schrijver) {
        p.inequalities.push_back({SparseSym::selector(i, j), 0.0, pair_label("sign", i, j)});
      }
    }
  }
  return p;
}

SymMatrix convert_B_to_T(const SymMatrix& b, const Graph& g, bool nonnegative, double tol) {
  const int n = g.order();
  if (b.dim() != n) {
    throw Error(ErrorCode::DimensionMismatch, "B has dimension " + std::to_string(b.dim()) +
                                                  " but the graph has " + std::to_string(n) +
                                                  " vertices");
  }
  if (std::abs(b.dense().trace() - 1.0) > tol) {
    throw Error(ErrorCode::InfeasibleInput, "Tr B = " + std::to_string(b.dense().trace()));
  }
  if (!is_psd(b, tol)) throw Error(ErrorCode::InfeasibleInput, "B is not PSD");
  require_pattern(b, g, nonnegative, tol, "B");

  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i) diag[i] = std::max(0.0, b(i, i));
  const SymMatrix d_inv = diag_pseudo_inv_sqrt(SymMatrix::diagonal(diag));
  SymMatrix t(n);
  for (const auto& e : g.edges()) {
    double v = d_inv(e.u, e.u) * b(e.u, e.v) * d_inv(e.v, e.v);
    if (nonnegative) v = std::max(0.0, v);
    t.set(e.u, e.v, v);
  }
  return t;
}

SymMatrix convert_T_to_B(const SymMatrix& t, const Graph& g, bool nonnegative, double tol) {
  const int n = g.order();
  if (t.dim() != n) {
    throw Error(ErrorCode::DimensionMismatch, "T has dimension " + std::to_string(t.dim()) +
                                                  " but the graph has " + std::to_string(n) +
                                                  " vertices");
  }
  for (int i = 0; i < n; ++i) {
    if (std::abs(t(i, i)) > tol) {
      throw Error(ErrorCode::InfeasibleInput, "T has nonzero diagonal at " + std::to_string(i));
    }
  }
  require_pattern(t, g, nonnegative, tol, "T");
  const SymMatrix it = SymMatrix::identity(n) + t;
  if (!is_psd(it, tol)) throw Error(ErrorCode::InfeasibleInput, "I + T is not PSD");

  const auto dec = eig(it);
  Eigen::VectorXd psi = dec.eigenvectors.col(n - 1);
  // Perron: for entrywise nonnegative I+T, |psi| attains the same Rayleigh quotient.
  if (nonnegative) psi = psi.cwiseAbs();
  SymMatrix b(n);
  for (int i = 0; i < n; ++i) {
    b.set(i, i, psi(i) * psi(i));
    for (int j : g.neighbors(i))
      if (j > i) b.set(i, j, psi(i) * psi(j) * t(i, j));
  }
  return b;
}

ThetaResult theta_bar(const Graph& g, ThetaKind kind, ThetaForm form, const SdpOptions& options) {
  if (form == ThetaForm::MaxForm && kind == ThetaKind::Szegedy) {
    throw Error(ErrorCode::UnsupportedForm, "no max form is available for the Szegedy number");
  }
  if (g.size() == 0) return edgeless(g.order(), kind, form);

  ThetaResult r;
  r.kind = kind;
  r.form = form;
  if (form == ThetaForm::MinForm) {
    const auto sol = solve(min_form_problem(g, kind), options);
    require_solved(sol, "min-form theta program");
    const Eigen::MatrixXd& z = sol.X.dense();
    r.value = z.diagonal().mean() + 1.0;
    r.witness = sol.X;
    r.gap = std::abs(sol.primal_value - sol.dual_value);
    r.iterations = sol.iterations;
    r.status = sol.status;
    return r;
  }

  const auto sol = solve(max_form_problem(g, kind), options);
  require_solved(sol, "max-form theta program");
  const bool nonnegative = kind == ThetaKind::Schrijver;
  const SymMatrix t = convert_B_to_T(sol.X, g, nonnegative, 1e-6);
  r.witness = SymMatrix::identity(g.order()) + t;
  r.value = max_eigenvalue(r.witness);
  r.b_matrix = sol.X;
  r.gap = std::abs(sol.primal_value - sol.dual_value);
  r.iterations = sol.iterations;
  r.status = sol.status;
  return r;
}

ThetaResult theta(const Graph& g, ThetaKind kind, ThetaForm form, const SdpOptions& options) {
  return theta_bar(complement(g), kind, form, options);
}

SandwichReport sandwich_report(const Graph& g, const SdpOptions& options) {
  SandwichReport out;
  if (g.order() <= kCliqueSearchLimit) out.alpha = independence_number(g);
  if (g.order() <= kChromaticSearchLimit) out.chi_of_complement = chromatic_number(complement(g));
  out.theta_minus = theta(g, ThetaKind::Schrijver, ThetaForm::MinForm, options).value;
  out.theta = theta(g, ThetaKind::Lovasz, ThetaForm::MinForm, options).value;
  out.theta_plus = theta(g, ThetaKind::Szegedy, ThetaForm::MinForm, options).value;

  constexpr double kTol = 1e-6;
  bool ok = out.theta_minus <= out.theta + kTol && out.theta <= out.theta_plus + kTol;
  if (out.alpha) ok = ok && *out.alpha <= out.theta_minus + kTol;
  if (out.chi_of_complement) ok = ok && out.theta_plus <= *out.chi_of_complement + kTol;
  out.monotone = ok;
  return out;
}

ReciprocityReport reciprocity_check(const Graph& g, const SdpOptions& options) {
  const Graph gc = complement(g);
  ReciprocityReport out;
  out.n = g.order();
  // theta(G) = theta_bar(G^c), theta(G^c) = theta_bar(G)
  const double th_g = theta_bar(gc, ThetaKind::Lovasz, ThetaForm::MinForm, options).value;
  const double th_gc = theta_bar(g, ThetaKind::Lovasz, ThetaForm::MinForm, options).value;
  const double thm_g = theta_bar(gc, ThetaKind::Schrijver, ThetaForm::MinForm, options).value;
  const double thp_gc = theta_bar(g, ThetaKind::Szegedy, ThetaForm::MinForm, options).value;
  out.lovasz_product = th_g * th_gc;
  out.schrijver_szegedy_product = thm_g * thp_gc;
  if (g.declared_vertex_transitive() || g.order() <= kAutomorphismSearchLimit) {
    out.vertex_transitive = is_vertex_transitive(g);
  }
  return out;
}

}  // namespace thetaforge
