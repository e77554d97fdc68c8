#include "thetaforge/homrelax.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "thetaforge/error.hpp"

namespace thetaforge {

std::string_view to_string(HomVariant v) noexcept {
  switch (v) {
    case HomVariant::B: return "B";
    case HomVariant::Plus: return "plus";
    case HomVariant::V: return "V";
  }
  return "?";
}

HomVariant parse_hom_variant(std::string_view text) {
  if (text == "B" || text == "b") return HomVariant::B;
  if (text == "plus" || text == "Plus" || text == "+") return HomVariant::Plus;
  if (text == "V" || text == "v") return HomVariant::V;
  throw Error(ErrorCode::InvalidInput, "unknown variant '" + std::string(text) + "'");
}

std::string_view to_string(HomAnswer a) noexcept {
  switch (a) {
    case HomAnswer::Yes: return "Yes";
    case HomAnswer::No: return "No";
    case HomAnswer::Unknown: return "Unknown";
  }
  return "?";
}

const ConditionResult* CertificateReport::find(std::string_view name) const {
  for (const auto& c : conditions)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

constexpr double kDegenerate = 1e-9;
constexpr double kPrecondition = 1e-6;

struct Family {
  double lovasz = 0.0;
  double schrijver = 0.0;
  double szegedy = 0.0;
};

Family theta_family(const Graph& g, const SdpOptions& options) {
  return {theta_bar(g, ThetaKind::Lovasz, ThetaForm::MinForm, options).value,
          theta_bar(g, ThetaKind::Schrijver, ThetaForm::MinForm, options).value,
          theta_bar(g, ThetaKind::Szegedy, ThetaForm::MinForm, options).value};
}

// Tracks the worst entry of one condition.
class Tracker {
 public:
  Tracker(std::string name, double tol) : tol_(tol) { result_.name = std::move(name); }
  void observe(double violation, int x, int y, int s, int t) {
    if (violation > result_.worst) {
      result_.worst = violation;
      result_.where = {x, y, s, t};
    }
  }
  ConditionResult finish() {
    result_.passed = result_.worst <= tol_;
    return result_;
  }

 private:
  ConditionResult result_;
  double tol_;
};

void require_dims(const SymMatrix& c, const Graph& g, const Graph& h) {
  if (c.dim() != g.order() * h.order()) {
    throw Error(ErrorCode::DimensionMismatch,
                "certificate dimension " + std::to_string(c.dim()) + " != " +
                    std::to_string(g.order()) + " * " + std::to_string(h.order()));
  }
}

// PSD margin and the block-sum condition, shared by both verifiers.
void common_checks(const SymMatrix& c, int ng, int nh, double tol, CertificateReport& report) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c.dense(), Eigen::EigenvaluesOnly);
  report.min_eigenvalue = es.eigenvalues()(0);
  report.max_eigenvalue = es.eigenvalues()(c.dim() - 1);
  Tracker psd("psd", tol);
  const double scale = std::max(1.0, report.max_eigenvalue);
  psd.observe(std::max(0.0, -report.min_eigenvalue) / scale, -1, -1, -1, -1);
  report.conditions.push_back(psd.finish());

  Tracker sum("block_sum", tol);
  for (int x = 0; x < ng; ++x)
    for (int y = 0; y < ng; ++y)
      sum.observe(std::abs(c.dense().block(x * nh, y * nh, nh, nh).sum() - 1.0), x, y, -1, -1);
  report.conditions.push_back(sum.finish());
}

void finish_report(CertificateReport& report) {
  report.passed = std::all_of(report.conditions.begin(), report.conditions.end(),
                              [](const ConditionResult& c) { return c.passed; });
}

HomCertificate degenerate_certificate(const Graph& g, const Graph& h, HomVariant variant) {
  // Every w_s^x equal to the unit vector at s = 0: C = J_G (x) e_0 e_0^T.
  const int ng = g.order();
  const int nh = h.order();
  SymMatrix c(ng * nh);
  for (int x = 0; x < ng; ++x)
    for (int y = x; y < ng; ++y) c.set(x * nh, y * nh, 1.0);
  return {variant, ng, nh, std::move(c)};
}

SymMatrix snapped_edges(SymMatrix z, const Graph& g, bool at_most) {
  for (const auto& e : g.edges()) {
    z.set(e.u, e.v, at_most ? std::min(z(e.u, e.v), -1.0) : -1.0);
  }
  return z;
}

}  // namespace

SymMatrix assemble_certificate(const SymMatrix& z_g, const SymMatrix& i_plus_t, bool perron) {
  const int ng = z_g.dim();
  const int nh = i_plus_t.dim();
  const auto dec = eig(i_plus_t);
  Eigen::VectorXd psi = dec.eigenvectors.col(nh - 1);
  if (perron) psi = psi.cwiseAbs();
  psi.normalize();

  const Eigen::MatrixXd b = (psi * psi.transpose()).cwiseProduct(i_plus_t.dense());
  const double lambda = b.sum();  // <B,J> = psi^T (I+T) psi
  if (lambda <= 1.0 + kDegenerate) {
    throw Error(ErrorCode::DegenerateLambda, "lambda = " + std::to_string(lambda));
  }
  const Eigen::MatrixXd d = psi.cwiseAbs2().asDiagonal();
  const Eigen::MatrixXd m = lambda * d - b;

  // Shift the diagonal of Z to lambda - 1 and keep |Z_xy| <= lambda - 1.
  Eigen::MatrixXd z = z_g.dense();
  for (int x = 0; x < ng; ++x) {
    z(x, x) = lambda - 1.0;
    for (int y = 0; y < ng; ++y)
      if (x != y) z(x, y) = std::clamp(z(x, y), -(lambda - 1.0), lambda - 1.0);
  }

  Eigen::MatrixXd c(ng * nh, ng * nh);
  for (int x = 0; x < ng; ++x)
    for (int y = 0; y < ng; ++y)
      c.block(x * nh, y * nh, nh, nh) = (b + (z(x, y) / (lambda - 1.0)) * m) / lambda;
  return SymMatrix::from_dense(c, 1e-12);
}

HomCertificate construct_certificate_B(const Graph& g, const Graph& h, const SdpOptions& options) {
  const auto th = theta_bar(h, ThetaKind::Lovasz, ThetaForm::MaxForm, options);
  const auto tg = theta_bar(g, ThetaKind::Lovasz, ThetaForm::MinForm, options);
  if (tg.value > th.value + kPrecondition) {
    throw Error(ErrorCode::PreconditionFailed, "theta_bar(g) = " + std::to_string(tg.value) +
                                                   " exceeds theta_bar(h) = " +
                                                   std::to_string(th.value));
  }
  if (th.value <= 1.0 + kDegenerate) return degenerate_certificate(g, h, HomVariant::B);
  const SymMatrix z = snapped_edges(tg.witness, g, false);
  return {HomVariant::B, g.order(), h.order(), assemble_certificate(z, th.witness, false)};
}

HomCertificate construct_certificate_V(const Graph& g, const Graph& h, const SdpOptions& options) {
  const auto th = theta_bar(h, ThetaKind::Schrijver, ThetaForm::MaxForm, options);
  const auto tg = theta_bar(g, ThetaKind::Szegedy, ThetaForm::MinForm, options);
  if (tg.value > th.value + kPrecondition) {
    throw Error(ErrorCode::PreconditionFailed, "theta+_bar(g) = " + std::to_string(tg.value) +
                                                   " exceeds theta-_bar(h) = " +
                                                   std::to_string(th.value));
  }
  if (th.value <= 1.0 + kDegenerate) return degenerate_certificate(g, h, HomVariant::V);
  SymMatrix z = snapped_edges(tg.witness, g, false);
  for (int x = 0; x < g.order(); ++x)
    for (int y = x + 1; y < g.order(); ++y)
      if (z(x, y) < -1.0) z.set(x, y, -1.0);
  return {HomVariant::V, g.order(), h.order(), assemble_certificate(z, th.witness, true)};
}

HomCertificate certificate_from_homomorphism(const Graph& g, const Graph& h,
                                             const std::vector<Vertex>& f, HomVariant variant) {
  if (static_cast<int>(f.size()) != g.order()) {
    throw Error(ErrorCode::SizeMismatch, "map has " + std::to_string(f.size()) + " entries for " +
                                             std::to_string(g.order()) + " vertices");
  }
  const int nh = h.order();
  Eigen::VectorXd v = Eigen::VectorXd::Zero(g.order() * nh);
  for (int x = 0; x < g.order(); ++x) {
    if (f[x] < 0 || f[x] >= nh) throw Error(ErrorCode::VertexOutOfRange, "f(" + std::to_string(x) + ")");
    v(x * nh + f[x]) = 1.0;
  }
  return {variant, g.order(), nh, SymMatrix::outer(v)};
}

SymMatrix construct_Y(const SymMatrix& c, int g_size, int h_size, const SymMatrix& z_h) {
  if (z_h.dim() != h_size || c.dim() != g_size * h_size) {
    throw Error(ErrorCode::DimensionMismatch, "construct_Y: certificate and Z disagree in size");
  }
  const double target = z_h.dense().diagonal().maxCoeff();
  SymMatrix y(g_size);
  for (int a = 0; a < g_size; ++a) {
    for (int b = a; b < g_size; ++b) {
      const double v = c.dense().block(a * h_size, b * h_size, h_size, h_size).cwiseProduct(z_h.dense()).sum();
      y.set(a, b, v);
    }
    if (y(a, a) < target) y.set(a, a, target);
  }
  return y;
}

SymMatrix construct_Y(const HomCertificate& cert, const SymMatrix& z_h) {
  return construct_Y(cert.C, cert.g_size, cert.h_size, z_h);
}

CertificateReport verify_certificate(const HomCertificate& cert, const Graph& g, const Graph& h,
                                     double tol) {
  require_dims(cert.C, g, h);
  const int ng = g.order();
  const int nh = h.order();
  const auto& c = cert.C.dense();
  CertificateReport report;
  common_checks(cert.C, ng, nh, tol, report);

  const bool block = cert.variant != HomVariant::Plus;
  const bool sign = cert.variant != HomVariant::B;
  Tracker adjacency("adjacency_zero", tol);
  Tracker diagonal("diagonal_block", tol);
  Tracker nonneg("nonnegative", tol);
  for (int x = 0; x < ng; ++x) {
    for (int y = 0; y < ng; ++y) {
      const bool xy = g.adjacent(x, y);
      for (int s = 0; s < nh; ++s) {
        for (int t = 0; t < nh; ++t) {
          const double v = c(x * nh + s, y * nh + t);
          if (xy && !h.adjacent(s, t)) adjacency.observe(std::abs(v), x, y, s, t);
          if (block && x == y && s != t) diagonal.observe(std::abs(v), x, y, s, t);
          if (sign) nonneg.observe(-v, x, y, s, t);
        }
      }
    }
  }
  report.conditions.push_back(adjacency.finish());
  if (block) report.conditions.push_back(diagonal.finish());
  if (sign) report.conditions.push_back(nonneg.finish());
  finish_report(report);
  return report;
}

CertificateReport verify_schrijver_certificate(const SymMatrix& c, const Graph& g, const Graph& h,
                                               double tol) {
  require_dims(c, g, h);
  const int ng = g.order();
  const int nh = h.order();
  CertificateReport report;
  common_checks(c, ng, nh, tol, report);

  Tracker pattern("pattern_zero", tol);
  Tracker adjacent_diag("adjacent_diagonal_nonpositive", tol);
  Tracker block("diagonal_block", tol);
  Tracker offdiag("offdiagonal_nonnegative", tol);
  for (int x = 0; x < ng; ++x) {
    for (int y = 0; y < ng; ++y) {
      for (int s = 0; s < nh; ++s) {
        for (int t = 0; t < nh; ++t) {
          const double v = c(x * nh + s, y * nh + t);
          if (s == t) {
            if (g.adjacent(x, y)) adjacent_diag.observe(v, x, y, s, t);
            continue;
          }
          if (!h.adjacent(s, t)) pattern.observe(std::abs(v), x, y, s, t);
          if (x == y) block.observe(std::abs(v), x, y, s, t);
          offdiag.observe(-v, x, y, s, t);
        }
      }
    }
  }
  report.conditions.push_back(pattern.finish());
  report.conditions.push_back(adjacent_diag.finish());
  report.conditions.push_back(block.finish());
  report.conditions.push_back(offdiag.finish());
  finish_report(report);
  return report;
}

VectorSystem extract_vectors(const HomCertificate& cert, const Graph& g, const Graph& h, double tol) {
  const auto report = verify_certificate(cert, g, h, tol);
  if (!report.passed) throw Error(ErrorCode::NotVerified, "certificate fails verification");
  VectorSystem vs;
  vs.g_size = cert.g_size;
  vs.h_size = cert.h_size;
  vs.vectors = gram_factor(cert.C, tol);
  vs.w = Eigen::VectorXd::Zero(vs.vectors.cols());
  for (int s = 0; s < cert.h_size; ++s) vs.w += vs.vectors.row(s).transpose();
  return vs;
}

VectorReport check_vector_conditions(const VectorSystem& vs, const Graph& g, const Graph& h,
                                     HomVariant variant, double tol, const SymMatrix* certificate) {
  const int ng = vs.g_size;
  const int nh = vs.h_size;
  if (g.order() != ng || h.order() != nh || vs.vectors.rows() != ng * nh) {
    throw Error(ErrorCode::DimensionMismatch, "vector system does not match the graphs");
  }
  VectorReport r;
  const Eigen::MatrixXd gram = vs.vectors * vs.vectors.transpose();
  r.norm_error = std::abs(vs.w.norm() - 1.0);
  for (int x = 0; x < ng; ++x) {
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(vs.vectors.cols());
    for (int s = 0; s < nh; ++s) sum += vs.vectors.row(x * nh + s).transpose();
    r.sum_error = std::max(r.sum_error, (sum - vs.w).norm());
  }
  for (int x = 0; x < ng; ++x) {
    for (int y = 0; y < ng; ++y) {
      for (int s = 0; s < nh; ++s) {
        for (int t = 0; t < nh; ++t) {
          const double v = gram(x * nh + s, y * nh + t);
          if (g.adjacent(x, y) && !h.adjacent(s, t)) r.adjacency_error = std::max(r.adjacency_error, std::abs(v));
          if (x == y && s != t) r.block_error = std::max(r.block_error, std::abs(v));
          r.negativity = std::max(r.negativity, -v);
        }
      }
    }
  }
  if (certificate) r.gram_error = (gram - certificate->dense()).cwiseAbs().maxCoeff();
  bool ok = r.sum_error <= tol && r.norm_error <= tol && r.adjacency_error <= tol && r.gram_error <= tol;
  if (variant != HomVariant::Plus) ok = ok && r.block_error <= tol;
  if (variant != HomVariant::B) ok = ok && r.negativity <= tol;
  r.passed = ok;
  return r;
}

HomDecision decide(const Graph& g, const Graph& h, HomVariant variant, double tol,
                   const SdpOptions& options) {
  HomDecision d;
  if (variant == HomVariant::B) {
    const double tg = theta_bar(g, ThetaKind::Lovasz, ThetaForm::MinForm, options).value;
    const double th = theta_bar(h, ThetaKind::Lovasz, ThetaForm::MinForm, options).value;
    d.values = {{"theta_bar_g", tg}, {"theta_bar_h", th}};
    d.answer = tg <= th + tol ? HomAnswer::Yes : HomAnswer::No;
    d.reason = d.answer == HomAnswer::Yes ? "theta_bar(g) <= theta_bar(h): exact characterization"
                                          : "theta_bar(g) > theta_bar(h): exact characterization";
    return d;
  }
  if (g == h) {
    d.answer = HomAnswer::Yes;
    d.reason = "identity homomorphism certificate";
    return d;
  }
  const Family fg = theta_family(g, options);
  const Family fh = theta_family(h, options);
  d.values = {{"theta_bar_g", fg.lovasz},        {"theta_bar_h", fh.lovasz},
              {"theta_minus_bar_g", fg.schrijver}, {"theta_minus_bar_h", fh.schrijver},
              {"theta_plus_bar_g", fg.szegedy},    {"theta_plus_bar_h", fh.szegedy}};
  if (fg.szegedy <= fh.schrijver + tol) {
    d.answer = HomAnswer::Yes;
    d.reason = "theta+_bar(g) <= theta-_bar(h): sufficient condition";
    return d;
  }
  std::vector<std::string> failed;
  if (fg.lovasz > fh.lovasz + tol) failed.push_back("theta_bar");
  if (fg.schrijver > fh.schrijver + tol) failed.push_back("theta-_bar");
  if (fg.szegedy > fh.szegedy + tol) failed.push_back("theta+_bar");
  if (!failed.empty()) {
    d.answer = HomAnswer::No;
    d.reason = "monotonicity fails for";
    for (const auto& f : failed) d.reason += " " + f;
    return d;
  }
  d.answer = HomAnswer::Unknown;
  d.reason = "all necessary inequalities hold but the sufficient condition does not";
  return d;
}

namespace {

using Coeffs = std::vector<std::pair<int, double>>;

// <a, K b> as a symmetric constraint matrix.
SparseSym bilinear(const Coeffs& a, const Coeffs& b) {
  SparseSym out;
  for (const auto& [p, ap] : a) {
    for (const auto& [q, bq] : b) {
      if (p == q) {
        out.add(p, p, ap * bq);
      } else {
        out.add(p, q, 0.5 * ap * bq);
      }
    }
  }
  return out;
}

}  // namespace

HomDecision gram_feasibility(const Graph& g, const Graph& h, HomVariant variant,
                             const SdpOptions& options) {
  const int ng = g.order();
  const int nh = h.order();
  if (ng * nh > kGramFeasibilityLimit) {
    throw Error(ErrorCode::TooLarge, "gram_feasibility limited to |V(g)||V(h)| <= " +
                                         std::to_string(kGramFeasibilityLimit));
  }
  // Variables: w (index 0) and w_s^x for s >= 1; w_0^x = w - sum_{s>=1} w_s^x.
  const int dim = 1 + ng * (nh - 1);
  std::vector<Coeffs> coeff(ng * nh);
  for (int x = 0; x < ng; ++x) {
    Coeffs first{{0, 1.0}};
    for (int s = 1; s < nh; ++s) {
      const int col = 1 + x * (nh - 1) + (s - 1);
      coeff[x * nh + s] = {{col, 1.0}};
      first.emplace_back(col, -1.0);
    }
    coeff[x * nh] = std::move(first);
  }

  SdpProblem p;
  p.dim = dim;
  p.sense = Sense::Minimize;
  p.objective = SparseSym::identity(dim);
  p.equalities.push_back({SparseSym::selector(0, 0), 1.0, "norm"});
  const bool block = variant != HomVariant::Plus;
  const bool sign = variant != HomVariant::B;
  for (int x = 0; x < ng; ++x) {
    for (int y = x; y < ng; ++y) {
      for (int s = 0; s < nh; ++s) {
        for (int t = 0; t < nh; ++t) {
          if (x == y && t < s) continue;
          const bool zero = (g.adjacent(x, y) && !h.adjacent(s, t)) || (block && x == y && s != t);
          const auto& a = coeff[x * nh + s];
          const auto& b = coeff[y * nh + t];
          if (zero) {
            p.equalities.push_back({bilinear(a, b), 0.0, "zero"});
          } else if (sign && !(x == y && s == t)) {
            p.inequalities.push_back({bilinear(a, b), 0.0, "sign"});
          }
        }
      }
    }
  }

  HomDecision d;
  const auto sol = solve(p, options);
  d.values = {{"iterations", static_cast<double>(sol.iterations)},
              {"primal_residual", sol.primal_residual}};
  if (sol.status == SdpStatus::Infeasible) {
    d.answer = HomAnswer::No;
    d.reason = "certificate SDP infeasible (dual ray)";
    return d;
  }
  Eigen::MatrixXd lift = Eigen::MatrixXd::Zero(ng * nh, dim);
  for (int r = 0; r < ng * nh; ++r)
    for (const auto& [col, v] : coeff[r]) lift(r, col) = v;
  const Eigen::MatrixXd c = lift * sol.X.dense() * lift.transpose();
  HomCertificate cert{variant, ng, nh, SymMatrix::from_dense(0.5 * (c + c.transpose()), 0.0)};
  const auto report = verify_certificate(cert, g, h, 1e-6);
  d.values["worst_violation"] = 0.0;
  for (const auto& cond : report.conditions) d.values["worst_violation"] = std::max(d.values["worst_violation"], cond.worst);
  if (report.passed) {
    d.answer = HomAnswer::Yes;
    d.reason = "certificate found and verified";
    d.certificate = std::move(cert);
  } else {
    d.answer = HomAnswer::No;
    d.reason = "no certificate found (solver status " + std::string(to_string(sol.status)) + ")";
  }
  return d;
}

int guarded_floor(double v, double guard) {
  const double r = std::round(v);
  return static_cast<int>(std::abs(v - r) <= guard ? r : std::floor(v));
}

int guarded_ceil(double v, double guard) {
  const double r = std::round(v);
  return static_cast<int>(std::abs(v - r) <= guard ? r : std::ceil(v));
}

DerivedQuantities derived_quantities(const Graph& g, const SdpOptions& options) {
  const Family f = theta_family(g, options);
  DerivedQuantities q;
  q.theta_bar = f.lovasz;
  q.theta_minus_bar = f.schrijver;
  q.theta_plus_bar = f.szegedy;
  q.beta = guarded_floor(f.lovasz);
  q.beta_chi = guarded_ceil(f.lovasz);
  q.chi_vect = guarded_ceil(f.szegedy);
  q.omega_vect = guarded_floor(f.schrijver);
  q.beta_minus = guarded_floor(f.schrijver);
  q.alpha_star_upper = guarded_floor(f.schrijver);
  q.chi_star_lower = guarded_ceil(f.szegedy);
  return q;
}

HomProductCheck hom_product_check(const Graph& g, const Graph& h, const SdpOptions& options) {
  const Graph prod = product(g, h, ProductKind::Hom);
  HomProductCheck out;
  out.n_g = g.order();
  out.theta_of_homprod = theta_bar(prod, ThetaKind::Lovasz, ThetaForm::MinForm, options).value;
  out.schrijver_of_homprod = theta_bar(prod, ThetaKind::Schrijver, ThetaForm::MinForm, options).value;

  constexpr double kTol = 1e-4;
  const Family fg = theta_family(g, options);
  const Family fh = theta_family(h, options);
  const bool b_yes = fg.lovasz <= fh.lovasz + kPrecondition;
  const bool b_eq = std::abs(out.theta_of_homprod - out.n_g) <= kTol;
  const bool fires = fg.szegedy <= fh.schrijver + kPrecondition;
  const bool fails = fg.lovasz > fh.lovasz + kPrecondition ||
                     fg.schrijver > fh.schrijver + kPrecondition ||
                     fg.szegedy > fh.szegedy + kPrecondition;
  const bool v_eq = std::abs(out.schrijver_of_homprod - out.n_g) <= kTol;
  out.consistent = (b_yes == b_eq) && (!fires || v_eq) && (!v_eq || !fails);
  return out;
}

SchrijverIff schrijver_iff(const Graph& g, const Graph& h, const SdpOptions& options) {
  SchrijverIff out;
  const auto tg = theta_bar(g, ThetaKind::Schrijver, ThetaForm::MinForm, options);
  const auto th = theta_bar(h, ThetaKind::Schrijver, ThetaForm::MaxForm, options);
  out.theta_minus_bar_g = tg.value;
  out.theta_minus_bar_h = th.value;
  out.decision = tg.value <= th.value + kPrecondition;
  if (!out.decision) return out;
  if (th.value <= 1.0 + kDegenerate) {
    out.certificate = degenerate_certificate(g, h, HomVariant::V).C;
    return out;
  }
  const SymMatrix z = snapped_edges(tg.witness, g, true);
  out.certificate = assemble_certificate(z, th.witness, true);
  return out;
}

nlohmann::json certificate_to_json(const HomCertificate& cert) {
  const int dim = cert.C.dim();
  std::vector<double> entries;
  entries.reserve(static_cast<std::size_t>(dim) * (dim + 1) / 2);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j <= i; ++j) entries.push_back(cert.C(i, j));
  return {{"variant", std::string(to_string(cert.variant))},
          {"g_size", cert.g_size},
          {"h_size", cert.h_size},
          {"dim", dim},
          {"entries", entries}};
}

HomCertificate certificate_from_json(const nlohmann::json& j, const Graph& g, const Graph& h,
                                     double tol) {
  HomCertificate cert;
  try {
    cert.variant = parse_hom_variant(j.at("variant").get<std::string>());
    cert.g_size = j.at("g_size").get<int>();
    cert.h_size = j.at("h_size").get<int>();
    const int dim = j.at("dim").get<int>();
    const auto entries = j.at("entries").get<std::vector<double>>();
    if (dim != cert.g_size * cert.h_size || dim < 1) {
      throw Error(ErrorCode::InvalidInput, "dim must equal g_size * h_size");
    }
    if (entries.size() != static_cast<std::size_t>(dim) * (dim + 1) / 2) {
      throw Error(ErrorCode::InvalidInput, "expected " + std::to_string(dim * (dim + 1) / 2) +
                                               " entries, found " + std::to_string(entries.size()));
    }
    cert.C = SymMatrix(dim);
    std::size_t k = 0;
    for (int i = 0; i < dim; ++i)
      for (int jj = 0; jj <= i; ++jj) cert.C.set(i, jj, entries[k++]);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("certificate JSON: ") + e.what());
  }
  if (cert.g_size != g.order() || cert.h_size != h.order()) {
    throw Error(ErrorCode::DimensionMismatch, "certificate sizes do not match the graphs");
  }
  const auto report = verify_certificate(cert, g, h, tol);
  if (!report.passed) {
    std::string failed;
    for (const auto& c : report.conditions)
      if (!c.passed) failed += " " + c.name;
    throw Error(ErrorCode::CertificateInvalid, "re-verification failed:" + failed);
  }
  return cert;
}

}  // namespace thetaforge
