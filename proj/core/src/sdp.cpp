#include "thetaforge/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "thetaforge/error.hpp"

namespace thetaforge {

SparseSym SparseSym::selector(int i, int j, double scale) {
  SparseSym out;
  if (i == j) {
    out.add(i, i, scale);
  } else {
    out.add(i, j, 0.5 * scale);
  }
  return out;
}

SparseSym SparseSym::identity(int dim) {
  SparseSym out;
  for (int i = 0; i < dim; ++i) out.add(i, i, 1.0);
  return out;
}

SparseSym SparseSym::ones(int dim) {
  SparseSym out;
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) out.add(i, j, 1.0);
  return out;
}

SparseSym SparseSym::from_dense(const SymMatrix& m, double drop_below) {
  SparseSym out;
  for (int i = 0; i < m.dim(); ++i)
    for (int j = i; j < m.dim(); ++j)
      if (std::abs(m(i, j)) > drop_below) out.add(i, j, m(i, j));
  return out;
}

void SparseSym::add(int row, int col, double value) {
  if (row > col) std::swap(row, col);
  entries_.push_back({row, col, value});
}

double SparseSym::dot(const Eigen::MatrixXd& x) const {
  double sum = 0.0;
  for (const auto& e : entries_) {
    sum += e.row == e.col ? e.value * x(e.row, e.col) : e.value * (x(e.row, e.col) + x(e.col, e.row));
  }
  return sum;
}

SymMatrix SparseSym::to_dense(int dim) const {
  SymMatrix out(dim);
  for (const auto& e : entries_) out.add(e.row, e.col, e.value);
  return out;
}

SparseSym SparseSym::scaled(double s) const {
  SparseSym out = *this;
  for (auto& e : out.entries_) e.value *= s;
  return out;
}

int SparseSym::max_index() const {
  int top = -1;
  for (const auto& e : entries_) top = std::max(top, e.col);
  return top;
}

std::string_view to_string(SdpStatus status) noexcept {
  switch (status) {
    case SdpStatus::Optimal: return "Optimal";
    case SdpStatus::Infeasible: return "Infeasible";
    case SdpStatus::NumericalTrouble: return "NumericalTrouble";
  }
  return "?";
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Constraint in ordered-pair form: A = sum v e_a e_b^T over the list.
struct FullEntry {
  int a;
  int b;
  double v;
};

std::vector<FullEntry> expand(const SparseSym& m) {
  std::vector<FullEntry> out;
  out.reserve(m.entries().size() * 2);
  for (const auto& e : m.entries()) {
    out.push_back({e.row, e.col, e.value});
    if (e.row != e.col) out.push_back({e.col, e.row, e.value});
  }
  return out;
}

double full_dot(const std::vector<FullEntry>& a, const MatrixXd& y) {
  double s = 0.0;
  for (const auto& e : a) s += e.v * y(e.a, e.b);
  return s;
}

void symmetrize(MatrixXd& m) { m = 0.5 * (m + m.transpose()).eval(); }

// Largest alpha in (0, inf] with X + alpha * dX PSD, given chol(X) = L L^T.
double max_psd_step(const Eigen::LLT<MatrixXd>& chol, const MatrixXd& dx) {
  MatrixXd t = chol.matrixL().solve(dx);
  MatrixXd u = chol.matrixL().solve(t.transpose());
  symmetrize(u);
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(u, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues()(0);
  return lo < 0 ? -1.0 / lo : std::numeric_limits<double>::infinity();
}

double max_lp_step(const VectorXd& s, const VectorXd& ds) {
  double alpha = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < s.size(); ++j)
    if (ds(j) < 0) alpha = std::min(alpha, -s(j) / ds(j));
  return alpha;
}

// Removes equalities whose matrices are linear combinations of earlier ones
// (pivoted LDL^T of the Gram matrix of constraint matrices).
std::vector<int> dependent_equalities(const std::vector<std::vector<FullEntry>>& rows) {
  const int m = static_cast<int>(rows.size());
  if (m <= 1) return {};
  std::map<std::pair<int, int>, std::vector<std::pair<int, double>>> by_slot;
  for (int k = 0; k < m; ++k) {
    std::map<std::pair<int, int>, double> merged;
    for (const auto& e : rows[k]) merged[{e.a, e.b}] += e.v;
    for (const auto& [slot, v] : merged)
      if (v != 0.0) by_slot[slot].emplace_back(k, v);
  }
  MatrixXd gram = MatrixXd::Zero(m, m);
  for (const auto& [slot, list] : by_slot)
    for (const auto& [k, vk] : list)
      for (const auto& [l, vl] : list) gram(k, l) += vk * vl;

  bool diagonal = true;
  for (int k = 0; k < m && diagonal; ++k)
    for (int l = 0; l < m && diagonal; ++l)
      if (k != l && gram(k, l) != 0.0) diagonal = false;
  std::vector<int> dropped;
  if (diagonal) {
    for (int k = 0; k < m; ++k)
      if (gram(k, k) == 0.0) dropped.push_back(k);
    return dropped;
  }

  Eigen::LDLT<MatrixXd> ldlt(gram);
  const VectorXd d = ldlt.vectorD();
  const double top = d.cwiseAbs().maxCoeff();
  // Recover the pivot order from the stored transpositions.
  std::vector<int> perm(m);
  for (int k = 0; k < m; ++k) perm[k] = k;
  const auto& tr = ldlt.transpositionsP();
  for (int k = 0; k < m; ++k) std::swap(perm[k], perm[tr.coeff(k)]);
  for (int k = 0; k < m; ++k)
    if (std::abs(d(k)) <= 1e-10 * std::max(1.0, top)) dropped.push_back(perm[k]);
  std::sort(dropped.begin(), dropped.end());
  return dropped;
}

class InteriorPoint {
 public:
  InteriorPoint(const SdpProblem& p, const SdpOptions& opts) : p_(p), opts_(opts) {}

  SdpSolution run();

 private:
  void setup();
  double primal_objective() const { return full_dot(c_full_, x_); }
  VectorXd apply_a(const MatrixXd& y) const;
  MatrixXd apply_adjoint(const VectorXd& y) const;
  MatrixXd schur(const MatrixXd& w) const;
  SdpSolution package(SdpStatus status, int iterations);

  const SdpProblem& p_;
  SdpOptions opts_;
  int n_ = 0;
  int meq_ = 0;
  int p_ineq_ = 0;
  int m_ = 0;
  std::vector<int> eq_index_;  // retained original equality indices
  std::vector<int> dropped_;
  std::vector<std::vector<FullEntry>> rows_;
  std::vector<FullEntry> c_full_;  // internal minimisation objective
  VectorXd b_;
  MatrixXd c_;
  double b_scale_ = 1.0;
  double c_scale_ = 1.0;

  MatrixXd x_, s_;
  VectorXd y_, slack_, z_;
  std::vector<IterationRecord> history_;
  double last_pres_ = 0.0;
  double last_dres_ = 0.0;
};

void InteriorPoint::setup() {
  n_ = p_.dim;
  if (n_ < 1) throw Error(ErrorCode::DimensionMismatch, "SDP dimension must be positive");
  if (n_ > kMaxSdpDim) {
    throw Error(ErrorCode::TooLarge, "SDP dimension " + std::to_string(n_) + " exceeds " +
                                         std::to_string(kMaxSdpDim));
  }
  const std::size_t total = p_.equalities.size() + p_.inequalities.size();
  if (total > static_cast<std::size_t>(kMaxSdpConstraints)) {
    throw Error(ErrorCode::TooLarge, "SDP has " + std::to_string(total) + " constraints");
  }
  auto check = [&](const SparseSym& m, const std::string& what) {
    for (const auto& e : m.entries()) {
      if (e.row < 0 || e.col >= n_) {
        throw Error(ErrorCode::DimensionMismatch, what + " references index outside the variable");
      }
      if (!std::isfinite(e.value)) throw Error(ErrorCode::NonFinite, what + " has non-finite entry");
    }
  };
  check(p_.objective, "objective");

  std::vector<std::vector<FullEntry>> eq_rows;
  for (std::size_t k = 0; k < p_.equalities.size(); ++k) {
    check(p_.equalities[k].matrix, "equality " + std::to_string(k));
    eq_rows.push_back(expand(p_.equalities[k].matrix));
  }
  dropped_ = dependent_equalities(eq_rows);
  for (int k = 0; k < static_cast<int>(eq_rows.size()); ++k) {
    if (!std::binary_search(dropped_.begin(), dropped_.end(), k)) {
      eq_index_.push_back(k);
      rows_.push_back(std::move(eq_rows[k]));
    }
  }
  meq_ = static_cast<int>(rows_.size());
  for (std::size_t j = 0; j < p_.inequalities.size(); ++j) {
    check(p_.inequalities[j].matrix, "inequality " + std::to_string(j));
    rows_.push_back(expand(p_.inequalities[j].matrix));
  }
  p_ineq_ = static_cast<int>(p_.inequalities.size());
  m_ = meq_ + p_ineq_;

  b_.resize(m_);
  for (int k = 0; k < meq_; ++k) b_(k) = p_.equalities[eq_index_[k]].rhs;
  for (int j = 0; j < p_ineq_; ++j) b_(meq_ + j) = p_.inequalities[j].rhs;

  const double sign = p_.sense == Sense::Maximize ? -1.0 : 1.0;
  c_full_ = expand(p_.objective.scaled(sign));
  c_ = MatrixXd::Zero(n_, n_);
  for (const auto& e : c_full_) c_(e.a, e.b) += e.v;

  b_scale_ = 1.0 + (m_ > 0 ? b_.cwiseAbs().maxCoeff() : 0.0);
  c_scale_ = 1.0 + c_.cwiseAbs().maxCoeff();

  x_ = b_scale_ * MatrixXd::Identity(n_, n_);
  slack_ = VectorXd::Constant(p_ineq_, b_scale_);
  s_ = c_scale_ * MatrixXd::Identity(n_, n_);
  z_ = VectorXd::Constant(p_ineq_, c_scale_);
  y_ = VectorXd::Zero(m_);
}

VectorXd InteriorPoint::apply_a(const MatrixXd& y) const {
  VectorXd out(m_);
  for (int k = 0; k < m_; ++k) out(k) = full_dot(rows_[k], y);
  return out;
}

MatrixXd InteriorPoint::apply_adjoint(const VectorXd& y) const {
  MatrixXd out = MatrixXd::Zero(n_, n_);
  for (int k = 0; k < m_; ++k) {
    if (y(k) == 0.0) continue;
    for (const auto& e : rows_[k]) out(e.a, e.b) += y(k) * e.v;
  }
  return out;
}

// M_kl = tr(A_k X A_l W) for the HKM direction.
MatrixXd InteriorPoint::schur(const MatrixXd& w) const {
  MatrixXd m = MatrixXd::Zero(m_, m_);
  constexpr std::size_t kSmall = 4;
  std::vector<int> large;
  for (int l = 0; l < m_; ++l)
    if (rows_[l].size() > kSmall) large.push_back(l);

  for (int l = 0; l < m_; ++l) {
    if (rows_[l].size() > kSmall) continue;
    for (int k = l; k < m_; ++k) {
      if (rows_[k].size() > kSmall) continue;
      double sum = 0.0;
      for (const auto& ek : rows_[k])
        for (const auto& el : rows_[l]) sum += ek.v * el.v * x_(ek.b, el.a) * w(el.b, ek.a);
      m(k, l) = sum;
      m(l, k) = sum;
    }
  }
  for (int l : large) {
    // G = X A_l W
    MatrixXd xa = MatrixXd::Zero(n_, n_);
    for (const auto& e : rows_[l]) xa.col(e.b) += e.v * x_.col(e.a);
    const MatrixXd g = xa * w;
    for (int k = 0; k < m_; ++k) {
      double sum = 0.0;
      for (const auto& e : rows_[k]) sum += e.v * g(e.b, e.a);
      m(k, l) = sum;
      m(l, k) = sum;
    }
  }
  return m;
}

SdpSolution InteriorPoint::package(SdpStatus status, int iterations) {
  SdpSolution out;
  out.status = status;
  out.iterations = iterations;
  const double sign = p_.sense == Sense::Maximize ? -1.0 : 1.0;
  MatrixXd xs = x_;
  symmetrize(xs);
  MatrixXd ss = s_;
  symmetrize(ss);
  out.X = SymMatrix::from_dense(xs, 0.0);
  out.S = SymMatrix::from_dense(ss, 0.0);
  out.primal_value = sign * primal_objective();
  out.dual_value = m_ > 0 ? sign * b_.dot(y_) : 0.0;
  out.equality_multipliers.assign(p_.equalities.size(), 0.0);
  for (int k = 0; k < meq_; ++k) out.equality_multipliers[eq_index_[k]] = sign * y_(k);
  out.inequality_multipliers.resize(p_ineq_);
  for (int j = 0; j < p_ineq_; ++j) out.inequality_multipliers[j] = sign * y_(meq_ + j);
  out.primal_residual = last_pres_;
  out.dual_residual = last_dres_;
  out.dropped_equalities = dropped_;
  out.history = std::move(history_);
  return out;
}

SdpSolution InteriorPoint::run() {
  setup();
  const double dim_total = static_cast<double>(n_ + p_ineq_);

  struct Snapshot {
    MatrixXd x, s;
    VectorXd y, slack, z;
    double merit = std::numeric_limits<double>::infinity();
    double pres = 0.0, dres = 0.0;
  } best;

  int stall = 0;
  int since_improvement = 0;
  double reference_merit = std::numeric_limits<double>::infinity();
  constexpr int kSlowProgressLimit = 25;
  int last_iter = 0;
  for (int iter = 0; iter <= opts_.max_iter; ++iter) {
    last_iter = iter;
    // Residuals.
    VectorXd rp = b_ - apply_a(x_);
    for (int j = 0; j < p_ineq_; ++j) rp(meq_ + j) += slack_(j);
    MatrixXd rd = c_ - apply_adjoint(y_) - s_;
    symmetrize(rd);
    VectorXd rdz(p_ineq_);
    for (int j = 0; j < p_ineq_; ++j) rdz(j) = y_(meq_ + j) - z_(j);

    const double pobj = primal_objective();
    const double dobj = m_ > 0 ? b_.dot(y_) : 0.0;
    const double comp = (x_.cwiseProduct(s_)).sum() + slack_.dot(z_);
    const double mu = comp / dim_total;
    const double pres = (m_ > 0 ? rp.cwiseAbs().maxCoeff() : 0.0) / b_scale_;
    const double dres =
        std::max(rd.cwiseAbs().maxCoeff(), p_ineq_ > 0 ? rdz.cwiseAbs().maxCoeff() : 0.0) /
        c_scale_;
    const double gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj));
    last_pres_ = pres;
    last_dres_ = dres;

    if (opts_.record_history) {
      const double sign = p_.sense == Sense::Maximize ? -1.0 : 1.0;
      history_.push_back({iter, sign * pobj, sign * dobj, pres, dres, mu});
    }
    const double merit = std::max({gap, pres, dres});
    if (merit < 0.5 * reference_merit) {
      reference_merit = merit;
      since_improvement = 0;
    } else if (++since_improvement > kSlowProgressLimit) {
      break;
    }
    if (merit < best.merit) best = {x_, s_, y_, slack_, z_, merit, pres, dres};

    if (gap <= opts_.gap_tol && pres <= opts_.feas_tol && dres <= opts_.feas_tol) {
      return package(SdpStatus::Optimal, iter);
    }
    const double ymax = m_ > 0 ? y_.cwiseAbs().maxCoeff() : 0.0;
    if (std::abs(dobj) > 1e12 || ymax > 1e12 || x_.cwiseAbs().maxCoeff() > 1e12) {
      return package(SdpStatus::Infeasible, iter);
    }
    if (iter == opts_.max_iter) break;

    Eigen::LLT<MatrixXd> chol_s(s_);
    Eigen::LLT<MatrixXd> chol_x(x_);
    if (chol_s.info() != Eigen::Success || chol_x.info() != Eigen::Success) break;
    MatrixXd w = chol_s.solve(MatrixXd::Identity(n_, n_));
    symmetrize(w);

    MatrixXd m = schur(w);
    VectorXd ratio(p_ineq_);
    for (int j = 0; j < p_ineq_; ++j) {
      ratio(j) = slack_(j) / z_(j);
      m(meq_ + j, meq_ + j) += ratio(j);
    }
    Eigen::LLT<MatrixXd> chol_m;
    if (m_ > 0) {
      chol_m.compute(m);
      double shift = 1e-14 * std::max(1.0, m.diagonal().cwiseAbs().maxCoeff());
      while (chol_m.info() != Eigen::Success && shift < 1e-2) {
        chol_m.compute(m + shift * MatrixXd::Identity(m_, m_));
        shift *= 100.0;
      }
      if (chol_m.info() != Eigen::Success) break;
    }

    const MatrixXd x_rd_w = x_ * rd * w;
    struct Direction {
      MatrixXd dx, ds;
      VectorXd dy, dslack, dz;
    };
    // Solves for the direction targeting sigma*mu, with optional second-order terms.
    auto direction = [&](double sigma, const Direction* predictor) {
      MatrixXd rx = sigma * mu * w - x_ - x_rd_w;
      VectorXd rs(p_ineq_);
      for (int j = 0; j < p_ineq_; ++j) {
        double target = sigma * mu;
        if (predictor) target -= predictor->dslack(j) * predictor->dz(j);
        rs(j) = target / z_(j) - slack_(j) - ratio(j) * rdz(j);
      }
      if (predictor) rx -= predictor->dx * predictor->ds * w;
      Direction d;
      auto complete = [&] {
        d.ds = rd - apply_adjoint(d.dy);
        symmetrize(d.ds);
        d.dx = rx + x_ * apply_adjoint(d.dy) * w;
        symmetrize(d.dx);
        d.dz.resize(p_ineq_);
        d.dslack.resize(p_ineq_);
        for (int j = 0; j < p_ineq_; ++j) {
          d.dz(j) = rdz(j) + d.dy(meq_ + j);
          d.dslack(j) = rs(j) - ratio(j) * d.dy(meq_ + j);
        }
      };
      if (m_ == 0) {
        d.dy = VectorXd::Zero(0);
        complete();
        return d;
      }
      VectorXd rhs = rp - apply_a(rx);
      for (int j = 0; j < p_ineq_; ++j) rhs(meq_ + j) += rs(j);
      d.dy = chol_m.solve(rhs);
      complete();
      // Refine against the assembled direction rather than the Schur matrix:
      // near the optimum M and A(X A^T(.) W) disagree in the last digits.
      VectorXd miss = rp - apply_a(d.dx);
      for (int j = 0; j < p_ineq_; ++j) miss(meq_ + j) += d.dslack(j);
      d.dy += chol_m.solve(miss);
      complete();
      return d;
    };
    auto steps = [&](const Direction& d) {
      double ap = std::min(max_psd_step(chol_x, d.dx), max_lp_step(slack_, d.dslack));
      double ad = std::min(max_psd_step(chol_s, d.ds), max_lp_step(z_, d.dz));
      return std::pair{ap, ad};
    };

    Direction step;
    if (opts_.predictor_corrector) {
      Direction pred = direction(0.0, nullptr);
      auto [ap, ad] = steps(pred);
      ap = std::min(1.0, ap);
      ad = std::min(1.0, ad);
      const double comp_aff =
          ((x_ + ap * pred.dx).cwiseProduct(s_ + ad * pred.ds)).sum() +
          (slack_ + ap * pred.dslack).dot(z_ + ad * pred.dz);
      const double mu_aff = comp_aff / dim_total;
      const double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);
      step = direction(sigma, &pred);
    } else {
      step = direction(0.1, nullptr);
    }
    auto [ap, ad] = steps(step);
    ap = std::min(1.0, opts_.step_fraction * ap);
    ad = std::min(1.0, opts_.step_fraction * ad);
    if (ap < 1e-10 && ad < 1e-10) {
      if (++stall > 3) break;
    } else {
      stall = 0;
    }

    x_ += ap * step.dx;
    slack_ += ap * step.dslack;
    s_ += ad * step.ds;
    y_ += ad * step.dy;
    z_ += ad * step.dz;
    symmetrize(x_);
    symmetrize(s_);
  }

  x_ = best.x;
  s_ = best.s;
  y_ = best.y;
  slack_ = best.slack;
  z_ = best.z;
  const bool acceptable = best.merit <= opts_.acceptable_tol;
  auto out = package(acceptable ? SdpStatus::Optimal : SdpStatus::NumericalTrouble, last_iter);
  out.reduced_accuracy = acceptable;
  out.primal_residual = best.pres;
  out.dual_residual = best.dres;
  return out;
}

}  // namespace

SdpSolution solve(const SdpProblem& problem, const SdpOptions& options) {
  InteriorPoint ipm(problem, options);
  return ipm.run();
}

FeasibilityReport check_feasible(const SdpProblem& problem, const SymMatrix& X, double tol) {
  if (X.dim() != problem.dim) {
    throw Error(ErrorCode::DimensionMismatch, "candidate has dimension " +
                                                  std::to_string(X.dim()) + ", problem " +
                                                  std::to_string(problem.dim));
  }
  FeasibilityReport report;
  auto record = [&](const LinearConstraint& c, bool equality, int index) {
    ConstraintResidual r;
    r.equality = equality;
    r.index = index;
    r.label = c.label;
    r.value = c.matrix.dot(X.dense());
    r.violation = equality ? std::abs(r.value - c.rhs) : std::max(0.0, c.rhs - r.value);
    report.worst_violation = std::max(report.worst_violation, r.violation);
    report.residuals.push_back(std::move(r));
  };
  for (std::size_t k = 0; k < problem.equalities.size(); ++k)
    record(problem.equalities[k], true, static_cast<int>(k));
  for (std::size_t j = 0; j < problem.inequalities.size(); ++j)
    record(problem.inequalities[j], false, static_cast<int>(j));
  if (X.dim() > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(X.dense(), Eigen::EigenvaluesOnly);
    report.min_eigenvalue = es.eigenvalues()(0);
    report.max_eigenvalue = es.eigenvalues()(X.dim() - 1);
  }
  report.psd = report.min_eigenvalue >= -tol * std::max(1.0, report.max_eigenvalue);
  report.passed = report.psd && report.worst_violation <= tol;
  return report;
}

nlohmann::json to_json(const SdpProblem& problem) {
  auto matrix_json = [](const SparseSym& m) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : m.entries()) entries.push_back({e.row, e.col, e.value});
    return entries;
  };
  auto constraints_json = [&](const std::vector<LinearConstraint>& list) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& c : list) {
      out.push_back({{"label", c.label}, {"rhs", c.rhs}, {"entries", matrix_json(c.matrix)}});
    }
    return out;
  };
  return {{"dim", problem.dim},
          {"sense", problem.sense == Sense::Maximize ? "max" : "min"},
          {"objective", matrix_json(problem.objective)},
          {"equalities", constraints_json(problem.equalities)},
          {"inequalities", constraints_json(problem.inequalities)}};
}

}  // namespace thetaforge
