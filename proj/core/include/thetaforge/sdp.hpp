#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "thetaforge/linalg.hpp"

namespace thetaforge {

inline constexpr int kMaxSdpDim = 400;
inline constexpr int kMaxSdpConstraints = 20000;

/// Sparse symmetric matrix given by its upper-triangle entries (row <= col);
/// an entry (r, c, v) with r != c stands for both A_rc and A_cr.
class SparseSym {
 public:
  struct Entry {
    int row = 0;
    int col = 0;
    double value = 0.0;
  };

  SparseSym() = default;

  /// Matrix whose inner product with X is X_ij (0.5 on both off-diagonal slots).
  static SparseSym selector(int i, int j, double scale = 1.0);
  static SparseSym identity(int dim);
  static SparseSym ones(int dim);
  static SparseSym from_dense(const SymMatrix& m, double drop_below = 0.0);

  /// Accumulates into A_rc (and A_cr).
  void add(int row, int col, double value);

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  double dot(const Eigen::MatrixXd& x) const;
  SymMatrix to_dense(int dim) const;
  SparseSym scaled(double s) const;
  int max_index() const;

 private:
  std::vector<Entry> entries_;
};

/// <matrix, X> = rhs for equalities, <matrix, X> >= rhs for inequalities.
struct LinearConstraint {
  SparseSym matrix;
  double rhs = 0.0;
  std::string label;
};

enum class Sense { Maximize, Minimize };

/// Optimize <objective, X> over X PSD of size dim subject to the linear
/// equalities and inequalities.
struct SdpProblem {
  int dim = 0;
  Sense sense = Sense::Maximize;
  SparseSym objective;
  std::vector<LinearConstraint> equalities;
  std::vector<LinearConstraint> inequalities;
};

struct SdpOptions {
  double gap_tol = 1e-8;
  double feas_tol = 1e-8;
  int max_iter = 200;
  bool predictor_corrector = true;
  double step_fraction = 0.98;
  bool record_history = false;
  /// When progress stalls at the floating-point floor, the best iterate is
  /// still reported Optimal (flagged reduced_accuracy) if its relative gap
  /// and residuals are all below this.
  double acceptable_tol = 1e-6;
};

enum class SdpStatus { Optimal, Infeasible, NumericalTrouble };
std::string_view to_string(SdpStatus status) noexcept;

struct IterationRecord {
  int iteration = 0;
  double primal_value = 0.0;
  double dual_value = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double mu = 0.0;
};

/// For Maximize the dual slack is S = sum_i y_i A_i + sum_j w_j B_j - C with
/// w <= 0; for Minimize it is S = C - sum_i y_i A_i - sum_j w_j B_j with w >= 0.
struct SdpSolution {
  SdpStatus status = SdpStatus::NumericalTrouble;
  double primal_value = 0.0;
  double dual_value = 0.0;
  SymMatrix X;
  SymMatrix S;
  std::vector<double> equality_multipliers;
  std::vector<double> inequality_multipliers;
  int iterations = 0;
  /// Max-abs primal residual relative to 1 + max|rhs|.
  double primal_residual = 0.0;
  /// Max-abs dual residual relative to 1 + max|C|.
  double dual_residual = 0.0;
  /// Indices of equalities removed as linearly dependent.
  std::vector<int> dropped_equalities;
  std::vector<IterationRecord> history;
  bool reduced_accuracy = false;
};

/// Primal-dual path-following interior-point method (HKM direction,
/// Mehrotra predictor-corrector). Deterministic for identical inputs.
SdpSolution solve(const SdpProblem& problem, const SdpOptions& options = {});

struct ConstraintResidual {
  bool equality = true;
  int index = 0;
  std::string label;
  double value = 0.0;     // <A, X>
  double violation = 0.0; // |<A,X> - b| or max(0, b - <A,X>)
};

struct FeasibilityReport {
  std::vector<ConstraintResidual> residuals;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  double worst_violation = 0.0;
  bool psd = false;
  bool passed = false;
};

FeasibilityReport check_feasible(const SdpProblem& problem, const SymMatrix& X, double tol);

nlohmann::json to_json(const SdpProblem& problem);

}  // namespace thetaforge
