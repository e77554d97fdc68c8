#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <vector>

namespace thetaforge {

inline constexpr int kMaxEigenDim = 5000;
inline constexpr double kDefaultPsdTol = 1e-8;

/// Dense real symmetric matrix. Writes go through set(), which mirrors the
/// entry, so symmetry holds exactly.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int dim);

  /// Accepts a square matrix that is symmetric up to `tol` (relative to its
  /// largest entry) and stores its exact symmetric part.
  static SymMatrix from_dense(const Eigen::MatrixXd& m, double tol = 1e-12);
  static SymMatrix identity(int dim);
  static SymMatrix ones(int dim);
  static SymMatrix diagonal(std::span<const double> values);
  /// v v^T
  static SymMatrix outer(const Eigen::VectorXd& v);

  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  double operator()(int i, int j) const { return m_(i, j); }
  void set(int i, int j, double value);
  void add(int i, int j, double value);

  const Eigen::MatrixXd& dense() const noexcept { return m_; }
  double max_abs() const;
  double frobenius() const { return m_.norm(); }

  SymMatrix& operator+=(const SymMatrix& other);
  SymMatrix& operator-=(const SymMatrix& other);
  SymMatrix& operator*=(double s);
  friend SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
  friend SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
  friend SymMatrix operator*(SymMatrix a, double s) { return a *= s; }
  friend SymMatrix operator*(double s, SymMatrix a) { return a *= s; }

 private:
  Eigen::MatrixXd m_;
};

struct EigenDecomposition {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // orthonormal columns, first nonzero entry >= 0
};

EigenDecomposition eig(const SymMatrix& m);

double min_eigenvalue(const SymMatrix& m);
double max_eigenvalue(const SymMatrix& m);

/// lambda_min >= -tol * max(1, lambda_max)
bool is_psd(const SymMatrix& m, double tol = kDefaultPsdTol);

SymMatrix kron(const SymMatrix& a, const SymMatrix& b);
SymMatrix hadamard(const SymMatrix& a, const SymMatrix& b);
double opnorm(const SymMatrix& m);
double hs_inner(const SymMatrix& a, const SymMatrix& b);

/// Diagonal matrix of 1/sqrt(m_ii), with 0 wherever m_ii <= threshold.
SymMatrix diag_pseudo_inv_sqrt(const SymMatrix& m, double threshold = 1e-12);

/// Lower Cholesky factor, or nullopt when m is not numerically positive definite.
std::optional<Eigen::MatrixXd> cholesky(const SymMatrix& m);

/// Row i of the result is a vector w_i with <w_i, w_j> = m_ij; the number of
/// columns is the numerical rank. Throws NotPsd when is_psd(m, tol) fails.
Eigen::MatrixXd gram_factor(const SymMatrix& m, double tol = kDefaultPsdTol);

/// Adjacency matrix as a SymMatrix (test and certificate helper).
class Graph;
SymMatrix adjacency_matrix(const Graph& g);

}  // namespace thetaforge
