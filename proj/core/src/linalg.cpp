#include "thetaforge/linalg.hpp"

#include <cmath>

#include "thetaforge/error.hpp"
#include "thetaforge/graph.hpp"

namespace thetaforge {

namespace {

void require_finite(const Eigen::MatrixXd& m) {
  if (!m.allFinite()) throw Error(ErrorCode::NonFinite, "matrix has non-finite entries");
}

void require_same_dim(const SymMatrix& a, const SymMatrix& b, const char* op) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch, std::string(op) + ": " + std::to_string(a.dim()) +
                                                  " vs " + std::to_string(b.dim()));
  }
}

}  // namespace

SymMatrix::SymMatrix(int dim) : m_(Eigen::MatrixXd::Zero(dim, dim)) {}

SymMatrix SymMatrix::from_dense(const Eigen::MatrixXd& m, double tol) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix is not square");
  }
  require_finite(m);
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > tol * scale) {
    throw Error(ErrorCode::InvalidInput, "matrix is not symmetric");
  }
  SymMatrix out;
  out.m_ = 0.5 * (m + m.transpose());
  return out;
}

SymMatrix SymMatrix::identity(int dim) {
  SymMatrix out;
  out.m_ = Eigen::MatrixXd::Identity(dim, dim);
  return out;
}

SymMatrix SymMatrix::ones(int dim) {
  SymMatrix out;
  out.m_ = Eigen::MatrixXd::Ones(dim, dim);
  return out;
}

SymMatrix SymMatrix::diagonal(std::span<const double> values) {
  SymMatrix out(static_cast<int>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) out.m_(i, i) = values[i];
  require_finite(out.m_);
  return out;
}

SymMatrix SymMatrix::outer(const Eigen::VectorXd& v) {
  SymMatrix out;
  out.m_ = v * v.transpose();
  return out;
}

void SymMatrix::set(int i, int j, double value) {
  if (!std::isfinite(value)) throw Error(ErrorCode::NonFinite, "non-finite entry");
  m_(i, j) = value;
  m_(j, i) = value;
}

void SymMatrix::add(int i, int j, double value) {
  if (i == j) {
    set(i, i, m_(i, i) + value);
  } else {
    set(i, j, m_(i, j) + value);
  }
}

double SymMatrix::max_abs() const { return m_.size() == 0 ? 0.0 : m_.cwiseAbs().maxCoeff(); }

SymMatrix& SymMatrix::operator+=(const SymMatrix& other) {
  require_same_dim(*this, other, "add");
  m_ += other.m_;
  return *this;
}

SymMatrix& SymMatrix::operator-=(const SymMatrix& other) {
  require_same_dim(*this, other, "subtract");
  m_ -= other.m_;
  return *this;
}

SymMatrix& SymMatrix::operator*=(double s) {
  m_ *= s;
  return *this;
}

EigenDecomposition eig(const SymMatrix& m) {
  if (m.dim() > kMaxEigenDim) {
    throw Error(ErrorCode::TooLarge, "eigendecomposition limited to dimension " +
                                         std::to_string(kMaxEigenDim));
  }
  require_finite(m.dense());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.dense());
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NonFinite, "eigensolver did not converge");
  }
  EigenDecomposition out{solver.eigenvalues(), solver.eigenvectors()};
  for (Eigen::Index c = 0; c < out.eigenvectors.cols(); ++c) {
    auto col = out.eigenvectors.col(c);
    for (Eigen::Index r = 0; r < col.size(); ++r) {
      if (std::abs(col(r)) > 1e-14) {
        if (col(r) < 0) col = -col;
        break;
      }
    }
  }
  return out;
}

double min_eigenvalue(const SymMatrix& m) {
  if (m.dim() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.dense(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

double max_eigenvalue(const SymMatrix& m) {
  if (m.dim() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.dense(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(m.dim() - 1);
}

bool is_psd(const SymMatrix& m, double tol) {
  if (m.dim() == 0) return true;
  if (!m.dense().allFinite()) return false;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.dense(), Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return ev(0) >= -tol * std::max(1.0, ev(ev.size() - 1));
}

SymMatrix kron(const SymMatrix& a, const SymMatrix& b) {
  const int na = a.dim();
  const int nb = b.dim();
  Eigen::MatrixXd out(na * nb, na * nb);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j) out.block(i * nb, j * nb, nb, nb) = a(i, j) * b.dense();
  return SymMatrix::from_dense(out, 0.0);
}

SymMatrix hadamard(const SymMatrix& a, const SymMatrix& b) {
  require_same_dim(a, b, "hadamard");
  return SymMatrix::from_dense(a.dense().cwiseProduct(b.dense()), 0.0);
}

double opnorm(const SymMatrix& m) {
  if (m.dim() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.dense(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

double hs_inner(const SymMatrix& a, const SymMatrix& b) {
  require_same_dim(a, b, "hs_inner");
  return a.dense().cwiseProduct(b.dense()).sum();
}

SymMatrix diag_pseudo_inv_sqrt(const SymMatrix& m, double threshold) {
  const int n = m.dim();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && std::abs(m(i, j)) > threshold) {
        throw Error(ErrorCode::NotDiagonal, "entry (" + std::to_string(i) + ", " +
                                                std::to_string(j) + ") is nonzero");
      }
    }
    if (m(i, i) < -threshold) {
      throw Error(ErrorCode::NegativeDiagonal, "diagonal entry " + std::to_string(i) + " < 0");
    }
  }
  SymMatrix out(n);
  for (int i = 0; i < n; ++i) {
    if (m(i, i) > threshold) out.set(i, i, 1.0 / std::sqrt(m(i, i)));
  }
  return out;
}

std::optional<Eigen::MatrixXd> cholesky(const SymMatrix& m) {
  Eigen::LLT<Eigen::MatrixXd> llt(m.dense());
  if (llt.info() != Eigen::Success) return std::nullopt;
  return Eigen::MatrixXd(llt.matrixL());
}

Eigen::MatrixXd gram_factor(const SymMatrix& m, double tol) {
  if (!is_psd(m, tol)) throw Error(ErrorCode::NotPsd, "gram_factor needs a PSD matrix");
  const auto dec = eig(m);
  const int n = m.dim();
  const double top = n > 0 ? dec.eigenvalues(n - 1) : 0.0;
  const double cutoff = tol * std::max(1.0, top);
  int rank = 0;
  for (int i = 0; i < n; ++i)
    if (dec.eigenvalues(i) > cutoff) ++rank;
  Eigen::MatrixXd vectors(n, rank);
  int col = 0;
  for (int i = n - 1; i >= 0 && col < rank; --i) {
    if (dec.eigenvalues(i) <= cutoff) continue;
    vectors.col(col++) = dec.eigenvectors.col(i) * std::sqrt(dec.eigenvalues(i));
  }
  return vectors;
}

SymMatrix adjacency_matrix(const Graph& g) {
  SymMatrix a(g.order());
  for (const auto& e : g.edges()) a.set(e.u, e.v, 1.0);
  return a;
}

}  // namespace thetaforge
