#include "gdd/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <utility>

namespace gdd {

namespace {

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument(std::string(what) + ": matrix must be square, got " +
                                std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

// Eigenvalues of a Hermitian PSD matrix with tiny negative values clamped to 0.
// Throws if any eigenvalue falls below -psd_clamp * trace.
Eigen::SelfAdjointEigenSolver<CMatrix> psd_eigen(const CMatrix& g, const char* what) {
  const double scale = std::max(g.norm(), 1.0);
  if ((g - g.adjoint()).norm() > Tolerances::psd_hermitian * scale) {
    throw std::invalid_argument(std::string(what) + ": matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitize(g));
  if (es.info() != Eigen::Success) {
    throw SingularMatrixError(std::string(what) + ": eigendecomposition failed");
  }
  const double trace = std::abs(g.trace().real());
  const double floor = -Tolerances::psd_clamp * std::max(trace, 1e-300);
  if (g.rows() > 0 && es.eigenvalues().minCoeff() < floor) {
    throw std::invalid_argument(std::string(what) + ": matrix is not positive semidefinite");
  }
  return es;
}

}  // namespace

double relative_difference(const CMatrix& a, const CMatrix& b) {
  const double scale = std::max(a.norm(), b.norm());
  if (scale == 0.0) return 0.0;
  return (a - b).norm() / scale;
}

double relative_difference(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale == 0.0) return 0.0;
  return std::abs(a - b) / scale;
}

bool all_finite(const CMatrix& m) {
  return m.allFinite();
}

CMatrix hermitize(const CMatrix& g) {
  require_square(g, "hermitize");
  return (g + g.adjoint()) * 0.5;
}

HermitianPD::HermitianPD(const CMatrix& matrix, std::string label) : label_(std::move(label)) {
  require_square(matrix, "HermitianPD");
  if (!all_finite(matrix)) {
    throw std::invalid_argument(label_ + ": non-finite entries");
  }
  const double scale = matrix.norm();
  if (scale > 0.0 && (matrix - matrix.adjoint()).norm() > Tolerances::hermitian_input * scale) {
    throw std::invalid_argument(label_ + ": matrix is not Hermitian");
  }
  matrix_ = hermitize(matrix);
  llt_.compute(matrix_);
  if (matrix_.rows() == 0 || llt_.info() != Eigen::Success) {
    throw SingularMatrixError("singular covariance estimate: " + label_ +
                              " is not positive definite");
  }
  const CMatrix l = llt_.matrixL();
  const RVector d = l.diagonal().real();
  // LLT succeeds on rank-deficient input with pivots at rounding level. A pivot
  // ratio below the limit implies cond(S) > 1e12.
  if (!(d.minCoeff() > Tolerances::cholesky_pivot * d.maxCoeff())) {
    throw SingularMatrixError("singular covariance estimate: " + label_ +
                              " is numerically singular");
  }
}

CMatrix HermitianPD::solve(const CMatrix& rhs) const {
  if (rhs.rows() != dim()) {
    throw std::invalid_argument("hpd_solve: " + label_ + " is " + std::to_string(dim()) +
                                "x" + std::to_string(dim()) + " but right-hand side has " +
                                std::to_string(rhs.rows()) + " rows");
  }
  return llt_.solve(rhs);
}

CMatrix hpd_solve(const HermitianPD& s, const CMatrix& b) {
  return s.solve(b);
}

namespace {

CMatrix spectral_power(const HermitianPD& s, double exponent) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(s.matrix());
  if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0.0) {
    throw std::invalid_argument(s.label() + ": matrix is not positive definite");
  }
  const RVector powered = es.eigenvalues().array().pow(exponent).matrix();
  const CMatrix& v = es.eigenvectors();
  return hermitize(v * powered.cast<Complex>().asDiagonal() * v.adjoint());
}

}  // namespace

CMatrix inv_sqrt(const HermitianPD& s) {
  return spectral_power(s, -0.5);
}

CMatrix sqrt_hpd(const HermitianPD& s) {
  return spectral_power(s, 0.5);
}

CMatrix orthonormal_complement(const CMatrix& c_par) {
  const Eigen::Index m = c_par.rows();
  const Eigen::Index k = c_par.cols();
  if (m >= k) {
    throw std::invalid_argument("orthonormal_complement: need M < K, got M=" + std::to_string(m) +
                                ", K=" + std::to_string(k));
  }
  const CMatrix gram = c_par * c_par.adjoint();
  if ((gram - CMatrix::Identity(m, m)).norm() > Tolerances::orthonormal) {
    throw std::invalid_argument("orthonormal_complement: input rows are not orthonormal");
  }
  if (m == 0) return CMatrix::Identity(k, k);
  Eigen::JacobiSVD<CMatrix> svd(c_par, Eigen::ComputeFullV);
  // Trailing right singular vectors span the null space of c_par.
  return svd.matrixV().rightCols(k - m).adjoint();
}

double max_eig_psd(const CMatrix& g) {
  require_square(g, "max_eig_psd");
  if (g.rows() == 0) return 0.0;
  const auto es = psd_eigen(g, "max_eig_psd");
  return std::max(es.eigenvalues().maxCoeff(), 0.0);
}

double max_eig_psd_product(const CMatrix& g, const CMatrix& b) {
  require_square(g, "max_eig_psd_product");
  require_square(b, "max_eig_psd_product");
  if (g.rows() != b.rows()) {
    throw std::invalid_argument("max_eig_psd_product: dimension mismatch " +
                                std::to_string(g.rows()) + " vs " + std::to_string(b.rows()));
  }
  if (g.rows() == 0) return 0.0;
  psd_eigen(g, "max_eig_psd_product (left factor)");
  const auto eb = psd_eigen(b, "max_eig_psd_product (right factor)");
  const RVector root = eb.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const CMatrix& v = eb.eigenvectors();
  const CMatrix b_half = v * root.cast<Complex>().asDiagonal() * v.adjoint();
  const CMatrix sym = hermitize(b_half * g * b_half);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(sym, Eigen::EigenvaluesOnly);
  return std::max(es.eigenvalues().maxCoeff(), 0.0);
}

double max_eig_psd_inverse_product(const CMatrix& g, const HermitianPD& b) {
  require_square(g, "max_eig_psd_inverse_product");
  if (g.rows() != b.dim()) {
    throw std::invalid_argument("max_eig_psd_inverse_product: dimension mismatch " +
                                std::to_string(g.rows()) + " vs " + std::to_string(b.dim()));
  }
  if (g.rows() == 0) return 0.0;
  psd_eigen(g, "max_eig_psd_inverse_product (left factor)");
  const CMatrix l = b.lower_factor();
  const auto lower = l.triangularView<Eigen::Lower>();
  const CMatrix half = lower.solve(g);                  // L^{-1} G
  const CMatrix sym = lower.solve(half.adjoint());      // L^{-1} G L^{-H}
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitize(sym), Eigen::EigenvaluesOnly);
  return std::max(es.eigenvalues().maxCoeff(), 0.0);
}

RVector singular_values(const CMatrix& m) {
  if (m.size() == 0) return RVector();
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues();
}

}  // namespace gdd
