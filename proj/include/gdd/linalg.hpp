#pragma once

// Dense complex kernels shared by every detector: HPD solves, inverse square
// roots, row-space completion and the largest eigenvalue of a PSD product.

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <complex>
#include <stdexcept>
#include <string>

namespace gdd {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;  // column-major everywhere
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Numerical tolerances used across the library. None of these come from the
/// detection model itself; they only gate input validation.
struct Tolerances {
  static constexpr double hermitian = 1e-12;     // relative ‖G - G^H‖_F / ‖G‖_F of outputs
  static constexpr double hermitian_input = 1e-8; // asymmetry accepted before hermitizing
  static constexpr double cholesky_pivot = 1e-6; // min/max diagonal of the Cholesky factor
  static constexpr double orthonormal = 1e-10;   // ‖C C^H - I‖_F
  static constexpr double psd_clamp = 1e-10;     // eigenvalues above -psd_clamp * trace are clamped to 0
  static constexpr double psd_hermitian = 1e-10; // looser symmetry check for PSD products
  static constexpr double rank = 1e-8;           // σ_min > rank * σ_max counts as full rank
};

/// Thrown when a matrix that must be positive definite fails to factor.
class SingularMatrixError : public std::runtime_error {
 public:
  explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};

/// Frobenius-relative distance ‖a - b‖ / max(‖a‖, ‖b‖); 0 when both are zero.
double relative_difference(const CMatrix& a, const CMatrix& b);

/// Relative difference of two scalars, |a - b| / max(|a|, |b|), 0 when both are zero.
double relative_difference(double a, double b);

bool all_finite(const CMatrix& m);

/// (G + G^H) / 2.
CMatrix hermitize(const CMatrix& g);

/// Hermitian positive-definite matrix held together with its Cholesky factor.
///
/// Construction hermitizes the input and factors it; failure to factor throws
/// SingularMatrixError with the supplied label in the message.
class HermitianPD {
 public:
  explicit HermitianPD(const CMatrix& matrix, std::string label = "matrix");

  Eigen::Index dim() const { return matrix_.rows(); }
  const CMatrix& matrix() const { return matrix_; }
  const std::string& label() const { return label_; }

  /// Lower-triangular F with F F^H = matrix().
  CMatrix lower_factor() const { return llt_.matrixL(); }

  /// Solves S Y = B through the Cholesky factor.
  CMatrix solve(const CMatrix& rhs) const;

 private:
  CMatrix matrix_;
  Eigen::LLT<CMatrix> llt_;
  std::string label_;
};

/// Returns Y with S Y = B. Never forms S^{-1}.
CMatrix hpd_solve(const HermitianPD& s, const CMatrix& b);

/// The unique Hermitian PD W with W S W = I, via eigendecomposition.
CMatrix inv_sqrt(const HermitianPD& s);

/// The unique Hermitian PD square root of S.
CMatrix sqrt_hpd(const HermitianPD& s);

/// Given M x K rows that are orthonormal (M < K), returns (K-M) x K rows
/// spanning the orthogonal complement, so that [C_par; C_perp] is unitary.
CMatrix orthonormal_complement(const CMatrix& c_par);

/// Largest eigenvalue of the (non-Hermitian) product G B of two Hermitian PSD
/// matrices, computed from B^{1/2} G B^{1/2}. Always real and >= 0.
double max_eig_psd_product(const CMatrix& g, const CMatrix& b);

/// Largest eigenvalue of G B^{-1} for Hermitian PSD G and HPD B, from the
/// congruence L^{-1} G L^{-H} with B = L L^H. Same spectrum as
/// max_eig_psd_product(G, B^{-1}) but never forms B^{-1} or its square root,
/// which keeps full relative accuracy when B is badly conditioned.
double max_eig_psd_inverse_product(const CMatrix& g, const HermitianPD& b);

/// Largest eigenvalue of a Hermitian PSD matrix.
double max_eig_psd(const CMatrix& g);

/// Singular values in decreasing order.
RVector singular_values(const CMatrix& m);

}  // namespace gdd
