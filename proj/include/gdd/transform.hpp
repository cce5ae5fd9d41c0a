#pragma once

// Right-unitary transformation of the test data. The rows of C are split into
// an orthonormal basis C_par of their span and a completion C_perp; projecting
// X onto C_perp yields signal-free "virtual" training snapshots that are added
// to the sample covariance.

#include "gdd/linalg.hpp"

namespace gdd {

struct SubspaceFactorization {
  CMatrix c_par;   ///< M x K, orthonormal rows spanning the rows of C
  CMatrix c_perp;  ///< (K-M) x K, orthonormal completion
  CMatrix d;       ///< M x M, (C C^H)^{1/2}, so that C = D C_par
};

/// C_par = (C C^H)^{-1/2} C, D = (C C^H)^{1/2}, C_perp from the SVD of C_par.
/// Throws std::invalid_argument when C is rank deficient.
SubspaceFactorization factor_waveform_subspace(const CMatrix& c);

struct TransformedData {
  CMatrix x_par;       ///< X C_par^H, N x M
  CMatrix x_perp;      ///< X C_perp^H, N x (K-M)
  HermitianPD s_plus;  ///< X_L X_L^H + X_perp X_perp^H
};

/// Splits X along the factorization and forms the augmented SCM. X_L may have
/// zero columns. Throws SingularMatrixError ("augmented SCM singular") when the
/// augmented SCM cannot be factored.
TransformedData transform_data(const CMatrix& x, const CMatrix& x_l,
                               const SubspaceFactorization& f);

/// X_L X_L^H as a factored HPD matrix; throws when L < N or the SCM is singular.
HermitianPD training_scm(const CMatrix& x_l);

}  // namespace gdd
