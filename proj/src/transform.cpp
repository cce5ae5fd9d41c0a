#include "gdd/transform.hpp"

#include <stdexcept>
#include <string>

namespace gdd {

SubspaceFactorization factor_waveform_subspace(const CMatrix& c) {
  const Eigen::Index m = c.rows();
  const Eigen::Index k = c.cols();
  if (m < 1 || m > k) {
    throw std::invalid_argument("factor_waveform_subspace: C must be M x K with 1 <= M <= K");
  }
  const RVector sv = singular_values(c);
  if (!(sv(m - 1) > Tolerances::rank * sv(0))) {
    throw std::invalid_argument("factor_waveform_subspace: C is rank deficient");
  }
  const HermitianPD gram(c * c.adjoint(), "C C^H");
  SubspaceFactorization f;
  f.c_par = inv_sqrt(gram) * c;
  f.d = sqrt_hpd(gram);
  f.c_perp = m < k ? orthonormal_complement(f.c_par) : CMatrix(0, k);
  return f;
}

TransformedData transform_data(const CMatrix& x, const CMatrix& x_l,
                               const SubspaceFactorization& f) {
  const Eigen::Index n = x.rows();
  if (x.cols() != f.c_par.cols()) {
    throw std::invalid_argument("transform_data: X has " + std::to_string(x.cols()) +
                                " columns but C has " + std::to_string(f.c_par.cols()));
  }
  if (x_l.rows() != n) {
    throw std::invalid_argument("transform_data: X_L must have N=" + std::to_string(n) + " rows");
  }
  CMatrix x_par = x * f.c_par.adjoint();
  CMatrix x_perp = x * f.c_perp.adjoint();
  CMatrix s = CMatrix::Zero(n, n);
  if (x_l.cols() > 0) s.noalias() += x_l * x_l.adjoint();
  if (x_perp.cols() > 0) s.noalias() += x_perp * x_perp.adjoint();
  try {
    HermitianPD s_plus(hermitize(s), "augmented SCM");
    return {std::move(x_par), std::move(x_perp), std::move(s_plus)};
  } catch (const SingularMatrixError& e) {
    throw SingularMatrixError("augmented SCM singular (L+K-M=" +
                              std::to_string(x_l.cols() + x_perp.cols()) + ", N=" +
                              std::to_string(n) + "): " + e.what());
  }
}

HermitianPD training_scm(const CMatrix& x_l) {
  if (x_l.cols() < x_l.rows()) {
    throw std::invalid_argument("insufficient training data: L=" + std::to_string(x_l.cols()) +
                                " < N=" + std::to_string(x_l.rows()));
  }
  return HermitianPD(hermitize(x_l * x_l.adjoint()), "training SCM");
}

}  // namespace gdd
