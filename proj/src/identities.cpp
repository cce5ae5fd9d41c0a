#include "gdd/detectors.hpp"

#include <algorithm>
#include <initializer_list>

namespace gdd {

namespace {

CMatrix inverse_of(const CMatrix& m, const char* label) {
  const HermitianPD h(hermitize(m), label);
  return h.solve(CMatrix::Identity(m.rows(), m.cols()));
}

// ‖Σ lhs - Σ rhs‖_F divided by the largest term norm. Normalizing by the terms
// rather than by the (possibly much smaller) sum keeps cancellation in the
// floating-point evaluation from being reported as a violated identity.
double residual(std::initializer_list<CMatrix> lhs, std::initializer_list<CMatrix> rhs) {
  CMatrix diff = CMatrix::Zero(lhs.begin()->rows(), lhs.begin()->cols());
  double scale = 0.0;
  for (const auto& t : lhs) {
    diff += t;
    scale = std::max(scale, t.norm());
  }
  for (const auto& t : rhs) {
    diff -= t;
    scale = std::max(scale, t.norm());
  }
  return scale == 0.0 ? 0.0 : diff.norm() / scale;
}

}  // namespace

std::vector<IdentityResidual> detector_identities(const CMatrix& x, const CMatrix& x_l,
                                                  const CMatrix& a, const CMatrix& c) {
  const SubspaceFactorization f = factor_waveform_subspace(c);
  const TransformedData td = transform_data(x, x_l, f);
  const HermitianPD s = training_scm(x_l);
  const Eigen::Index n = x.rows();
  const Eigen::Index k = x.cols();
  const Eigen::Index m = c.rows();
  const CMatrix i_m = CMatrix::Identity(m, m);
  const CMatrix i_k = CMatrix::Identity(k, k);

  const WhitenedForms w = whitened_forms(td.s_plus, a, td.x_par);
  const CMatrix phi_a_inv = inverse_of(w.phi_a, "Φ_A");
  const CMatrix phi_xa = w.phi_ax.adjoint();
  const CMatrix i_plus_phi_x_inv = inverse_of(i_m + w.phi_x, "I_M + Φ_X");

  const CMatrix s_inv = s.solve(CMatrix::Identity(n, n));
  const CMatrix s_plus_inv = td.s_plus.solve(CMatrix::Identity(n, n));
  const CMatrix s_aug_inv = inverse_of(s.matrix() + x * x.adjoint(), "S + X X^H");
  const CMatrix s_perp = td.x_perp * td.x_perp.adjoint();
  const CMatrix q_inv = inverse_of(i_k + x.adjoint() * s_inv * x, "I_K + X^H S^{-1} X");

  std::vector<IdentityResidual> out;
  const CMatrix s_plus_inv_x = s_plus_inv * td.x_par;

  // X X^H = X_perp X_perp^H + X_par X_par^H
  out.push_back({"energy_split",
                 residual({x * x.adjoint()}, {s_perp, td.x_par * td.x_par.adjoint()})});

  // (S + X X^H)^{-1} = S+^{-1} - S+^{-1} X_par (I + Φ_X)^{-1} X_par^H S+^{-1}
  out.push_back({"inversion_lemma",
                 residual({s_aug_inv}, {s_plus_inv, -s_plus_inv_x * i_plus_phi_x_inv *
                                                        s_plus_inv_x.adjoint()})});

  // (I_K + X^H S^{-1} X)^{-1} = I_K - X^H (S + X X^H)^{-1} X
  out.push_back({"test_gram_inverse", residual({q_inv}, {i_k, -x.adjoint() * s_aug_inv * x})});

  // I - Φ_X + Φ_X (I + Φ_X)^{-1} Φ_X = (I + Φ_X)^{-1}
  out.push_back({"phi_x_identity",
                 residual({i_m, -w.phi_x, w.phi_x * i_plus_phi_x_inv * w.phi_x},
                          {i_plus_phi_x_inv})});

  // S^{-1} - S^{-1} S_perp S+^{-1} = S+^{-1}
  out.push_back({"augmented_inverse",
                 residual({s_inv, -s_inv * s_perp * s_plus_inv}, {s_plus_inv})});

  // Ξ_A = Φ_A^{-1} + Φ_A^{-1} Φ_AX (I + Φ_X - Φ_XA Φ_A^{-1} Φ_AX)^{-1} Φ_XA Φ_A^{-1}
  const CMatrix xi_a = inverse_of(a.adjoint() * s_aug_inv * a, "Ξ_A^{-1}");
  const CMatrix inner = inverse_of(i_m + w.phi_x - phi_xa * phi_a_inv * w.phi_ax, "Ξ_A inner");
  out.push_back({"xi_a", residual({xi_a}, {phi_a_inv, phi_a_inv * w.phi_ax * inner * phi_xa *
                                                          phi_a_inv})});

  // Ξ_AC = A^H S^{-1} X Q^{-1} C_par^H = Φ_AX (I + Φ_X)^{-1}
  const CMatrix xi_ac = a.adjoint() * s_inv * x * q_inv * f.c_par.adjoint();
  out.push_back({"xi_ac", residual({xi_ac}, {w.phi_ax * i_plus_phi_x_inv})});

  // Ξ_C = [C_par Q^{-1} C_par^H]^{-1} = I + Φ_X
  const CMatrix xi_c = inverse_of(f.c_par * q_inv * f.c_par.adjoint(), "Ξ_C^{-1}");
  out.push_back({"xi_c", residual({xi_c}, {i_m, w.phi_x})});

  return out;
}

}  // namespace gdd
