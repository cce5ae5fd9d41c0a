#include "gdd/detectors.hpp"

#include <stdexcept>

namespace gdd {

std::string_view to_string(DetectorKind kind) {
  switch (kind) {
    case DetectorKind::GlrgddRu: return "GLRGDD_RU";
    case DetectorKind::AmgddRu: return "AMGDD_RU";
    case DetectorKind::Glrgdd: return "GLRGDD";
    case DetectorKind::Amgdd: return "AMGDD";
    case DetectorKind::BoseGlrt: return "BOSE_GLRT";
  }
  return "?";
}

std::optional<DetectorKind> parse_detector(std::string_view name) {
  for (DetectorKind k : kAllDetectors) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

std::optional<std::string> validity_error(DetectorKind kind, const Dimensions& d) {
  const std::string name(to_string(kind));
  switch (kind) {
    case DetectorKind::GlrgddRu:
    case DetectorKind::AmgddRu:
      if (d.L + d.K < d.M + d.N) {
        return name + " requires L+K ≥ M+N (L+K=" + std::to_string(d.L + d.K) +
               " < M+N=" + std::to_string(d.M + d.N) + ")";
      }
      break;
    case DetectorKind::Glrgdd:
    case DetectorKind::Amgdd:
      if (d.L < d.N) {
        return name + " requires L ≥ N (L=" + std::to_string(d.L) +
               ", N=" + std::to_string(d.N) + ")";
      }
      break;
    case DetectorKind::BoseGlrt:
      if (d.K < d.M + d.N) {
        return name + " requires K ≥ M+N (K=" + std::to_string(d.K) +
               ", M+N=" + std::to_string(d.M + d.N) + ")";
      }
      break;
  }
  return std::nullopt;
}

WhitenedForms whitened_forms(const HermitianPD& s, const CMatrix& a, const CMatrix& x_par) {
  if (a.rows() != s.dim() || x_par.rows() != s.dim()) {
    throw std::invalid_argument("whitened_forms: A and X_par must have N rows");
  }
  const CMatrix s_inv_a = s.solve(a);
  const CMatrix s_inv_x = s.solve(x_par);
  WhitenedForms w;
  w.phi_a = hermitize(a.adjoint() * s_inv_a);
  w.phi_ax = a.adjoint() * s_inv_x;
  w.phi_x = hermitize(x_par.adjoint() * s_inv_x);
  return w;
}

CMatrix matched_energy(const WhitenedForms& w) {
  const HermitianPD phi_a(w.phi_a, "Φ_A = A^H S^{-1} A");
  return hermitize(w.phi_ax.adjoint() * phi_a.solve(w.phi_ax));
}

namespace {

void check_dims(const CMatrix& x, const CMatrix& x_l, const CMatrix& a,
                const SubspaceFactorization& f) {
  if (x.rows() != a.rows() || x_l.rows() != a.rows()) {
    throw std::invalid_argument("X, X_L and A must have the same number of rows");
  }
  if (x.cols() != f.c_par.cols()) {
    throw std::invalid_argument("X must have K columns");
  }
}

// λ_max{G (I + Φ_X)^{-1}}; lies in [0, 1).
double glr_form(const WhitenedForms& w) {
  const Eigen::Index m = w.phi_x.rows();
  const HermitianPD i_plus(CMatrix::Identity(m, m) + w.phi_x, "I_M + Φ_X");
  return max_eig_psd_inverse_product(matched_energy(w), i_plus);
}

double amf_form(const WhitenedForms& w) {
  return max_eig_psd(matched_energy(w));
}

}  // namespace

Statistic glrgdd_ru(const TransformedData& td, const CMatrix& a) {
  return {glr_form(whitened_forms(td.s_plus, a, td.x_par)), DetectorKind::GlrgddRu};
}

Statistic amgdd_ru(const TransformedData& td, const CMatrix& a) {
  return {amf_form(whitened_forms(td.s_plus, a, td.x_par)), DetectorKind::AmgddRu};
}

Statistic glrgdd(const CMatrix& x, const CMatrix& x_l, const CMatrix& a,
                 const SubspaceFactorization& f) {
  check_dims(x, x_l, a, f);
  const HermitianPD s = training_scm(x_l);
  const Eigen::Index k = x.cols();

  // Factored form λ_max{Ξ_A Ξ_AC Ξ_C Ξ_AC^H}, with
  //   Ξ_A  = [A^H (S + X X^H)^{-1} A]^{-1}
  //   Ξ_AC = A^H S^{-1} X Q^{-1} C_par^H,      Q = I_K + X^H S^{-1} X
  //   Ξ_C  = [C_par Q^{-1} C_par^H]^{-1}
  const CMatrix s_inv_x = s.solve(x);
  const HermitianPD q(hermitize(CMatrix::Identity(k, k) + x.adjoint() * s_inv_x), "I_K + X^H S^{-1} X");
  const CMatrix q_inv_cpar = q.solve(f.c_par.adjoint());
  const CMatrix xi_ac = (a.adjoint() * s_inv_x) * q_inv_cpar;

  const HermitianPD s_aug(hermitize(s.matrix() + x * x.adjoint()), "S + X X^H");
  const HermitianPD xi_a_inv(hermitize(a.adjoint() * s_aug.solve(a)), "A^H (S + X X^H)^{-1} A");
  const HermitianPD xi_c_inv(hermitize(f.c_par * q_inv_cpar), "C_par Q^{-1} C_par^H");

  // λ(Ξ_A Ξ_AC Ξ_C Ξ_AC^H) = λ((Ξ_AC^H Ξ_A Ξ_AC) Ξ_C)
  const CMatrix g = hermitize(xi_ac.adjoint() * xi_a_inv.solve(xi_ac));
  return {max_eig_psd_inverse_product(g, xi_c_inv), DetectorKind::Glrgdd};
}

Statistic glrgdd(const CMatrix& x, const CMatrix& x_l, const CMatrix& a, const CMatrix& c) {
  return glrgdd(x, x_l, a, factor_waveform_subspace(c));
}

Statistic amgdd(const CMatrix& x, const CMatrix& x_l, const CMatrix& a,
                const SubspaceFactorization& f) {
  check_dims(x, x_l, a, f);
  const HermitianPD s = training_scm(x_l);
  const CMatrix x_par = x * f.c_par.adjoint();
  return {amf_form(whitened_forms(s, a, x_par)), DetectorKind::Amgdd};
}

Statistic amgdd(const CMatrix& x, const CMatrix& x_l, const CMatrix& a, const CMatrix& c) {
  return amgdd(x, x_l, a, factor_waveform_subspace(c));
}

Statistic bose_glrt(const CMatrix& x, const CMatrix& a, const SubspaceFactorization& f) {
  const Eigen::Index n = x.rows();
  const Eigen::Index k = x.cols();
  const Eigen::Index m = f.c_par.rows();
  if (k < m + n) {
    throw std::invalid_argument("Bose constraint violated: K=" + std::to_string(k) +
                                " < M+N=" + std::to_string(m + n));
  }
  const TransformedData td = transform_data(x, CMatrix(n, 0), f);
  return {glrgdd_ru(td, a).value, DetectorKind::BoseGlrt};
}

Statistic bose_glrt(const CMatrix& x, const CMatrix& a, const CMatrix& c) {
  return bose_glrt(x, a, factor_waveform_subspace(c));
}

StatisticEvaluator::StatisticEvaluator(CMatrix a, const CMatrix& c)
    : a_(std::move(a)), factorization_(factor_waveform_subspace(c)) {}

double StatisticEvaluator::evaluate(DetectorKind kind, const CMatrix& x,
                                    const CMatrix& x_l) const {
  const DetectorKind kinds[] = {kind};
  return evaluate(kinds, x, x_l).front();
}

std::vector<double> StatisticEvaluator::evaluate(std::span<const DetectorKind> kinds,
                                                 const CMatrix& x, const CMatrix& x_l) const {
  std::optional<TransformedData> td;
  auto transformed = [&]() -> const TransformedData& {
    if (!td) td.emplace(transform_data(x, x_l, factorization_));
    return *td;
  };
  std::vector<double> out;
  out.reserve(kinds.size());
  for (DetectorKind kind : kinds) {
    switch (kind) {
      case DetectorKind::GlrgddRu: out.push_back(glrgdd_ru(transformed(), a_).value); break;
      case DetectorKind::AmgddRu: out.push_back(amgdd_ru(transformed(), a_).value); break;
      case DetectorKind::Glrgdd: out.push_back(glrgdd(x, x_l, a_, factorization_).value); break;
      case DetectorKind::Amgdd: out.push_back(amgdd(x, x_l, a_, factorization_).value); break;
      case DetectorKind::BoseGlrt: out.push_back(bose_glrt(x, a_, factorization_).value); break;
    }
  }
  return out;
}

}  // namespace gdd
