#pragma once

// The five detection statistics for the rank-one generalized direction
// detection problem, plus an evaluator that computes several of them on the
// same data with shared intermediate results.

#include "gdd/linalg.hpp"
#include "gdd/scenario.hpp"
#include "gdd/transform.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gdd {

enum class DetectorKind {
  GlrgddRu,  ///< GLRT after right-unitary transformation
  AmgddRu,   ///< two-step GLRT after right-unitary transformation
  Glrgdd,    ///< GLRT with the conventional SCM (needs L >= N)
  Amgdd,     ///< two-step GLRT with the conventional SCM (needs L >= N)
  BoseGlrt,  ///< GLRT without training data (needs K >= M + N)
};

inline constexpr std::array<DetectorKind, 5> kAllDetectors = {
    DetectorKind::GlrgddRu, DetectorKind::AmgddRu, DetectorKind::Glrgdd, DetectorKind::Amgdd,
    DetectorKind::BoseGlrt};

/// "GLRGDD_RU", "AMGDD_RU", "GLRGDD", "AMGDD", "BOSE_GLRT".
std::string_view to_string(DetectorKind kind);
std::optional<DetectorKind> parse_detector(std::string_view name);

/// Reason the detector cannot run with these dimensions, or nullopt if it can.
std::optional<std::string> validity_error(DetectorKind kind, const Dimensions& dims);

struct Statistic {
  double value = 0.0;
  DetectorKind kind = DetectorKind::GlrgddRu;
};

/// Whitened quadratic forms of A and X_par against a covariance estimate S:
/// Φ_A = A^H S^{-1} A, Φ_AX = A^H S^{-1} X_par, Φ_X = X_par^H S^{-1} X_par.
struct WhitenedForms {
  CMatrix phi_a;
  CMatrix phi_ax;
  CMatrix phi_x;
};

WhitenedForms whitened_forms(const HermitianPD& s, const CMatrix& a, const CMatrix& x_par);

/// Φ_AX^H Φ_A^{-1} Φ_AX, the energy of the whitened X_par inside the whitened span of A.
CMatrix matched_energy(const WhitenedForms& forms);

Statistic glrgdd_ru(const TransformedData& td, const CMatrix& a);
Statistic amgdd_ru(const TransformedData& td, const CMatrix& a);

Statistic glrgdd(const CMatrix& x, const CMatrix& x_l, const CMatrix& a,
                 const SubspaceFactorization& f);
Statistic glrgdd(const CMatrix& x, const CMatrix& x_l, const CMatrix& a, const CMatrix& c);

Statistic amgdd(const CMatrix& x, const CMatrix& x_l, const CMatrix& a,
                const SubspaceFactorization& f);
Statistic amgdd(const CMatrix& x, const CMatrix& x_l, const CMatrix& a, const CMatrix& c);

Statistic bose_glrt(const CMatrix& x, const CMatrix& a, const SubspaceFactorization& f);
Statistic bose_glrt(const CMatrix& x, const CMatrix& a, const CMatrix& c);

/// Evaluates any subset of detectors on (X, X_L) for fixed A and C. The
/// factorization of C is computed once; the transformed data is shared between
/// the two right-unitary detectors.
class StatisticEvaluator {
 public:
  StatisticEvaluator(CMatrix a, const CMatrix& c);

  double evaluate(DetectorKind kind, const CMatrix& x, const CMatrix& x_l) const;
  std::vector<double> evaluate(std::span<const DetectorKind> kinds, const CMatrix& x,
                               const CMatrix& x_l) const;

  const SubspaceFactorization& factorization() const { return factorization_; }

 private:
  CMatrix a_;
  SubspaceFactorization factorization_;
};

/// Residual of one algebraic identity linking the detectors.
struct IdentityResidual {
  std::string name;
  double residual = 0.0;
};

/// Evaluates both sides of the matrix identities that connect the factored
/// GLRGDD to the right-unitary statistics and reports the relative Frobenius
/// residual of each. Needs L >= N.
std::vector<IdentityResidual> detector_identities(const CMatrix& x, const CMatrix& x_l,
                                                  const CMatrix& a, const CMatrix& c);

}  // namespace gdd
