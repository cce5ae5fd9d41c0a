#pragma once

#include "gdd/linalg.hpp"
#include "gdd/rng.hpp"

#include <cstdint>
#include <string>
#include <utility>

namespace gdd {

/// Problem sizes of the rank-one model X = A θ α^H C + N with L training snapshots.
struct Dimensions {
  int N = 0;  ///< channels (rows of X)
  int K = 0;  ///< test-data columns
  int M = 0;  ///< waveform-subspace dimension (rows of C)
  int J = 0;  ///< spatial-subspace dimension (columns of A)
  int L = 0;  ///< training snapshots; may be 0

  bool operator==(const Dimensions&) const = default;

  /// Snapshot count behind the augmented SCM: L training plus K - M virtual.
  int augmented_dof() const { return L + K - M; }

  std::string to_string() const;
};

/// Throws std::invalid_argument naming the first violated constraint, including
/// L + K >= M + N.
void validate_dimensions(const Dimensions& dims);

/// θ (length J) and α (length M).
struct SignalCoordinates {
  CVector theta;
  CVector alpha;
};

/// Stream tags used to derive independent generators from one seed.
enum class StreamTag : std::uint64_t {
  Subspaces = 1,
  Direction = 2,
  Calibration = 11,
  Detection = 12,
  FreshNull = 13,
  Verify = 21,
};

inline Rng make_stream(std::uint64_t seed, StreamTag tag, std::uint64_t index) {
  return Rng::stream(seed, static_cast<std::uint64_t>(tag), index);
}

/// R(i,j) = rho^|i-j|.
HermitianPD toeplitz_covariance(int n, double rho);

/// Standard complex Gaussian A (N x J) and C (M x K), redrawn until both have
/// full rank. Deterministic in the seed.
std::pair<CMatrix, CMatrix> random_subspaces(int n, int j, int m, int k, std::uint64_t seed);

/// n x cols matrix whose columns are IID CN(0, R).
CMatrix sample_noise(const HermitianPD& r, int cols, Rng& rng);

/// A θ α^H C.
CMatrix make_signal(const CMatrix& a, const CVector& theta, const CVector& alpha,
                    const CMatrix& c);

/// Immutable detection scenario: sizes, subspaces, noise covariance and the
/// fixed signal direction used when sweeping SNR.
class Scenario {
 public:
  Scenario(const Dimensions& dims, CMatrix a, CMatrix c, HermitianPD r,
           SignalCoordinates direction);

  /// Random A and C, Toeplitz covariance and unit-norm directions, all from `seed`.
  static Scenario random(const Dimensions& dims, double rho, std::uint64_t seed);

  /// Same subspaces and direction, different noise covariance.
  Scenario with_covariance(HermitianPD r) const;

  const Dimensions& dims() const { return dims_; }
  const CMatrix& A() const { return a_; }
  const CMatrix& C() const { return c_; }
  const HermitianPD& R() const { return r_; }
  const SignalCoordinates& direction() const { return direction_; }

  /// N x cols noise draw using the cached factor of R.
  CMatrix noise(int cols, Rng& rng) const;

 private:
  Dimensions dims_;
  CMatrix a_;
  CMatrix c_;
  HermitianPD r_;
  CMatrix noise_factor_;
  SignalCoordinates direction_;
};

/// (α^H C C^H α) (θ^H A^H R^{-1} A θ), linear scale.
double snr_of(const Scenario& scenario, const CVector& theta, const CVector& alpha);

inline double snr_of(const Scenario& scenario, const SignalCoordinates& s) {
  return snr_of(scenario, s.theta, s.alpha);
}

/// Scales θ by a real gain so that snr_of hits the target; α is unchanged.
SignalCoordinates scale_to_snr(const Scenario& scenario, const CVector& theta_dir,
                               const CVector& alpha_dir, double target_snr_db);

double db_to_linear(double db);

}  // namespace gdd
