#include "gdd/scenario.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gdd {

namespace {

constexpr int kMaxSubspaceRetries = 100;

bool full_rank(const CMatrix& m) {
  const RVector s = singular_values(m);
  return s.size() > 0 && s(s.size() - 1) > Tolerances::rank * s(0);
}

CVector unit_direction(Rng& rng, int n) {
  CVector v = rng.complex_normal(n, 1);
  return v / v.norm();
}

}  // namespace

std::string Dimensions::to_string() const {
  std::ostringstream os;
  os << "N=" << N << ", K=" << K << ", M=" << M << ", J=" << J << ", L=" << L;
  return os.str();
}

void validate_dimensions(const Dimensions& d) {
  if (d.N < 1 || d.K < 1 || d.M < 1 || d.J < 1) {
    throw std::invalid_argument("dimensions N, K, M, J must be positive (" + d.to_string() + ")");
  }
  if (d.L < 0) throw std::invalid_argument("L must be non-negative");
  if (d.J > d.N) {
    throw std::invalid_argument("J=" + std::to_string(d.J) + " > N=" + std::to_string(d.N) +
                                ": A cannot have full column rank");
  }
  if (d.M > d.K) {
    throw std::invalid_argument("M=" + std::to_string(d.M) + " > K=" + std::to_string(d.K) +
                                ": C cannot have full row rank");
  }
  if (d.L + d.K < d.M + d.N) {
    throw std::invalid_argument("L+K=" + std::to_string(d.L + d.K) + " < M+N=" +
                                std::to_string(d.M + d.N) +
                                ": the augmented sample covariance would be singular");
  }
}

HermitianPD toeplitz_covariance(int n, double rho) {
  if (n < 1) throw std::invalid_argument("toeplitz_covariance: N must be positive");
  if (!(rho >= 0.0 && rho < 1.0)) {
    throw std::invalid_argument("toeplitz_covariance: rho must lie in [0, 1), got " +
                                std::to_string(rho));
  }
  CMatrix r(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) r(i, j) = std::pow(rho, std::abs(i - j));
  }
  return HermitianPD(r, "noise covariance R");
}

std::pair<CMatrix, CMatrix> random_subspaces(int n, int j, int m, int k, std::uint64_t seed) {
  if (j > n || m > k || j < 1 || m < 1) {
    throw std::invalid_argument("random_subspaces: need 1 <= J <= N and 1 <= M <= K");
  }
  Rng rng = make_stream(seed, StreamTag::Subspaces, 0);
  for (int attempt = 0; attempt < kMaxSubspaceRetries; ++attempt) {
    CMatrix a = rng.complex_normal(n, j);
    CMatrix c = rng.complex_normal(m, k);
    if (full_rank(a) && full_rank(c)) return {std::move(a), std::move(c)};
  }
  throw std::runtime_error("random_subspaces: rank condition not met after " +
                           std::to_string(kMaxSubspaceRetries) + " draws");
}

CMatrix sample_noise(const HermitianPD& r, int cols, Rng& rng) {
  if (cols < 0) throw std::invalid_argument("sample_noise: negative column count");
  return r.lower_factor() * rng.complex_normal(r.dim(), cols);
}

CMatrix make_signal(const CMatrix& a, const CVector& theta, const CVector& alpha,
                    const CMatrix& c) {
  if (a.cols() != theta.size() || c.rows() != alpha.size()) {
    throw std::invalid_argument("make_signal: dimension mismatch");
  }
  const CVector s = a * theta;                  // spatial steering vector
  const CVector b = c.adjoint() * alpha;        // waveform
  return s * b.adjoint();
}

Scenario::Scenario(const Dimensions& dims, CMatrix a, CMatrix c, HermitianPD r,
                   SignalCoordinates direction)
    : dims_(dims),
      a_(std::move(a)),
      c_(std::move(c)),
      r_(std::move(r)),
      direction_(std::move(direction)) {
  validate_dimensions(dims_);
  if (a_.rows() != dims_.N || a_.cols() != dims_.J) {
    throw std::invalid_argument("A must be N x J");
  }
  if (c_.rows() != dims_.M || c_.cols() != dims_.K) {
    throw std::invalid_argument("C must be M x K");
  }
  if (r_.dim() != dims_.N) throw std::invalid_argument("R must be N x N");
  if (!full_rank(a_)) throw std::invalid_argument("A does not have full column rank");
  if (!full_rank(c_)) throw std::invalid_argument("C does not have full row rank");
  if (direction_.theta.size() != dims_.J || direction_.alpha.size() != dims_.M) {
    throw std::invalid_argument("signal direction must have lengths J and M");
  }
  noise_factor_ = r_.lower_factor();
}

Scenario Scenario::random(const Dimensions& dims, double rho, std::uint64_t seed) {
  validate_dimensions(dims);
  auto [a, c] = random_subspaces(dims.N, dims.J, dims.M, dims.K, seed);
  Rng rng = make_stream(seed, StreamTag::Direction, 0);
  SignalCoordinates dir;
  dir.theta = unit_direction(rng, dims.J);
  dir.alpha = unit_direction(rng, dims.M);
  return Scenario(dims, std::move(a), std::move(c), toeplitz_covariance(dims.N, rho),
                  std::move(dir));
}

Scenario Scenario::with_covariance(HermitianPD r) const {
  return Scenario(dims_, a_, c_, std::move(r), direction_);
}

CMatrix Scenario::noise(int cols, Rng& rng) const {
  return noise_factor_ * rng.complex_normal(dims_.N, cols);
}

double snr_of(const Scenario& scenario, const CVector& theta, const CVector& alpha) {
  const CMatrix& a = scenario.A();
  const CMatrix& c = scenario.C();
  if (theta.size() != a.cols() || alpha.size() != c.rows()) {
    throw std::invalid_argument("snr_of: dimension mismatch");
  }
  const CVector b = c.adjoint() * alpha;
  const CVector s = a * theta;
  const double waveform = b.squaredNorm();
  const CVector r_inv_s = scenario.R().solve(s);
  const double spatial = s.dot(r_inv_s).real();
  return waveform * spatial;
}

double db_to_linear(double db) {
  return std::pow(10.0, db / 10.0);
}

SignalCoordinates scale_to_snr(const Scenario& scenario, const CVector& theta_dir,
                               const CVector& alpha_dir, double target_snr_db) {
  const double base = snr_of(scenario, theta_dir, alpha_dir);
  if (!(base > 0.0)) {
    throw std::invalid_argument("scale_to_snr: signal direction has zero SNR");
  }
  const double gain = std::sqrt(db_to_linear(target_snr_db) / base);
  return {theta_dir * gain, alpha_dir};
}

}  // namespace gdd
