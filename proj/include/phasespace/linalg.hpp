#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace phasespace {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kDefaultHermTol = 1e-12;

/// Largest entry modulus, ‖M‖_max.
double max_abs(const ComplexMatrix& m);

/// ‖M − M†‖_max.
double hermiticity_residual(const ComplexMatrix& m);

/// Square complex matrix equal to its conjugate transpose.
///
/// Construction checks ‖M − M†‖_max ≤ tol · max(‖M‖_max, 1e-300) and stores
/// the exactly Hermitian part (M + M†)/2, so downstream code may rely on
/// exact symmetry.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const ComplexMatrix& m, double tol = kDefaultHermTol);

  static HermitianMatrix zero(Eigen::Index n);
  static HermitianMatrix identity(Eigen::Index n);

  Eigen::Index dim() const noexcept { return m_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  Complex operator()(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }

  HermitianMatrix operator+(const HermitianMatrix& other) const;
  HermitianMatrix operator*(double c) const;

 private:
  ComplexMatrix m_;
};

struct EigenSystem {
  RealVector eigenvalues;     // ascending
  ComplexMatrix eigenvectors; // columns, unitary
};

struct JacobiOptions {
  int max_sweeps = 100;
  double rel_tol = 1e-14;  // off-diagonal Frobenius norm vs ‖M‖_F
};

/// Cyclic complex Jacobi diagonalisation. Throws NoConvergence when the
/// sweep budget runs out.
EigenSystem eig_hermitian(const HermitianMatrix& m, const JacobiOptions& opts = {});

/// exp(−iHt/ħ) through the spectral decomposition of H.
ComplexMatrix expm_unitary(const HermitianMatrix& h, double t, double hbar);
ComplexMatrix expm_unitary(const EigenSystem& eig_h, double t, double hbar);

using Rng = std::mt19937_64;

/// Deterministic generator for (seed, stream); distinct streams give
/// independent sequences so samples can be drawn in any order.
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

/// Haar-random unitary: QR of a standard complex Ginibre matrix with the
/// diagonal of R rotated onto the positive reals.
ComplexMatrix random_unitary(Eigen::Index n, Rng& rng);
ComplexMatrix random_unitary(Eigen::Index n, std::uint64_t seed);

/// GUE-style observable: complex Gaussian off-diagonal entries with
/// E|A_ij|² = scale², real Gaussian diagonal with variance scale².
HermitianMatrix random_gue(Eigen::Index n, double scale, Rng& rng);
HermitianMatrix random_gue(Eigen::Index n, double scale, std::uint64_t seed);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Re Tr(ρA) for Hermitian ρ, A without forming the product.
double expectation(const ComplexMatrix& rho, const ComplexMatrix& a);

}  // namespace phasespace
