#include "phasespace/linalg.hpp"

#include <cmath>
#include <sstream>

#include "phasespace/errors.hpp"

namespace phasespace {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotUnitTrace: return "NotUnitTrace";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::InvalidSpectrum: return "InvalidSpectrum";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotInM: return "NotInM";
    case ErrorKind::DegenerateGap: return "DegenerateGap";
    case ErrorKind::BasePointMismatch: return "BasePointMismatch";
    case ErrorKind::TooFewSteps: return "TooFewSteps";
    case ErrorKind::InvalidPlan: return "InvalidPlan";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_residual(const ComplexMatrix& m) {
  return max_abs(m - m.adjoint());
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    std::ostringstream msg;
    msg << "expected a non-empty square matrix, got " << m.rows() << "x" << m.cols();
    throw Error(ErrorKind::DimensionMismatch, msg.str());
  }
  if (!m.allFinite()) {
    throw Error(ErrorKind::InvalidArgument, "matrix has non-finite entries");
  }
  const double residual = hermiticity_residual(m);
  const double scale = std::max(max_abs(m), 1e-300);
  if (residual > tol * scale) {
    std::ostringstream msg;
    msg << "matrix is not Hermitian: max|M - M^dagger| = " << residual;
    throw Error(ErrorKind::NotHermitian, msg.str(), residual);
  }
  m_ = (m + m.adjoint()) * 0.5;
}

HermitianMatrix HermitianMatrix::zero(Eigen::Index n) {
  return HermitianMatrix(ComplexMatrix::Zero(n, n));
}

HermitianMatrix HermitianMatrix::identity(Eigen::Index n) {
  return HermitianMatrix(ComplexMatrix::Identity(n, n));
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& other) const {
  if (dim() != other.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "cannot add Hermitian matrices of different size");
  }
  HermitianMatrix out;
  out.m_ = m_ + other.m_;
  return out;
}

HermitianMatrix HermitianMatrix::operator*(double c) const {
  HermitianMatrix out;
  out.m_ = m_ * c;
  return out;
}

ComplexMatrix expm_unitary(const EigenSystem& eig_h, double t, double hbar) {
  if (!(hbar > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "hbar must be positive");
  }
  const auto n = eig_h.eigenvalues.size();
  Eigen::VectorXcd phases(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    phases(k) = std::polar(1.0, -eig_h.eigenvalues(k) * t / hbar);
  }
  const ComplexMatrix& v = eig_h.eigenvectors;
  return v * phases.asDiagonal() * v.adjoint();
}

ComplexMatrix expm_unitary(const HermitianMatrix& h, double t, double hbar) {
  return expm_unitary(eig_hermitian(h), t, hbar);
}

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

ComplexMatrix random_unitary(Eigen::Index n, Rng& rng) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "random_unitary needs n >= 1");
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix z(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(r, c) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (Eigen::Index k = 0; k < n; ++k) {
    const double mod = std::abs(r(k, k));
    // R_kk = 0 has probability zero for a Gaussian draw.
    const Complex phase = mod > 0.0 ? r(k, k) / mod : Complex(1.0, 0.0);
    q.col(k) *= phase;
  }
  return q;
}

ComplexMatrix random_unitary(Eigen::Index n, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return random_unitary(n, rng);
}

HermitianMatrix random_gue(Eigen::Index n, double scale, Rng& rng) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "random_gue needs n >= 1");
  std::normal_distribution<double> normal(0.0, 1.0);
  const double off = scale * std::sqrt(0.5);
  ComplexMatrix a(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    a(r, r) = Complex(scale * normal(rng), 0.0);
    for (Eigen::Index c = r + 1; c < n; ++c) {
      const double re = normal(rng);
      const double im = normal(rng);
      a(r, c) = Complex(off * re, off * im);
      a(c, r) = std::conj(a(r, c));
    }
  }
  return HermitianMatrix(a);
}

HermitianMatrix random_gue(Eigen::Index n, double scale, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return random_gue(n, scale, rng);
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

double expectation(const ComplexMatrix& rho, const ComplexMatrix& a) {
  // Tr(ρA) = Σ_rc ρ_rc A_cr
  return (rho.array() * a.transpose().array()).sum().real();
}

}  // namespace phasespace
