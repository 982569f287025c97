#include "phasespace/uncertainty.hpp"

#include <cmath>
#include <limits>

#include "phasespace/errors.hpp"
#include "phasespace/tangent.hpp"

namespace phasespace {
namespace {

void require_dim(const HermitianMatrix& a, const DensityMatrix& rho) {
  if (a.dim() != rho.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "observable and state dimensions differ");
  }
}

double ratio(double product, double bound) {
  return bound > 0.0 ? product / bound : std::numeric_limits<double>::infinity();
}

}  // namespace

double variance(const HermitianMatrix& a, const DensityMatrix& rho) {
  require_dim(a, rho);
  const ComplexMatrix& am = a.matrix();
  const double mean = expectation(rho.matrix(), am);
  const double second = expectation(rho.matrix(), am * am);
  return std::sqrt(std::max(0.0, second - mean * mean));
}

double geometric_bound(const HermitianMatrix& a, const HermitianMatrix& b,
                       const DensityMatrix& rho, double hbar) {
  require_dim(a, rho);
  require_dim(b, rho);
  const Complex h = hermitian_metric(hamiltonian_vector_field(a, rho, hbar),
                                     hamiltonian_vector_field(b, rho, hbar), hbar);
  return 0.5 * hbar * std::sqrt(std::abs(h));
}

double schwarz_bound(const HermitianMatrix& a, const HermitianMatrix& b,
                     const DensityMatrix& rho, double hbar) {
  require_dim(a, rho);
  require_dim(b, rho);
  const Complex h = hermitian_metric(hamiltonian_vector_field(a, rho, hbar),
                                     hamiltonian_vector_field(b, rho, hbar), hbar);
  return 0.5 * hbar * std::abs(h);
}

double variance_lower_bound(const HermitianMatrix& a, const DensityMatrix& rho, double hbar) {
  require_dim(a, rho);
  const TangentVector xa = hamiltonian_vector_field(a, rho, hbar);
  return 0.5 * hbar * hermitian_metric(xa, xa, hbar).real();
}

double robertson_schrodinger_bound(const HermitianMatrix& a, const HermitianMatrix& b,
                                   const DensityMatrix& rho) {
  require_dim(a, rho);
  require_dim(b, rho);
  const ComplexMatrix& am = a.matrix();
  const ComplexMatrix& bm = b.matrix();
  const ComplexMatrix& r = rho.matrix();
  const ComplexMatrix ab = am * bm;
  const ComplexMatrix ba = bm * am;
  const Complex anti = (r * (ab + ba)).trace();
  const Complex comm = (r * (ab - ba)).trace();
  const double covariance = 0.5 * anti.real() - expectation(r, am) * expectation(r, bm);
  const double commutator_term = std::abs(comm / Complex(0.0, 2.0));
  return std::sqrt(covariance * covariance + commutator_term * commutator_term);
}

UncertaintyReport evaluate_uncertainty(const HermitianMatrix& a, const HermitianMatrix& b,
                                       const DensityMatrix& rho, double hbar) {
  require_dim(a, rho);
  require_dim(b, rho);
  UncertaintyReport r;
  r.delta_A = variance(a, rho);
  r.delta_B = variance(b, rho);
  r.product = r.delta_A * r.delta_B;

  const TangentVector xa = hamiltonian_vector_field(a, rho, hbar);
  const TangentVector xb = hamiltonian_vector_field(b, rho, hbar);
  r.h_value = hermitian_metric(xa, xb, hbar);
  r.h_AA = hermitian_metric(xa, xa, hbar).real();
  r.h_BB = hermitian_metric(xb, xb, hbar).real();

  r.geometric_bound = 0.5 * hbar * std::sqrt(std::abs(r.h_value));
  r.schwarz_bound = 0.5 * hbar * std::abs(r.h_value);
  r.rs_bound = robertson_schrodinger_bound(a, b, rho);
  r.variance_bound_A = 0.5 * hbar * r.h_AA;
  r.variance_bound_B = 0.5 * hbar * r.h_BB;

  r.satisfied_geometric = r.product >= r.geometric_bound - kBoundTol;
  r.satisfied_schwarz = r.product >= r.schwarz_bound - kBoundTol;
  r.satisfied_rs = r.product >= r.rs_bound - kBoundTol;
  r.satisfied_variance_estimate = r.delta_A * r.delta_A + kBoundTol >= r.variance_bound_A &&
                                  r.delta_B * r.delta_B + kBoundTol >= r.variance_bound_B;
  r.satisfied_cauchy_schwarz = r.h_AA * r.h_BB + kBoundTol >= std::norm(r.h_value);
  r.tightness_ratio_geometric = ratio(r.product, r.geometric_bound);
  r.tightness_ratio_rs = ratio(r.product, r.rs_bound);
  return r;
}

}  // namespace phasespace
