#pragma once

#include "phasespace/linalg.hpp"
#include "phasespace/spectrum.hpp"

namespace phasespace {

/// Absolute slack used for every bound comparison.
inline constexpr double kBoundTol = 1e-9;

/// ΔA(ρ) = sqrt(max(0, Tr(ρA²) − Tr(ρA)²)).
double variance(const HermitianMatrix& a, const DensityMatrix& rho);

/// (ħ/2) sqrt|h(X_A, X_B)|, the geometric uncertainty bound as stated.
double geometric_bound(const HermitianMatrix& a, const HermitianMatrix& b,
                       const DensityMatrix& rho, double hbar);

/// (ħ/2) |h(X_A, X_B)|: what the variance estimate followed by the
/// Cauchy–Schwarz step actually guarantees for ΔA·ΔB.
double schwarz_bound(const HermitianMatrix& a, const HermitianMatrix& b,
                     const DensityMatrix& rho, double hbar);

/// (ħ/2) h(X_A, X_A) = Σ_{i>j} (νᵢ − νⱼ) ‖Aᵢⱼ‖²; never exceeds ΔA².
double variance_lower_bound(const HermitianMatrix& a, const DensityMatrix& rho, double hbar);

/// sqrt(|½⟨{A,B}⟩ − ⟨A⟩⟨B⟩|² + |⟨[A,B]⟩/2i|²).
double robertson_schrodinger_bound(const HermitianMatrix& a, const HermitianMatrix& b,
                                   const DensityMatrix& rho);

struct UncertaintyReport {
  double delta_A = 0.0;
  double delta_B = 0.0;
  double product = 0.0;
  double geometric_bound = 0.0;
  double schwarz_bound = 0.0;
  double rs_bound = 0.0;
  Complex h_value;
  double h_AA = 0.0;
  double h_BB = 0.0;
  double variance_bound_A = 0.0;
  double variance_bound_B = 0.0;
  bool satisfied_geometric = true;
  bool satisfied_schwarz = true;
  bool satisfied_rs = true;
  bool satisfied_variance_estimate = true;  // both ΔA² and ΔB² estimates
  bool satisfied_cauchy_schwarz = true;     // h_AA h_BB ≥ |h_AB|²
  double tightness_ratio_geometric = 0.0;   // product / bound, +inf when bound = 0
  double tightness_ratio_rs = 0.0;
};

UncertaintyReport evaluate_uncertainty(const HermitianMatrix& a, const HermitianMatrix& b,
                                       const DensityMatrix& rho, double hbar);

}  // namespace phasespace
