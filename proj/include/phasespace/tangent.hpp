#pragma once

#include <map>
#include <utility>
#include <vector>

#include "phasespace/linalg.hpp"
#include "phasespace/spectrum.hpp"

namespace phasespace {

/// An observable written in the cluster-ordered eigenbasis of ρ.
///
/// Only the lower off-diagonal blocks (i > j) are stored; block (j, i) is
/// the conjugate transpose of block (i, j) because the observable is
/// Hermitian.
struct BlockDecomposition {
  ComplexMatrix basis;
  std::vector<int> cluster_sizes;
  std::map<std::pair<std::size_t, std::size_t>, ComplexMatrix> blocks;
  std::vector<ComplexMatrix> diag_blocks;

  const ComplexMatrix& block(std::size_t i, std::size_t j) const { return blocks.at({i, j}); }

  /// Ambient matrix rebuilt from the blocks.
  ComplexMatrix reassemble() const;
};

BlockDecomposition block_decompose(const HermitianMatrix& a, const DensityMatrix& rho);

/// Element of the tangent space of the orbit through ρ, held in the ambient
/// representation together with its eigenbasis form.
class TangentVector {
 public:
  TangentVector(DensityMatrix at, HermitianMatrix rep);

  const DensityMatrix& at() const noexcept { return at_; }
  const HermitianMatrix& rep() const noexcept { return rep_; }
  /// V† · rep · V with V the eigenvectors of the base point.
  const ComplexMatrix& eig_rep() const noexcept { return eig_rep_; }

  /// Largest entry modulus of the diagonal (within-cluster) blocks.
  double diagonal_block_residual() const;
  double max_abs() const { return phasespace::max_abs(rep_.matrix()); }

  TangentVector operator+(const TangentVector& other) const;
  TangentVector operator-(const TangentVector& other) const;
  TangentVector operator*(double c) const;

 private:
  DensityMatrix at_;
  HermitianMatrix rep_;
  ComplexMatrix eig_rep_;
};

TangentVector zero_tangent(const DensityMatrix& rho);

/// X_A(ρ) = (1/iħ)[A, ρ].
TangentVector hamiltonian_vector_field(const HermitianMatrix& a, const DensityMatrix& rho,
                                       double hbar);

/// [X, ρ] for skew-Hermitian X with vanishing diagonal blocks in the
/// eigenbasis of ρ. Raises NotInM otherwise.
TangentVector tangent_from_X(const ComplexMatrix& x, const DensityMatrix& rho);

/// The unique off-diagonal skew-Hermitian X with [X, ρ] = T, in the ambient
/// basis. Returns zero on a single-cluster base point, whose tangent space is
/// trivial. Raises DegenerateGap if two clusters sit closer than the
/// base point's cluster_tol.
ComplexMatrix tangent_to_X(const TangentVector& t);

/// Off-diagonal Hermitian generator Â (ambient basis) with X_Â(ρ) = T.
ComplexMatrix generator(const TangentVector& t, double hbar);

/// (1/iħ) Tr([Â, B̂] ρ) before discarding the (round-off) imaginary part.
Complex symplectic_trace(const TangentVector& ta, const TangentVector& tb, double hbar);

/// ω(T_A, T_B) = (1/iħ) Tr([Â, B̂] ρ).
double symplectic_form(const TangentVector& ta, const TangentVector& tb, double hbar);

/// Almost complex structure: lower eigenblocks × (−i), upper × (+i).
TangentVector apply_J(const TangentVector& t);

/// h(T_A, T_B) = (2/ħ) Σ_{i>j} (νᵢ − νⱼ) Tr(Bᵢⱼ† Aᵢⱼ), antilinear in T_B.
Complex hermitian_metric(const TangentVector& ta, const TangentVector& tb, double hbar);

/// ω(T_A, J T_B) + i ω(T_A, T_B), built only from symplectic_form and
/// apply_J. Must agree with hermitian_metric.
Complex hermitian_metric_via_symplectic(const TangentVector& ta, const TangentVector& tb,
                                        double hbar);

/// g = Re h.
double riemannian_metric(const TangentVector& ta, const TangentVector& tb, double hbar);

/// Complex scalar action a + ib on the tangent space: a·T − b·J(T). This is
/// the action under which hermitian_metric is linear in the first slot.
TangentVector complex_scale(const TangentVector& t, Complex alpha);

}  // namespace phasespace
