#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "phasespace/linalg.hpp"

namespace phasespace {

/// Numerical thresholds shared by validation and clustering.
struct Tolerances {
  double herm_tol = 1e-12;    // relative to ‖M‖_max
  double trace_tol = 1e-10;
  double psd_tol = 1e-10;
  double cluster_tol = 1e-8;  // absolute eigenvalue gap
};

struct Cluster {
  double nu;   // eigenvalue
  int m;       // multiplicity

  bool operator==(const Cluster&) const = default;
};

/// Distinct eigenvalues ν₁ < … < ν_l with multiplicities m₁ … m_l.
struct Spectrum {
  std::vector<Cluster> clusters;

  int dim() const;
  std::size_t levels() const { return clusters.size(); }
  double weighted_sum() const;  // Σ mᵢνᵢ

  /// Throws InvalidSpectrum unless the clusters are strictly ascending,
  /// non-negative, have positive multiplicities and Σ mᵢνᵢ = 1.
  void validate(const Tolerances& tol = {}) const;

  /// Eigenvalues expanded with multiplicity, ascending.
  std::vector<double> expanded() const;
};

/// Parses the "nu:m,nu:m,…" literal, e.g. "0.25:1,0.75:1". Throws
/// ParseError on malformed input; does not validate the trace.
Spectrum parse_spectrum(std::string_view literal);
std::string format_spectrum(const Spectrum& s);

Spectrum cluster_spectrum(const EigenSystem& e, double cluster_tol = Tolerances{}.cluster_tol);

/// A validated density matrix with its eigensystem and clustered spectrum.
class DensityMatrix {
 public:
  const HermitianMatrix& hermitian() const noexcept { return matrix_; }
  const ComplexMatrix& matrix() const noexcept { return matrix_.matrix(); }
  const EigenSystem& eigen() const noexcept { return eigen_; }
  const Spectrum& spectrum() const noexcept { return spectrum_; }
  Eigen::Index dim() const noexcept { return matrix_.dim(); }
  /// Gap threshold the spectrum was clustered with.
  double cluster_tol() const noexcept { return cluster_tol_; }

  /// Eigenvector column range [offset(i), offset(i) + m_i) of cluster i.
  Eigen::Index cluster_offset(std::size_t i) const { return offsets_.at(i); }
  /// Cluster index of each eigenvector column.
  const std::vector<std::size_t>& cluster_of_column() const noexcept { return column_cluster_; }

 private:
  friend DensityMatrix validate_density(const ComplexMatrix&, const Tolerances&);

  HermitianMatrix matrix_;
  EigenSystem eigen_;
  Spectrum spectrum_;
  std::vector<Eigen::Index> offsets_;
  std::vector<std::size_t> column_cluster_;
  double cluster_tol_ = Tolerances{}.cluster_tol;
};

/// Checks Hermiticity, unit trace and positivity; raises NotHermitian,
/// NotUnitTrace or NotPositive with the measured residual.
DensityMatrix validate_density(const ComplexMatrix& m, const Tolerances& tol = {});

/// U · diag(σ) · U† for a Haar-random U.
DensityMatrix random_density_with_spectrum(const Spectrum& s, Rng& rng, const Tolerances& tol = {});
DensityMatrix random_density_with_spectrum(const Spectrum& s, std::uint64_t seed,
                                           const Tolerances& tol = {});

enum class OrbitKind { Point, PureState, Grassmannian, CompleteFlag, GeneralFlag };

std::string_view to_string(OrbitKind kind) noexcept;

/// The orbit D(σ) ≅ U(n)/U(m₁)×…×U(m_l) as a flag manifold.
struct OrbitDescriptor {
  OrbitKind kind;
  int real_dimension;
  std::vector<int> stabilizer;  // block sizes m₁ … m_l
  std::vector<int> flag_dims;   // dim Hᵢ = m₁ + … + mᵢ
};

OrbitDescriptor classify_orbit(const Spectrum& s, const Tolerances& tol = {});

}  // namespace phasespace
