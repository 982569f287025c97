#include "phasespace/tangent.hpp"

#include <cmath>
#include <sstream>

#include "phasespace/errors.hpp"

namespace phasespace {
namespace {

constexpr double kBasePointTol = 1e-10;
constexpr double kNotInMTol = 1e-10;

void require_same_base(const TangentVector& ta, const TangentVector& tb) {
  if (ta.at().dim() != tb.at().dim()) {
    throw Error(ErrorKind::BasePointMismatch, "tangent vectors live on different dimensions");
  }
  const double diff = max_abs(ta.at().matrix() - tb.at().matrix());
  if (diff >= kBasePointTol) {
    std::ostringstream msg;
    msg << "tangent vectors are based at different density matrices (max diff " << diff << ")";
    throw Error(ErrorKind::BasePointMismatch, msg.str(), diff);
  }
}

void require_dim(const HermitianMatrix& a, const DensityMatrix& rho) {
  if (a.dim() != rho.dim()) {
    std::ostringstream msg;
    msg << "observable is " << a.dim() << "x" << a.dim() << " but the state is " << rho.dim()
        << "x" << rho.dim();
    throw Error(ErrorKind::DimensionMismatch, msg.str());
  }
}

ComplexMatrix to_eigenbasis(const DensityMatrix& rho, const ComplexMatrix& m) {
  const ComplexMatrix& v = rho.eigen().eigenvectors;
  return v.adjoint() * m * v;
}

ComplexMatrix from_eigenbasis(const DensityMatrix& rho, const ComplexMatrix& m) {
  const ComplexMatrix& v = rho.eigen().eigenvectors;
  return v * m * v.adjoint();
}

// X in the eigenbasis: T_pq / (ν_c(q) − ν_c(p)) across clusters, zero inside.
ComplexMatrix x_eigen(const TangentVector& t) {
  const double cluster_tol = t.at().cluster_tol();
  const DensityMatrix& rho = t.at();
  const auto n = rho.dim();
  const auto& cluster = rho.cluster_of_column();
  const auto& cl = rho.spectrum().clusters;
  ComplexMatrix x = ComplexMatrix::Zero(n, n);
  for (Eigen::Index q = 0; q < n; ++q) {
    for (Eigen::Index p = 0; p < n; ++p) {
      const auto cp = cluster[static_cast<std::size_t>(p)];
      const auto cq = cluster[static_cast<std::size_t>(q)];
      if (cp == cq) continue;
      const double gap = cl[cq].nu - cl[cp].nu;
      if (std::abs(gap) < cluster_tol) {
        throw Error(ErrorKind::DegenerateGap, "eigenvalue clusters are closer than cluster_tol",
                    std::abs(gap));
      }
      x(p, q) = t.eig_rep()(p, q) / gap;
    }
  }
  return x;
}

}  // namespace

ComplexMatrix BlockDecomposition::reassemble() const {
  const auto n = basis.rows();
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  std::vector<Eigen::Index> offsets;
  Eigen::Index offset = 0;
  for (int size : cluster_sizes) {
    offsets.push_back(offset);
    offset += size;
  }
  for (std::size_t i = 0; i < cluster_sizes.size(); ++i) {
    m.block(offsets[i], offsets[i], cluster_sizes[i], cluster_sizes[i]) = diag_blocks[i];
  }
  for (const auto& [key, blk] : blocks) {
    const auto [i, j] = key;
    m.block(offsets[i], offsets[j], blk.rows(), blk.cols()) = blk;
    m.block(offsets[j], offsets[i], blk.cols(), blk.rows()) = blk.adjoint();
  }
  return basis * m * basis.adjoint();
}

BlockDecomposition block_decompose(const HermitianMatrix& a, const DensityMatrix& rho) {
  require_dim(a, rho);
  BlockDecomposition out;
  out.basis = rho.eigen().eigenvectors;
  const ComplexMatrix e = to_eigenbasis(rho, a.matrix());
  const auto& cl = rho.spectrum().clusters;
  for (std::size_t i = 0; i < cl.size(); ++i) {
    out.cluster_sizes.push_back(cl[i].m);
    const auto oi = rho.cluster_offset(i);
    out.diag_blocks.push_back(e.block(oi, oi, cl[i].m, cl[i].m));
    for (std::size_t j = 0; j < i; ++j) {
      const auto oj = rho.cluster_offset(j);
      out.blocks.emplace(std::pair{i, j}, e.block(oi, oj, cl[i].m, cl[j].m));
    }
  }
  return out;
}

TangentVector::TangentVector(DensityMatrix at, HermitianMatrix rep)
    : at_(std::move(at)), rep_(std::move(rep)) {
  if (rep_.dim() != at_.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "tangent representation does not match base point");
  }
  eig_rep_ = to_eigenbasis(at_, rep_.matrix());
}

double TangentVector::diagonal_block_residual() const {
  const auto& cluster = at_.cluster_of_column();
  double worst = 0.0;
  for (Eigen::Index q = 0; q < eig_rep_.cols(); ++q) {
    for (Eigen::Index p = 0; p < eig_rep_.rows(); ++p) {
      if (cluster[static_cast<std::size_t>(p)] == cluster[static_cast<std::size_t>(q)]) {
        worst = std::max(worst, std::abs(eig_rep_(p, q)));
      }
    }
  }
  return worst;
}

TangentVector TangentVector::operator+(const TangentVector& other) const {
  require_same_base(*this, other);
  return TangentVector(at_, rep_ + other.rep_);
}

TangentVector TangentVector::operator-(const TangentVector& other) const {
  return *this + other * -1.0;
}

TangentVector TangentVector::operator*(double c) const {
  return TangentVector(at_, rep_ * c);
}

TangentVector zero_tangent(const DensityMatrix& rho) {
  return TangentVector(rho, HermitianMatrix::zero(rho.dim()));
}

TangentVector hamiltonian_vector_field(const HermitianMatrix& a, const DensityMatrix& rho,
                                       double hbar) {
  require_dim(a, rho);
  if (!(hbar > 0.0)) throw Error(ErrorKind::InvalidArgument, "hbar must be positive");
  const ComplexMatrix c = commutator(a.matrix(), rho.matrix());
  const ComplexMatrix rep = c / Complex(0.0, hbar);
  // Exactly Hermitian up to round-off; a loose tolerance only guards against misuse.
  return TangentVector(rho, HermitianMatrix(rep, 1e-8));
}

TangentVector tangent_from_X(const ComplexMatrix& x, const DensityMatrix& rho) {
  if (x.rows() != rho.dim() || x.cols() != rho.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "X does not match the state dimension");
  }
  const double skew = max_abs(x + x.adjoint());
  if (skew > kNotInMTol) {
    throw Error(ErrorKind::NotInM, "X is not skew-Hermitian", skew);
  }
  const ComplexMatrix xe = to_eigenbasis(rho, x);
  const auto& cluster = rho.cluster_of_column();
  double diag = 0.0;
  for (Eigen::Index q = 0; q < xe.cols(); ++q) {
    for (Eigen::Index p = 0; p < xe.rows(); ++p) {
      if (cluster[static_cast<std::size_t>(p)] == cluster[static_cast<std::size_t>(q)]) {
        diag = std::max(diag, std::abs(xe(p, q)));
      }
    }
  }
  if (diag > kNotInMTol) {
    throw Error(ErrorKind::NotInM, "X has non-zero diagonal blocks in the eigenbasis of rho", diag);
  }
  return TangentVector(rho, HermitianMatrix(commutator(x, rho.matrix()), 1e-8));
}

ComplexMatrix tangent_to_X(const TangentVector& t) {
  return from_eigenbasis(t.at(), x_eigen(t));
}

ComplexMatrix generator(const TangentVector& t, double hbar) {
  return tangent_to_X(t) * Complex(0.0, hbar);
}

Complex symplectic_trace(const TangentVector& ta, const TangentVector& tb, double hbar) {
  require_same_base(ta, tb);
  if (!(hbar > 0.0)) throw Error(ErrorKind::InvalidArgument, "hbar must be positive");
  const ComplexMatrix a = generator(ta, hbar);
  const ComplexMatrix b = generator(tb, hbar);
  const Complex trace = (commutator(a, b) * ta.at().matrix()).trace();
  return trace / Complex(0.0, hbar);
}

double symplectic_form(const TangentVector& ta, const TangentVector& tb, double hbar) {
  return symplectic_trace(ta, tb, hbar).real();
}

TangentVector apply_J(const TangentVector& t) {
  const DensityMatrix& rho = t.at();
  const auto& cluster = rho.cluster_of_column();
  ComplexMatrix je = ComplexMatrix::Zero(rho.dim(), rho.dim());
  // T_pq = (ν_q − ν_p) X_pq, so scaling the blocks of T scales those of X.
  for (Eigen::Index q = 0; q < je.cols(); ++q) {
    for (Eigen::Index p = 0; p < je.rows(); ++p) {
      const auto cp = cluster[static_cast<std::size_t>(p)];
      const auto cq = cluster[static_cast<std::size_t>(q)];
      if (cp > cq) {
        je(p, q) = Complex(0.0, -1.0) * t.eig_rep()(p, q);
      } else if (cp < cq) {
        je(p, q) = Complex(0.0, 1.0) * t.eig_rep()(p, q);
      }
    }
  }
  return TangentVector(rho, HermitianMatrix(from_eigenbasis(rho, je), 1e-8));
}

Complex hermitian_metric(const TangentVector& ta, const TangentVector& tb, double hbar) {
  require_same_base(ta, tb);
  if (!(hbar > 0.0)) throw Error(ErrorKind::InvalidArgument, "hbar must be positive");
  const DensityMatrix& rho = ta.at();
  const auto& cl = rho.spectrum().clusters;
  const Complex ihbar(0.0, hbar);
  const ComplexMatrix ae = x_eigen(ta) * ihbar;
  const ComplexMatrix be = x_eigen(tb) * ihbar;

  Complex sum = 0.0;
  for (std::size_t i = 1; i < cl.size(); ++i) {
    const auto oi = rho.cluster_offset(i);
    for (std::size_t j = 0; j < i; ++j) {
      const auto oj = rho.cluster_offset(j);
      const auto a_ij = ae.block(oi, oj, cl[i].m, cl[j].m);
      const auto b_ij = be.block(oi, oj, cl[i].m, cl[j].m);
      // Tr(B† A) = Σ conj(B_pq) A_pq
      const Complex tr = (b_ij.conjugate().array() * a_ij.array()).sum();
      sum += (cl[i].nu - cl[j].nu) * tr;
    }
  }
  return sum * (2.0 / hbar);
}

Complex hermitian_metric_via_symplectic(const TangentVector& ta, const TangentVector& tb,
                                        double hbar) {
  return {symplectic_form(ta, apply_J(tb), hbar), symplectic_form(ta, tb, hbar)};
}

double riemannian_metric(const TangentVector& ta, const TangentVector& tb, double hbar) {
  return hermitian_metric(ta, tb, hbar).real();
}

TangentVector complex_scale(const TangentVector& t, Complex alpha) {
  return t * alpha.real() - apply_J(t) * alpha.imag();
}

}  // namespace phasespace
