#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "phasespace/errors.hpp"
#include "phasespace/linalg.hpp"

namespace phasespace {
namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  const auto n = a.rows();
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r != c) sum += std::norm(a(r, c));
    }
  }
  return std::sqrt(sum);
}

// Annihilates a(p,q) with the unitary W = diag(1, e^{-iφ}) · [[c, s], [-s, c]]
// acting on coordinates (p, q), where a(p,q) = |a(p,q)| e^{iφ}.
void rotate(ComplexMatrix& a, ComplexMatrix& v, Eigen::Index p, Eigen::Index q) {
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;

  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * mag);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const Complex phase = std::conj(apq) / mag;  // e^{-iφ}

  const Complex wpp = c;
  const Complex wpq = s;
  const Complex wqp = -s * phase;
  const Complex wqq = c * phase;

  const auto n = a.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * wpp + akq * wqp;
    a(k, q) = akp * wpq + akq * wqq;
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = std::conj(wpp) * apk + std::conj(wqp) * aqk;
    a(q, k) = std::conj(wpq) * apk + std::conj(wqq) * aqk;
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * wpp + vkq * wqp;
    v(k, q) = vkp * wpq + vkq * wqq;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = app - t * mag;
  a(q, q) = aqq + t * mag;
}

}  // namespace

EigenSystem eig_hermitian(const HermitianMatrix& m, const JacobiOptions& opts) {
  ComplexMatrix a = m.matrix();
  const auto n = a.rows();
  ComplexMatrix v = ComplexMatrix::Identity(n, n);

  const double threshold = opts.rel_tol * a.norm();
  bool converged = off_diagonal_norm(a) <= threshold;
  for (int sweep = 0; sweep < opts.max_sweeps && !converged; ++sweep) {
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        rotate(a, v, p, q);
      }
    }
    converged = off_diagonal_norm(a) <= threshold;
  }
  if (!converged) {
    const double off = off_diagonal_norm(a);
    std::ostringstream msg;
    msg << "Jacobi eigensolver did not converge in " << opts.max_sweeps
        << " sweeps (off-diagonal norm " << off << ")";
    throw Error(ErrorKind::NoConvergence, msg.str(), off);
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    return a(x, x).real() < a(y, y).real();
  });

  EigenSystem out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto src = order[static_cast<std::size_t>(k)];
    out.eigenvalues(k) = a(src, src).real();
    out.eigenvectors.col(k) = v.col(src);
  }
  return out;
}

}  // namespace phasespace
