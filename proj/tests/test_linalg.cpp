#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "phasespace/errors.hpp"
#include "phasespace/linalg.hpp"

using namespace phasespace;
using oracle::I;

namespace {

double reconstruction_residual(const HermitianMatrix& m, const EigenSystem& e) {
  const ComplexMatrix& v = e.eigenvectors;
  const ComplexMatrix rebuilt = v * e.eigenvalues.cast<Complex>().asDiagonal() * v.adjoint();
  return max_abs(rebuilt - m.matrix());
}

}  // namespace

TEST_CASE("HermitianMatrix rejects non-Hermitian input") {
  ComplexMatrix m(2, 2);
  m << 1, 2, 3, 4;
  try {
    HermitianMatrix h(m);
    FAIL("expected NotHermitian");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotHermitian);
    CHECK(e.residual() == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(HermitianMatrix(ComplexMatrix(2, 3)), Error);
}

TEST_CASE("eig_hermitian on a diagonal matrix sorts and permutes") {
  const EigenSystem e = eig_hermitian(HermitianMatrix(oracle::diag({3, 1, 2})));
  CHECK(e.eigenvalues(0) == 1.0);
  CHECK(e.eigenvalues(1) == 2.0);
  CHECK(e.eigenvalues(2) == 3.0);
  // Columns are unit vectors e_1, e_2, e_0.
  CHECK(std::abs(e.eigenvectors(1, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(e.eigenvectors(2, 1)) == doctest::Approx(1.0));
  CHECK(std::abs(e.eigenvectors(0, 2)) == doctest::Approx(1.0));
}

TEST_CASE("eig_hermitian on Pauli-X") {
  const EigenSystem e = eig_hermitian(HermitianMatrix(oracle::pauli_x()));
  CHECK(e.eigenvalues(0) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(e.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-14));
  const double r = 1.0 / std::sqrt(2.0);
  // Up to a phase the eigenvectors are (1, ∓1)/√2.
  CHECK(std::abs(e.eigenvectors(0, 0)) == doctest::Approx(r));
  CHECK(std::abs(e.eigenvectors(0, 0) + e.eigenvectors(1, 0)) < 1e-14);
  CHECK(std::abs(e.eigenvectors(0, 1) - e.eigenvectors(1, 1)) < 1e-14);
}

TEST_CASE("eig_hermitian reconstructs random Hermitian matrices") {
  for (int n = 1; n <= 16; ++n) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const HermitianMatrix m = random_gue(n, 1.0 + n, seed * 100 + n);
      const EigenSystem e = eig_hermitian(m);
      CAPTURE(n);
      CHECK(reconstruction_residual(m, e) <= 1e-10 * std::max(1.0, max_abs(m.matrix())));
      CHECK(oracle::unitarity_residual(e.eigenvectors) <= 1e-10);
      for (Eigen::Index k = 1; k < n; ++k) CHECK(e.eigenvalues(k - 1) <= e.eigenvalues(k));

      // Eigen's solver as an independent check on the spectrum.
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> ref(m.matrix());
      CHECK((ref.eigenvalues() - e.eigenvalues).cwiseAbs().maxCoeff() < 1e-10 * (1.0 + n));
    }
  }
}

TEST_CASE("eig_hermitian is deterministic and handles degenerate and zero input") {
  const HermitianMatrix m = random_gue(6, 1.0, 42);
  const EigenSystem a = eig_hermitian(m);
  const EigenSystem b = eig_hermitian(m);
  CHECK(a.eigenvalues == b.eigenvalues);
  CHECK(a.eigenvectors == b.eigenvectors);

  const EigenSystem z = eig_hermitian(HermitianMatrix::zero(4));
  CHECK(z.eigenvalues.cwiseAbs().maxCoeff() == 0.0);

  // U diag(1,1,2,2) U† has exactly degenerate pairs.
  const ComplexMatrix u = random_unitary(4, 7);
  const HermitianMatrix d(u * oracle::diag({1, 1, 2, 2}) * u.adjoint());
  const EigenSystem de = eig_hermitian(d);
  CHECK(reconstruction_residual(d, de) < 1e-12);
  CHECK(de.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(de.eigenvalues(2) == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("eig_hermitian reports NoConvergence when the sweep budget is zero") {
  JacobiOptions opts;
  opts.max_sweeps = 0;
  try {
    eig_hermitian(HermitianMatrix(oracle::pauli_x()), opts);
    FAIL("expected NoConvergence");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoConvergence);
  }
}

TEST_CASE("expm_unitary closed forms") {
  const ComplexMatrix id = expm_unitary(HermitianMatrix::zero(3), 2.5, 1.0);
  CHECK(max_abs(id - ComplexMatrix::Identity(3, 3)) == 0.0);

  // exp(−iπZ) = diag(e^{−iπ}, e^{iπ}) = −I.
  const double pi = std::numbers::pi;
  const ComplexMatrix u = expm_unitary(HermitianMatrix(oracle::pauli_z()), pi, 1.0);
  ComplexMatrix expected(2, 2);
  expected << std::exp(-I * pi), 0, 0, std::exp(I * pi);
  CHECK(max_abs(u - expected) < 1e-15);

  // ħ rescales time.
  const ComplexMatrix u2 = expm_unitary(HermitianMatrix(oracle::pauli_z()), 2 * pi, 2.0);
  CHECK(max_abs(u2 - expected) < 1e-14);

  CHECK_THROWS_AS(expm_unitary(HermitianMatrix(oracle::pauli_z()), 1.0, 0.0), Error);
}

TEST_CASE("expm_unitary is unitary and a one-parameter group") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int n = 2 + static_cast<int>(seed % 7);
    const HermitianMatrix h = random_gue(n, 1.0, seed);
    const double t1 = 0.3 + 0.1 * static_cast<double>(seed);
    const double t2 = 1.7 - 0.05 * static_cast<double>(seed);
    const ComplexMatrix u1 = expm_unitary(h, t1, 1.0);
    const ComplexMatrix u2 = expm_unitary(h, t2, 1.0);
    const ComplexMatrix u12 = expm_unitary(h, t1 + t2, 1.0);
    CHECK(oracle::unitarity_residual(u1) < 1e-10);
    CHECK(max_abs(u1 * u2 - u12) < 1e-9);
  }
}

TEST_CASE("random_unitary") {
  const ComplexMatrix u1 = random_unitary(1, 3);
  CHECK(std::abs(std::abs(u1(0, 0)) - 1.0) < 1e-15);

  const ComplexMatrix u4 = random_unitary(4, 11);
  CHECK(oracle::unitarity_residual(u4) < 1e-10);
  CHECK(random_unitary(4, 11) == u4);
  CHECK(random_unitary(4, 12) != u4);
}

TEST_CASE("random_unitary matches the Haar second moment E|U_11|^2 = 1/n") {
  // Oracle: for Haar U(n) every |U_ij|² has mean 1/n.
  Rng rng = make_rng(2024);
  double sum = 0.0;
  double sum_off = 0.0;
  constexpr int samples = 10000;
  for (int k = 0; k < samples; ++k) {
    const ComplexMatrix u = random_unitary(3, rng);
    sum += std::norm(u(0, 0));
    sum_off += std::norm(u(2, 1));
  }
  CHECK(std::abs(sum / samples - 1.0 / 3.0) < 0.02);
  CHECK(std::abs(sum_off / samples - 1.0 / 3.0) < 0.02);
}

TEST_CASE("random_gue has the requested entry variances") {
  Rng rng = make_rng(5);
  double off = 0.0;
  double diag = 0.0;
  constexpr int samples = 4000;
  for (int k = 0; k < samples; ++k) {
    const HermitianMatrix a = random_gue(3, 2.0, rng);
    off += std::norm(a(0, 1));
    diag += std::norm(a(1, 1));
  }
  CHECK(off / samples == doctest::Approx(4.0).epsilon(0.06));
  CHECK(diag / samples == doctest::Approx(4.0).epsilon(0.06));
}
