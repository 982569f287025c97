#include <doctest.h>

#include <numeric>

#include "oracles.hpp"
#include "phasespace/errors.hpp"
#include "phasespace/sampling.hpp"
#include "phasespace/spectrum.hpp"

using namespace phasespace;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InvalidArgument;
}

EigenSystem eigen_of(std::initializer_list<double> values) {
  EigenSystem e;
  e.eigenvalues.resize(static_cast<Eigen::Index>(values.size()));
  Eigen::Index k = 0;
  for (double v : values) e.eigenvalues(k++) = v;
  e.eigenvectors = ComplexMatrix::Identity(e.eigenvalues.size(), e.eigenvalues.size());
  return e;
}

}  // namespace

TEST_CASE("validate_density accepts maximally mixed and diagonal states") {
  const DensityMatrix mixed = validate_density(ComplexMatrix::Identity(3, 3) / 3.0);
  REQUIRE(mixed.spectrum().levels() == 1);
  CHECK(mixed.spectrum().clusters[0].m == 3);
  CHECK(mixed.spectrum().clusters[0].nu == doctest::Approx(1.0 / 3.0));

  const DensityMatrix d = validate_density(oracle::diag({0.25, 0.75}));
  REQUIRE(d.spectrum().levels() == 2);
  CHECK(d.spectrum().clusters[0] == Cluster{0.25, 1});
  CHECK(d.spectrum().clusters[1] == Cluster{0.75, 1});
}

TEST_CASE("validate_density names the violated invariant") {
  CHECK(kind_of([] { validate_density(oracle::diag({1.5, -0.5})); }) == ErrorKind::NotPositive);
  CHECK(kind_of([] { validate_density(oracle::diag({0.5, 0.6})); }) == ErrorKind::NotUnitTrace);
  ComplexMatrix m = oracle::diag({0.5, 0.5});
  m(0, 1) = 0.1;
  CHECK(kind_of([&] { validate_density(m); }) == ErrorKind::NotHermitian);
  CHECK(kind_of([] { validate_density(ComplexMatrix(2, 3)); }) == ErrorKind::DimensionMismatch);

  try {
    validate_density(oracle::diag({1.5, -0.5}));
  } catch (const Error& e) {
    CHECK(e.residual() == doctest::Approx(0.5));
  }
}

TEST_CASE("cluster_spectrum groups by absolute gap") {
  Spectrum s = cluster_spectrum(eigen_of({0.25, 0.75}));
  CHECK(s.levels() == 2);

  s = cluster_spectrum(eigen_of({0.5, 0.5 + 1e-12}));
  REQUIRE(s.levels() == 1);
  CHECK(s.clusters[0].m == 2);
  CHECK(s.clusters[0].nu == doctest::Approx(0.5 + 0.5e-12).epsilon(1e-15));

  s = cluster_spectrum(eigen_of({1.0 / 3, 1.0 / 3, 1.0 / 3}));
  REQUIRE(s.levels() == 1);
  CHECK(s.clusters[0].m == 3);

  // A chain of sub-tolerance gaps forms one cluster.
  s = cluster_spectrum(eigen_of({0.1, 0.1 + 6e-9, 0.1 + 12e-9, 0.7}), 1e-8);
  REQUIRE(s.levels() == 2);
  CHECK(s.clusters[0].m == 3);
}

TEST_CASE("Spectrum validation and literal parsing") {
  const Spectrum s = parse_spectrum("0.25:1, 0.75:1");
  CHECK_NOTHROW(s.validate());
  CHECK(format_spectrum(s) == "0.25:1,0.75:1");
  CHECK(parse_spectrum(format_spectrum(parse_spectrum("0.1:2,0.4:2"))).clusters ==
        parse_spectrum("0.1:2,0.4:2").clusters);

  CHECK(kind_of([] { parse_spectrum("0.25"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_spectrum("0.25:0"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_spectrum("x:1"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_spectrum("0.5:1,"); }) == ErrorKind::ParseError);

  CHECK(kind_of([] { parse_spectrum("0.75:1,0.25:1").validate(); }) == ErrorKind::InvalidSpectrum);
  CHECK(kind_of([] { parse_spectrum("0.3:1,0.3:1").validate(); }) == ErrorKind::InvalidSpectrum);
  CHECK(kind_of([] { parse_spectrum("0.2:1,0.3:1").validate(); }) == ErrorKind::InvalidSpectrum);
  CHECK(kind_of([] { parse_spectrum("-0.5:1,1.5:1").validate(); }) == ErrorKind::InvalidSpectrum);
}

TEST_CASE("classify_orbit examples") {
  auto d = classify_orbit(parse_spectrum("0.1:2,0.4:2"));
  CHECK(d.kind == OrbitKind::Grassmannian);
  CHECK(d.real_dimension == 8);
  CHECK(d.stabilizer == std::vector<int>{2, 2});
  CHECK(d.flag_dims == std::vector<int>{2, 4});

  d = classify_orbit(parse_spectrum("0.2:1,0.3:1,0.5:1"));
  CHECK(d.kind == OrbitKind::CompleteFlag);
  CHECK(d.real_dimension == 6);

  d = classify_orbit(parse_spectrum("0:1,1:1"));
  CHECK(d.kind == OrbitKind::PureState);
  CHECK(d.real_dimension == 2);

  d = classify_orbit(parse_spectrum("0:3,1:1"));
  CHECK(d.kind == OrbitKind::PureState);
  CHECK(d.real_dimension == 6);  // ℂP³

  d = classify_orbit(parse_spectrum("0.5:2"));
  CHECK(d.kind == OrbitKind::Point);
  CHECK(d.real_dimension == 0);

  d = classify_orbit(parse_spectrum("0.25:1,0.75:1"));
  CHECK(d.kind == OrbitKind::CompleteFlag);
  CHECK(d.real_dimension == 2);

  d = classify_orbit(parse_spectrum("0.1:1,0.2:2,0.5:1"));
  CHECK(d.kind == OrbitKind::GeneralFlag);
  CHECK(d.real_dimension == 16 - 6);

  CHECK(kind_of([] { classify_orbit(parse_spectrum("0.3:1,0.3:1")); }) == ErrorKind::InvalidSpectrum);
}

TEST_CASE("orbit dimension equals the off-diagonal block parameter count") {
  Rng rng = make_rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 10;
    const int levels = 1 + static_cast<int>(rng() % static_cast<unsigned>(n));
    const Spectrum s = random_spectrum(levels, n, rng);
    const OrbitDescriptor d = classify_orbit(s);
    int count = 0;  // Σ_{i<j} 2 mᵢ mⱼ
    int sum_sq = 0;
    for (std::size_t i = 0; i < s.levels(); ++i) {
      sum_sq += s.clusters[i].m * s.clusters[i].m;
      for (std::size_t j = i + 1; j < s.levels(); ++j) count += 2 * s.clusters[i].m * s.clusters[j].m;
    }
    CHECK(d.real_dimension == count);
    CHECK(d.real_dimension + sum_sq == n * n);
    CHECK(d.flag_dims.back() == n);
  }
}

TEST_CASE("random_density_with_spectrum") {
  const DensityMatrix one = random_density_with_spectrum(parse_spectrum("1:1"), 3);
  CHECK(std::abs(one.matrix()(0, 0) - 1.0) < 1e-15);

  const DensityMatrix pure = random_density_with_spectrum(parse_spectrum("0:1,1:1"), 4);
  CHECK(std::abs(pure.matrix().trace() - 1.0) < 1e-12);
  CHECK(max_abs(pure.matrix() * pure.matrix() - pure.matrix()) < 1e-10);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const DensityMatrix rho = random_density_with_spectrum(parse_spectrum("0.25:1,0.75:1"), seed);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.matrix());
    CHECK(std::abs(es.eigenvalues()(0) - 0.25) < 1e-10);
    CHECK(std::abs(es.eigenvalues()(1) - 0.75) < 1e-10);
  }

  CHECK(kind_of([] { random_density_with_spectrum(parse_spectrum("0.3:1,0.3:1"), 1); }) ==
        ErrorKind::InvalidSpectrum);
}

TEST_CASE("clustering recovers multiplicities of Haar-rotated spectra") {
  Rng rng = make_rng(123);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 8;
    const int levels = 1 + static_cast<int>(rng() % static_cast<unsigned>(n));
    const Spectrum s = random_spectrum(levels, n, rng);
    const DensityMatrix rho = random_density_with_spectrum(s, rng);
    REQUIRE(rho.spectrum().levels() == s.levels());
    for (std::size_t i = 0; i < s.levels(); ++i) {
      CHECK(rho.spectrum().clusters[i].m == s.clusters[i].m);
      CHECK(std::abs(rho.spectrum().clusters[i].nu - s.clusters[i].nu) < 1e-12);
    }
    CHECK(std::abs(rho.matrix().trace().real() - s.weighted_sum()) < 1e-12);
  }
}
