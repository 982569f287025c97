#include "phasespace/spectrum.hpp"

#include <charconv>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "phasespace/errors.hpp"

namespace phasespace {

int Spectrum::dim() const {
  int n = 0;
  for (const auto& c : clusters) n += c.m;
  return n;
}

double Spectrum::weighted_sum() const {
  double sum = 0.0;
  for (const auto& c : clusters) sum += c.m * c.nu;
  return sum;
}

void Spectrum::validate(const Tolerances& tol) const {
  if (clusters.empty()) {
    throw Error(ErrorKind::InvalidSpectrum, "spectrum has no eigenvalues");
  }
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    const auto& c = clusters[i];
    if (c.m < 1) {
      throw Error(ErrorKind::InvalidSpectrum, "multiplicities must be positive");
    }
    if (!std::isfinite(c.nu) || c.nu < -tol.psd_tol) {
      throw Error(ErrorKind::InvalidSpectrum, "eigenvalues must be finite and non-negative", c.nu);
    }
    if (i > 0 && !(c.nu > clusters[i - 1].nu)) {
      throw Error(ErrorKind::InvalidSpectrum, "eigenvalues must be strictly ascending");
    }
  }
  const double residual = std::abs(weighted_sum() - 1.0);
  if (residual > tol.trace_tol) {
    std::ostringstream msg;
    msg << "sum of m_i * nu_i must be 1, off by " << residual;
    throw Error(ErrorKind::InvalidSpectrum, msg.str(), residual);
  }
}

std::vector<double> Spectrum::expanded() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(dim()));
  for (const auto& c : clusters) out.insert(out.end(), static_cast<std::size_t>(c.m), c.nu);
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Spectrum parse_spectrum(std::string_view literal) {
  Spectrum out;
  const std::string text(literal);
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    const std::string_view token = trim(std::string_view(text).substr(start, end - start));
    const std::size_t colon = token.find(':');
    if (token.empty() || colon == std::string_view::npos) {
      throw Error(ErrorKind::ParseError, "spectrum token '" + std::string(token) + "' is not nu:m");
    }
    const std::string nu_text(trim(token.substr(0, colon)));
    const std::string_view m_text = trim(token.substr(colon + 1));

    std::size_t used = 0;
    double nu = 0.0;
    try {
      nu = std::stod(nu_text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != nu_text.size()) {
      throw Error(ErrorKind::ParseError, "bad eigenvalue '" + nu_text + "'");
    }
    int m = 0;
    const auto [ptr, ec] = std::from_chars(m_text.data(), m_text.data() + m_text.size(), m);
    if (ec != std::errc() || ptr != m_text.data() + m_text.size() || m < 1) {
      throw Error(ErrorKind::ParseError, "bad multiplicity '" + std::string(m_text) + "'");
    }
    out.clusters.push_back({nu, m});
    start = end + 1;
  }
  return out;
}

std::string format_spectrum(const Spectrum& s) {
  std::ostringstream out;
  out << std::setprecision(17);
  for (std::size_t i = 0; i < s.clusters.size(); ++i) {
    if (i) out << ',';
    out << s.clusters[i].nu << ':' << s.clusters[i].m;
  }
  return out.str();
}

Spectrum cluster_spectrum(const EigenSystem& e, double cluster_tol) {
  Spectrum out;
  const auto n = e.eigenvalues.size();
  Eigen::Index begin = 0;
  while (begin < n) {
    Eigen::Index end = begin + 1;
    while (end < n && e.eigenvalues(end) - e.eigenvalues(end - 1) < cluster_tol) ++end;
    double sum = 0.0;
    for (Eigen::Index k = begin; k < end; ++k) sum += e.eigenvalues(k);
    out.clusters.push_back({sum / static_cast<double>(end - begin), static_cast<int>(end - begin)});
    begin = end;
  }
  return out;
}

DensityMatrix validate_density(const ComplexMatrix& m, const Tolerances& tol) {
  DensityMatrix rho;
  rho.matrix_ = HermitianMatrix(m, tol.herm_tol);

  const double trace = rho.matrix_.matrix().trace().real();
  const double trace_residual = std::abs(trace - 1.0);
  if (trace_residual > tol.trace_tol) {
    std::ostringstream msg;
    msg << "trace is " << std::setprecision(17) << trace << ", expected 1";
    throw Error(ErrorKind::NotUnitTrace, msg.str(), trace_residual);
  }

  rho.eigen_ = eig_hermitian(rho.matrix_);
  const double lowest = rho.eigen_.eigenvalues(0);
  if (lowest < -tol.psd_tol) {
    std::ostringstream msg;
    msg << "smallest eigenvalue is " << std::setprecision(17) << lowest;
    throw Error(ErrorKind::NotPositive, msg.str(), -lowest);
  }

  rho.spectrum_ = cluster_spectrum(rho.eigen_, tol.cluster_tol);
  rho.cluster_tol_ = tol.cluster_tol;
  for (auto& c : rho.spectrum_.clusters) {
    if (c.nu < 0.0) c.nu = 0.0;  // within psd_tol of zero
  }

  rho.column_cluster_.resize(static_cast<std::size_t>(rho.dim()));
  Eigen::Index offset = 0;
  for (std::size_t i = 0; i < rho.spectrum_.clusters.size(); ++i) {
    rho.offsets_.push_back(offset);
    for (int k = 0; k < rho.spectrum_.clusters[i].m; ++k) {
      rho.column_cluster_[static_cast<std::size_t>(offset + k)] = i;
    }
    offset += rho.spectrum_.clusters[i].m;
  }
  return rho;
}

DensityMatrix random_density_with_spectrum(const Spectrum& s, Rng& rng, const Tolerances& tol) {
  s.validate(tol);
  const auto n = static_cast<Eigen::Index>(s.dim());
  const auto values = s.expanded();
  const ComplexMatrix u = random_unitary(n, rng);
  const Eigen::VectorXcd diag = Eigen::Map<const Eigen::VectorXd>(values.data(), n).cast<Complex>();
  return validate_density(u * diag.asDiagonal() * u.adjoint(), tol);
}

DensityMatrix random_density_with_spectrum(const Spectrum& s, std::uint64_t seed,
                                           const Tolerances& tol) {
  Rng rng = make_rng(seed);
  return random_density_with_spectrum(s, rng, tol);
}

std::string_view to_string(OrbitKind kind) noexcept {
  switch (kind) {
    case OrbitKind::Point: return "Point";
    case OrbitKind::PureState: return "PureState";
    case OrbitKind::Grassmannian: return "Grassmannian";
    case OrbitKind::CompleteFlag: return "CompleteFlag";
    case OrbitKind::GeneralFlag: return "GeneralFlag";
  }
  return "Unknown";
}

OrbitDescriptor classify_orbit(const Spectrum& s, const Tolerances& tol) {
  s.validate(tol);
  OrbitDescriptor out;
  const int n = s.dim();
  int sum_sq = 0;
  int running = 0;
  bool all_simple = true;
  for (const auto& c : s.clusters) {
    out.stabilizer.push_back(c.m);
    running += c.m;
    out.flag_dims.push_back(running);
    sum_sq += c.m * c.m;
    all_simple = all_simple && c.m == 1;
  }
  out.real_dimension = n * n - sum_sq;

  const auto& cl = s.clusters;
  if (cl.size() == 1) {
    out.kind = OrbitKind::Point;
  } else if (cl.size() == 2 && cl[1].m == 1 && std::abs(cl[1].nu - 1.0) <= tol.trace_tol &&
             std::abs(cl[0].nu) <= tol.cluster_tol) {
    out.kind = OrbitKind::PureState;
  } else if (all_simple) {
    out.kind = OrbitKind::CompleteFlag;
  } else if (cl.size() == 2) {
    out.kind = OrbitKind::Grassmannian;
  } else {
    out.kind = OrbitKind::GeneralFlag;
  }
  return out;
}

}  // namespace phasespace
