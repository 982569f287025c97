#include "phasespace/dynamics.hpp"

#include <cmath>
#include <exception>

#include "phasespace/errors.hpp"
#include "phasespace/tangent.hpp"

namespace phasespace {
namespace {

double eigen_gap(const DensityMatrix& a, const DensityMatrix& b) {
  return (a.eigen().eigenvalues - b.eigen().eigenvalues).cwiseAbs().maxCoeff();
}

double max_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

}  // namespace

FlowTrajectory evolve(const DensityMatrix& rho0, const HermitianMatrix& h, double t_final,
                      int steps, double hbar, int stride, const Tolerances& tol) {
  if (h.dim() != rho0.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "Hamiltonian and state dimensions differ");
  }
  if (steps < 1) throw Error(ErrorKind::InvalidArgument, "steps must be at least 1");
  if (!(t_final > 0.0)) throw Error(ErrorKind::InvalidArgument, "t_final must be positive");
  if (stride < 1) throw Error(ErrorKind::InvalidArgument, "stride must be at least 1");
  if (!(hbar > 0.0)) throw Error(ErrorKind::InvalidArgument, "hbar must be positive");

  FlowTrajectory traj;
  traj.hamiltonian = h;
  traj.hbar = hbar;
  traj.dt = t_final / steps;

  const ComplexMatrix u = expm_unitary(h, traj.dt, hbar);
  const ComplexMatrix u_dag = u.adjoint();

  std::vector<ComplexMatrix> raw;
  raw.push_back(rho0.matrix());
  traj.times.push_back(0.0);
  ComplexMatrix rho = rho0.matrix();
  for (int k = 1; k <= steps; ++k) {
    rho = u * rho * u_dag;
    rho = (rho + rho.adjoint()) * 0.5;
    if (k % stride == 0 || k == steps) {
      raw.push_back(rho);
      traj.times.push_back(k * traj.dt);
    }
  }

  // Each stored state is validated (and eigendecomposed) independently.
  const auto count = static_cast<std::ptrdiff_t>(raw.size());
  std::vector<DensityMatrix> states(raw.size());
  std::exception_ptr failure;
  states[0] = rho0;
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t k = 1; k < count; ++k) {
    try {
      states[static_cast<std::size_t>(k)] = validate_density(raw[static_cast<std::size_t>(k)], tol);
    } catch (...) {
#pragma omp critical(phasespace_evolve_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  traj.states = std::move(states);

  const double trace0 = rho0.matrix().trace().real();
  const double energy0 = expectation(rho0.matrix(), h.matrix());
  traj.spectrum_drift.resize(raw.size());
  traj.trace_drift.resize(raw.size());
  traj.energy_drift.resize(raw.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    const auto i = static_cast<std::size_t>(k);
    const DensityMatrix& s = traj.states[i];
    traj.spectrum_drift[i] = eigen_gap(s, rho0);
    traj.trace_drift[i] = std::abs(s.matrix().trace().real() - trace0);
    traj.energy_drift[i] = std::abs(expectation(s.matrix(), h.matrix()) - energy0);
  }
  return traj;
}

double spectrum_drift(const FlowTrajectory& traj) {
  if (traj.states.empty()) return 0.0;
  const auto count = static_cast<std::ptrdiff_t>(traj.states.size());
  double worst = 0.0;
#pragma omp parallel for reduction(max : worst) schedule(static)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    worst = std::max(worst, eigen_gap(traj.states[static_cast<std::size_t>(k)], traj.states[0]));
  }
  return worst;
}

double trace_drift(const FlowTrajectory& traj) { return max_of(traj.trace_drift); }

double energy_drift(const FlowTrajectory& traj) { return max_of(traj.energy_drift); }

double ehrenfest_check(const FlowTrajectory& traj, const HermitianMatrix& a) {
  if (traj.states.size() < 3) {
    throw Error(ErrorKind::TooFewSteps, "Ehrenfest check needs at least 3 stored states");
  }
  if (a.dim() != traj.hamiltonian.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "observable and trajectory dimensions differ");
  }
  // The final state may sit off-grid when steps is not a multiple of stride.
  std::size_t usable = traj.states.size();
  const double spacing = traj.times[1] - traj.times[0];
  const double last = traj.times[usable - 1] - traj.times[usable - 2];
  if (std::abs(last - spacing) > 1e-9 * spacing) --usable;
  if (usable < 3) {
    throw Error(ErrorKind::TooFewSteps, "Ehrenfest check needs at least 3 uniformly spaced states");
  }

  std::vector<double> mean(usable);
  for (std::size_t k = 0; k < usable; ++k) {
    mean[k] = expectation(traj.states[k].matrix(), a.matrix());
  }
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < usable; ++k) {
    const double fd = (mean[k + 1] - mean[k - 1]) / (2.0 * spacing);
    const DensityMatrix& rho = traj.states[k];
    const double omega = symplectic_form(hamiltonian_vector_field(a, rho, traj.hbar),
                                         hamiltonian_vector_field(traj.hamiltonian, rho, traj.hbar),
                                         traj.hbar);
    worst = std::max(worst, std::abs(fd - omega));
  }
  return worst;
}

namespace reference {

double spectrum_drift(const FlowTrajectory& traj) {
  double worst = 0.0;
  for (const auto& s : traj.states) worst = std::max(worst, eigen_gap(s, traj.states.front()));
  return worst;
}

}  // namespace reference

}  // namespace phasespace
