#pragma once

#include <vector>

#include "phasespace/linalg.hpp"
#include "phasespace/spectrum.hpp"

namespace phasespace {

/// Stored states of ρ(t) = U(t) ρ₀ U(t)† on a uniform grid.
///
/// With stride s only every s-th step is kept (plus the final state), so
/// `times` are uniform with spacing s·dt except possibly the last one.
struct FlowTrajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  HermitianMatrix hamiltonian;
  double hbar = 1.0;
  double dt = 0.0;  // integrator step

  // per stored state, relative to states[0]
  std::vector<double> spectrum_drift;
  std::vector<double> trace_drift;
  std::vector<double> energy_drift;
};

/// Exact unitary stepping ρ_{k+1} = U ρ_k U† with U = exp(−iH dt/ħ).
FlowTrajectory evolve(const DensityMatrix& rho0, const HermitianMatrix& h, double t_final,
                      int steps, double hbar, int stride = 1, const Tolerances& tol = {});

/// max_k max_i |λᵢ(ρ_k) − λᵢ(ρ₀)|; OpenMP over stored states.
double spectrum_drift(const FlowTrajectory& traj);
double trace_drift(const FlowTrajectory& traj);
double energy_drift(const FlowTrajectory& traj);

/// Largest deviation between the centred difference of ⟨A⟩(t) and
/// ω(X_A, X_H) over interior stored states. Needs ≥ 3 uniformly spaced
/// states (TooFewSteps otherwise).
double ehrenfest_check(const FlowTrajectory& traj, const HermitianMatrix& a);

namespace reference {

double spectrum_drift(const FlowTrajectory& traj);

}  // namespace reference

}  // namespace phasespace
