// Times the OpenMP kernels against their serial references.
//
//   bench_kernels [samples] [n]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

#include "phasespace/dynamics.hpp"
#include "phasespace/sampling.hpp"

using namespace phasespace;

namespace {

double best_of(int reps, const std::function<void()>& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto start = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  return best;
}

void report(const char* name, double parallel, double serial) {
  std::printf("%-16s parallel %9.4f s  serial %9.4f s  speedup %5.2fx\n", name, parallel, serial,
              serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
  const int samples = argc > 1 ? std::atoi(argv[1]) : 5000;
  const int n = argc > 2 ? std::atoi(argv[2]) : 6;
  std::printf("threads %d, samples %d, n %d\n", omp_get_max_threads(), samples, n);

  SamplingPlan plan;
  plan.n = n;
  plan.spectrum = RandomSpectrum{n};
  plan.count = samples;
  CompareResult par;
  CompareResult ser;
  const double t_par = best_of(3, [&] { par = compare_bounds(plan, 1.0, 1); });
  const double t_ser = best_of(3, [&] { ser = reference::compare_bounds(plan, 1.0, 1); });
  report("compare_bounds", t_par, t_ser);
  if (par.stats.violations_geometric != ser.stats.violations_geometric ||
      par.stats.mean_tightness_rs != ser.stats.mean_tightness_rs) {
    std::printf("mismatch between parallel and serial results\n");
    return 1;
  }

  Rng rng = make_rng(2);
  const DensityMatrix rho0 = random_density_with_spectrum(random_spectrum(n, n, rng), rng);
  const FlowTrajectory traj = evolve(rho0, random_gue(n, 1.0, rng), 10.0, 2000, 1.0);
  double d_par = 0.0;
  double d_ser = 0.0;
  const double s_par = best_of(3, [&] { d_par = spectrum_drift(traj); });
  const double s_ser = best_of(3, [&] { d_ser = reference::spectrum_drift(traj); });
  report("spectrum_drift", s_par, s_ser);
  return d_par == d_ser ? 0 : 1;
}
