#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "phasespace/spectrum.hpp"
#include "phasespace/uncertainty.hpp"

namespace phasespace {

/// Draw a fresh spectrum per sample: `levels` distinct eigenvalues in
/// dimension n with random multiplicities.
struct RandomSpectrum {
  int levels = 1;
};

struct SamplingPlan {
  int n = 2;
  std::variant<Spectrum, RandomSpectrum> spectrum;
  std::int64_t count = 0;
  double observable_scale = 1.0;

  /// Throws InvalidPlan.
  void validate(const Tolerances& tol = {}) const;
};

/// Parses "random:l,n" or a "nu:m,…" literal into a plan's spectrum source.
/// Sets `n` from the literal.
void set_plan_spectrum(SamplingPlan& plan, const std::string& text);

/// Random composition of n into `levels` multiplicities with distinct,
/// well-separated eigenvalues normalised to unit trace.
Spectrum random_spectrum(int levels, int n, Rng& rng);

struct CompareStats {
  std::int64_t count = 0;
  std::int64_t violations_geometric = 0;
  std::int64_t violations_schwarz = 0;
  std::int64_t violations_rs = 0;
  std::int64_t violations_variance_estimate = 0;
  std::int64_t violations_cauchy_schwarz = 0;
  double max_geometric_excess = 0.0;  // max(bound − product), ≤ 0 when never violated
  double min_tightness_geometric = 0.0;
  double mean_tightness_geometric = 0.0;  // over samples with a non-zero bound
  double min_tightness_rs = 0.0;
  double mean_tightness_rs = 0.0;
  double fraction_geometric_ge_rs = 0.0;
  double fraction_rs_ge_geometric = 0.0;
};

struct CompareResult {
  std::vector<UncertaintyReport> reports;
  CompareStats stats;
};

/// Test seam: applied to every geometric bound before comparison.
using BoundTransform = std::function<double(double)>;

/// Sample `index` of a campaign; a pure function of its arguments.
UncertaintyReport evaluate_sample(const SamplingPlan& plan, double hbar, std::uint64_t seed,
                                  std::int64_t index, const Tolerances& tol = {},
                                  const BoundTransform& transform = {});

/// Sequential reduction in sample order.
CompareStats aggregate(const std::vector<UncertaintyReport>& reports);

/// OpenMP-parallel campaign. Results are bit-identical to the serial
/// reference because every sample owns its RNG stream and the reduction is
/// sequential.
CompareResult compare_bounds(const SamplingPlan& plan, double hbar, std::uint64_t seed,
                             const Tolerances& tol = {}, const BoundTransform& transform = {});

namespace reference {

CompareResult compare_bounds(const SamplingPlan& plan, double hbar, std::uint64_t seed,
                             const Tolerances& tol = {}, const BoundTransform& transform = {});

}  // namespace reference

}  // namespace phasespace
