#include "phasespace/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>

#include "phasespace/errors.hpp"

namespace phasespace {

void SamplingPlan::validate(const Tolerances& tol) const {
  if (count < 0) throw Error(ErrorKind::InvalidPlan, "sample count must be non-negative");
  if (n < 1) throw Error(ErrorKind::InvalidPlan, "dimension n must be at least 1");
  if (!(observable_scale > 0.0) || !std::isfinite(observable_scale)) {
    throw Error(ErrorKind::InvalidPlan, "observable scale must be positive and finite");
  }
  if (const auto* fixed = std::get_if<Spectrum>(&spectrum)) {
    try {
      fixed->validate(tol);
    } catch (const Error& e) {
      throw Error(ErrorKind::InvalidPlan, std::string("plan spectrum: ") + e.what(), e.residual());
    }
    if (fixed->dim() != n) {
      throw Error(ErrorKind::InvalidPlan, "plan spectrum dimension differs from n");
    }
  } else {
    const int levels = std::get<RandomSpectrum>(spectrum).levels;
    if (levels < 1 || levels > n) {
      throw Error(ErrorKind::InvalidPlan, "random spectrum needs 1 <= levels <= n");
    }
  }
}

void set_plan_spectrum(SamplingPlan& plan, const std::string& text) {
  constexpr std::string_view prefix = "random:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string rest = text.substr(prefix.size());
    const auto comma = rest.find(',');
    try {
      if (comma == std::string::npos) throw std::invalid_argument("missing comma");
      std::size_t used_l = 0;
      std::size_t used_n = 0;
      const std::string l_text = rest.substr(0, comma);
      const std::string n_text = rest.substr(comma + 1);
      const int levels = std::stoi(l_text, &used_l);
      const int n = std::stoi(n_text, &used_n);
      if (used_l != l_text.size() || used_n != n_text.size()) {
        throw std::invalid_argument("trailing characters");
      }
      plan.spectrum = RandomSpectrum{levels};
      plan.n = n;
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidPlan, "random spectrum must look like random:l,n");
    }
    return;
  }
  try {
    Spectrum s = parse_spectrum(text);
    plan.n = s.dim();
    plan.spectrum = std::move(s);
  } catch (const Error& e) {
    throw Error(ErrorKind::InvalidPlan, std::string("plan spectrum: ") + e.what());
  }
}

Spectrum random_spectrum(int levels, int n, Rng& rng) {
  if (levels < 1 || levels > n) {
    throw Error(ErrorKind::InvalidArgument, "random_spectrum needs 1 <= levels <= n");
  }
  std::vector<int> cuts(static_cast<std::size_t>(n - 1));
  std::iota(cuts.begin(), cuts.end(), 1);
  std::shuffle(cuts.begin(), cuts.end(), rng);
  cuts.resize(static_cast<std::size_t>(levels - 1));
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(n);

  std::vector<int> mult;
  int previous = 0;
  for (int cut : cuts) {
    mult.push_back(cut - previous);
    previous = cut;
  }

  const double min_gap = 0.02 / n;
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (;;) {
    std::vector<double> u(static_cast<std::size_t>(levels));
    for (auto& x : u) x = uniform(rng);
    std::sort(u.begin(), u.end());
    double norm = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) norm += mult[i] * u[i];
    bool separated = norm > 0.0;
    for (std::size_t i = 1; i < u.size() && separated; ++i) {
      separated = (u[i] - u[i - 1]) / norm >= min_gap;
    }
    if (!separated) continue;

    Spectrum s;
    for (std::size_t i = 0; i < u.size(); ++i) s.clusters.push_back({u[i] / norm, mult[i]});
    return s;
  }
}

UncertaintyReport evaluate_sample(const SamplingPlan& plan, double hbar, std::uint64_t seed,
                                  std::int64_t index, const Tolerances& tol,
                                  const BoundTransform& transform) {
  Rng rng = make_rng(seed, static_cast<std::uint64_t>(index));
  const Spectrum s = std::holds_alternative<Spectrum>(plan.spectrum)
                         ? std::get<Spectrum>(plan.spectrum)
                         : random_spectrum(std::get<RandomSpectrum>(plan.spectrum).levels, plan.n, rng);
  const DensityMatrix rho = random_density_with_spectrum(s, rng, tol);
  const HermitianMatrix a = random_gue(plan.n, plan.observable_scale, rng);
  const HermitianMatrix b = random_gue(plan.n, plan.observable_scale, rng);
  UncertaintyReport r = evaluate_uncertainty(a, b, rho, hbar);
  if (transform) {
    r.geometric_bound = transform(r.geometric_bound);
    r.satisfied_geometric = r.product >= r.geometric_bound - kBoundTol;
    r.tightness_ratio_geometric = r.geometric_bound > 0.0
                                      ? r.product / r.geometric_bound
                                      : std::numeric_limits<double>::infinity();
  }
  return r;
}

CompareStats aggregate(const std::vector<UncertaintyReport>& reports) {
  CompareStats st;
  st.count = static_cast<std::int64_t>(reports.size());
  if (reports.empty()) return st;

  constexpr double inf = std::numeric_limits<double>::infinity();
  st.max_geometric_excess = -inf;
  st.min_tightness_geometric = inf;
  st.min_tightness_rs = inf;
  double sum_geo = 0.0;
  double sum_rs = 0.0;
  std::int64_t finite_geo = 0;
  std::int64_t finite_rs = 0;
  std::int64_t geo_ge_rs = 0;
  std::int64_t rs_ge_geo = 0;
  for (const auto& r : reports) {
    st.violations_geometric += !r.satisfied_geometric;
    st.violations_schwarz += !r.satisfied_schwarz;
    st.violations_rs += !r.satisfied_rs;
    st.violations_variance_estimate += !r.satisfied_variance_estimate;
    st.violations_cauchy_schwarz += !r.satisfied_cauchy_schwarz;
    st.max_geometric_excess = std::max(st.max_geometric_excess, r.geometric_bound - r.product);
    st.min_tightness_geometric = std::min(st.min_tightness_geometric, r.tightness_ratio_geometric);
    st.min_tightness_rs = std::min(st.min_tightness_rs, r.tightness_ratio_rs);
    if (std::isfinite(r.tightness_ratio_geometric)) {
      sum_geo += r.tightness_ratio_geometric;
      ++finite_geo;
    }
    if (std::isfinite(r.tightness_ratio_rs)) {
      sum_rs += r.tightness_ratio_rs;
      ++finite_rs;
    }
    geo_ge_rs += r.geometric_bound >= r.rs_bound;
    rs_ge_geo += r.rs_bound >= r.geometric_bound;
  }
  st.mean_tightness_geometric = finite_geo ? sum_geo / static_cast<double>(finite_geo) : inf;
  st.mean_tightness_rs = finite_rs ? sum_rs / static_cast<double>(finite_rs) : inf;
  st.fraction_geometric_ge_rs = static_cast<double>(geo_ge_rs) / static_cast<double>(st.count);
  st.fraction_rs_ge_geometric = static_cast<double>(rs_ge_geo) / static_cast<double>(st.count);
  return st;
}

CompareResult compare_bounds(const SamplingPlan& plan, double hbar, std::uint64_t seed,
                             const Tolerances& tol, const BoundTransform& transform) {
  plan.validate(tol);
  CompareResult out;
  out.reports.resize(static_cast<std::size_t>(plan.count));
  std::exception_ptr failure;
  const std::int64_t count = plan.count;

#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      out.reports[static_cast<std::size_t>(i)] =
          evaluate_sample(plan, hbar, seed, i, tol, transform);
    } catch (...) {
#pragma omp critical(phasespace_compare_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  out.stats = aggregate(out.reports);
  return out;
}

namespace reference {

CompareResult compare_bounds(const SamplingPlan& plan, double hbar, std::uint64_t seed,
                             const Tolerances& tol, const BoundTransform& transform) {
  plan.validate(tol);
  CompareResult out;
  out.reports.reserve(static_cast<std::size_t>(plan.count));
  for (std::int64_t i = 0; i < plan.count; ++i) {
    out.reports.push_back(evaluate_sample(plan, hbar, seed, i, tol, transform));
  }
  out.stats = aggregate(out.reports);
  return out;
}

}  // namespace reference

}  // namespace phasespace
