#include "phasespace/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "phasespace/dynamics.hpp"
#include "phasespace/errors.hpp"
#include "phasespace/io.hpp"
#include "phasespace/tangent.hpp"
#include "phasespace/uncertainty.hpp"

namespace phasespace::cli {
namespace {

using io::Json;

constexpr double kCrossCheckLimit = 1e-6;

struct Inputs {
  std::string rho;
  std::string a;
  std::string b;
  int random_n = 0;
};

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json error_json(ErrorKind kind, const std::string& message, double residual) {
  Json doc;
  doc["error"] = std::string(to_string(kind));
  doc["message"] = message;
  doc["residual"] = residual;
  return doc;
}

ComplexMatrix load_matrix(const std::string& path) {
  return io::matrix_from_json(io::read_json_file(path));
}

struct Instance {
  DensityMatrix rho;
  HermitianMatrix a;
  HermitianMatrix b;
};

Instance load_instance(const Inputs& in, const io::RunConfig& cfg) {
  if (in.random_n > 0) {
    Rng rng = make_rng(cfg.seed);
    const Spectrum s = random_spectrum(in.random_n, in.random_n, rng);
    DensityMatrix rho = random_density_with_spectrum(s, rng, cfg.tol);
    HermitianMatrix a = random_gue(in.random_n, 1.0, rng);
    HermitianMatrix b = random_gue(in.random_n, 1.0, rng);
    return {std::move(rho), std::move(a), std::move(b)};
  }
  if (in.rho.empty() || in.a.empty() || in.b.empty()) {
    throw Error(ErrorKind::InvalidArgument, "need --rho, --A and --B (or --random-n)");
  }
  DensityMatrix rho = validate_density(load_matrix(in.rho), cfg.tol);
  HermitianMatrix a(load_matrix(in.a), cfg.tol.herm_tol);
  HermitianMatrix b(load_matrix(in.b), cfg.tol.herm_tol);
  return {std::move(rho), std::move(a), std::move(b)};
}

Json spectrum_json(const Spectrum& s) {
  Json arr = Json::array();
  for (const auto& c : s.clusters) {
    Json item;
    item["nu"] = c.nu;
    item["m"] = c.m;
    arr.push_back(std::move(item));
  }
  return arr;
}

Json orbit_json(const OrbitDescriptor& d, const Spectrum& s) {
  Json doc;
  doc["kind"] = std::string(to_string(d.kind));
  doc["real_dimension"] = d.real_dimension;
  doc["stabilizer"] = d.stabilizer;
  doc["flag_dims"] = d.flag_dims;
  doc["spectrum"] = spectrum_json(s);
  return doc;
}

Json report_json(const UncertaintyReport& r) {
  Json doc;
  doc["delta_A"] = r.delta_A;
  doc["delta_B"] = r.delta_B;
  doc["product"] = r.product;
  doc["geometric_bound"] = r.geometric_bound;
  doc["schwarz_bound"] = r.schwarz_bound;
  doc["rs_bound"] = r.rs_bound;
  doc["h_value"] = complex_json(r.h_value);
  doc["variance_bound_A"] = r.variance_bound_A;
  doc["variance_bound_B"] = r.variance_bound_B;
  doc["satisfied_geometric"] = r.satisfied_geometric;
  doc["satisfied_schwarz"] = r.satisfied_schwarz;
  doc["satisfied_rs"] = r.satisfied_rs;
  doc["satisfied_variance_estimate"] = r.satisfied_variance_estimate;
  doc["satisfied_cauchy_schwarz"] = r.satisfied_cauchy_schwarz;
  doc["tightness_ratio_geometric"] = r.tightness_ratio_geometric;
  doc["tightness_ratio_rs"] = r.tightness_ratio_rs;
  return doc;
}

Json stats_json(const CompareStats& s) {
  Json doc;
  doc["count"] = s.count;
  doc["violations_geometric"] = s.violations_geometric;
  doc["violations_schwarz"] = s.violations_schwarz;
  doc["violations_rs"] = s.violations_rs;
  doc["violations_variance_estimate"] = s.violations_variance_estimate;
  doc["violations_cauchy_schwarz"] = s.violations_cauchy_schwarz;
  doc["max_geometric_excess"] = s.max_geometric_excess;
  doc["min_tightness_geometric"] = s.min_tightness_geometric;
  doc["mean_tightness_geometric"] = s.mean_tightness_geometric;
  doc["min_tightness_rs"] = s.min_tightness_rs;
  doc["mean_tightness_rs"] = s.mean_tightness_rs;
  doc["fraction_geometric_ge_rs"] = s.fraction_geometric_ge_rs;
  doc["fraction_rs_ge_geometric"] = s.fraction_rs_ge_geometric;
  return doc;
}

int cmd_classify(const std::string& input, const io::RunConfig& cfg, Json& result) {
  Spectrum s;
  if (std::filesystem::is_regular_file(input)) {
    const DensityMatrix rho = validate_density(load_matrix(input), cfg.tol);
    s = rho.spectrum();
  } else {
    s = parse_spectrum(input);
  }
  result = orbit_json(classify_orbit(s, cfg.tol), s);
  return kOk;
}

int cmd_geometry(const Inputs& in, const io::RunConfig& cfg, Json& result) {
  const Instance inst = load_instance(in, cfg);
  const double hbar = cfg.hbar;
  const TangentVector xa = hamiltonian_vector_field(inst.a, inst.rho, hbar);
  const TangentVector xb = hamiltonian_vector_field(inst.b, inst.rho, hbar);
  const double omega = symplectic_form(xa, xb, hbar);
  const Complex h = hermitian_metric(xa, xb, hbar);
  const Complex h_alt = hermitian_metric_via_symplectic(xa, xb, hbar);
  const double residual = std::abs(h.imag() - omega);

  result["orbit"] = std::string(to_string(classify_orbit(inst.rho.spectrum(), cfg.tol).kind));
  result["omega"] = omega;
  result["h"] = complex_json(h);
  result["g"] = h.real();
  result["bound_geometric"] = 0.5 * hbar * std::sqrt(std::abs(h));
  result["bound_schwarz"] = 0.5 * hbar * std::abs(h);
  result["cross_check_residual"] = residual;
  result["metric_route_residual"] = std::abs(h - h_alt);
  return residual > kCrossCheckLimit ? kCheckFailed : kOk;
}

int cmd_uncertainty(const Inputs& in, const io::RunConfig& cfg, Json& result) {
  const Instance inst = load_instance(in, cfg);
  result = report_json(evaluate_uncertainty(inst.a, inst.b, inst.rho, cfg.hbar));
  return kOk;
}

struct EvolveArgs {
  std::string rho;
  std::string h;
  double t_final = 0.0;
  int steps = 0;
  std::vector<std::string> observables;
};

int cmd_evolve(const EvolveArgs& args, const io::RunConfig& cfg, Json& result) {
  if (args.rho.empty() || args.h.empty()) {
    throw Error(ErrorKind::InvalidArgument, "need --rho and --H");
  }
  const DensityMatrix rho0 = validate_density(load_matrix(args.rho), cfg.tol);
  const HermitianMatrix h(load_matrix(args.h), cfg.tol.herm_tol);
  std::vector<HermitianMatrix> observables;
  for (const auto& path : args.observables) {
    observables.emplace_back(load_matrix(path), cfg.tol.herm_tol);
    if (observables.back().dim() != rho0.dim()) {
      throw Error(ErrorKind::DimensionMismatch, "observable " + path + " has the wrong size");
    }
  }
  const FlowTrajectory traj = evolve(rho0, h, args.t_final, args.steps, cfg.hbar, cfg.stride, cfg.tol);

  result["times"] = traj.times;
  Json expectations = Json::array();
  Json ehrenfest = Json::array();
  for (const auto& a : observables) {
    std::vector<double> values;
    for (const auto& s : traj.states) values.push_back(expectation(s.matrix(), a.matrix()));
    expectations.push_back(values);
    try {
      ehrenfest.push_back(ehrenfest_check(traj, a));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::TooFewSteps) throw;
      ehrenfest.push_back(nullptr);
    }
  }
  result["expectations"] = std::move(expectations);
  result["final_state"] = io::matrix_to_json(traj.states.back().matrix());
  Json diag;
  diag["spectrum_drift"] = spectrum_drift(traj);
  diag["trace_drift"] = trace_drift(traj);
  diag["energy_drift"] = energy_drift(traj);
  diag["ehrenfest_max_dev"] = std::move(ehrenfest);
  result["diagnostics"] = std::move(diag);
  return kOk;
}

int cmd_sample(const std::string& plan_path, bool with_samples, bool serial,
               const io::RunConfig& cfg, const Hooks& hooks, Json& result) {
  Json plan_doc;
  try {
    plan_doc = io::read_json_file(plan_path);
  } catch (const Error& e) {
    throw Error(ErrorKind::InvalidPlan, e.what());
  }
  const SamplingPlan plan = io::plan_from_json(plan_doc);
  plan.validate(cfg.tol);
  const CompareResult res =
      serial ? reference::compare_bounds(plan, cfg.hbar, cfg.seed, cfg.tol, hooks.bound_transform)
             : compare_bounds(plan, cfg.hbar, cfg.seed, cfg.tol, hooks.bound_transform);
  result["plan"] = io::plan_to_json(plan);
  result["hbar"] = cfg.hbar;
  result["seed"] = cfg.seed;
  result["aggregates"] = stats_json(res.stats);
  if (with_samples) {
    Json samples = Json::array();
    for (const auto& r : res.reports) samples.push_back(report_json(r));
    result["samples"] = std::move(samples);
  }
  return res.stats.violations_geometric > 0 ? kCheckFailed : kOk;
}

io::RunConfig base_config() {
  io::RunConfig cfg;
  if (const char* path = std::getenv("PHASESPACE_CONFIG"); path && *path) {
    cfg = io::config_from_json(io::read_json_file(path));
  }
  return cfg;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Hooks& hooks) {
  CLI::App app{"Kähler geometry of density-matrix orbits"};
  app.name("phasespace");
  app.require_subcommand(1);

  std::optional<double> hbar;
  std::optional<std::uint64_t> seed;
  std::optional<double> cluster_tol;
  std::optional<int> stride;
  std::string output = "stdout";
  app.add_option("--hbar", hbar, "reduced Planck constant (default 1)");
  app.add_option("--seed", seed, "RNG seed (default 0)");
  app.add_option("--cluster-tol", cluster_tol, "eigenvalue clustering gap (default 1e-8)");
  app.add_option("--stride", stride, "keep every n-th trajectory step (default 1)");
  app.add_option("--output", output, "output path or 'stdout'");

  std::string classify_input;
  auto* classify = app.add_subcommand("classify", "classify the orbit of a state or spectrum");
  classify->add_option("input", classify_input, "matrix JSON file or spectrum literal nu:m,...")
      ->required();

  Inputs geo_in;
  auto* geometry = app.add_subcommand("geometry", "symplectic form, metric and cross-checks");
  Inputs unc_in;
  auto* uncertainty = app.add_subcommand("uncertainty", "variances and uncertainty bounds");
  for (auto [cmd, in] : {std::pair{geometry, &geo_in}, std::pair{uncertainty, &unc_in}}) {
    cmd->add_option("--rho", in->rho, "density matrix JSON");
    cmd->add_option("--A", in->a, "observable A JSON");
    cmd->add_option("--B", in->b, "observable B JSON");
    cmd->add_option("--random-n", in->random_n, "draw a random instance of this dimension")
        ->check(CLI::PositiveNumber);
  }

  EvolveArgs ev;
  auto* evolve_cmd = app.add_subcommand("evolve", "integrate the von Neumann flow");
  evolve_cmd->add_option("--rho", ev.rho, "initial density matrix JSON")->required();
  evolve_cmd->add_option("--H", ev.h, "Hamiltonian JSON")->required();
  evolve_cmd->add_option("--t-final", ev.t_final, "final time")->required();
  evolve_cmd->add_option("--steps", ev.steps, "number of steps")->required();
  evolve_cmd->add_option("--observable", ev.observables, "observable JSON (repeatable)");

  std::string plan_path;
  bool with_samples = false;
  bool serial = false;
  auto* sample = app.add_subcommand("sample", "compare bounds over a random ensemble");
  sample->add_option("--plan", plan_path, "sampling plan JSON")->required();
  sample->add_flag("--samples", with_samples, "include per-sample reports");
  sample->add_flag("--serial", serial, "use the serial reference kernel");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  Json result;
  int code = kOk;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return kOk;
    } catch (const CLI::ParseError& e) {
      throw Error(ErrorKind::ParseError, e.what());
    }

    io::RunConfig cfg = base_config();
    if (hbar) cfg.hbar = *hbar;
    if (seed) cfg.seed = *seed;
    if (cluster_tol) cfg.tol.cluster_tol = *cluster_tol;
    if (stride) cfg.stride = *stride;
    cfg.validate();

    if (classify->parsed()) {
      code = cmd_classify(classify_input, cfg, result);
    } else if (geometry->parsed()) {
      code = cmd_geometry(geo_in, cfg, result);
    } else if (uncertainty->parsed()) {
      code = cmd_uncertainty(unc_in, cfg, result);
    } else if (evolve_cmd->parsed()) {
      code = cmd_evolve(ev, cfg, result);
    } else {
      code = cmd_sample(plan_path, with_samples, serial, cfg, hooks, result);
    }
  } catch (const Error& e) {
    err << "phasespace: " << e.what() << '\n';
    result = error_json(e.kind(), e.what(), e.residual());
    code = kInputError;
  }

  const std::string text = io::dump(result) + "\n";
  if (output == "stdout" || code == kInputError) {
    out << text;
  } else {
    std::ofstream file(output);
    if (!file) {
      err << "phasespace: cannot write " << output << '\n';
      out << io::dump(error_json(ErrorKind::InvalidArgument, "cannot write " + output, 0.0)) << '\n';
      return kInputError;
    }
    file << text;
  }
  return code;
}

}  // namespace phasespace::cli
