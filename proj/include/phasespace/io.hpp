#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "phasespace/linalg.hpp"
#include "phasespace/sampling.hpp"
#include "phasespace/spectrum.hpp"

namespace phasespace::io {

using Json = nlohmann::ordered_json;

struct RunConfig {
  double hbar = 1.0;
  Tolerances tol;
  std::uint64_t seed = 0;
  int stride = 1;

  /// Throws InvalidArgument unless every tolerance and hbar is positive.
  void validate() const;
};

/// Overlays the keys present in `doc` onto `base`.
RunConfig config_from_json(const Json& doc, RunConfig base = {});

/// {"n": n, "entries": [[[re, im], …], …]}
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& doc);

Json parse_json(const std::string& text);
Json read_json_file(const std::filesystem::path& path);

/// Serialises with every floating-point number printed as %.17g. Non-finite
/// numbers become null.
std::string dump(const Json& doc, int indent = 2);

/// Formats one double the way dump() does.
std::string format_double(double x);

SamplingPlan plan_from_json(const Json& doc);
Json plan_to_json(const SamplingPlan& plan);

}  // namespace phasespace::io
