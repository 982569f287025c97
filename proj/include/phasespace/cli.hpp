#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "phasespace/sampling.hpp"

namespace phasespace::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kCheckFailed = 3 };

struct Hooks {
  /// Applied to every geometric bound in `sample`; only test builds set it.
  BoundTransform bound_transform;
};

/// Runs one CLI invocation. `args` excludes the program name. Reports go to
/// `out` (or the --output file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Hooks& hooks = {});

}  // namespace phasespace::cli
