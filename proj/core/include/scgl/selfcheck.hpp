#pragma once

#include <string>
#include <vector>

#include "scgl/config.hpp"

namespace scgl {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Fast property suite over the configured parameters: flow-map bounds,
// sampler variances at reduced sample counts, coupling identities, Parseval,
// and the semigroup law. Used by the `validate` subcommand.
std::vector<CheckResult> run_selfcheck(const RunConfig& cfg);

}  // namespace scgl
