#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dho/output.hpp"
#include "dho/scenario.hpp"

namespace dho {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,
  kExitNumerical = 2,
};

/// Entry point of the `dho` tool. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

/// Rows of t, moments and derived scalars for each sample time.
Table evolve_table(const Scenario& sc);
/// One row of the stationary moments and scalars (no time column).
Table steady_table(const Scenario& sc);
Table purity_table(const Scenario& sc);

/// Built-in randomized property sweep; returns an ExitCode.
int run_selftest(std::uint64_t seed, std::ostream& out);

}  // namespace dho
