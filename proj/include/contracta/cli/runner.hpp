#pragma once

#include <iosfwd>
#include <string>

#include "contracta/cli/report.hpp"
#include "contracta/cli/scenario.hpp"

namespace contracta::cli {

enum ExitCode : int { kExitOk = 0, kExitParse = 2, kExitValidation = 3, kExitComputation = 4 };

struct ResolvedSeed {
  CSetPolytope set;
  double lambda;  // rate the set is certified for (lambda_eff for ellipsoid seeds)
};

/// Turns a seed block into a verified contractive polytope.
ResolvedSeed resolve_seed(const SystemModel& sys, const SeedSpec& seed);

/// Validates and executes a parsed scenario. Throws contracta::Error.
Report run_scenario(const Scenario& s);

/// Maps an in-flight exception to an exit code and writes a one-line message.
int exit_code_for(std::exception_ptr e, std::ostream& err);

/// Full command line front end; returns the process exit code.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace contracta::cli
