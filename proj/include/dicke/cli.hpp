// cli.hpp: Command-line front end.
//
//   dicke spectrum|evolve|sweep|audit [--config PATH] [--set key=value]...
//                                     [--out PATH] [--format csv|json] [--deterministic]
//
// Exit codes: 0 ok, 2 validation error, 3 cutoff-audit failure,
// 4 numerical failure (resonant denominator, solver non-convergence),
// 1 anything unexpected.

#pragma once

#include "dicke/config.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace dicke {

enum ExitCode : int { exit_ok = 0, exit_internal = 1, exit_validation = 2, exit_audit = 3, exit_numerical = 4 };

/// One output document of a command.
struct CommandOutput {
    std::string experiment;
    std::string axis;
    std::string body;       // serialized CSV or JSON text
    std::string extension;  // "csv" or "json"
};

struct CommandResult {
    std::vector<CommandOutput> outputs;
    int exit_code{exit_ok};
    int warnings{0};
};

CommandResult cmd_spectrum(const RunConfig& config);
CommandResult cmd_evolve(const RunConfig& config);
CommandResult cmd_sweep(const RunConfig& config);
CommandResult cmd_audit(const RunConfig& config);

/// args exclude the program name. Outputs go to --out (file or directory)
/// or, without --out, to `out`; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dicke
