#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "ustokes/report_io.hpp"

namespace ustokes::cli {

enum class Command { run, convergence, verify };
enum class VariantChoice { collocation, interpolation, both };

/// Fully resolved invocation; the defaults reproduce the reference setup
/// (coarsest mesh 4x4 with tau = 1, levels 0..3, both variants, T = 2).
struct RunConfig {
    Command command = Command::convergence;
    int level_min = 0;
    int level_max = 3;
    VariantChoice variant = VariantChoice::both;
    double solver_tolerance = 1e-10;
    std::string output_path = "-";
    OutputFormat format = OutputFormat::csv;
    int time_quad_points = 5;
    int error_quad_points = 5;
    unsigned int seed = 42;
    bool inject_fault = false;
};

/// Malformed flags/config files and failed validation (exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parses the argument list (without the program name): an optional leading
/// command (run | convergence | verify; default convergence) followed by
/// flags.  `--config FILE` values are applied before flags; flags win and
/// each override is reported as a warning on `diagnostics`.
///
/// Flags: --levels A..B (or a single level A), --variant V, --solver-tol X,
/// --output PATH ("-" = stdout), --format csv|markdown, --time-quad K,
/// --error-quad K, --seed N, --inject-fault, --config FILE.  Values may also
/// be attached with '='.  Config files hold `key = value` lines ('#' starts
/// a comment) with the flag names spelled with underscores.
RunConfig parse_config(const std::vector<std::string>& args, std::ostream& diagnostics);

/// Runs the configured command.  Reports go to `output_path` (or stdout);
/// verify results and diagnostics go to `out` / `diagnostics`.
/// Exit codes: 0 success, 1 invariant failure, 2 config error, 3 solver
/// failure.
int run_cli(const RunConfig& config, std::ostream& out, std::ostream& diagnostics);

/// main() body: parse, run, map exceptions to exit codes.
int main_entry(int argc, char** argv);

/// "out.csv" -> "out_collocation.csv" (used when one invocation writes
/// reports for both variants).
std::string variant_tagged_path(const std::string& base_path, Variant variant);

}  // namespace ustokes::cli
