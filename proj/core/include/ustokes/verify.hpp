#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ustokes {

/// Options of the self-contained invariant suite.  The fault hook flips the
/// sign of one stored entry of the divergence operator before the time march
/// and must be caught by the divergence-freeness check.
struct VerifyOptions {
    unsigned int seed = 42;
    bool inject_fault = false;
    double solver_tolerance = 1e-10;
};

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool all_passed() const;
};

/// Runs the cross-module checks: quadrature exactness, forcing vs. finite
/// differences at seeded random points, discrete divergence-freeness of the
/// midpoint velocities, C1/C0 continuity of the lifted velocity and nodal
/// pressure, the per-node collocation residual, a dense brute-force solve of
/// the augmented saddle system on a 2x2 mesh against all four production
/// solves, and the all-zero solution of the zero-data problem.
VerifyReport run_verification(const VerifyOptions& options = {});

/// One "PASS name -- detail" / "FAIL name -- detail" line per check.
void print_verification(const VerifyReport& report, std::ostream& out);

}  // namespace ustokes
