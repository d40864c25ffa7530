#ifndef SP6FLAGS_VERIFY_HPP
#define SP6FLAGS_VERIFY_HPP

#include <string>
#include <vector>

namespace sp6flags {

struct SuiteResult {
    std::string name;
    int instances = 0; ///< property instances actually exercised
    int failures = 0;
    bool passed = false; ///< ran to completion with zero failures
    double elapsed_seconds = 0.0;
    std::string detail; ///< description of the first failure, empty when clean
};

struct VerifyReport {
    unsigned seed = 0;
    int trials = 0;
    std::vector<SuiteResult> suites;
    bool all_passed = false;
};

/// Names accepted by run_verify, in execution order.
std::vector<std::string> verify_suite_names();

/// Runs one named property suite, or every suite for "all".  `trials` is the
/// base instance budget; a few expensive suites derate it by a fixed factor
/// (stabilizer nullspaces by 5, the quaternion triangle by 10) so the cost
/// per suite stays comparable.  Deterministic given (suite, seed, trials):
/// every suite draws from its own generator seeded from `seed` and a fixed
/// per-suite offset.  Unknown names throw ParseError, trials < 1
/// PreconditionError.  A failing property increments the suite's failure
/// count and is reported; it never aborts the remaining instances.
VerifyReport run_verify(const std::string& suite, unsigned seed, int trials);

} // namespace sp6flags

#endif
