#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mps {

// Self-check suites runnable from the command line. Each suite re-verifies
// the invariants its module is built on, with fresh random data, and is fast
// enough to run before trusting a longer experiment.
enum class VerifySuite { core, lp, linear, solver, gevrey, all };

// "core", "lp", "linear", "solver", "gevrey", "all"; throws on other names
VerifySuite parse_suite(const std::string& name);
std::string suite_name(VerifySuite suite);

struct VerifyCheck {
    std::string name;  // "linear/eigenvalue_closed_form"
    bool pass = false;
    double measured = 0.0;  // worst error or ratio seen
    double bound = 0.0;     // what measured was compared against
    std::string detail;     // one line of context
};

struct VerifyOptions {
    int n = 64;  // resolution for the field-based checks
    std::uint64_t seed = 1;
    // negative-control fixture: report the eigenvalue cross-check against a
    // deliberately corrupted closed form, proving a broken formula is caught
    // and named rather than silently passing
    bool tamper_eigenvalues = false;
};

struct VerifyReport {
    std::string suite;
    std::vector<VerifyCheck> checks;
    bool all_pass = false;
    double seconds = 0.0;
};

VerifyReport verify(VerifySuite suite, const VerifyOptions& opt = {});

}  // namespace mps
