#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <stdexcept>
#include <string>

#include "mps/verify.hpp"

using namespace mps;

TEST_CASE("suite names round trip") {
    for (const auto s : {VerifySuite::core, VerifySuite::lp, VerifySuite::linear,
                         VerifySuite::solver, VerifySuite::gevrey, VerifySuite::all})
        CHECK(parse_suite(suite_name(s)) == s);
    CHECK_THROWS_AS(parse_suite("decay"), std::invalid_argument);
    CHECK_THROWS_AS(parse_suite(""), std::invalid_argument);
}

TEST_CASE("every suite passes at reduced resolution") {
    VerifyOptions opt;
    opt.n = 32;
    opt.seed = 17;
    std::set<std::string> seen;
    std::size_t total = 0;
    for (const auto s : {VerifySuite::core, VerifySuite::lp, VerifySuite::linear,
                         VerifySuite::solver, VerifySuite::gevrey}) {
        const VerifyReport rep = verify(s, opt);
        CHECK(rep.suite == suite_name(s));
        CHECK(rep.all_pass);
        CHECK(rep.checks.size() >= 4);
        CHECK(rep.seconds > 0.0);
        for (const auto& c : rep.checks) {
            INFO(c.name, ": measured ", c.measured, " bound ", c.bound);
            CHECK(c.pass);
            CHECK(c.name.find(rep.suite + "/") == 0);
            seen.insert(c.name);
        }
        total += rep.checks.size();
    }
    CHECK(seen.size() == total);  // names are unique across suites

    const VerifyReport all = verify(VerifySuite::all, opt);
    CHECK(all.suite == "all");
    CHECK(all.all_pass);
    CHECK(all.checks.size() == total);
}

TEST_CASE("tampered eigenvalue formula is caught and named") {
    VerifyOptions opt;
    opt.n = 32;
    opt.tamper_eigenvalues = true;
    const VerifyReport rep = verify(VerifySuite::linear, opt);
    CHECK_FALSE(rep.all_pass);
    int failed = 0;
    for (const auto& c : rep.checks)
        if (!c.pass) {
            ++failed;
            CHECK(c.name == "linear/eigenvalue_closed_form");
        }
    CHECK(failed == 1);
}
