#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pickdirichlet {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
};

// Desk-scale verification suite: reproduces the library's defining algebraic
// identities against independent brute-force oracles and randomized spectral
// sweeps, printing one PASS/FAIL line per criterion to `out`. Backs both the
// `verify` CLI command and the acceptance test binary.
std::vector<CriterionResult> run_acceptance_suite(std::ostream& out);

bool all_passed(const std::vector<CriterionResult>& results);

} // namespace pickdirichlet
