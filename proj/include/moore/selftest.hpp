#pragma once

// Seeded property suites shared by `moore selftest` and the acceptance
// runner. Each suite is deterministic given its seed.

#include <cstdint>
#include <string>
#include <vector>

#include "moore/noncomm.hpp"

namespace moore {

struct SuiteResult {
    int id = 0;
    std::string name;
    bool passed = false;
    int cases = 0;        // random instances examined
    std::string detail;   // first failure, or a short summary
    double seconds = 0;
};

struct SuiteInfo {
    int id;
    std::string name;
};

/// Suites 1..10 in order.
const std::vector<SuiteInfo>& suite_list();

/// Throws InvalidArgument for an unknown id. Internal errors are reported
/// as failures, never rethrown.
SuiteResult run_suite(int id, std::uint64_t seed);

struct UniversalCheck {
    Ring ring;                 // Q with the formal coefficients adjoined
    int arity = 0;             // highest power of t carrying a formal coefficient
    int word_length = 0;
    SquareZeroResult cobar;    // m* o m* on R<<tau, t>>
    bool bar_checked = false;  // m o m on the bar side, arities <= bar_arity
    bool bar_ok = false;
    int bar_arity = 0;
};

/// Square-zero check for the structure with formal coefficients
/// u_1..u_arity (even) or v_1..v_{arity/2}, w_1..w_{arity/2} (odd). The
/// bar-side check runs for arities <= bar_arity when bar_arity > 0.
UniversalCheck verify_universal(bool odd, int arity, int word_length, int bar_arity = 0);

}  // namespace moore
