#pragma once

#include "rsp/qmath.hpp"

#include <string>
#include <vector>

// The pulse-identity suite behind `rsplab verify`: every published sequence
// checked against its closed-form operator, with the aligned global phase
// reported.

namespace rsp {

struct IdentityCheck {
    std::string name;
    bool passed = false;
    double max_error = 0.0;
    cplx phase{1.0, 0.0};  // aligned global phase, when applicable
    std::string note;
};

struct VerifyOptions {
    // Test fixture: negates every J-coupling angle before compiling, which
    // must break the EPR identity.
    bool corrupt_j_convention = false;
};

std::vector<IdentityCheck> run_identity_suite(const VerifyOptions& opts = {});

bool all_passed(const std::vector<IdentityCheck>& checks);

// Deterministic plain-text report, one line per identity.
std::string format_report(const std::vector<IdentityCheck>& checks);

}  // namespace rsp
