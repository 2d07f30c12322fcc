#pragma once

#include <string>
#include <vector>

namespace ddm {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Quick closed-form and oracle-pair consistency checks, run by `ddm check`.
std::vector<CheckResult> run_self_checks();

} // namespace ddm
