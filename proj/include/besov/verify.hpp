#pragma once

#include <string>
#include <vector>

namespace besov {

struct CheckResult {
    std::string name;
    bool passed;
    std::string detail;
};

/// Runs the invariant suite. `quick` restricts it to the cheap structural checks.
std::vector<CheckResult> run_verification(bool quick);

}  // namespace besov
