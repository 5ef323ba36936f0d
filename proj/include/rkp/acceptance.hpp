// The verification suite behind `rkp verify` and the acceptance test binary:
// every criterion pins its tolerance in code and reports one pass/fail line.
#pragma once

#include <string>
#include <vector>

namespace rkp::acceptance {

struct CriterionResult {
    int id;
    std::string name;
    bool passed;
    std::string detail;
    double seconds;
};

std::vector<CriterionResult> run_all();

/// Render one fixed-width line per criterion ("PASS  3  ...").
std::string format_line(const CriterionResult& r);

}  // namespace rkp::acceptance
