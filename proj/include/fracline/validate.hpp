#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fracline {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Runs the full acceptance suite at desk scale.  When `progress` is
/// given, one "PASS"/"FAIL" line per criterion is streamed as results
/// come in.
std::vector<CriterionResult> run_acceptance(std::ostream* progress = nullptr);

/// True when every criterion passed.
bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace fracline
