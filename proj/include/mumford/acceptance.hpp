#pragma once

#include <set>
#include <string>
#include <vector>

namespace mumford {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double seconds = 0;
    double budget = 0;     // seconds, 0 for none
    std::string detail;
};

inline constexpr int kCriteria = 10;

CriterionResult runCriterion(int id);
std::vector<CriterionResult> runAcceptance();

// "[PASS] 3 foam-local-factor (0.02s / 10s): detail"
std::string formatResult(const CriterionResult& r);

// 0 when the failing set equals knownRed, 1 otherwise.
int acceptanceStatus(const std::vector<CriterionResult>& rs, const std::set<int>& knownRed);

} // namespace mumford
