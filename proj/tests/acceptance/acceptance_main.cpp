#include "mumford/acceptance.hpp"

#include <CLI11.hpp>

#include <cstdio>

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria, one line per criterion"};
    std::vector<int> only;
    std::vector<int> knownRed;
    app.add_option("--only", only, "Run these criteria only")->check(CLI::Range(1, mumford::kCriteria));
    app.add_option("--known-red", knownRed, "Criteria expected to fail; exit 0 iff exactly these fail")
        ->check(CLI::Range(1, mumford::kCriteria));
    CLI11_PARSE(app, argc, argv);

    std::vector<mumford::CriterionResult> rs;
    if (only.empty())
        for (int i = 1; i <= mumford::kCriteria; ++i) {
            rs.push_back(mumford::runCriterion(i));
            std::printf("%s\n", mumford::formatResult(rs.back()).c_str());
            std::fflush(stdout);
        }
    else
        for (int i : only) {
            rs.push_back(mumford::runCriterion(i));
            std::printf("%s\n", mumford::formatResult(rs.back()).c_str());
        }
    std::set<int> red(knownRed.begin(), knownRed.end());
    if (!only.empty()) {
        std::set<int> sel(only.begin(), only.end());
        std::set<int> r2;
        for (int i : red)
            if (sel.count(i)) r2.insert(i);
        red = r2;
    }
    int failed = 0;
    for (const auto& r : rs) failed += !r.pass;
    std::printf("%d of %zu criteria pass", static_cast<int>(rs.size()) - failed, rs.size());
    if (!red.empty()) {
        std::printf("; known red:");
        for (int i : red) std::printf(" %d", i);
    }
    std::printf("\n");
    return mumford::acceptanceStatus(rs, red);
}
