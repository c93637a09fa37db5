#pragma once

#include "mumford/bruhat_tits.hpp"
#include "mumford/graph.hpp"
#include "mumford/shift.hpp"

#include <string>
#include <vector>

namespace mumford {

struct ExtensionParams {
    int e = 1;
    int f = 1;
    unsigned long qL(unsigned long q) const;
};

void requireParams(const ExtensionParams& params);

// Every positive edge becomes a chain of e edges of length 1/e.
Subdivision extendGraph(const DirectedGraph& g, const ExtensionParams& params);
// Ball in the (q^f + 1)-regular tree with e steps per K-unit of distance.
TreePatch extendedTreePatch(unsigned long q, const ExtensionParams& params, int radiusK);

// Chains ordered original-major, position-minor.
EdgeMatrix extendEdgeMatrix(const EdgeMatrix& aPlus, int e);
std::vector<std::vector<int>> extendEdgeMatrix(const std::vector<std::vector<int>>& aPlus, int e);

Walk walkEmbeddingJ(const Subdivision& ext, const Walk& word);

struct IntertwiningReport {
    std::size_t checked = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

// J(T w) = T^e J(w) on every admissible walk of length 1..maxLen.
IntertwiningReport checkIntertwining(const Subdivision& ext, int e, int maxLen);

// Words of length e*n in the extended walk shift that start at a chain start.
Z chainAlignedCount(const Subdivision& ext, int e, int n);

struct RestrictionRow {
    int j = 0;                   // K word length
    std::size_t dimL = 0;        // L words of length j*e
    std::size_t dimK = 0;        // K words of length j
    std::size_t rank = 0;
    bool surjective = false;
    bool commutes = false;       // r o delta_e = delta o r into length j+1
};

// Cylinder functions graded by word length: r(chi_rho) = sum of chi_sigma with J(sigma) = rho.
std::vector<RestrictionRow> filtrationRestrictionRanks(const DirectedGraph& kGraph, unsigned long q, int e, int jMax);

} // namespace mumford
