#pragma once

#include "mumford/linalg.hpp"
#include "mumford/shift.hpp"

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace mumford {

// Level n of the filtration space carries the cylinders of words of length n+1.
// s[w][n] prepends w (level n -> n+1), sAdj[w][n] is its Gram adjoint and
// t[w][n] the lowering operator f -> f(w .) (level n+1 -> n).
struct OperatorSet {
    FiltrationSpace space;
    int truncation = 0;
    std::vector<std::vector<QMatrix>> pv;    // [vertex][n]
    std::vector<std::vector<QMatrix>> pi;    // [letter][n]
    std::vector<std::vector<QMatrix>> s;     // [letter][n], n < N
    std::vector<std::vector<QMatrix>> sAdj;  // [letter][n], n < N
    std::vector<std::vector<QMatrix>> t;     // [letter][n], n < N

    const ShiftSpace& shift() const { return space.shift; }
    unsigned long q() const { return space.shift.q; }
};

OperatorSet buildOperators(const FiltrationSpace& f);

struct RelationCheck {
    explicit RelationCheck(std::string n = {}) : name(std::move(n)) {}
    std::string name;
    bool pass = true;
    std::size_t checked = 0;   // (letter or vertex, level) instances verified
    std::size_t clipped = 0;   // instances outside the truncation window
    std::string witness;
};

struct CKReport {
    std::vector<RelationCheck> checks;
    bool ok() const;
    bool cuntzKriegerOk() const;   // every check except delta commutation
    const RelationCheck& find(const std::string& name) const;
};

// Projections, q s*s = P_r(w) (minus Pi_inv(w) on the walk alphabet),
// P_v = sum q s s*, q s*s = sum A q s' s'*, and s delta = delta s.
CKReport checkCKRelations(const OperatorSet& o);

struct EmbeddedVector {
    int generator = 0;
    int repetitions = 0;  // N
    int level = 0;        // filtration level of the cylinder, N*ell - 1
    std::vector<Q> chi;
    std::vector<Q> phi;   // orthogonal projection of chi onto Gr at its level
};

struct CohomologyEmbedding {
    int ell = 0;
    int genus = 0;
    std::vector<int> rotation;                // cyclic shift applied to each generator word
    std::vector<EmbeddedVector> vectors;
    std::map<int, std::size_t> dimPerLevel;   // dim(Gr_level cap V)
    std::map<int, QMatrix> projection;        // pi(V) restricted to each level
    std::size_t totalRank = 0;
};

// Generator words as letter words of the shift, all of length ell.
CohomologyEmbedding embedCohomology(const FiltrationSpace& f, const std::vector<Word>& generators, int nMax);

struct AFCoreElement {
    QMatrix q;
    int level = 0;
    bool idempotent = false;
    bool multipliesByCylinder = false;
    std::string certificate;
};

// q^(n|w|) s_w^n (s_w^*)^n at the given level, with s_w composed along the word.
AFCoreElement afCoreElement(const OperatorSet& o, const Word& word, int n, int level);

// Trace of Q_{i,n} on span{chi_{j,n}} and of its transport by the Gr projection.
struct AFTrace {
    Q onCylinders;
    Q transported;
};
AFTrace afCoreTrace(const OperatorSet& o, const std::vector<Word>& generators, int i, int n);

// Sum over sides and 1 <= n <= nTrunc of Tr(Q_{i,n}) (n unit)^-z plus the tail with trace g.
struct AFZeta {
    std::complex<double> value;
    std::vector<Q> traces;   // per n, summed over generators and both sides
};
AFZeta zetaViaAFCore(const OperatorSet& o, const std::vector<Word>& generators, int nTrunc, double unit,
                     std::complex<double> z);

} // namespace mumford
