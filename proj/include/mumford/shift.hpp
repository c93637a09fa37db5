#pragma once

#include "mumford/bruhat_tits.hpp"
#include "mumford/graph.hpp"
#include "mumford/linalg.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace mumford {

// Walks: all oriented edges with the no-backtracking matrix A.
// Paths: positive edges with A+.
enum class Alphabet { Walks, Paths };

using Word = std::vector<int>;  // letter indices

struct ShiftSpace {
    DirectedGraph graph;
    Alphabet alphabet = Alphabet::Walks;
    unsigned long q = 2;
    std::vector<int> letters;            // oriented edge of each letter
    std::vector<std::vector<int>> a;     // transition matrix on letters
    std::vector<bool> terminal;          // enters a frontier vertex, repeats itself
    std::vector<int> trimmed;            // oriented edges dropped as not bi-extendable

    int size() const { return static_cast<int>(letters.size()); }
    int letterOf(int edge) const;        // -1 if not a letter
    int src(int l) const { return graph.src(letters.at(l)); }
    int rng(int l) const { return graph.rng(letters.at(l)); }
    Word wordOfWalk(const Walk& w) const;
    Walk walkOfWord(const Word& w) const;
    bool admissible(const Word& w) const;
};

// Throws if the graph has sinks (append tails first).
ShiftSpace buildSFT(const DirectedGraph& g, unsigned long q, Alphabet alphabet = Alphabet::Walks);
ShiftSpace withTransitionFlipped(const ShiftSpace& s, int i, int j);

// theta_n = number of admissible words of length n+1 = sum of entries of A^n.
std::vector<Z> thetaCounts(const ShiftSpace& s, int nMax);
// Words of length len in lexicographic letter order; throws past the cap.
std::vector<Word> wordsOfLength(const ShiftSpace& s, int len, std::size_t cap = kDefaultWalkCap);
// Number of weakly connected components of the transition graph.
int transitionComponents(const ShiftSpace& s);

struct ShadowMeasure {
    TreePatch patch;
    std::vector<Q> mass;         // per oriented patch edge
    std::vector<bool> truncated; // continuation leaves the patch
    Q total;
};

ShadowMeasure shadowMeasure(const TreePatch& t);
// Oriented patch edge u -> v, or -1.
int patchEdge(const TreePatch& t, int u, int v);
Walk patchWalk(const TreePatch& t, const std::vector<int>& vertices);
// Two-sided shadow product for the segment; marking in [0, |walk|).
Q cylinderMeasure(const ShadowMeasure& m, const Walk& walk, int marking = 0);

struct AdditivityReport {
    std::size_t checked = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

// mass(w) = sum of mass(w') over continuations, at every edge ending inside the patch.
AdditivityReport checkShadowAdditivity(const ShadowMeasure& m);
// Marking independence and left/right refinement of cylinders on all windows up to maxLen.
AdditivityReport checkShiftInvariance(const ShadowMeasure& m, int maxLen);

using WeightFn = std::function<Q(const Word&)>;
// q^-|word|.
WeightFn conformalWeights(unsigned long q);

struct FiltrationLevel {
    std::vector<Word> words;             // length n+1
    std::map<Word, int> index;
    std::vector<Q> gram;                 // diagonal Gram entries
    QMatrix iota;                        // P_{n-1} -> P_n, f viewed one letter finer
    QMatrix tau;                         // P_{n-1} -> P_n, f o T
    QMatrix delta;                       // iota - tau
    QMatrix f;                           // basis of F_n, orthocomplement of delta P_{n-1}
    QMatrix gr;                          // basis of Gr_n
    std::size_t kernelDelta = 0;         // dim ker(delta: P_{n-1} -> P_n)
    std::size_t jRank = 0;               // rank of j: F_{n-1} -> F_n

    std::size_t dim() const { return words.size(); }
    QMatrix gramMatrix() const { return QMatrix::diag(gram); }
};

struct FiltrationSpace {
    ShiftSpace shift;
    int truncation = 0;
    std::vector<Z> theta;
    std::vector<FiltrationLevel> levels;

    std::size_t rankF(int n) const { return levels.at(n).f.cols(); }
    std::size_t rankGr(int n) const { return levels.at(n).gr.cols(); }
    // Orthogonal projection onto Gr_n inside P_n.
    QMatrix projectorGr(int n) const;
    std::vector<Q> indicator(int n, const Word& w) const;  // characteristic vector of the cylinder of w at level n
};

FiltrationSpace filtrationData(const ShiftSpace& s, int N, WeightFn weights = {});

} // namespace mumford
