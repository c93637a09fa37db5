#pragma once

#include "mumford/bruhat_tits.hpp"
#include "mumford/graph.hpp"

#include <string>
#include <vector>

namespace mumford {

struct HyperbolicType {
    bool hyperbolic = false;
    long translationLength = 0;
};

HyperbolicType hyperbolicType(const Mat2& m, unsigned long p);

struct SchottkyGroup {
    PadicContext ctx;
    std::vector<Mat2> generators;
    int wordBound = 4;
};

// Letters are +(i+1) for generator i and -(i+1) for its inverse.
struct GroupWord {
    std::vector<int> letters;
    Mat2 m;
};

std::vector<GroupWord> reducedWords(const SchottkyGroup& g, int maxLen);

struct Certificate {
    bool ok = true;
    std::vector<std::string> notes;
};

// All reduced words up to wordBound hyperbolic with translation length at least
// |word| * min generator length; generator axes share no edge.
Certificate certifySchottky(const SchottkyGroup& g, const TreePatch& patch);
// Throws when the certificate fails.
void requireSchottky(const SchottkyGroup& g, const TreePatch& patch);

std::vector<int> axisVertices(const Mat2& m, const TreePatch& patch);
long minimalDisplacement(const Mat2& m, const TreePatch& patch);
std::vector<int> bridge(const std::vector<int>& axisA, const std::vector<int>& axisB, const TreePatch& patch);

// A vertex subset of an ambient ball around the standard lattice.
struct SubTree {
    TreePatch ambient;
    std::vector<bool> member;
    std::vector<int> sinks;   // reduction graphs: vertices at maximal distance from the core
    std::vector<int> core;    // reduction graphs: distance from the core, else all zero
    bool grew = false;
    int wordLength = 0;

    std::vector<int> vertices() const;
    int size() const;
    bool connected() const;
};

SubTree buildSchottkyTree(const SchottkyGroup& g, int wordLen, int radius);
// Ball of radius n around the subtree; frontier vertices of the ambient patch are
// truncation, not sinks. Requires n below the ambient radius.
SubTree reductionGraph(const SubTree& base, int n);

enum class Ambient { DeltaPrime, Reduction };

struct DualGraphData {
    DirectedGraph graph;
    std::vector<Walk> generatorWords;
    std::vector<int> lengths;
    Ambient ambient = Ambient::DeltaPrime;
    int baseVertex = 0;

    // Fundamental domain: ambient patch edges (u, v), one per quotient edge.
    std::vector<std::pair<int, int>> domainEdges;
    std::vector<int> domainVertices;
    // Per quotient vertex, its representative in the ambient patch.
    std::vector<int> repVertex;
    // Per quotient oriented edge, its lift (u, v) leaving the representative.
    std::vector<std::pair<int, int>> edgeLift;
    bool liftValid = true;

    std::vector<TailInfo> tails;
    bool certified = false;
    int identificationWordLength = 0;
    int identificationRadius = 0;
    std::vector<std::string> notes;
};

DualGraphData quotientDualGraph(const SchottkyGroup& g, const SubTree& sub, Ambient which,
                                int identificationRadius = -1, int tailDepth = kDefaultTailDepth);

DualGraphData equalizeLoopLengths(const DualGraphData& d, int budget = 64);

// Contracts valence-two quotient vertices that are not needed to keep the
// generator loops closed (best-effort stand-in for the minimal tree).
DualGraphData stabilizeValenceTwo(const DualGraphData& d);

// Lifts a word of the quotient to the ambient patch, first edge taken from the
// fundamental-domain star; returns ambient vertex sequence.
std::vector<int> liftWord(const SchottkyGroup& g, const SubTree& sub, const DualGraphData& d, const Walk& word);

} // namespace mumford
