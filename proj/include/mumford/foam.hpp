#pragma once

#include "mumford/graph.hpp"
#include "mumford/io.hpp"
#include "mumford/operators.hpp"
#include "mumford/zeta.hpp"

#include <map>
#include <string>
#include <vector>

namespace mumford {

struct FoamLambda {
    cplx alpha;              // q^alpha = lambda
    int dGamma = 0;
    int dZero = 0;
    int vertex = -1;         // x_lambda; -1 picks vertex 0
    std::vector<Walk> loops; // dGamma closed walks of the dual graph (oriented edge ids)

    int d() const { return dGamma + dZero; }
};

struct FoamSpec {
    DirectedGraph graph;
    unsigned long q = 2;
    std::vector<FoamLambda> perLambda;

    EulerFactor eulerFactor() const;
};

// { "q": 2, "graph": {...}, "lambdas": [ {"alpha": "re+imj" | "lambda": "re+imj",
//   "d_gamma", "d_zero", "vertex", "loops": [[edge ids]]} ] }. A loop entry is a
// positive edge id, or "~id" for its involute.
FoamSpec foamSpecFromJson(const json& j);
json foamSpecToJson(const FoamSpec& s);

void requireFoamSpec(const FoamSpec& s);

struct FoamGraph {
    DirectedGraph graph;
    std::vector<std::vector<int>> attachments;   // per lambda, oriented ids of the new edges
    std::vector<std::vector<Walk>> tailWalks;    // per lambda, attachment edge followed by its tail
    std::vector<TailInfo> sinkTails;             // tails appended to sinks of the dual graph
    int tailDepth = 0;
};

FoamGraph buildFoamGraph(const FoamSpec& spec, int tailDepth = kDefaultTailDepth);

struct FoamVector {
    int lambda = 0;
    bool component = false;  // true for the zero-dimensional part (tail cylinder)
    int index = 0;
    int repetitions = 0;
    int level = 0;
    std::vector<Q> chi;
    std::vector<Q> phi;      // projection onto Gr at the level
    std::vector<Q> phiF;     // projection onto F at the level
};

struct FoamLambdaEmbedding {
    int dGamma = 0, dZero = 0;
    std::vector<int> rotation;
    std::map<int, std::size_t> dimGr;   // dim(Gr_level cap V_lambda)
    std::map<int, std::size_t> dimF;    // rank of the F projections
    std::map<int, QMatrix> projection;  // pi(V_lambda) on Gr components
};

struct FoamEmbedding {
    int ell = 1;
    std::vector<FoamVector> vectors;
    std::vector<FoamLambdaEmbedding> perLambda;
    bool mutuallyOrthogonal = true;
    std::vector<std::string> notes;
};

// f must be the filtration of the shift built on fg.graph. A tail cylinder longer
// than its attachment edge is delta(1 - tail indicator) and iota of a shorter one,
// so both of its projections vanish; these are listed in notes.
FoamEmbedding foamEmbeddings(const FoamSpec& spec, const FoamGraph& fg, const FiltrationSpace& f, int nMax);

} // namespace mumford
