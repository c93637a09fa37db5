#pragma once

#include "mumford/rational.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace mumford {

using Walk = std::vector<int>;

// Oriented edges come in pairs w, inv(w). Graphs built with addEdge use the
// layout positive edge k <-> oriented id 2k, involute 2k+1.
class DirectedGraph {
public:
    DirectedGraph() = default;
    explicit DirectedGraph(int numVertices);

    // Arbitrary data, used to exercise validation.
    static DirectedGraph fromRaw(int numVertices, std::vector<int> src, std::vector<int> rng,
                                 std::vector<int> inv, std::vector<bool> positive);

    int addVertex();
    int addEdge(int s, int r, Q length = Q(1));

    int numVertices() const { return nv_; }
    int numOriented() const { return static_cast<int>(src_.size()); }
    int numEdges() const { return static_cast<int>(pos_.size()); }

    int src(int w) const { return src_.at(w); }
    int rng(int w) const { return rng_.at(w); }
    int inv(int w) const { return inv_.at(w); }
    bool isPositive(int w) const { return positive_.at(w); }
    // Oriented id of the k-th positive edge.
    int positiveId(int k) const { return pos_.at(k); }
    const std::vector<int>& positiveIds() const { return pos_; }
    // Index k of the positive edge underlying w.
    int edgeIndex(int w) const;

    const Q& length(int k) const { return len_.at(k); }
    void setLength(int k, Q l) { len_.at(k) = std::move(l); }

    bool isFrontier(int v) const { return frontier_.at(v); }
    void setFrontier(int v, bool f = true) { frontier_.at(v) = f; }

    std::vector<int> outEdges(int v) const;          // all oriented, by id
    std::vector<int> positiveOutEdges(int v) const;  // positive only
    int degree(int v) const;

private:
    int nv_ = 0;
    std::vector<int> src_, rng_, inv_;
    std::vector<bool> positive_;
    std::vector<int> pos_;
    std::vector<int> edgeOf_;
    std::vector<Q> len_;
    std::vector<bool> frontier_;
};

struct ValidationReport {
    std::vector<std::string> violations;
    std::vector<int> sinks;
    std::vector<int> frontier;
    bool rowFinite = true;
    bool locallyFinite = true;
    bool valid() const { return violations.empty(); }
};

ValidationReport validateGraph(const DirectedGraph& g);
void requireValid(const DirectedGraph& g);

enum class WalkMode { Walks, Paths };

struct WalkEnumeration {
    std::vector<Walk> walks;
    bool touchesFrontier = false;
    std::size_t absorbed = 0;  // partial walks stopped at a frontier vertex
};

inline constexpr std::size_t kDefaultWalkCap = 1000000;

WalkEnumeration enumerateWalks(const DirectedGraph& g, int n, WalkMode mode,
                               std::size_t cap = kDefaultWalkCap);
bool isAdmissible(const DirectedGraph& g, const Walk& w, WalkMode mode);

struct EdgeMatrix {
    std::vector<int> index;               // oriented edge ids
    std::vector<std::vector<int>> a;      // 0/1
    std::size_t size() const { return index.size(); }
    bool operator==(const EdgeMatrix& o) const { return a == o.a; }
};

struct EdgeMatrices {
    EdgeMatrix aPlus;
    EdgeMatrix a;
};

EdgeMatrices edgeMatrices(const DirectedGraph& g);
Z sumOfPowerEntries(const std::vector<std::vector<int>>& a, int n);

struct TailInfo {
    int sink = -1;
    std::vector<int> vertices;   // t1..td
    std::vector<int> edges;      // positive edge indices, outward
};

struct TailedGraph {
    DirectedGraph graph;
    std::vector<TailInfo> tails;
};

inline constexpr int kDefaultTailDepth = 16;

TailedGraph appendTails(const DirectedGraph& g, int depth = kDefaultTailDepth);

// Partial permutations, -1 where undefined; edge maps act on oriented ids.
struct GraphAction {
    std::vector<std::vector<int>> vertexMaps;
    std::vector<std::vector<int>> edgeMaps;
};

GraphAction extendActionToTails(const GraphAction& act, const DirectedGraph& original,
                                const TailedGraph& tailed);

struct Subdivision {
    DirectedGraph graph;
    std::vector<std::vector<int>> chain;  // original positive edge -> new positive edge indices
    DirectedGraph source;
    Walk mapWalk(const Walk& w) const;    // image of an oriented-edge word
};

// parts[k] for every positive edge k (1 = untouched).
Subdivision subdivideEdges(const DirectedGraph& g, const std::vector<int>& parts);
Subdivision subdivideEdges(const DirectedGraph& g, const std::vector<int>& edges, int parts);

int componentCount(const DirectedGraph& g);
int bettiNumber(const DirectedGraph& g);

Walk freeReduce(const DirectedGraph& g, Walk w);
Walk inverseWalk(const DirectedGraph& g, const Walk& w);

struct CoverData {
    DirectedGraph tree;
    std::vector<Walk> vertexWalk;     // reduced walk from v0 per cover vertex
    std::vector<int> vertexProj;
    std::vector<int> edgeProj;        // oriented cover edge -> oriented edge
    std::vector<int> spanningTree;    // positive edge indices
    std::vector<Walk> generators;     // closed walks at v0
    int depth = 0;
    // Deck transformation of generator i (sign +1 or -1) as a partial map.
    GraphAction deckAction() const;
    DirectedGraph base;
};

CoverData coverAndGroup(const DirectedGraph& g, int v0, int depth);

struct QuotientData {
    DirectedGraph graph;
    std::vector<int> vertexClass;   // input vertex -> quotient vertex
    std::vector<int> edgeClass;     // input oriented edge -> quotient oriented edge
    bool coveringVerified = false;
};

QuotientData quotientByAction(const DirectedGraph& g, const GraphAction& act);

// Backtracking isomorphism test for small graphs (orientation-aware).
bool isomorphic(const DirectedGraph& a, const DirectedGraph& b);

std::string toDot(const DirectedGraph& g, const std::string& name = "G");

} // namespace mumford
