#pragma once

#include "mumford/graph.hpp"
#include "mumford/rational.hpp"

#include <array>
#include <string>
#include <unordered_map>
#include <vector>

namespace mumford {

struct PadicContext {
    unsigned long p = 2;
    int f = 1;
    unsigned long q = 2;
    int precision = 64;

    static PadicContext make(unsigned long p, int f = 1, int precision = 64);
};

// Row-major [[m[0], m[1]], [m[2], m[3]]]; columns are lattice basis vectors.
using Mat2 = std::array<Q, 4>;

Mat2 mat2(const Q& a, const Q& b, const Q& c, const Q& d);
Mat2 mul(const Mat2& x, const Mat2& y);
Q det(const Mat2& m);
Q trace(const Mat2& m);
Mat2 inverse(const Mat2& m);
Mat2 scale(const Mat2& m, const Q& s);
std::string toString(const Mat2& m);

// Homothety class of a lattice, kept as [[p^a, b], [0, 1]] with b reduced mod p^a.
struct LatticeClass {
    unsigned long p = 2;
    long a = 0;
    Q b = 0;

    Mat2 rep() const;
    std::string key() const;
    bool operator==(const LatticeClass& o) const { return p == o.p && a == o.a && b == o.b; }
    bool operator!=(const LatticeClass& o) const { return !(*this == o); }
};

LatticeClass canonicalize(const Mat2& basis, unsigned long p);
LatticeClass baseClass(unsigned long p);

long latticeDistance(const LatticeClass& x, const LatticeClass& y);
// Equality through the valuation criterion only (distance zero).
bool sameClassByValuation(const Mat2& x, const Mat2& y, unsigned long p);

std::vector<LatticeClass> vertexNeighbors(const LatticeClass& v, const PadicContext& ctx);
LatticeClass actOnVertex(const Mat2& m, const LatticeClass& v);

// A point [a:b] of P^1 over Q.
struct P1Point {
    Q a = 1, b = 0;
};
bool sameP1(const P1Point& x, const P1Point& y);
P1Point parseP1(const std::string& s);
std::string toString(const P1Point& z);

// Vertices 0..depth of the half-line from the base class toward z.
std::vector<LatticeClass> halfLineOfPoint(const P1Point& z, int depth, const PadicContext& ctx);
LatticeClass crossroad(const P1Point& z0, const P1Point& z1, const P1Point& zInf, const PadicContext& ctx);

// Ball in the tree around a center, edges oriented away from the center.
// labels is empty for abstract patches (f > 1).
struct TreePatch {
    DirectedGraph graph;
    std::vector<LatticeClass> labels;
    std::vector<int> dist;
    int base = 0;
    int depth = 0;
    unsigned long q = 2;
    unsigned long p = 2;

    bool isAbstract() const { return labels.empty(); }
    bool isFrontier(int v) const { return graph.isFrontier(v); }
    int find(const LatticeClass& c) const;  // -1 if absent
    std::vector<int> neighbors(int v) const;
    std::unordered_map<std::string, int> index;
};

TreePatch buildTreePatch(const PadicContext& ctx, const LatticeClass& center, int radius);
TreePatch regularTreePatch(unsigned long q, int radius);
std::vector<std::vector<int>> patchDistances(const TreePatch& t);

} // namespace mumford
