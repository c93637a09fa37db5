#include "mumford/examples.hpp"

namespace mumford::examples {

DirectedGraph banana() {
    DirectedGraph g(2);
    g.addEdge(0, 1);
    g.addEdge(1, 0);
    g.addEdge(0, 1);
    return g;
}

DirectedGraph singleLoop() {
    DirectedGraph g(1);
    g.addEdge(0, 0);
    return g;
}

DirectedGraph singleEdge() {
    DirectedGraph g(2);
    g.addEdge(0, 1);
    return g;
}

DirectedGraph cycle(int n) {
    DirectedGraph g(n);
    for (int i = 0; i < n; ++i) g.addEdge(i, (i + 1) % n);
    return g;
}

DirectedGraph rose(int k) {
    DirectedGraph g(1);
    for (int i = 0; i < k; ++i) g.addEdge(0, 0);
    return g;
}

DirectedGraph dumbbell() {
    DirectedGraph g(2);
    g.addEdge(0, 0);
    g.addEdge(1, 1);
    g.addEdge(0, 1);
    return g;
}

SchottkyGroup cyclicGroup(unsigned long p, int k) {
    SchottkyGroup g;
    g.ctx = PadicContext::make(p);
    g.generators.push_back(mat2(qpow(p, k), 0, 0, 1));
    return g;
}

static Mat2 conjugate(const Mat2& h, const Mat2& m) { return mul(mul(h, m), inverse(h)); }

SchottkyGroup dumbbellGroup() {
    SchottkyGroup g;
    g.ctx = PadicContext::make(2);
    g.generators.push_back(mat2(2, 0, 0, 1));
    g.generators.push_back(conjugate(mat2(3, 1, 1, 1), mat2(2, 0, 0, 1)));
    return g;
}

SchottkyGroup unequalGroup() {
    SchottkyGroup g;
    g.ctx = PadicContext::make(2);
    g.generators.push_back(mat2(4, 0, 0, 1));
    g.generators.push_back(conjugate(mat2(3, 1, 1, 1), mat2(2, 0, 0, 1)));
    return g;
}

SchottkyGroup crossingGroup() {
    SchottkyGroup g;
    g.ctx = PadicContext::make(3);
    g.generators.push_back(mat2(3, 0, 0, 1));
    g.generators.push_back(conjugate(mat2(1, -1, 1, 1), mat2(3, 0, 0, 1)));
    return g;
}

} // namespace mumford::examples
