#pragma once

#include "mumford/graph.hpp"
#include "mumford/schottky.hpp"

namespace mumford::examples {

// Two vertices x, y; e1, e3: x -> y and e2: y -> x, so A+ = [[0,1,0],[1,0,1],[0,1,0]].
DirectedGraph banana();
DirectedGraph singleLoop();
DirectedGraph singleEdge();
DirectedGraph cycle(int n);
DirectedGraph rose(int g);
// Loops at u and v joined by the bridge u -> v.
DirectedGraph dumbbell();

// diag(p^k, 1).
SchottkyGroup cyclicGroup(unsigned long p, int k);
// p = 2: diag(2,1) and its conjugate by [[3,1],[1,1]]; disjoint axes.
SchottkyGroup dumbbellGroup();
// p = 2: diag(4,1) and the conjugate of diag(2,1); loop lengths 2 and 1.
SchottkyGroup unequalGroup();
// p = 3: diag(3,1) and its conjugate by [[1,-1],[1,1]]; axes cross at the base.
SchottkyGroup crossingGroup();

} // namespace mumford::examples
