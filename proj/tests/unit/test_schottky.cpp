#include "mumford/examples.hpp"
#include "mumford/schottky.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace mumford;

namespace {

DualGraphData quotient(const SchottkyGroup& g) {
    SubTree sub = buildSchottkyTree(g, 2, 5);
    return quotientDualGraph(g, sub, Ambient::DeltaPrime);
}

bool closedLoop(const DirectedGraph& g, const Walk& w) {
    return !w.empty() && isAdmissible(g, w, WalkMode::Walks) && g.rng(w.back()) == g.src(w.front());
}

// Loops given by vertex cycles glued at vertex 0.
DualGraphData bouquet(const std::vector<int>& lengths) {
    DualGraphData d;
    d.graph = DirectedGraph(1);
    for (int len : lengths) {
        Walk w;
        int prev = 0;
        for (int i = 0; i < len; ++i) {
            int next = i + 1 == len ? 0 : d.graph.addVertex();
            w.push_back(d.graph.positiveId(d.graph.addEdge(prev, next)));
            prev = next;
        }
        d.generatorWords.push_back(w);
        d.lengths.push_back(len);
    }
    return d;
}

} // namespace

TEST_CASE("hyperbolic type") {
    auto h = hyperbolicType(mat2(2, 0, 0, 1), 2);
    CHECK(h.hyperbolic);
    CHECK(h.translationLength == 1);
    CHECK_FALSE(hyperbolicType(mat2(1, 1, 0, 1), 2).hyperbolic);
    auto h2 = hyperbolicType(mat2(4, 0, 0, 1), 2);
    CHECK(h2.translationLength == 2);
    for (const Q& l : {Q(1), Q(-1), Q(2), Q(1, 2), Q(3)}) {
        auto s = hyperbolicType(scale(mat2(5, -3, 1, 1), l), 2);
        auto r = hyperbolicType(mat2(5, -3, 1, 1), 2);
        CHECK(s.hyperbolic == r.hyperbolic);
        CHECK(s.translationLength == r.translationLength);
    }
    CHECK_THROWS(hyperbolicType(mat2(1, 2, 2, 4), 2));
}

TEST_CASE("minimal displacement equals translation length") {
    TreePatch t = buildTreePatch(PadicContext::make(2), baseClass(2), 4);
    for (const Mat2& m : {mat2(2, 0, 0, 1), mat2(4, 0, 0, 1), mat2(5, -3, 1, 1)}) {
        auto h = hyperbolicType(m, 2);
        REQUIRE(h.hyperbolic);
        CHECK(minimalDisplacement(m, t) == h.translationLength);
    }
}

TEST_CASE("axes") {
    TreePatch t = buildTreePatch(PadicContext::make(2), baseClass(2), 3);
    Mat2 m = mat2(2, 0, 0, 1);
    auto ax = axisVertices(m, t);
    REQUIRE(ax.size() >= 3);
    for (int v : ax) CHECK(latticeDistance(t.labels[v], actOnVertex(m, t.labels[v])) == 1);
    for (int v : ax) {
        const auto& c = t.labels[v];
        CHECK(c.b == 0);
    }
    for (std::size_t i = 0; i + 1 < ax.size(); ++i) CHECK(latticeDistance(t.labels[ax[i]], t.labels[ax[i + 1]]) == 1);
    // Conjugate axis is the image of the axis.
    Mat2 h = mat2(1, 1, 0, 1);
    auto conj = axisVertices(mul(mul(h, m), inverse(h)), t);
    std::set<std::string> img, got;
    for (int v : ax) {
        auto c = actOnVertex(h, t.labels[v]);
        if (t.find(c) >= 0 && !t.isFrontier(t.find(c))) img.insert(c.key());
    }
    for (int v : conj)
        if (!t.isFrontier(v)) got.insert(t.labels[v].key());
    for (const auto& k : got) CHECK(img.count(k) == 1);
}

TEST_CASE("bridges") {
    TreePatch t = buildTreePatch(PadicContext::make(2), baseClass(2), 5);
    auto g = examples::dumbbellGroup();
    auto a = axisVertices(g.generators[0], t), b = axisVertices(g.generators[1], t);
    auto br = bridge(a, b, t);
    REQUIRE(br.size() >= 2);
    CHECK(std::find(a.begin(), a.end(), br.front()) != a.end());
    CHECK(std::find(b.begin(), b.end(), br.back()) != b.end());
    for (std::size_t i = 1; i + 1 < br.size(); ++i) {
        CHECK(std::find(a.begin(), a.end(), br[i]) == a.end());
        CHECK(std::find(b.begin(), b.end(), br[i]) == b.end());
    }
    auto c = examples::crossingGroup();
    TreePatch t3 = buildTreePatch(c.ctx, baseClass(3), 3);
    CHECK(bridge(axisVertices(c.generators[0], t3), axisVertices(c.generators[1], t3), t3).size() == 1);
}

TEST_CASE("certificates") {
    TreePatch t = buildTreePatch(PadicContext::make(2), baseClass(2), 5);
    CHECK(certifySchottky(examples::dumbbellGroup(), t).ok);
    SchottkyGroup bad;
    bad.ctx = PadicContext::make(2);
    bad.generators = {mat2(2, 0, 0, 1), mat2(1, 1, 0, 1)};
    CHECK_FALSE(certifySchottky(bad, t).ok);
    CHECK_THROWS(requireSchottky(bad, t));
}

TEST_CASE("Schottky trees and reduction graphs") {
    auto g1 = examples::cyclicGroup(2, 1);
    SubTree line = buildSchottkyTree(g1, 1, 4);
    CHECK(line.connected());
    for (int v : line.vertices())
        if (!line.ambient.isFrontier(v)) CHECK(line.ambient.labels[v].b == 0);
    auto g2 = examples::dumbbellGroup();
    SubTree s2 = buildSchottkyTree(g2, 2, 5);
    SubTree s3 = buildSchottkyTree(g2, 3, 5);
    CHECK(s2.connected());
    for (int v : s2.vertices()) CHECK(s3.member[v]);
    CHECK(reductionGraph(s2, 0).member == s2.member);
    SubTree r1 = reductionGraph(buildSchottkyTree(g1, 1, 5), 1);
    CHECK_FALSE(r1.sinks.empty());
    CHECK(r1.connected());
    CHECK_THROWS(reductionGraph(s2, 5));
    auto dr = quotientDualGraph(g1, r1, Ambient::Reduction);
    CHECK(dr.certified);
    CHECK(bettiNumber(dr.graph) == 1);
    CHECK(dr.tails.size() == 1);
    CHECK(validateGraph(dr.graph).sinks.empty());
}

TEST_CASE("quotient dual graphs") {
    auto d1 = quotient(examples::cyclicGroup(2, 1));
    CHECK(d1.certified);
    CHECK(d1.graph.numVertices() == 1);
    CHECK(d1.graph.numEdges() == 1);
    CHECK(d1.lengths == std::vector<int>{1});
    auto d2 = quotient(examples::cyclicGroup(2, 2));
    CHECK(d2.graph.numVertices() == 2);
    CHECK(d2.graph.numEdges() == 2);
    CHECK(d2.lengths == std::vector<int>{2});
    for (const auto& g : {examples::dumbbellGroup(), examples::unequalGroup()}) {
        auto d = quotient(g);
        CHECK(d.certified);
        CHECK(bettiNumber(d.graph) == 2);
        for (const auto& w : d.generatorWords) CHECK(closedLoop(d.graph, w));
        for (std::size_t i = 0; i < g.generators.size(); ++i)
            CHECK(d.lengths[i] == hyperbolicType(g.generators[i], 2).translationLength);
    }
    auto c = examples::crossingGroup();
    auto dc = quotientDualGraph(c, buildSchottkyTree(c, 2, 4), Ambient::DeltaPrime);
    CHECK(dc.graph.numVertices() == 1);
    CHECK(dc.graph.numEdges() == 2);
}

TEST_CASE("cover of a quotient embeds in the patch") {
    auto g = examples::dumbbellGroup();
    SubTree sub = buildSchottkyTree(g, 2, 5);
    auto d = quotientDualGraph(g, sub, Ambient::DeltaPrime);
    for (const auto& w : d.generatorWords) {
        auto lift = liftWord(g, sub, d, w);
        REQUIRE(lift.size() == w.size() + 1);
        for (std::size_t i = 0; i + 1 < lift.size(); ++i)
            CHECK(latticeDistance(sub.ambient.labels[lift[i]], sub.ambient.labels[lift[i + 1]]) == 1);
    }
    auto c = coverAndGroup(d.graph, d.baseVertex, 3);
    CHECK(c.generators.size() == 2);
}

TEST_CASE("loop length equalization") {
    auto a = equalizeLoopLengths(bouquet({2, 3}));
    CHECK(a.lengths == std::vector<int>{3, 3});
    CHECK(a.graph.numEdges() == 6);
    auto b = equalizeLoopLengths(bouquet({2, 2}));
    CHECK(b.lengths == std::vector<int>{2, 2});
    CHECK(b.graph.numEdges() == 4);
    auto c = equalizeLoopLengths(bouquet({1, 1, 2}));
    CHECK(c.lengths == std::vector<int>{2, 2, 2});
    CHECK(bettiNumber(c.graph) == 3);
    for (const auto& w : c.generatorWords) CHECK(closedLoop(c.graph, w));
    auto u = equalizeLoopLengths(quotient(examples::unequalGroup()));
    CHECK(u.lengths == std::vector<int>{2, 2});
    CHECK(bettiNumber(u.graph) == 2);
}

TEST_CASE("valence-two stabilization keeps the loops") {
    auto u = equalizeLoopLengths(quotient(examples::unequalGroup()));
    auto s = stabilizeValenceTwo(u);
    CHECK(bettiNumber(s.graph) == 2);
    for (const auto& w : s.generatorWords) CHECK(closedLoop(s.graph, w));
    CHECK(s.graph.numVertices() <= u.graph.numVertices());
}
