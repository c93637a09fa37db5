#include "mumford/examples.hpp"
#include "mumford/field_extension.hpp"

#include <doctest.h>

using namespace mumford;

TEST_CASE("extension parameters") {
    CHECK((ExtensionParams{2, 3}).qL(2) == 8);
    CHECK_THROWS(requireParams({0, 1}));
    CHECK_THROWS(requireParams({1, 0}));
}

TEST_CASE("graph extension") {
    auto b = examples::banana();
    CHECK(isomorphic(extendGraph(b, {1, 1}).graph, b));
    DirectedGraph path(3);
    path.addEdge(0, 1);
    path.addEdge(1, 2);
    auto e = extendGraph(path, {2, 1});
    CHECK(e.graph.numEdges() == 4);
    Q total = 0;
    for (int k = 0; k < e.graph.numEdges(); ++k) total += e.graph.length(k);
    CHECK(total == 2);
    auto patch = extendedTreePatch(2, {1, 2}, 1);
    CHECK(patch.graph.degree(patch.base) == 5);
    auto ram = extendedTreePatch(2, {2, 1}, 1);
    CHECK(ram.depth == 2);
    CHECK(ram.graph.length(0) == Q(1, 2));
}

TEST_CASE("edge matrix extension reproduces the displayed matrix") {
    std::vector<std::vector<int>> a{{0, 1, 0}, {1, 0, 1}, {0, 1, 0}};
    std::vector<std::vector<int>> expected{{0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0}, {0, 0, 0, 1, 0, 0},
                                           {1, 0, 0, 0, 1, 0}, {0, 0, 0, 0, 0, 1}, {0, 0, 1, 0, 0, 0}};
    CHECK(extendEdgeMatrix(a, 2) == expected);
    CHECK(extendEdgeMatrix(a, 1) == a);
    CHECK_THROWS(extendEdgeMatrix(std::vector<std::vector<int>>{{0, 2}, {1, 0}}, 2));
    CHECK_THROWS(extendEdgeMatrix(std::vector<std::vector<int>>{{0, 1}}, 2));
}

TEST_CASE("edge matrix extension agrees with graph extension") {
    for (const auto& g : {examples::banana(), examples::rose(2), examples::dumbbell(), examples::cycle(3)})
        for (int e : {1, 2, 3}) {
            auto base = edgeMatrices(g).aPlus;
            auto ext = extendEdgeMatrix(base.a, e);
            CHECK(ext == edgeMatrices(extendGraph(g, {e, 1}).graph).aPlus.a);
            long sb = 0, se = 0;
            for (const auto& r : base.a)
                for (int x : r) sb += x;
            for (const auto& r : ext)
                for (int x : r) se += x;
            CHECK(se == sb + (e - 1) * g.numEdges());
        }
}

TEST_CASE("walk embedding and intertwining") {
    auto b = examples::banana();
    auto ext = extendGraph(b, {2, 1});
    Walk w{b.positiveId(0), b.positiveId(1)};
    auto j = walkEmbeddingJ(ext, w);
    REQUIRE(j.size() == 4);
    CHECK(j[0] == ext.graph.positiveId(ext.chain[0][0]));
    CHECK(j[1] == ext.graph.positiveId(ext.chain[0][1]));
    CHECK(j[2] == ext.graph.positiveId(ext.chain[1][0]));
    CHECK(isAdmissible(ext.graph, j, WalkMode::Walks));
    CHECK(walkEmbeddingJ(extendGraph(b, {1, 1}), w) == w);
    CHECK_THROWS(walkEmbeddingJ(ext, Walk{b.positiveId(0), b.positiveId(2)}));
    auto r = checkIntertwining(ext, 2, 5);
    CHECK(r.ok());
    CHECK(r.checked > 0);
    CHECK(checkIntertwining(extendGraph(examples::rose(2), {3, 1}), 3, 4).ok());
}

TEST_CASE("chain-aligned words are in bijection with base words") {
    for (const auto& g : {examples::banana(), examples::dumbbell()}) {
        auto ext = extendGraph(g, {2, 1});
        for (int n = 1; n <= 4; ++n)
            CHECK(chainAlignedCount(ext, 2, n) == Z(enumerateWalks(g, n, WalkMode::Walks).walks.size()));
    }
}

TEST_CASE("extension composes") {
    auto g = examples::banana();
    auto twice = extendGraph(extendGraph(g, {2, 1}).graph, {3, 1}).graph;
    CHECK(isomorphic(twice, extendGraph(g, {6, 1}).graph));
}

TEST_CASE("filtration restriction") {
    auto rows = filtrationRestrictionRanks(examples::banana(), 2, 2, 3);
    REQUIRE(rows.size() == 3);
    for (const auto& r : rows) {
        CHECK(r.commutes);
        CHECK(r.surjective);
        CHECK(r.rank == r.dimK);
    }
    for (const auto& r : filtrationRestrictionRanks(examples::dumbbell(), 2, 1, 3)) {
        CHECK(r.dimL == r.dimK);
        CHECK(r.rank == r.dimK);
        CHECK(r.commutes);
    }
}
