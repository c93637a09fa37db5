#include "mumford/examples.hpp"
#include "mumford/graph.hpp"
#include "mumford/io.hpp"

#include <doctest.h>

using namespace mumford;

TEST_CASE("validation") {
    DirectedGraph e(2);
    e.addEdge(0, 1);
    auto r = validateGraph(e);
    CHECK(r.valid());
    CHECK(r.sinks == std::vector<int>{1});

    auto bad = DirectedGraph::fromRaw(2, {0, 1}, {1, 0}, {0, 1}, {true, false});
    CHECK_FALSE(validateGraph(bad).valid());
    CHECK_THROWS_AS(requireValid(bad), std::invalid_argument);

    auto loop = examples::singleLoop();
    CHECK(validateGraph(loop).valid());
    CHECK(validateGraph(loop).sinks.empty());
}

TEST_CASE("involution laws on examples") {
    for (const auto& g : {examples::banana(), examples::rose(3), examples::dumbbell(), examples::cycle(4)}) {
        for (int w = 0; w < g.numOriented(); ++w) {
            CHECK(g.inv(g.inv(w)) == w);
            CHECK(g.inv(w) != w);
            CHECK(g.src(g.inv(w)) == g.rng(w));
            CHECK(g.isPositive(w) != g.isPositive(g.inv(w)));
        }
    }
}

TEST_CASE("walk enumeration") {
    auto b = examples::banana();
    CHECK(enumerateWalks(b, 2, WalkMode::Paths).walks.size() == 4);
    CHECK(enumerateWalks(examples::singleLoop(), 5, WalkMode::Paths).walks.size() == 1);
    CHECK(enumerateWalks(b, 1, WalkMode::Walks).walks.size() == 6);
    CHECK(enumerateWalks(b, 1, WalkMode::Paths).walks.size() == 3);
    CHECK_THROWS(enumerateWalks(examples::rose(3), 8, WalkMode::Walks, 100));
}

TEST_CASE("edge matrices of the banana graph") {
    auto m = edgeMatrices(examples::banana());
    CHECK(m.aPlus.a == std::vector<std::vector<int>>{{0, 1, 0}, {1, 0, 1}, {0, 1, 0}});
    CHECK(sumOfPowerEntries(m.aPlus.a, 2) == 6);
    DirectedGraph e(2);
    e.addEdge(0, 1);
    CHECK(edgeMatrices(e).aPlus.a == std::vector<std::vector<int>>{{0}});
}

TEST_CASE("transfer-matrix identity") {
    for (const auto& g : {examples::banana(), examples::rose(2), examples::dumbbell(), examples::cycle(3)}) {
        auto m = edgeMatrices(g);
        for (int n = 1; n <= 8; ++n) {
            CHECK(Z(enumerateWalks(g, n, WalkMode::Walks).walks.size()) == sumOfPowerEntries(m.a.a, n - 1));
            CHECK(Z(enumerateWalks(g, n, WalkMode::Paths).walks.size()) == sumOfPowerEntries(m.aPlus.a, n - 1));
        }
    }
}

TEST_CASE("tails") {
    DirectedGraph e(2);
    e.addEdge(0, 1);
    auto t = appendTails(e, 3);
    CHECK(t.graph.numVertices() == 5);
    CHECK(t.graph.numEdges() == 4);
    CHECK(t.tails.size() == 1);
    CHECK(t.graph.isFrontier(t.tails[0].vertices.back()));
    auto same = appendTails(examples::banana(), 3);
    CHECK(same.tails.empty());
    CHECK(isomorphic(same.graph, examples::banana()));
}

TEST_CASE("subdivision") {
    auto s = subdivideEdges(examples::singleLoop(), std::vector<int>{2});
    CHECK(s.graph.numEdges() == 2);
    CHECK(bettiNumber(s.graph) == 1);
    for (const auto& g : {examples::banana(), examples::rose(3), examples::dumbbell()}) {
        auto d = subdivideEdges(g, std::vector<int>(g.numEdges(), 3));
        CHECK(bettiNumber(d.graph) == bettiNumber(g));
        CHECK(d.graph.numEdges() - d.graph.numVertices() == g.numEdges() - g.numVertices());
    }
    // Loops of lengths 2 and 3 sharing a vertex; one edge of the shorter split in two.
    DirectedGraph g(4);
    g.addEdge(0, 1);
    g.addEdge(1, 0);
    g.addEdge(0, 2);
    g.addEdge(2, 3);
    g.addEdge(3, 0);
    auto d = subdivideEdges(g, std::vector<int>{0}, 2);
    Walk a = d.mapWalk({g.positiveId(0), g.positiveId(1)});
    Walk b = d.mapWalk({g.positiveId(2), g.positiveId(3), g.positiveId(4)});
    CHECK(a.size() == 3);
    CHECK(b.size() == 3);
    CHECK_THROWS(subdivideEdges(g, std::vector<int>{9}, 2));
}

TEST_CASE("universal cover and fundamental group") {
    CHECK(coverAndGroup(examples::rose(3), 0, 3).generators.size() == 3);
    DirectedGraph tree(3);
    tree.addEdge(0, 1);
    tree.addEdge(0, 2);
    CHECK(coverAndGroup(tree, 0, 4).generators.empty());
    auto b = examples::banana();
    CHECK(static_cast<int>(coverAndGroup(b, 0, 3).generators.size()) == b.numEdges() - b.numVertices() + 1);
}

TEST_CASE("quotient of the cover recovers the graph") {
    for (const auto& g : {examples::banana(), examples::rose(2), examples::dumbbell()}) {
        auto c = coverAndGroup(g, 0, 6);
        auto tailed = appendTails(c.tree, 1);
        (void)tailed;
        auto q = quotientByAction(c.tree, c.deckAction());
        CHECK(q.coveringVerified);
    }
}

TEST_CASE("graph documents round trip") {
    auto g = examples::dumbbell();
    auto j = graphToJson(g);
    auto h = graphFromJson(j);
    CHECK(graphToJson(h).dump() == j.dump());
    CHECK(isomorphic(g, h));
    CHECK_THROWS_AS(graphFromJson(json::parse(R"({"vertices":[0],"edges":[{"id":0,"src":0,"dst":5}]})")), std::invalid_argument);
    CHECK(toDot(g).find("digraph") != std::string::npos);
}

TEST_CASE("matrix csv") {
    auto a = readMatrixCsv("0,1\n1,0\n");
    CHECK(a == std::vector<std::vector<int>>{{0, 1}, {1, 0}});
    CHECK(writeMatrixCsv(a) == "0,1\n1,0\n");
    CHECK_THROWS(readMatrixCsv("0,2\n1,0\n"));
    CHECK_THROWS(readMatrixCsv("0,1\n"));
}
