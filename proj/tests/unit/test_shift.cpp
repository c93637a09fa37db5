#include "mumford/examples.hpp"
#include "mumford/shift.hpp"

#include <doctest.h>

using namespace mumford;

namespace {

bool constantsInKernel(const FiltrationSpace& f, int n) {
    const auto& L = f.levels.at(n);
    std::vector<Q> one(f.levels[n - 1].dim(), Q(1));
    for (const auto& x : L.delta * one)
        if (sgn(x) != 0) return false;
    return true;
}

} // namespace

TEST_CASE("shift spaces") {
    auto s = buildSFT(examples::singleLoop(), 2, Alphabet::Walks);
    REQUIRE(s.size() == 2);
    int w = s.letterOf(examples::singleLoop().positiveId(0));
    CHECK(s.a[w][w] == 1);
    CHECK(s.a[w][1 - w] == 0);
    CHECK(buildSFT(examples::banana(), 2).size() == 6);
    DirectedGraph e(2);
    e.addEdge(0, 1);
    CHECK_THROWS(buildSFT(e, 2, Alphabet::Paths));
    auto b = buildSFT(examples::banana(), 2);
    for (int i = 0; i < b.size(); ++i)
        for (int j = 0; j < b.size(); ++j)
            CHECK(b.a[i][j] == isAdmissible(b.graph, {b.letters[i], b.letters[j]}, WalkMode::Walks));
}

TEST_CASE("theta counts") {
    auto p = buildSFT(examples::banana(), 2, Alphabet::Paths);
    auto t = thetaCounts(p, 2);
    CHECK(t == std::vector<Z>{3, 4, 6});
    auto w = buildSFT(examples::banana(), 2, Alphabet::Walks);
    auto tw = thetaCounts(w, 6);
    for (int n = 0; n <= 6; ++n) CHECK(tw[n] == Z(enumerateWalks(examples::banana(), n + 1, WalkMode::Walks).walks.size()));
    for (const auto& x : thetaCounts(buildSFT(examples::singleLoop(), 2, Alphabet::Paths), 6)) CHECK(x == 1);
    for (const auto& g : {examples::rose(2), examples::dumbbell(), examples::cycle(3)}) {
        auto s = buildSFT(g, 2);
        auto th = thetaCounts(s, 8);
        for (int n = 0; n <= 8; ++n) CHECK(th[n] == Z(wordsOfLength(s, n + 1).size()));
    }
}

TEST_CASE("frontier letters") {
    auto t = appendTails([] {
        DirectedGraph g(2);
        g.addEdge(0, 0);
        g.addEdge(0, 1);
        return g;
    }(), 3);
    auto s = buildSFT(t.graph, 2, Alphabet::Walks);
    int terminal = 0;
    for (int l = 0; l < s.size(); ++l)
        if (s.terminal[l]) {
            ++terminal;
            CHECK(s.a[l][l] == 1);
        }
    CHECK(terminal == 1);
    CHECK_FALSE(s.trimmed.empty());
}

TEST_CASE("shadow measure") {
    auto t = buildTreePatch(PadicContext::make(2), baseClass(2), 5);
    auto m = shadowMeasure(t);
    for (int v : t.neighbors(t.base)) CHECK(m.mass[patchEdge(t, t.base, v)] == Q(1, 4));
    CHECK(m.total == Q(3, 4));
    auto add = checkShadowAdditivity(m);
    CHECK(add.ok());
    CHECK(add.checked > 0);
    auto inv = checkShiftInvariance(m, 4);
    CHECK(inv.ok());
    auto m3 = shadowMeasure(buildTreePatch(PadicContext::make(3), baseClass(3), 4));
    CHECK(m3.total == Q(4, 9));
    CHECK(checkShadowAdditivity(m3).ok());
    CHECK(checkShiftInvariance(m3, 3).ok());
}

TEST_CASE("cylinder measure") {
    auto t = buildTreePatch(PadicContext::make(2), baseClass(2), 5);
    auto m = shadowMeasure(t);
    auto nb = t.neighbors(t.base);
    int a = nb[0], b = nb[1];
    int c = t.neighbors(a).back();
    Walk w = patchWalk(t, {b, t.base, a, c});
    CHECK(cylinderMeasure(m, w, 0) == cylinderMeasure(m, w, 2));
    Walk tw = patchWalk(t, {t.base, a, c});
    CHECK(sgn(cylinderMeasure(m, tw)) > 0);
    CHECK_THROWS(patchWalk(t, {a, b}));
}

TEST_CASE("filtration ranks") {
    auto loop = filtrationData(buildSFT(examples::singleLoop(), 2, Alphabet::Paths), 5);
    for (int n = 1; n <= 5; ++n) CHECK(loop.rankF(n) == 1);
    auto cyc = filtrationData(buildSFT(examples::cycle(2), 2, Alphabet::Paths), 5);
    for (int n = 1; n <= 5; ++n) CHECK(Z(cyc.rankF(n)) == cyc.theta[n] - cyc.theta[n - 1] + 1);
    auto b = filtrationData(buildSFT(examples::banana(), 2, Alphabet::Walks), 4);
    CHECK(b.levels[3].kernelDelta == 1);
    CHECK(constantsInKernel(b, 3));
}

TEST_CASE("rank law on connected transition graphs") {
    struct Case {
        DirectedGraph g;
        Alphabet a;
    };
    std::vector<Case> cases{{examples::banana(), Alphabet::Walks}, {examples::banana(), Alphabet::Paths},
                            {examples::dumbbell(), Alphabet::Walks}, {examples::rose(2), Alphabet::Paths},
                            {examples::cycle(3), Alphabet::Paths}};
    for (const auto& c : cases) {
        auto s = buildSFT(c.g, 2, c.a);
        REQUIRE(transitionComponents(s) == 1);
        auto f = filtrationData(s, 5);
        for (int n = 1; n <= 5; ++n) {
            CHECK(Z(f.rankF(n)) == f.theta[n] - f.theta[n - 1] + 1);
            CHECK(f.levels[n].kernelDelta == 1);
        }
    }
}

TEST_CASE("rank law with a disconnected transition graph") {
    auto s = buildSFT(examples::singleLoop(), 2, Alphabet::Walks);
    CHECK(transitionComponents(s) == 2);
    auto f = filtrationData(s, 4);
    for (int n = 1; n <= 4; ++n) CHECK(Z(f.rankF(n)) == f.theta[n] - f.theta[n - 1] + f.levels[n].kernelDelta);
}

TEST_CASE("graded pieces") {
    auto f = filtrationData(buildSFT(examples::dumbbell(), 2, Alphabet::Walks), 4);
    for (int n = 1; n <= 4; ++n) {
        const auto& L = f.levels[n];
        QMatrix G = L.gramMatrix();
        CHECK(G.isDiagonal());
        for (const auto& x : L.gram) CHECK(sgn(x) > 0);
        // Gr is orthogonal to delta images and to the image of the previous level.
        CHECK((L.gr.transpose() * G * L.delta).isZero());
        CHECK((L.gr.transpose() * G * L.iota).isZero());
        CHECK(f.rankF(n) == f.rankGr(n) + L.jRank);
        if (n >= 2) CHECK(L.jRank == f.rankF(n - 1));
    }
    // At level 1 the inclusion of P_0 = F_0 is not injective.
    CHECK(f.levels[1].jRank < f.rankF(0));
}

TEST_CASE("custom weights") {
    auto s = buildSFT(examples::banana(), 3, Alphabet::Paths);
    auto f = filtrationData(s, 3, [](const Word& w) { return Q(1, static_cast<long>(w.size() + 1)); });
    auto g = filtrationData(s, 3);
    for (int n = 1; n <= 3; ++n) CHECK(f.rankF(n) == g.rankF(n));
    CHECK_THROWS(filtrationData(s, 2, [](const Word&) { return Q(0); }));
}
