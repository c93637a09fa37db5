#include "mumford/schottky.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

namespace mumford {

HyperbolicType hyperbolicType(const Mat2& m, unsigned long p) {
    Q d = det(m);
    if (d == 0) throw std::domain_error("hyperbolicType: singular matrix");
    Q t = trace(m);
    HyperbolicType h;
    if (t == 0) return h;
    long vt = valuation(t, p), vd = valuation(d, p);
    if (2 * vt < vd) {
        h.hyperbolic = true;
        h.translationLength = vd - 2 * vt;
    }
    return h;
}

std::vector<GroupWord> reducedWords(const SchottkyGroup& g, int maxLen) {
    int n = static_cast<int>(g.generators.size());
    std::vector<Mat2> inv;
    for (const auto& m : g.generators) inv.push_back(inverse(m));
    auto letterMat = [&](int l) -> const Mat2& { return l > 0 ? g.generators[l - 1] : inv[-l - 1]; };
    std::vector<GroupWord> out;
    std::vector<GroupWord> frontier{GroupWord{{}, mat2(1, 0, 0, 1)}};
    for (int len = 1; len <= maxLen; ++len) {
        std::vector<GroupWord> next;
        for (const auto& w : frontier)
            for (int l = -n; l <= n; ++l) {
                if (l == 0) continue;
                if (!w.letters.empty() && w.letters.back() == -l) continue;
                GroupWord x{w.letters, mul(w.m, letterMat(l))};
                x.letters.push_back(l);
                next.push_back(std::move(x));
            }
        for (const auto& w : next) out.push_back(w);
        frontier.swap(next);
    }
    return out;
}

static long minGeneratorLength(const SchottkyGroup& g) {
    long m = -1;
    for (const auto& x : g.generators) {
        auto h = hyperbolicType(x, g.ctx.p);
        if (!h.hyperbolic) return 0;
        m = (m < 0) ? h.translationLength : std::min(m, h.translationLength);
    }
    return m;
}

static std::set<std::pair<int, int>> axisEdges(const std::vector<int>& axis) {
    std::set<std::pair<int, int>> e;
    for (std::size_t i = 1; i < axis.size(); ++i)
        e.insert({std::min(axis[i - 1], axis[i]), std::max(axis[i - 1], axis[i])});
    return e;
}

Certificate certifySchottky(const SchottkyGroup& g, const TreePatch& patch) {
    Certificate c;
    if (g.generators.empty()) {
        c.notes.push_back("no generators");
        return c;
    }
    long minLen = minGeneratorLength(g);
    if (minLen <= 0) {
        c.ok = false;
        c.notes.push_back("a generator is not hyperbolic");
        return c;
    }
    for (const auto& w : reducedWords(g, g.wordBound)) {
        auto h = hyperbolicType(w.m, g.ctx.p);
        if (!h.hyperbolic) {
            c.ok = false;
            c.notes.push_back("reduced word of length " + std::to_string(w.letters.size()) + " is not hyperbolic");
            return c;
        }
        bool cyclic = w.letters.front() != -w.letters.back() || w.letters.size() == 1;
        if (cyclic && h.translationLength < static_cast<long>(w.letters.size()) * minLen) {
            c.ok = false;
            c.notes.push_back("cyclically reduced word of length " + std::to_string(w.letters.size()) +
                              " translates by only " + std::to_string(h.translationLength));
            return c;
        }
    }
    std::vector<std::set<std::pair<int, int>>> edges;
    for (const auto& m : g.generators) edges.push_back(axisEdges(axisVertices(m, patch)));
    for (std::size_t i = 0; i < edges.size(); ++i)
        for (std::size_t j = i + 1; j < edges.size(); ++j)
            for (const auto& e : edges[i])
                if (edges[j].count(e)) {
                    c.ok = false;
                    c.notes.push_back("axes of generators " + std::to_string(i) + " and " + std::to_string(j) + " share an edge");
                    return c;
                }
    c.notes.push_back("reduced words up to length " + std::to_string(g.wordBound) + " hyperbolic; generator axes edge-disjoint");
    return c;
}

void requireSchottky(const SchottkyGroup& g, const TreePatch& patch) {
    auto c = certifySchottky(g, patch);
    if (!c.ok) throw std::invalid_argument("Schottky certificate failed: " + c.notes.back());
}

long minimalDisplacement(const Mat2& m, const TreePatch& patch) {
    if (patch.isAbstract()) throw std::invalid_argument("minimalDisplacement: patch has no lattice labels");
    long best = -1;
    for (const auto& v : patch.labels) {
        long d = latticeDistance(v, actOnVertex(m, v));
        if (best < 0 || d < best) best = d;
    }
    return best;
}

std::vector<int> axisVertices(const Mat2& m, const TreePatch& patch) {
    if (patch.isAbstract()) throw std::invalid_argument("axisVertices: patch has no lattice labels");
    auto h = hyperbolicType(m, patch.p);
    if (!h.hyperbolic) throw std::invalid_argument("axisVertices: matrix is not hyperbolic");
    std::vector<int> cand;
    std::vector<bool> on(patch.graph.numVertices(), false);
    for (int v = 0; v < patch.graph.numVertices(); ++v)
        if (latticeDistance(patch.labels[v], actOnVertex(m, patch.labels[v])) == h.translationLength) {
            cand.push_back(v);
            on[v] = true;
        }
    if (cand.empty()) return {};
    int start = -1;
    for (int v : cand) {
        int k = 0;
        for (int u : patch.neighbors(v)) k += on[u];
        if (k <= 1) { start = v; break; }
    }
    if (start < 0) throw std::logic_error("axisVertices: axis segment has no end inside the patch");
    std::vector<int> order{start};
    std::vector<bool> used(patch.graph.numVertices(), false);
    used[start] = true;
    for (;;) {
        int nxt = -1;
        for (int u : patch.neighbors(order.back()))
            if (on[u] && !used[u]) { nxt = u; break; }
        if (nxt < 0) break;
        used[nxt] = true;
        order.push_back(nxt);
    }
    if (order.size() != cand.size()) throw std::logic_error("axisVertices: displacement set is not a path");
    long l = h.translationLength;
    if (static_cast<long>(order.size()) > l) {
        if (patch.find(actOnVertex(m, patch.labels[order[0]])) != order[l]) std::reverse(order.begin(), order.end());
        for (std::size_t i = 0; i + l < order.size(); ++i)
            if (patch.find(actOnVertex(m, patch.labels[order[i]])) != order[i + l])
                throw std::logic_error("axisVertices: element does not translate its axis");
    }
    return order;
}

std::vector<int> bridge(const std::vector<int>& axisA, const std::vector<int>& axisB, const TreePatch& patch) {
    if (axisA.empty() || axisB.empty()) throw std::invalid_argument("bridge: axes must be nonempty inside the patch");
    std::set<int> b(axisB.begin(), axisB.end());
    std::vector<int> shared;
    for (int v : axisA)
        if (b.count(v)) shared.push_back(v);
    if (!shared.empty()) return {*std::min_element(shared.begin(), shared.end())};
    int n = patch.graph.numVertices();
    std::vector<int> prev(n, -2);
    std::deque<int> qu;
    std::vector<int> sa(axisA.begin(), axisA.end());
    std::sort(sa.begin(), sa.end());
    for (int v : sa) { prev[v] = -1; qu.push_back(v); }
    while (!qu.empty()) {
        int x = qu.front();
        qu.pop_front();
        if (b.count(x)) {
            std::vector<int> path;
            for (int y = x; y >= 0; y = prev[y]) path.push_back(y);
            std::reverse(path.begin(), path.end());
            return path;
        }
        for (int y : patch.neighbors(x))
            if (prev[y] == -2) { prev[y] = x; qu.push_back(y); }
    }
    throw std::invalid_argument("bridge: axes are not connected inside the patch");
}

std::vector<int> SubTree::vertices() const {
    std::vector<int> v;
    for (int i = 0; i < static_cast<int>(member.size()); ++i)
        if (member[i]) v.push_back(i);
    return v;
}

int SubTree::size() const { return static_cast<int>(vertices().size()); }

bool SubTree::connected() const {
    auto vs = vertices();
    if (vs.empty()) return true;
    std::vector<bool> seen(member.size(), false);
    std::deque<int> qu{vs.front()};
    seen[vs.front()] = true;
    int count = 0;
    while (!qu.empty()) {
        int x = qu.front();
        qu.pop_front();
        ++count;
        for (int y : ambient.neighbors(x))
            if (member[y] && !seen[y]) { seen[y] = true; qu.push_back(y); }
    }
    return count == static_cast<int>(vs.size());
}

// Smallest subtree of the (tree) patch containing the marked vertices.
static std::vector<bool> hull(const TreePatch& t, std::vector<bool> marked) {
    int n = t.graph.numVertices();
    std::vector<bool> alive(n, true);
    std::vector<int> deg(n, 0);
    for (int v = 0; v < n; ++v) deg[v] = static_cast<int>(t.neighbors(v).size());
    std::deque<int> leaves;
    for (int v = 0; v < n; ++v)
        if (deg[v] <= 1 && !marked[v]) leaves.push_back(v);
    while (!leaves.empty()) {
        int v = leaves.front();
        leaves.pop_front();
        if (!alive[v]) continue;
        alive[v] = false;
        for (int u : t.neighbors(v))
            if (alive[u] && --deg[u] <= 1 && !marked[u]) leaves.push_back(u);
    }
    return alive;
}

static std::vector<bool> schottkyHull(const SchottkyGroup& g, const TreePatch& t, int wordLen) {
    std::vector<bool> marked(t.graph.numVertices(), false);
    bool any = false;
    for (const auto& w : reducedWords(g, wordLen)) {
        if (!hyperbolicType(w.m, g.ctx.p).hyperbolic) continue;
        for (int v : axisVertices(w.m, t)) { marked[v] = true; any = true; }
    }
    if (!any) throw std::invalid_argument("buildSchottkyTree: no axis meets the patch; increase the radius");
    return hull(t, marked);
}

SubTree buildSchottkyTree(const SchottkyGroup& g, int wordLen, int radius) {
    if (wordLen < 1) throw std::invalid_argument("buildSchottkyTree: word length must be >= 1");
    SubTree s;
    s.ambient = buildTreePatch(g.ctx, baseClass(g.ctx.p), radius);
    for (const auto& m : g.generators)
        if (axisVertices(m, s.ambient).empty())
            throw std::invalid_argument("buildSchottkyTree: patch radius insufficient for a generator axis");
    s.member = schottkyHull(g, s.ambient, wordLen);
    s.core.assign(s.member.size(), 0);
    s.wordLength = wordLen;
    if (wordLen > 1) {
        auto prev = schottkyHull(g, s.ambient, wordLen - 1);
        s.grew = prev != s.member;
    } else {
        s.grew = true;
    }
    return s;
}

SubTree reductionGraph(const SubTree& base, int n) {
    if (n < 0) throw std::invalid_argument("reductionGraph: n must be >= 0");
    SubTree s = base;
    if (n == 0) return s;
    if (n >= base.ambient.depth) throw std::invalid_argument("reductionGraph: n must be below the ambient radius");
    int nv = base.ambient.graph.numVertices();
    std::vector<int> d(nv, -1);
    std::deque<int> qu;
    for (int v = 0; v < nv; ++v)
        if (base.member[v]) { d[v] = 0; qu.push_back(v); }
    while (!qu.empty()) {
        int x = qu.front();
        qu.pop_front();
        if (d[x] == n) continue;
        for (int y : base.ambient.neighbors(x))
            if (d[y] < 0) { d[y] = d[x] + 1; qu.push_back(y); }
    }
    s.core.assign(nv, 0);
    s.sinks.clear();
    for (int v = 0; v < nv; ++v) {
        s.member[v] = d[v] >= 0;
        s.core[v] = std::max(d[v], 0);
        if (d[v] == n) {
            if (base.ambient.isFrontier(v)) continue;
            s.sinks.push_back(v);
        }
    }
    return s;
}

namespace {

struct Identifier {
    const SchottkyGroup& g;
    const TreePatch& t;
    std::vector<GroupWord> words;
    std::map<std::string, int> repKey;
    std::vector<int> reps;

    Identifier(const SchottkyGroup& grp, const TreePatch& patch, int len)
        : g(grp), t(patch), words(reducedWords(grp, len)) {}

    // (rep index, element moving v onto the rep) or index -1.
    std::pair<int, Mat2> locate(const LatticeClass& v) const {
        auto it = repKey.find(v.key());
        if (it != repKey.end()) return {it->second, mat2(1, 0, 0, 1)};
        for (const auto& w : words) {
            auto jt = repKey.find(actOnVertex(w.m, v).key());
            if (jt != repKey.end()) return {jt->second, w.m};
        }
        return {-1, mat2(1, 0, 0, 1)};
    }
};

}

DualGraphData quotientDualGraph(const SchottkyGroup& g, const SubTree& sub, Ambient which,
                                int identificationRadius, int tailDepth) {
    const TreePatch& t = sub.ambient;
    if (t.isAbstract()) throw std::invalid_argument("quotientDualGraph: ambient patch needs lattice labels");
    long minLen = minGeneratorLength(g);
    if (minLen <= 0) throw std::invalid_argument("quotientDualGraph: generators must be hyperbolic");
    int rho = identificationRadius >= 0 ? identificationRadius : t.depth - 1;
    if (rho >= t.depth) throw std::invalid_argument("quotientDualGraph: identification radius must be below the patch radius");
    int L = static_cast<int>((2 * rho) / minLen);
    if (L < 1) L = 1;
    std::size_t expected = 1;
    for (int i = 0, b = 2 * static_cast<int>(g.generators.size()); i < L; ++i) expected *= (i == 0 ? b : b - 1);
    if (expected > 200000) throw std::invalid_argument("quotientDualGraph: identification word set too large; lower the radius");

    Identifier id(g, t, L);
    DualGraphData d;
    d.ambient = which;
    d.identificationWordLength = L;
    d.identificationRadius = rho;
    d.certified = (L + 1) * minLen > 2 * rho;
    d.notes.push_back("identification by reduced words of length <= " + std::to_string(L) +
                      " on the ball of radius " + std::to_string(rho));

    int nv = t.graph.numVertices();
    std::vector<int> cls(nv, -1);
    std::vector<Mat2> toRep(nv);
    for (int v = 0; v < nv; ++v) {
        if (!sub.member[v] || t.dist[v] > rho) continue;
        auto hit = id.locate(t.labels[v]);
        if (hit.first < 0) {
            int c = static_cast<int>(id.reps.size());
            id.reps.push_back(v);
            id.repKey[t.labels[v].key()] = c;
            cls[v] = c;
            toRep[v] = mat2(1, 0, 0, 1);
        } else {
            cls[v] = hit.first;
            toRep[v] = hit.second;
        }
    }
    if (id.reps.empty()) throw std::invalid_argument("quotientDualGraph: subtree misses the identification ball");
    auto locate = [&](int v) -> std::pair<int, Mat2> {
        if (cls[v] >= 0) return {cls[v], toRep[v]};
        auto hit = id.locate(t.labels[v]);
        if (hit.first < 0)
            throw std::invalid_argument("quotientDualGraph: vertex outside every identified orbit; enlarge the radius");
        return hit;
    };

    // Oriented quotient edges are the star edges (rep, neighbour).
    std::vector<std::pair<int, int>> star;
    std::map<std::pair<int, int>, int> starId;
    for (int c = 0; c < static_cast<int>(id.reps.size()); ++c) {
        int r = id.reps[c];
        if (t.isFrontier(r)) throw std::invalid_argument("quotientDualGraph: representative on the patch frontier");
        auto nb = t.neighbors(r);
        std::sort(nb.begin(), nb.end());
        for (int n : nb)
            if (sub.member[n]) {
                starId[{r, n}] = static_cast<int>(star.size());
                star.push_back({r, n});
            }
    }
    int ns = static_cast<int>(star.size());
    std::vector<int> partner(ns, -1), target(ns, -1);
    for (int e = 0; e < ns; ++e) {
        auto [r, n] = star[e];
        auto [c, gm] = locate(n);
        target[e] = c;
        int img = t.find(actOnVertex(gm, t.labels[r]));
        auto it = starId.find({id.reps[c], img});
        if (img < 0 || it == starId.end())
            throw std::invalid_argument("quotientDualGraph: star pairing leaves the subtree; enlarge the radius");
        partner[e] = it->second;
    }
    for (int e = 0; e < ns; ++e) {
        if (partner[partner[e]] != e) throw std::logic_error("quotientDualGraph: inconsistent star pairing");
        if (partner[e] == e) throw std::invalid_argument("quotientDualGraph: an element inverts an edge (action not free)");
    }
    auto starEdgeOf = [&](int u, int v) {
        auto [c, gm] = locate(u);
        int img = t.find(actOnVertex(gm, t.labels[v]));
        auto it = starId.find({id.reps[c], img});
        if (img < 0 || it == starId.end()) throw std::invalid_argument("quotientDualGraph: edge has no star image");
        return it->second;
    };

    // Generator loops as star-edge sequences along [v, gamma v].
    std::vector<std::vector<int>> loops;
    for (std::size_t i = 0; i < g.generators.size(); ++i) {
        const Mat2& m = g.generators[i];
        auto axis = axisVertices(m, t);
        long l = hyperbolicType(m, g.ctx.p).translationLength;
        int best = -1;
        for (std::size_t j = 0; j + l < axis.size(); ++j)
            if (best < 0 || t.dist[axis[j]] < t.dist[axis[best]]) best = static_cast<int>(j);
        if (best < 0) throw std::invalid_argument("quotientDualGraph: generator axis too short inside the patch");
        std::vector<int> loop;
        for (long s = 0; s < l; ++s) loop.push_back(starEdgeOf(axis[best + s], axis[best + s + 1]));
        loops.push_back(loop);
    }

    int nq = static_cast<int>(id.reps.size());
    int baseCls = cls[0] >= 0 ? cls[0] : 0;
    std::vector<int> coreDist(nq, 0);
    for (int c = 0; c < nq; ++c) coreDist[c] = sub.core.empty() ? 0 : sub.core[id.reps[c]];
    std::vector<int> bdist(nq, -1);
    {
        std::deque<int> qu{baseCls};
        bdist[baseCls] = 0;
        while (!qu.empty()) {
            int x = qu.front();
            qu.pop_front();
            for (int e = 0; e < ns; ++e)
                if (cls[star[e].first] == x && bdist[target[e]] < 0) {
                    bdist[target[e]] = bdist[x] + 1;
                    qu.push_back(target[e]);
                }
        }
    }

    std::vector<int> positive;
    int ng = static_cast<int>(loops.size());
    for (int mask = 0; mask < (1 << ng); ++mask) {
        std::vector<int> dir(ns, 0);
        bool ok = true;
        for (int i = 0; i < ng && ok; ++i) {
            std::vector<int> seq = loops[i];
            if (mask & (1 << i)) {
                std::reverse(seq.begin(), seq.end());
                for (auto& e : seq) e = partner[e];
            }
            for (int e : seq) {
                if (dir[e] == -1) { ok = false; break; }
                dir[e] = 1;
                dir[partner[e]] = -1;
            }
        }
        if (!ok) continue;
        for (int e = 0; e < ns; ++e) {
            if (dir[e] != 0) continue;
            int a = cls[star[e].first], b = target[e];
            bool fwd;
            if (coreDist[a] != coreDist[b]) fwd = coreDist[a] < coreDist[b];
            else if (bdist[a] != bdist[b]) fwd = bdist[a] < bdist[b];
            else fwd = e < partner[e];
            dir[e] = fwd ? 1 : -1;
            dir[partner[e]] = fwd ? -1 : 1;
        }
        positive = dir;
        if (mask) d.notes.push_back("generator loops re-oriented with inversion mask " + std::to_string(mask));
        for (int i = 0; i < ng; ++i)
            if (mask & (1 << i)) {
                std::reverse(loops[i].begin(), loops[i].end());
                for (auto& e : loops[i]) e = partner[e];
            }
        break;
    }
    if (positive.empty()) throw std::invalid_argument("quotientDualGraph: generator loops admit no consistent orientation");

    DirectedGraph q(nq);
    std::vector<int> orient(ns, -1);
    d.edgeLift.assign(2 * (ns / 2), {-1, -1});
    for (int e = 0; e < ns; ++e) {
        if (positive[e] != 1) continue;
        int k = q.addEdge(cls[star[e].first], target[e]);
        orient[e] = q.positiveId(k);
        orient[partner[e]] = q.inv(orient[e]);
    }
    for (int e = 0; e < ns; ++e) d.edgeLift[orient[e]] = star[e];
    for (int c = 0; c < nq; ++c) d.repVertex.push_back(id.reps[c]);
    d.baseVertex = baseCls;
    for (const auto& loop : loops) {
        Walk w;
        for (int e : loop) w.push_back(orient[e]);
        d.generatorWords.push_back(w);
        d.lengths.push_back(static_cast<int>(w.size()));
    }

    // Fundamental domain by breadth-first search from the base.
    {
        std::vector<bool> seen(ns, false);
        int remaining = ns / 2;
        int start = cls[0] >= 0 ? 0 : id.reps[0];
        std::vector<bool> vis(nv, false);
        std::deque<int> qu{start};
        vis[start] = true;
        d.domainVertices.push_back(start);
        while (!qu.empty() && remaining > 0) {
            int x = qu.front();
            qu.pop_front();
            auto nb = t.neighbors(x);
            std::sort(nb.begin(), nb.end());
            for (int y : nb) {
                if (!sub.member[y] || vis[y] || t.isFrontier(y)) continue;
                int e = starEdgeOf(x, y);
                if (seen[e]) continue;
                seen[e] = seen[partner[e]] = true;
                --remaining;
                d.domainEdges.push_back({x, y});
                vis[y] = true;
                d.domainVertices.push_back(y);
                qu.push_back(y);
            }
        }
        if (remaining > 0) d.notes.push_back("fundamental domain incomplete inside the patch");
    }

    int gcount = static_cast<int>(g.generators.size());
    if (bettiNumber(q) != gcount)
        d.notes.push_back("quotient Betti number " + std::to_string(bettiNumber(q)) + " differs from genus " + std::to_string(gcount));
    if (which == Ambient::DeltaPrime)
        for (std::size_t i = 0; i < g.generators.size(); ++i)
            if (d.lengths[i] != hyperbolicType(g.generators[i], g.ctx.p).translationLength)
                throw std::logic_error("quotientDualGraph: loop length differs from translation length");

    auto rep = validateGraph(q);
    if (!rep.sinks.empty()) {
        auto tailed = appendTails(q, tailDepth);
        d.graph = tailed.graph;
        d.tails = tailed.tails;
        d.notes.push_back("tails of depth " + std::to_string(tailDepth) + " appended to " + std::to_string(rep.sinks.size()) + " sinks");
    } else {
        d.graph = q;
    }
    return d;
}

DualGraphData equalizeLoopLengths(const DualGraphData& in, int budget) {
    DualGraphData d = in;
    int ng = static_cast<int>(d.generatorWords.size());
    if (ng == 0) throw std::invalid_argument("equalizeLoopLengths: no generator words");
    auto lengthsOf = [&]() {
        std::vector<int> l;
        for (const auto& w : d.generatorWords) l.push_back(static_cast<int>(w.size()));
        return l;
    };
    auto len = lengthsOf();
    int target = *std::max_element(len.begin(), len.end());
    int steps = 0;
    while (true) {
        len = lengthsOf();
        if (std::all_of(len.begin(), len.end(), [&](int x) { return x == target; })) break;
        if (steps >= budget)
            throw std::runtime_error("equalizeLoopLengths: budget exhausted at lengths " + [&] {
                std::string s;
                for (int x : len) s += std::to_string(x) + " ";
                return s;
            }());
        int ne = d.graph.numEdges();
        std::vector<std::vector<int>> uses(ng, std::vector<int>(ne, 0));
        for (int i = 0; i < ng; ++i)
            for (int w : d.generatorWords[i]) ++uses[i][d.graph.edgeIndex(w)];
        int best = -1, bestScore = 0;
        for (int k = 0; k < ne; ++k) {
            bool valid = true;
            int score = 0;
            bool touched = false;
            for (int i = 0; i < ng; ++i) {
                if (!uses[i][k]) continue;
                touched = true;
                int deficit = target - len[i];
                if (uses[i][k] > deficit) { valid = false; break; }
                score += deficit;
            }
            if (!touched || !valid) continue;
            if (score > bestScore) { bestScore = score; best = k; }
        }
        if (best < 0) {
            ++target;
            d.notes.push_back("equalization overshoot: target raised to " + std::to_string(target));
            ++steps;
            continue;
        }
        auto sub = subdivideEdges(d.graph, std::vector<int>{best}, 2);
        for (auto& w : d.generatorWords) w = sub.mapWalk(w);
        for (auto& t : d.tails) {
            std::vector<int> e;
            for (int k : t.edges) e.push_back(sub.chain[k].front());
            t.edges = e;
        }
        d.graph = sub.graph;
        d.liftValid = false;
        ++steps;
    }
    d.lengths = lengthsOf();
    d.notes.push_back("loop lengths equalized to " + std::to_string(target) + " in " + std::to_string(steps) + " steps");
    return d;
}

DualGraphData stabilizeValenceTwo(const DualGraphData& in) {
    DualGraphData d = in;
    for (bool changed = true; changed;) {
        changed = false;
        const DirectedGraph& g = d.graph;
        for (int v = 0; v < g.numVertices(); ++v) {
            if (v == d.baseVertex || g.isFrontier(v) || g.degree(v) != 2) continue;
            auto out = g.outEdges(v);
            int a = out[0], b = out[1];
            if (g.edgeIndex(a) == g.edgeIndex(b)) continue;
            // incoming x = inv(a) continues into b; both must share orientation
            int x = g.inv(a);
            if (g.isPositive(x) != g.isPositive(b)) {
                x = g.inv(b);
                b = a;
                if (g.isPositive(x) != g.isPositive(b)) continue;
            }
            int fwdIn = g.isPositive(x) ? x : g.inv(b);
            int fwdOut = g.isPositive(x) ? b : g.inv(x);
            if (g.src(fwdIn) == v || g.rng(fwdOut) == v) continue;
            DirectedGraph h(0);
            std::vector<int> vmap(g.numVertices(), -1);
            for (int u = 0; u < g.numVertices(); ++u)
                if (u != v) { vmap[u] = h.addVertex(); h.setFrontier(vmap[u], g.isFrontier(u)); }
            std::vector<int> emap(g.numOriented(), -1);
            int merged = -1;
            for (int k = 0; k < g.numEdges(); ++k) {
                int w = g.positiveId(k);
                if (w == fwdOut) continue;
                if (w == fwdIn) {
                    merged = h.positiveId(h.addEdge(vmap[g.src(fwdIn)], vmap[g.rng(fwdOut)], g.length(k) + g.length(g.edgeIndex(fwdOut))));
                    emap[w] = merged;
                    emap[g.inv(w)] = h.inv(merged);
                    continue;
                }
                int nk = h.addEdge(vmap[g.src(w)], vmap[g.rng(w)], g.length(k));
                emap[w] = h.positiveId(nk);
                emap[g.inv(w)] = h.inv(h.positiveId(nk));
            }
            for (auto& word : d.generatorWords) {
                Walk nw;
                for (int e : word) {
                    if (e == fwdOut || e == g.inv(fwdOut)) continue;
                    nw.push_back(emap[e]);
                }
                word = nw;
            }
            if (d.baseVertex > v) --d.baseVertex;
            d.graph = h;
            d.liftValid = false;
            d.tails.clear();
            changed = true;
            break;
        }
    }
    d.lengths.clear();
    for (const auto& w : d.generatorWords) d.lengths.push_back(static_cast<int>(w.size()));
    d.notes.push_back("valence-two stabilization applied (heuristic)");
    return d;
}

std::vector<int> liftWord(const SchottkyGroup& g, const SubTree& sub, const DualGraphData& d, const Walk& word) {
    if (!d.liftValid) throw std::invalid_argument("liftWord: lift data invalidated by graph surgery");
    if (word.empty()) return {};
    const TreePatch& t = sub.ambient;
    Identifier id(g, t, d.identificationWordLength);
    for (std::size_t c = 0; c < d.repVertex.size(); ++c) {
        id.reps.push_back(d.repVertex[c]);
        id.repKey[t.labels[d.repVertex[c]].key()] = static_cast<int>(c);
    }
    auto [u, n] = d.edgeLift.at(word[0]);
    if (u < 0) throw std::invalid_argument("liftWord: letter has no lift (tail edge?)");
    std::vector<int> path{u, n};
    for (std::size_t i = 1; i < word.size(); ++i) {
        int x = path.back();
        auto [c, gm] = id.locate(t.labels[x]);
        if (c < 0) throw std::invalid_argument("liftWord: lift leaves the identified region");
        auto [r, m] = d.edgeLift.at(word[i]);
        if (r != d.repVertex[c]) throw std::invalid_argument("liftWord: word is not a walk in the quotient");
        int y = t.find(actOnVertex(inverse(gm), t.labels[m]));
        if (y < 0) throw std::invalid_argument("liftWord: lift leaves the patch");
        path.push_back(y);
    }
    return path;
}

} // namespace mumford
