#include "mumford/graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace mumford {

DirectedGraph::DirectedGraph(int numVertices) : nv_(numVertices), frontier_(numVertices, false) {}

DirectedGraph DirectedGraph::fromRaw(int numVertices, std::vector<int> src, std::vector<int> rng,
                                     std::vector<int> inv, std::vector<bool> positive) {
    std::size_t n = src.size();
    if (rng.size() != n || inv.size() != n || positive.size() != n)
        throw std::invalid_argument("fromRaw: inconsistent array sizes");
    DirectedGraph g(numVertices);
    g.src_ = std::move(src);
    g.rng_ = std::move(rng);
    g.inv_ = std::move(inv);
    g.positive_ = std::move(positive);
    g.edgeOf_.assign(n, -1);
    for (std::size_t w = 0; w < n; ++w)
        if (g.positive_[w]) {
            g.edgeOf_[w] = static_cast<int>(g.pos_.size());
            g.pos_.push_back(static_cast<int>(w));
            g.len_.push_back(Q(1));
        }
    for (std::size_t w = 0; w < n; ++w) {
        int i = g.inv_[w];
        if (!g.positive_[w] && i >= 0 && i < static_cast<int>(n) && g.positive_[i]) g.edgeOf_[w] = g.edgeOf_[i];
    }
    return g;
}

int DirectedGraph::addVertex() {
    frontier_.push_back(false);
    return nv_++;
}

int DirectedGraph::addEdge(int s, int r, Q length) {
    if (s < 0 || s >= nv_ || r < 0 || r >= nv_) throw std::out_of_range("addEdge: vertex out of range");
    int w = numOriented();
    int k = numEdges();
    src_.push_back(s); rng_.push_back(r); inv_.push_back(w + 1); positive_.push_back(true);
    src_.push_back(r); rng_.push_back(s); inv_.push_back(w); positive_.push_back(false);
    edgeOf_.push_back(k); edgeOf_.push_back(k);
    pos_.push_back(w);
    len_.push_back(std::move(length));
    return k;
}

int DirectedGraph::edgeIndex(int w) const {
    int k = edgeOf_.at(w);
    if (k < 0) throw std::logic_error("edgeIndex: edge without positive partner");
    return k;
}

std::vector<int> DirectedGraph::outEdges(int v) const {
    std::vector<int> out;
    for (int w = 0; w < numOriented(); ++w)
        if (src_[w] == v) out.push_back(w);
    return out;
}

std::vector<int> DirectedGraph::positiveOutEdges(int v) const {
    std::vector<int> out;
    for (int w : pos_)
        if (src_[w] == v) out.push_back(w);
    return out;
}

int DirectedGraph::degree(int v) const {
    int d = 0;
    for (int w = 0; w < numOriented(); ++w)
        if (src_[w] == v) ++d;
    return d;
}

ValidationReport validateGraph(const DirectedGraph& g) {
    ValidationReport rep;
    int n = g.numOriented();
    auto inRange = [&](int x, int hi) { return x >= 0 && x < hi; };
    std::vector<int> seenPositivePair(n, 0);
    for (int w = 0; w < n; ++w) {
        std::ostringstream tag;
        tag << "edge " << w << ": ";
        if (!inRange(g.src(w), g.numVertices()) || !inRange(g.rng(w), g.numVertices())) {
            rep.violations.push_back(tag.str() + "endpoint out of range");
            continue;
        }
        int i = g.inv(w);
        if (!inRange(i, n)) {
            rep.violations.push_back(tag.str() + "involution out of range");
            continue;
        }
        if (i == w) rep.violations.push_back(tag.str() + "involution fixed point");
        if (g.inv(i) != w) rep.violations.push_back(tag.str() + "involution not an involution");
        if (g.src(i) != g.rng(w) || g.rng(i) != g.src(w))
            rep.violations.push_back(tag.str() + "involute does not reverse endpoints");
        if (i != w && g.isPositive(w) == g.isPositive(i))
            rep.violations.push_back(tag.str() + (g.isPositive(w) ? "edge and involute both positive"
                                                                  : "neither edge nor involute positive"));
    }
    for (int v = 0; v < g.numVertices(); ++v) {
        if (g.isFrontier(v)) {
            rep.frontier.push_back(v);
            continue;
        }
        bool emits = false;
        for (int w : g.positiveIds())
            if (inRange(g.src(w), g.numVertices()) && g.src(w) == v) { emits = true; break; }
        if (!emits) rep.sinks.push_back(v);
    }
    return rep;
}

void requireValid(const DirectedGraph& g) {
    auto rep = validateGraph(g);
    if (!rep.valid()) throw std::invalid_argument("invalid graph: " + rep.violations.front());
}

bool isAdmissible(const DirectedGraph& g, const Walk& w, WalkMode mode) {
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] < 0 || w[i] >= g.numOriented()) return false;
        if (mode == WalkMode::Paths && !g.isPositive(w[i])) return false;
        if (i > 0) {
            if (g.rng(w[i - 1]) != g.src(w[i])) return false;
            if (w[i] == g.inv(w[i - 1])) return false;
        }
    }
    return true;
}

WalkEnumeration enumerateWalks(const DirectedGraph& g, int n, WalkMode mode, std::size_t cap) {
    requireValid(g);
    if (n < 1) throw std::invalid_argument("enumerateWalks: n must be >= 1");
    std::vector<int> letters;
    for (int w = 0; w < g.numOriented(); ++w)
        if (mode == WalkMode::Walks || g.isPositive(w)) letters.push_back(w);
    WalkEnumeration out;
    Walk cur;
    std::function<void()> rec = [&]() {
        if (static_cast<int>(cur.size()) == n) {
            if (out.walks.size() >= cap)
                throw std::length_error("enumerateWalks: cap of " + std::to_string(cap) + " walks exceeded");
            if (g.isFrontier(g.rng(cur.back()))) out.touchesFrontier = true;
            out.walks.push_back(cur);
            return;
        }
        if (!cur.empty() && g.isFrontier(g.rng(cur.back()))) {
            ++out.absorbed;
            out.touchesFrontier = true;
            return;
        }
        for (int w : letters) {
            if (!cur.empty() && (g.src(w) != g.rng(cur.back()) || w == g.inv(cur.back()))) continue;
            cur.push_back(w);
            rec();
            cur.pop_back();
        }
    };
    rec();
    return out;
}

static EdgeMatrix buildEdgeMatrix(const DirectedGraph& g, std::vector<int> index) {
    EdgeMatrix m;
    m.index = std::move(index);
    std::size_t n = m.index.size();
    m.a.assign(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            int wi = m.index[i], wj = m.index[j];
            if (g.rng(wi) == g.src(wj) && wj != g.inv(wi)) m.a[i][j] = 1;
        }
    return m;
}

EdgeMatrices edgeMatrices(const DirectedGraph& g) {
    requireValid(g);
    std::vector<int> all(g.numOriented());
    std::iota(all.begin(), all.end(), 0);
    return {buildEdgeMatrix(g, g.positiveIds()), buildEdgeMatrix(g, all)};
}

Z sumOfPowerEntries(const std::vector<std::vector<int>>& a, int n) {
    std::size_t m = a.size();
    std::vector<Z> v(m, Z(1));
    for (int step = 0; step < n; ++step) {
        std::vector<Z> nv(m, Z(0));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                if (a[i][j]) nv[i] += v[j];
        v.swap(nv);
    }
    Z s = 0;
    for (auto& x : v) s += x;
    return s;
}

TailedGraph appendTails(const DirectedGraph& g, int depth) {
    requireValid(g);
    if (depth < 1) throw std::invalid_argument("appendTails: depth must be >= 1");
    TailedGraph out{g, {}};
    auto sinks = validateGraph(g).sinks;
    for (int s : sinks) {
        TailInfo t;
        t.sink = s;
        int prev = s;
        for (int i = 0; i < depth; ++i) {
            int v = out.graph.addVertex();
            t.edges.push_back(out.graph.addEdge(prev, v));
            t.vertices.push_back(v);
            prev = v;
        }
        out.graph.setFrontier(prev);
        out.tails.push_back(std::move(t));
    }
    return out;
}

GraphAction extendActionToTails(const GraphAction& act, const DirectedGraph& original,
                                const TailedGraph& tailed) {
    const DirectedGraph& h = tailed.graph;
    std::map<int, const TailInfo*> bySink;
    for (const auto& t : tailed.tails) bySink[t.sink] = &t;
    GraphAction out;
    for (std::size_t gi = 0; gi < act.vertexMaps.size(); ++gi) {
        const auto& vm = act.vertexMaps[gi];
        const auto& em = act.edgeMaps[gi];
        std::vector<int> nvm(h.numVertices(), -1), nem(h.numOriented(), -1);
        for (int v = 0; v < original.numVertices(); ++v) nvm[v] = vm.at(v);
        for (int w = 0; w < original.numOriented(); ++w) nem[w] = em.at(w);
        for (const auto& t : tailed.tails) {
            int img = vm.at(t.sink);
            if (img < 0) continue;
            auto it = bySink.find(img);
            if (it == bySink.end()) throw std::logic_error("action maps a sink to a non-sink");
            const TailInfo& u = *it->second;
            for (std::size_t i = 0; i < t.vertices.size(); ++i) {
                nvm[t.vertices[i]] = u.vertices[i];
                int a = h.positiveId(t.edges[i]), b = h.positiveId(u.edges[i]);
                nem[a] = b;
                nem[h.inv(a)] = h.inv(b);
            }
        }
        out.vertexMaps.push_back(std::move(nvm));
        out.edgeMaps.push_back(std::move(nem));
    }
    return out;
}

Walk Subdivision::mapWalk(const Walk& w) const {
    Walk out;
    for (int e : w) {
        int k = source.edgeIndex(e);
        const auto& ch = chain.at(k);
        if (source.isPositive(e)) {
            for (int c : ch) out.push_back(graph.positiveId(c));
        } else {
            for (auto it = ch.rbegin(); it != ch.rend(); ++it) out.push_back(graph.inv(graph.positiveId(*it)));
        }
    }
    return out;
}

Subdivision subdivideEdges(const DirectedGraph& g, const std::vector<int>& parts) {
    requireValid(g);
    if (static_cast<int>(parts.size()) != g.numEdges())
        throw std::invalid_argument("subdivideEdges: one part count per positive edge required");
    Subdivision out;
    out.source = g;
    out.graph = DirectedGraph(g.numVertices());
    for (int v = 0; v < g.numVertices(); ++v) out.graph.setFrontier(v, g.isFrontier(v));
    out.chain.resize(g.numEdges());
    for (int k = 0; k < g.numEdges(); ++k) {
        int m = parts[k];
        if (m < 1) throw std::invalid_argument("subdivideEdges: parts must be >= 1");
        int w = g.positiveId(k);
        int prev = g.src(w);
        Q piece = g.length(k) / Q(m);
        for (int i = 0; i < m; ++i) {
            int next = (i + 1 == m) ? g.rng(w) : out.graph.addVertex();
            out.chain[k].push_back(out.graph.addEdge(prev, next, piece));
            prev = next;
        }
    }
    return out;
}

Subdivision subdivideEdges(const DirectedGraph& g, const std::vector<int>& edges, int parts) {
    std::vector<int> p(g.numEdges(), 1);
    for (int k : edges) {
        if (k < 0 || k >= g.numEdges()) throw std::invalid_argument("subdivideEdges: edge " + std::to_string(k) + " is not a positive edge");
        p[k] = parts;
    }
    return subdivideEdges(g, p);
}

namespace {
struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { while (p[x] != x) x = p[x] = p[p[x]]; return x; }
    void unite(int a, int b) {
        a = find(a); b = find(b);
        if (a == b) return;
        if (a < b) p[b] = a; else p[a] = b;
    }
};
}

int componentCount(const DirectedGraph& g) {
    UnionFind uf(g.numVertices());
    for (int w = 0; w < g.numOriented(); ++w) uf.unite(g.src(w), g.rng(w));
    int c = 0;
    for (int v = 0; v < g.numVertices(); ++v)
        if (uf.find(v) == v) ++c;
    return c;
}

int bettiNumber(const DirectedGraph& g) {
    return g.numEdges() - g.numVertices() + componentCount(g);
}

Walk freeReduce(const DirectedGraph& g, Walk w) {
    Walk out;
    for (int e : w) {
        if (!out.empty() && out.back() == g.inv(e)) out.pop_back();
        else out.push_back(e);
    }
    return out;
}

Walk inverseWalk(const DirectedGraph& g, const Walk& w) {
    Walk out;
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(g.inv(*it));
    return out;
}

CoverData coverAndGroup(const DirectedGraph& g, int v0, int depth) {
    requireValid(g);
    if (v0 < 0 || v0 >= g.numVertices()) throw std::invalid_argument("coverAndGroup: no such vertex");
    if (componentCount(g) != 1) throw std::invalid_argument("coverAndGroup: graph is disconnected");
    CoverData c;
    c.base = g;
    c.depth = depth;

    std::vector<Walk> treeWalk(g.numVertices());
    std::vector<bool> seen(g.numVertices(), false);
    std::vector<bool> inTree(g.numEdges(), false);
    std::deque<int> queue{v0};
    seen[v0] = true;
    while (!queue.empty()) {
        int x = queue.front();
        queue.pop_front();
        for (int w : g.outEdges(x)) {
            int y = g.rng(w);
            if (seen[y]) continue;
            seen[y] = true;
            inTree[g.edgeIndex(w)] = true;
            treeWalk[y] = treeWalk[x];
            treeWalk[y].push_back(w);
            queue.push_back(y);
        }
    }
    for (int k = 0; k < g.numEdges(); ++k) {
        if (inTree[k]) { c.spanningTree.push_back(k); continue; }
        int w = g.positiveId(k);
        Walk loop = treeWalk[g.src(w)];
        loop.push_back(w);
        for (int e : inverseWalk(g, treeWalk[g.rng(w)])) loop.push_back(e);
        c.generators.push_back(freeReduce(g, loop));
    }

    c.tree = DirectedGraph(1);
    c.vertexWalk.push_back({});
    c.vertexProj.push_back(v0);
    for (std::size_t i = 0; i < c.vertexWalk.size(); ++i) {
        Walk cur = c.vertexWalk[i];
        if (static_cast<int>(cur.size()) >= depth) continue;
        int x = cur.empty() ? v0 : g.rng(cur.back());
        for (int w : g.outEdges(x)) {
            if (!cur.empty() && w == g.inv(cur.back())) continue;
            int child = c.tree.addVertex();
            Walk next = cur;
            next.push_back(w);
            c.vertexWalk.push_back(next);
            c.vertexProj.push_back(g.rng(w));
            if (g.isPositive(w)) {
                c.tree.addEdge(static_cast<int>(i), child);
                c.edgeProj.push_back(w);
                c.edgeProj.push_back(g.inv(w));
            } else {
                c.tree.addEdge(child, static_cast<int>(i));
                c.edgeProj.push_back(g.inv(w));
                c.edgeProj.push_back(w);
            }
        }
    }
    return c;
}

GraphAction CoverData::deckAction() const {
    std::map<Walk, int> index;
    for (std::size_t i = 0; i < vertexWalk.size(); ++i) index[vertexWalk[i]] = static_cast<int>(i);
    std::map<std::pair<int, int>, int> edgeAt;
    for (int w = 0; w < tree.numOriented(); ++w) edgeAt[{tree.src(w), tree.rng(w)}] = w;
    GraphAction act;
    for (const auto& gen : generators) {
        std::vector<int> vm(tree.numVertices(), -1), em(tree.numOriented(), -1);
        for (std::size_t i = 0; i < vertexWalk.size(); ++i) {
            Walk img = gen;
            img.insert(img.end(), vertexWalk[i].begin(), vertexWalk[i].end());
            img = freeReduce(base, img);
            auto it = index.find(img);
            if (it != index.end()) vm[i] = it->second;
        }
        for (int w = 0; w < tree.numOriented(); ++w) {
            int a = vm[tree.src(w)], b = vm[tree.rng(w)];
            if (a < 0 || b < 0) continue;
            auto it = edgeAt.find({a, b});
            if (it != edgeAt.end()) em[w] = it->second;
        }
        act.vertexMaps.push_back(std::move(vm));
        act.edgeMaps.push_back(std::move(em));
    }
    return act;
}

QuotientData quotientByAction(const DirectedGraph& g, const GraphAction& act) {
    requireValid(g);
    if (act.vertexMaps.size() != act.edgeMaps.size())
        throw std::invalid_argument("quotientByAction: vertex/edge map count mismatch");
    for (std::size_t i = 0; i < act.vertexMaps.size(); ++i) {
        const auto& vm = act.vertexMaps[i];
        const auto& em = act.edgeMaps[i];
        if (static_cast<int>(vm.size()) != g.numVertices() || static_cast<int>(em.size()) != g.numOriented())
            throw std::invalid_argument("quotientByAction: map size mismatch");
        for (int v = 0; v < g.numVertices(); ++v)
            if (vm[v] == v) throw std::invalid_argument("quotientByAction: generator " + std::to_string(i) + " fixes vertex " + std::to_string(v));
        for (int w = 0; w < g.numOriented(); ++w) {
            if (em[w] < 0) continue;
            if (em[w] == w) throw std::invalid_argument("quotientByAction: generator " + std::to_string(i) + " fixes edge " + std::to_string(w));
            if (em[w] == g.inv(w)) throw std::invalid_argument("quotientByAction: generator " + std::to_string(i) + " inverts edge " + std::to_string(w));
            int a = vm[g.src(w)], b = vm[g.rng(w)];
            if ((a >= 0 && g.src(em[w]) != a) || (b >= 0 && g.rng(em[w]) != b))
                throw std::invalid_argument("quotientByAction: action does not commute with src/rng");
            if (em[g.inv(w)] >= 0 && em[g.inv(w)] != g.inv(em[w]))
                throw std::invalid_argument("quotientByAction: action does not commute with invol");
        }
    }
    UnionFind uv(g.numVertices()), ue(g.numOriented());
    for (std::size_t i = 0; i < act.vertexMaps.size(); ++i) {
        for (int v = 0; v < g.numVertices(); ++v)
            if (act.vertexMaps[i][v] >= 0) uv.unite(v, act.vertexMaps[i][v]);
        for (int w = 0; w < g.numOriented(); ++w)
            if (act.edgeMaps[i][w] >= 0) ue.unite(w, act.edgeMaps[i][w]);
    }
    for (int w = 0; w < g.numOriented(); ++w)
        if (ue.find(w) == ue.find(g.inv(w)))
            throw std::invalid_argument("quotientByAction: some group element inverts edge " + std::to_string(w));

    QuotientData q;
    std::map<int, int> vid;
    q.vertexClass.assign(g.numVertices(), -1);
    for (int v = 0; v < g.numVertices(); ++v) {
        int r = uv.find(v);
        auto it = vid.find(r);
        if (it == vid.end()) it = vid.emplace(r, static_cast<int>(vid.size())).first;
        q.vertexClass[v] = it->second;
    }
    q.graph = DirectedGraph(static_cast<int>(vid.size()));
    std::map<int, int> eid;
    q.edgeClass.assign(g.numOriented(), -1);
    for (int w : g.positiveIds()) {
        int r = ue.find(w);
        if (eid.count(r)) continue;
        int k = q.graph.addEdge(q.vertexClass[g.src(w)], q.vertexClass[g.rng(w)], g.length(g.edgeIndex(w)));
        eid[r] = q.graph.positiveId(k);
        eid[ue.find(g.inv(w))] = q.graph.inv(q.graph.positiveId(k));
    }
    for (int w = 0; w < g.numOriented(); ++w) q.edgeClass[w] = eid.at(ue.find(w));

    // Star bijection s^{-1}(v) -> s^{-1}([v]) for some lift of every quotient vertex.
    std::vector<bool> ok(q.graph.numVertices(), false);
    for (int v = 0; v < g.numVertices(); ++v) {
        int c = q.vertexClass[v];
        if (ok[c]) continue;
        std::vector<int> img;
        for (int w : g.outEdges(v)) img.push_back(q.edgeClass[w]);
        std::sort(img.begin(), img.end());
        auto star = q.graph.outEdges(c);
        ok[c] = (img == star);
    }
    q.coveringVerified = std::all_of(ok.begin(), ok.end(), [](bool b) { return b; });
    return q;
}

bool isomorphic(const DirectedGraph& a, const DirectedGraph& b) {
    int n = a.numVertices();
    if (n != b.numVertices() || a.numEdges() != b.numEdges()) return false;
    auto counts = [](const DirectedGraph& g) {
        std::vector<std::vector<int>> c(g.numVertices(), std::vector<int>(g.numVertices(), 0));
        for (int w : g.positiveIds()) ++c[g.src(w)][g.rng(w)];
        return c;
    };
    auto ca = counts(a), cb = counts(b);
    std::vector<int> da(n), db(n);
    for (int v = 0; v < n; ++v) { da[v] = a.degree(v); db[v] = b.degree(v); }
    {
        auto sa = da, sb = db;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return false;
    }
    std::vector<int> f(n, -1);
    std::vector<bool> used(n, false);
    std::function<bool(int)> rec = [&](int v) -> bool {
        if (v == n) return true;
        for (int u = 0; u < n; ++u) {
            if (used[u] || da[v] != db[u]) continue;
            bool good = ca[v][v] == cb[u][u];
            for (int x = 0; x < v && good; ++x)
                good = ca[v][x] == cb[u][f[x]] && ca[x][v] == cb[f[x]][u];
            if (!good) continue;
            f[v] = u; used[u] = true;
            if (rec(v + 1)) return true;
            used[u] = false;
        }
        return false;
    };
    return rec(0);
}

std::string toDot(const DirectedGraph& g, const std::string& name) {
    std::ostringstream os;
    os << "digraph " << name << " {\n";
    for (int v = 0; v < g.numVertices(); ++v) {
        os << "  v" << v;
        if (g.isFrontier(v)) os << " [shape=box]";
        os << ";\n";
    }
    for (int k = 0; k < g.numEdges(); ++k) {
        int w = g.positiveId(k);
        os << "  v" << g.src(w) << " -> v" << g.rng(w) << " [label=\"" << k << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace mumford
