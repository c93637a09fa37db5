#include "mumford/shift.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace mumford {

int ShiftSpace::letterOf(int edge) const {
    auto it = std::find(letters.begin(), letters.end(), edge);
    return it == letters.end() ? -1 : static_cast<int>(it - letters.begin());
}

Word ShiftSpace::wordOfWalk(const Walk& w) const {
    Word out;
    for (int e : w) {
        int l = letterOf(e);
        if (l < 0) throw std::invalid_argument("wordOfWalk: edge " + std::to_string(e) + " is not a letter");
        out.push_back(l);
    }
    return out;
}

Walk ShiftSpace::walkOfWord(const Word& w) const {
    Walk out;
    for (int l : w) out.push_back(letters.at(l));
    return out;
}

bool ShiftSpace::admissible(const Word& w) const {
    for (std::size_t i = 1; i < w.size(); ++i)
        if (!a.at(w[i - 1]).at(w[i])) return false;
    return true;
}

ShiftSpace buildSFT(const DirectedGraph& g, unsigned long q, Alphabet alphabet) {
    auto rep = validateGraph(g);
    if (!rep.valid()) throw std::invalid_argument("buildSFT: invalid graph: " + rep.violations.front());
    if (!rep.sinks.empty()) throw std::invalid_argument("buildSFT: graph has sinks; append tails first");
    if (q < 2) throw std::invalid_argument("buildSFT: q must be >= 2");
    std::vector<int> cand;
    for (int w = 0; w < g.numOriented(); ++w)
        if (alphabet == Alphabet::Walks || g.isPositive(w)) cand.push_back(w);
    auto trans = [&](int x, int y) {
        if (g.isFrontier(g.rng(x))) return x == y;
        return g.rng(x) == g.src(y) && y != g.inv(x);
    };
    std::vector<bool> alive(cand.size(), true);
    ShiftSpace s;
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < cand.size(); ++i) {
            if (!alive[i]) continue;
            bool pred = false, succ = false;
            for (std::size_t j = 0; j < cand.size(); ++j) {
                if (!alive[j]) continue;
                pred = pred || trans(cand[j], cand[i]);
                succ = succ || trans(cand[i], cand[j]);
            }
            if (!pred || !succ) {
                alive[i] = false;
                changed = true;
            }
        }
    }
    s.graph = g;
    s.alphabet = alphabet;
    s.q = q;
    for (std::size_t i = 0; i < cand.size(); ++i) {
        if (alive[i]) s.letters.push_back(cand[i]);
        else s.trimmed.push_back(cand[i]);
    }
    if (s.letters.empty()) throw std::invalid_argument("buildSFT: no bi-infinite sequences");
    int n = s.size();
    s.a.assign(n, std::vector<int>(n, 0));
    s.terminal.assign(n, false);
    for (int i = 0; i < n; ++i) {
        s.terminal[i] = g.isFrontier(g.rng(s.letters[i]));
        for (int j = 0; j < n; ++j) s.a[i][j] = trans(s.letters[i], s.letters[j]) ? 1 : 0;
    }
    return s;
}

ShiftSpace withTransitionFlipped(const ShiftSpace& s, int i, int j) {
    ShiftSpace c = s;
    c.a.at(i).at(j) = 1 - c.a[i][j];
    return c;
}

std::vector<Z> thetaCounts(const ShiftSpace& s, int nMax) {
    if (nMax < 0) throw std::invalid_argument("thetaCounts: nMax must be >= 0");
    std::vector<Z> out;
    for (int n = 0; n <= nMax; ++n) out.push_back(sumOfPowerEntries(s.a, n));
    return out;
}

std::vector<Word> wordsOfLength(const ShiftSpace& s, int len, std::size_t cap) {
    if (len < 1) throw std::invalid_argument("wordsOfLength: length must be >= 1");
    std::vector<Word> cur;
    for (int l = 0; l < s.size(); ++l) cur.push_back({l});
    for (int k = 1; k < len; ++k) {
        std::vector<Word> next;
        for (const auto& w : cur)
            for (int l = 0; l < s.size(); ++l)
                if (s.a[w.back()][l]) {
                    if (next.size() >= cap)
                        throw std::length_error("wordsOfLength: cap of " + std::to_string(cap) + " words exceeded");
                    Word x = w;
                    x.push_back(l);
                    next.push_back(std::move(x));
                }
        cur.swap(next);
    }
    return cur;
}

int transitionComponents(const ShiftSpace& s) {
    int n = s.size();
    std::vector<int> comp(n, -1);
    int c = 0;
    for (int i = 0; i < n; ++i) {
        if (comp[i] >= 0) continue;
        std::deque<int> qu{i};
        comp[i] = c;
        while (!qu.empty()) {
            int x = qu.front();
            qu.pop_front();
            for (int y = 0; y < n; ++y)
                if ((s.a[x][y] || s.a[y][x]) && comp[y] < 0) { comp[y] = c; qu.push_back(y); }
        }
        ++c;
    }
    return c;
}

ShadowMeasure shadowMeasure(const TreePatch& t) {
    ShadowMeasure m;
    m.patch = t;
    const DirectedGraph& g = t.graph;
    Q q(static_cast<long>(t.q));
    m.total = Q(t.q + 1) / (q * q);
    m.mass.assign(g.numOriented(), Q(0));
    m.truncated.assign(g.numOriented(), false);
    for (int w = 0; w < g.numOriented(); ++w) {
        int a = g.src(w), b = g.rng(w);
        if (t.dist[b] == t.dist[a] + 1) m.mass[w] = qpow(t.q, -t.dist[b] - 1);
    }
    for (int w = 0; w < g.numOriented(); ++w) {
        int a = g.src(w), b = g.rng(w);
        if (t.dist[b] + 1 == t.dist[a]) m.mass[w] = m.total - m.mass[g.inv(w)];
        m.truncated[w] = g.isFrontier(b);
    }
    return m;
}

int patchEdge(const TreePatch& t, int u, int v) {
    for (int w : t.graph.outEdges(u))
        if (t.graph.rng(w) == v) return w;
    return -1;
}

Walk patchWalk(const TreePatch& t, const std::vector<int>& vertices) {
    Walk w;
    for (std::size_t i = 1; i < vertices.size(); ++i) {
        int e = patchEdge(t, vertices[i - 1], vertices[i]);
        if (e < 0) throw std::invalid_argument("patchWalk: consecutive vertices are not adjacent");
        w.push_back(e);
    }
    return w;
}

Q cylinderMeasure(const ShadowMeasure& m, const Walk& walk, int marking) {
    if (walk.empty()) throw std::invalid_argument("cylinderMeasure: empty word");
    if (marking < 0 || marking >= static_cast<int>(walk.size()))
        throw std::invalid_argument("cylinderMeasure: marking outside the word");
    const DirectedGraph& g = m.patch.graph;
    for (std::size_t i = 1; i < walk.size(); ++i)
        if (g.rng(walk[i - 1]) != g.src(walk[i]) || walk[i] == g.inv(walk[i - 1]))
            throw std::invalid_argument("cylinderMeasure: word is not an admissible walk of the patch");
    return m.mass.at(walk.back()) * m.mass.at(g.inv(walk.front()));
}

AdditivityReport checkShadowAdditivity(const ShadowMeasure& m) {
    AdditivityReport r;
    const DirectedGraph& g = m.patch.graph;
    for (int w = 0; w < g.numOriented(); ++w) {
        if (m.truncated[w]) continue;
        Q s = 0;
        for (int x : g.outEdges(g.rng(w)))
            if (x != g.inv(w)) s += m.mass[x];
        ++r.checked;
        if (s != m.mass[w])
            r.failures.push_back("edge " + std::to_string(w) + ": " + toString(m.mass[w]) + " != " + toString(s));
    }
    return r;
}

AdditivityReport checkShiftInvariance(const ShadowMeasure& m, int maxLen) {
    AdditivityReport r;
    const DirectedGraph& g = m.patch.graph;
    std::vector<Walk> cur;
    for (int w = 0; w < g.numOriented(); ++w) cur.push_back({w});
    for (int len = 1; len <= maxLen; ++len) {
        std::vector<Walk> next;
        for (const auto& w : cur) {
            Q mu = cylinderMeasure(m, w, 0);
            for (int k = 1; k < len; ++k)
                if (cylinderMeasure(m, w, k) != mu) r.failures.push_back("marking dependence");
            if (!m.truncated[w.back()]) {
                Q s = 0;
                for (int x : g.outEdges(g.rng(w.back())))
                    if (x != g.inv(w.back())) {
                        Walk y = w;
                        y.push_back(x);
                        s += cylinderMeasure(m, y, 0);
                        if (len < maxLen) next.push_back(y);
                    }
                ++r.checked;
                if (s != mu) r.failures.push_back("right refinement fails at a window of length " + std::to_string(len));
            }
            if (!m.truncated[g.inv(w.front())]) {
                Q s = 0;
                for (int x : g.outEdges(g.src(w.front())))
                    if (x != w.front()) {
                        Walk y{g.inv(x)};
                        y.insert(y.end(), w.begin(), w.end());
                        // shifted marking: same segment read from the new first letter
                        Q a = cylinderMeasure(m, y, 1);
                        if (a != cylinderMeasure(m, y, 0)) r.failures.push_back("shift changes the measure");
                        s += a;
                    }
                ++r.checked;
                if (s != mu) r.failures.push_back("left refinement fails at a window of length " + std::to_string(len));
            }
        }
        cur.swap(next);
    }
    return r;
}

WeightFn conformalWeights(unsigned long q) {
    return [q](const Word& w) { return qpow(q, -static_cast<long>(w.size())); };
}

QMatrix FiltrationSpace::projectorGr(int n) const {
    const auto& L = levels.at(n);
    if (L.gr.cols() == 0) return QMatrix(L.dim(), L.dim());
    return projector(L.gr, L.gramMatrix());
}

std::vector<Q> FiltrationSpace::indicator(int n, const Word& w) const {
    const auto& L = levels.at(n);
    if (w.empty() || w.size() > L.words.front().size())
        throw std::invalid_argument("indicator: word longer than the level");
    std::vector<Q> v(L.dim(), Q(0));
    for (std::size_t i = 0; i < L.dim(); ++i)
        if (std::equal(w.begin(), w.end(), L.words[i].begin())) v[i] = 1;
    return v;
}

FiltrationSpace filtrationData(const ShiftSpace& s, int N, WeightFn weights) {
    if (N < 1) throw std::invalid_argument("filtrationData: truncation must be >= 1");
    if (!weights) weights = conformalWeights(s.q);
    FiltrationSpace fs;
    fs.shift = s;
    fs.truncation = N;
    fs.theta = thetaCounts(s, N);
    for (int n = 0; n <= N; ++n) {
        FiltrationLevel L;
        L.words = wordsOfLength(s, n + 1);
        std::vector<std::string> bad;
        for (std::size_t i = 0; i < L.words.size(); ++i) {
            L.index[L.words[i]] = static_cast<int>(i);
            Q w = weights(L.words[i]);
            if (sgn(w) <= 0) {
                std::string t;
                for (int l : L.words[i]) t += std::to_string(l) + ".";
                bad.push_back(t);
            }
            L.gram.push_back(w);
        }
        if (!bad.empty()) throw std::invalid_argument("filtrationData: degenerate Gram at cylinders " + bad.front() + " and " + std::to_string(bad.size() - 1) + " more");
        if (n == 0) {
            L.f = QMatrix::identity(L.dim());
            L.gr = L.f;
        } else {
            const auto& P = fs.levels[n - 1];
            L.iota = QMatrix(L.dim(), P.dim());
            L.tau = QMatrix(L.dim(), P.dim());
            for (std::size_t i = 0; i < L.dim(); ++i) {
                const Word& w = L.words[i];
                L.iota(i, P.index.at(Word(w.begin(), w.end() - 1))) = 1;
                L.tau(i, P.index.at(Word(w.begin() + 1, w.end()))) = 1;
            }
            L.delta = L.iota - L.tau;
            QMatrix G = L.gramMatrix();
            L.f = orthComplement(L.delta, G);
            L.gr = orthComplement(L.iota.hcat(L.delta), G);
            std::size_t rd = rank(L.delta);
            L.kernelDelta = P.dim() - rd;
            // j: F_{n-1} -> F_n, iota followed by the orthogonal projection onto F_n.
            // F_n is the orthogonal complement of im delta, so the projection has rank
            // rank[iota F | delta] - rank delta.
            if (L.f.cols() > 0 && P.f.cols() > 0) L.jRank = rank((L.iota * P.f).hcat(L.delta)) - rd;
        }
        fs.levels.push_back(std::move(L));
    }
    return fs;
}

} // namespace mumford
