#include "mumford/field_extension.hpp"

#include <map>
#include <stdexcept>

namespace mumford {

unsigned long ExtensionParams::qL(unsigned long q) const {
    unsigned long r = 1;
    for (int i = 0; i < f; ++i) r *= q;
    return r;
}

void requireParams(const ExtensionParams& params) {
    if (params.e < 1 || params.f < 1) throw std::invalid_argument("extension: e and f must be >= 1");
}

Subdivision extendGraph(const DirectedGraph& g, const ExtensionParams& params) {
    requireParams(params);
    return subdivideEdges(g, std::vector<int>(g.numEdges(), params.e));
}

TreePatch extendedTreePatch(unsigned long q, const ExtensionParams& params, int radiusK) {
    requireParams(params);
    TreePatch t = regularTreePatch(params.qL(q), radiusK * params.e);
    for (int k = 0; k < t.graph.numEdges(); ++k) t.graph.setLength(k, Q(1, params.e));
    return t;
}

std::vector<std::vector<int>> extendEdgeMatrix(const std::vector<std::vector<int>>& a, int e) {
    if (e < 1) throw std::invalid_argument("extendEdgeMatrix: e must be >= 1");
    std::size_t n = a.size();
    for (const auto& row : a) {
        if (row.size() != n) throw std::invalid_argument("extendEdgeMatrix: matrix is not square");
        for (int x : row)
            if (x != 0 && x != 1) throw std::invalid_argument("extendEdgeMatrix: entries must be 0 or 1");
    }
    std::size_t m = n * e;
    std::vector<std::vector<int>> out(m, std::vector<int>(m, 0));
    for (std::size_t k = 0; k < n; ++k) {
        for (int p = 0; p + 1 < e; ++p) out[k * e + p][k * e + p + 1] = 1;
        for (std::size_t k2 = 0; k2 < n; ++k2)
            if (a[k][k2]) out[k * e + e - 1][k2 * e] = 1;
    }
    return out;
}

EdgeMatrix extendEdgeMatrix(const EdgeMatrix& aPlus, int e) {
    EdgeMatrix out;
    out.a = extendEdgeMatrix(aPlus.a, e);
    for (int w : aPlus.index)
        for (int p = 0; p < e; ++p) out.index.push_back(w * e + p);
    return out;
}

Walk walkEmbeddingJ(const Subdivision& ext, const Walk& word) {
    if (!isAdmissible(ext.source, word, WalkMode::Walks))
        throw std::invalid_argument("walkEmbeddingJ: word is not admissible");
    return ext.mapWalk(word);
}

IntertwiningReport checkIntertwining(const Subdivision& ext, int e, int maxLen) {
    IntertwiningReport r;
    for (int len = 2; len <= maxLen; ++len)
        for (const auto& w : enumerateWalks(ext.source, len, WalkMode::Walks).walks) {
            Walk jw = walkEmbeddingJ(ext, w);
            Walk lhs = walkEmbeddingJ(ext, Walk(w.begin() + 1, w.end()));
            Walk rhs(jw.begin() + e, jw.end());
            ++r.checked;
            if (lhs != rhs) r.failures.push_back("intertwining fails on a walk of length " + std::to_string(len));
            if (!isAdmissible(ext.graph, jw, WalkMode::Walks)) r.failures.push_back("J image not admissible");
        }
    return r;
}

Z chainAlignedCount(const Subdivision& ext, int e, int n) {
    std::vector<bool> start(ext.graph.numOriented(), false);
    for (const auto& chain : ext.chain) {
        int first = ext.graph.positiveId(chain.front());
        int last = ext.graph.positiveId(chain.back());
        start[first] = true;
        start[ext.graph.inv(last)] = true;
    }
    Z c = 0;
    for (const auto& w : enumerateWalks(ext.graph, e * n, WalkMode::Walks).walks)
        if (start[w.front()]) ++c;
    return c;
}

namespace {

// Columns of an integer matrix as sparse maps.
struct Sparse {
    std::size_t rows = 0;
    std::vector<std::map<int, long>> cols;

    Sparse operator*(const Sparse& o) const {
        Sparse p{rows, std::vector<std::map<int, long>>(o.cols.size())};
        for (std::size_t j = 0; j < o.cols.size(); ++j)
            for (auto [k, x] : o.cols[j])
                for (auto [i, y] : cols[k]) p.cols[j][i] += x * y;
        for (auto& c : p.cols)
            for (auto it = c.begin(); it != c.end();) it = it->second == 0 ? c.erase(it) : std::next(it);
        return p;
    }
    bool operator==(const Sparse& o) const { return rows == o.rows && cols == o.cols; }
};

struct Graded {
    ShiftSpace s;
    std::map<int, std::vector<Word>> words;
    std::map<int, std::map<Word, int>> index;

    const std::vector<Word>& at(int len) {
        if (!words.count(len)) {
            words[len] = wordsOfLength(s, len);
            auto& ix = index[len];
            for (std::size_t i = 0; i < words[len].size(); ++i) ix[words[len][i]] = static_cast<int>(i);
        }
        return words[len];
    }

    // f - f o T^k from length len to len + k.
    Sparse delta(int len, int k) {
        const auto& src = at(len);
        const auto& dst = at(len + k);
        const auto& ix = index[len];
        Sparse d{dst.size(), std::vector<std::map<int, long>>(src.size())};
        for (std::size_t i = 0; i < dst.size(); ++i) {
            const Word& w = dst[i];
            d.cols[ix.at(Word(w.begin(), w.begin() + len))][static_cast<int>(i)] += 1;
            d.cols[ix.at(Word(w.begin() + k, w.end()))][static_cast<int>(i)] -= 1;
        }
        for (auto& c : d.cols)
            for (auto it = c.begin(); it != c.end();) it = it->second == 0 ? c.erase(it) : std::next(it);
        return d;
    }
};

}

std::vector<RestrictionRow> filtrationRestrictionRanks(const DirectedGraph& kGraph, unsigned long q, int e, int jMax) {
    if (jMax < 1) throw std::invalid_argument("filtrationRestrictionRanks: jMax must be >= 1");
    Subdivision ext = extendGraph(kGraph, ExtensionParams{e, 1});
    Graded K{buildSFT(kGraph, q, Alphabet::Walks), {}, {}};
    Graded L{buildSFT(ext.graph, q, Alphabet::Walks), {}, {}};
    if (!K.s.trimmed.empty() || !L.s.trimmed.empty())
        throw std::invalid_argument("filtrationRestrictionRanks: graph has letters that are not bi-extendable");

    auto restriction = [&](int j) {
        const auto& kw = K.at(j);
        L.at(j * e);
        Sparse r{kw.size(), std::vector<std::map<int, long>>(L.words[j * e].size())};
        for (std::size_t i = 0; i < kw.size(); ++i) {
            Word rho = L.s.wordOfWalk(ext.mapWalk(K.s.walkOfWord(kw[i])));
            auto it = L.index[j * e].find(rho);
            if (it == L.index[j * e].end()) throw std::logic_error("filtrationRestrictionRanks: J image is not a word");
            r.cols[it->second][static_cast<int>(i)] = 1;
        }
        return r;
    };

    std::vector<RestrictionRow> out;
    for (int j = 1; j <= jMax; ++j) {
        RestrictionRow row;
        row.j = j;
        Sparse r = restriction(j);
        row.dimK = r.rows;
        row.dimL = r.cols.size();
        std::vector<bool> hit(r.rows, false);
        for (const auto& c : r.cols)
            for (auto [i, x] : c) hit[i] = true;
        // each column has at most one entry and J is injective
        for (bool h : hit) row.rank += h;
        row.surjective = row.rank == row.dimK;
        Sparse r2 = restriction(j + 1);
        row.commutes = (r2 * L.delta(j * e, e)) == (K.delta(j, 1) * r);
        out.push_back(row);
    }
    return out;
}

} // namespace mumford
