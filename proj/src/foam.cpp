#include "mumford/foam.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace mumford {

EulerFactor FoamSpec::eulerFactor() const {
    EulerFactor e;
    e.q = q;
    for (const auto& l : perLambda) e.blocks.push_back({l.alpha, l.d()});
    return e;
}

namespace {

int edgeToken(const json& t, const std::vector<long long>& ids, const DirectedGraph& g) {
    long long id;
    bool reversed = false;
    if (t.is_string()) {
        std::string s = t.get<std::string>();
        if (s.empty() || s[0] != '~') throw std::invalid_argument("loop entry '" + s + "' is neither an id nor ~id");
        reversed = true;
        id = std::stoll(s.substr(1));
    } else {
        id = t.get<long long>();
    }
    auto it = std::find(ids.begin(), ids.end(), id);
    if (it == ids.end()) throw std::invalid_argument("loop uses unknown edge id " + std::to_string(id));
    int w = g.positiveId(static_cast<int>(it - ids.begin()));
    return reversed ? g.inv(w) : w;
}

bool sameCycle(const Walk& a, const Walk& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t r = 0; r < a.size(); ++r)
        if (std::equal(a.begin() + r, a.end(), b.begin()) && std::equal(a.begin(), a.begin() + r, b.end() - r))
            return true;
    return false;
}

bool isZero(const std::vector<Q>& v) {
    return std::all_of(v.begin(), v.end(), [](const Q& x) { return sgn(x) == 0; });
}

} // namespace

FoamSpec foamSpecFromJson(const json& j) {
    FoamSpec s;
    if (!j.contains("graph") || !j.contains("lambdas")) throw std::invalid_argument("foam document needs 'graph' and 'lambdas'");
    s.graph = graphFromJson(j.at("graph"));
    s.q = j.value("q", 2UL);
    std::vector<long long> ids;
    for (const auto& e : j.at("graph").at("edges")) ids.push_back(e.at("id").get<long long>());
    std::sort(ids.begin(), ids.end());
    std::vector<long long> vids;
    for (const auto& v : j.at("graph").at("vertices")) vids.push_back(v.get<long long>());
    for (const auto& l : j.at("lambdas")) {
        FoamLambda fl;
        if (l.contains("alpha")) fl.alpha = parseComplex(l.at("alpha").get<std::string>());
        else if (l.contains("lambda")) fl.alpha = EulerFactor::alphaOf(parseComplex(l.at("lambda").get<std::string>()), s.q);
        else throw std::invalid_argument("lambda entry needs 'alpha' or 'lambda'");
        fl.dGamma = l.value("d_gamma", 0);
        fl.dZero = l.value("d_zero", 0);
        if (l.contains("vertex")) {
            auto it = std::find(vids.begin(), vids.end(), l.at("vertex").get<long long>());
            if (it == vids.end()) throw std::invalid_argument("x_lambda is not a vertex of the graph");
            fl.vertex = static_cast<int>(it - vids.begin());
        }
        if (l.contains("loops"))
            for (const auto& loop : l.at("loops")) {
                Walk w;
                for (const auto& t : loop) w.push_back(edgeToken(t, ids, s.graph));
                fl.loops.push_back(std::move(w));
            }
        s.perLambda.push_back(std::move(fl));
    }
    requireFoamSpec(s);
    return s;
}

json foamSpecToJson(const FoamSpec& s) {
    json j;
    j["q"] = s.q;
    j["graph"] = graphToJson(s.graph);
    j["lambdas"] = json::array();
    for (const auto& l : s.perLambda) {
        json e;
        e["alpha"] = formatComplex(l.alpha, 17);
        e["d_gamma"] = l.dGamma;
        e["d_zero"] = l.dZero;
        e["vertex"] = l.vertex < 0 ? 0 : l.vertex;
        e["loops"] = json::array();
        for (const auto& w : l.loops) {
            json loop = json::array();
            for (int x : w) {
                int k = s.graph.edgeIndex(x);
                if (s.graph.isPositive(x)) loop.push_back(k);
                else loop.push_back("~" + std::to_string(k));
            }
            e["loops"].push_back(loop);
        }
        j["lambdas"].push_back(e);
    }
    return j;
}

void requireFoamSpec(const FoamSpec& s) {
    requireValid(s.graph);
    if (s.q < 2) throw std::invalid_argument("foam: q must be >= 2");
    if (s.perLambda.empty()) throw std::invalid_argument("foam: no eigenvalue blocks");
    int sumGamma = 0;
    std::vector<Walk> all;
    for (std::size_t i = 0; i < s.perLambda.size(); ++i) {
        const auto& l = s.perLambda[i];
        std::string tag = "lambda " + std::to_string(i);
        if (l.dGamma < 0 || l.dZero < 0) throw std::invalid_argument(tag + ": negative multiplicity");
        if (l.d() == 0) throw std::invalid_argument(tag + ": d_lambda = 0");
        if (l.vertex >= s.graph.numVertices()) throw std::invalid_argument(tag + ": invalid x_lambda");
        if (static_cast<int>(l.loops.size()) != l.dGamma)
            throw std::invalid_argument(tag + ": expected " + std::to_string(l.dGamma) + " loop words");
        for (const auto& w : l.loops) {
            if (w.empty() || !isAdmissible(s.graph, w, WalkMode::Walks) || s.graph.rng(w.back()) != s.graph.src(w.front()) ||
                w.back() == s.graph.inv(w.front()))
                throw std::invalid_argument(tag + ": loop word is not a closed reduced walk");
            for (const auto& o : all)
                if (sameCycle(o, w)) throw std::invalid_argument(tag + ": cylinder collision, loop words must be distinct");
            all.push_back(w);
        }
        sumGamma += l.dGamma;
    }
    if (sumGamma > bettiNumber(s.graph))
        throw std::invalid_argument("foam: sum of d_gamma exceeds the Betti number of the dual graph");
}

FoamGraph buildFoamGraph(const FoamSpec& spec, int tailDepth) {
    requireFoamSpec(spec);
    if (tailDepth < 1) throw std::invalid_argument("buildFoamGraph: tail depth must be >= 1");
    FoamGraph out;
    out.tailDepth = tailDepth;
    TailedGraph t = appendTails(spec.graph, tailDepth);
    out.graph = t.graph;
    out.sinkTails = t.tails;
    for (const auto& l : spec.perLambda) {
        int x = l.vertex < 0 ? 0 : l.vertex;
        std::vector<int> att;
        std::vector<Walk> walks;
        for (int i = 0; i < l.dZero; ++i) {
            int v = out.graph.addVertex();
            int k = out.graph.addEdge(x, v);
            Walk w{out.graph.positiveId(k)};
            int prev = v;
            for (int d = 0; d < tailDepth; ++d) {
                int u = out.graph.addVertex();
                w.push_back(out.graph.positiveId(out.graph.addEdge(prev, u)));
                prev = u;
            }
            out.graph.setFrontier(prev);
            att.push_back(w.front());
            walks.push_back(std::move(w));
        }
        out.attachments.push_back(std::move(att));
        out.tailWalks.push_back(std::move(walks));
    }
    if (bettiNumber(out.graph) != bettiNumber(spec.graph)) throw std::logic_error("buildFoamGraph: Betti number changed");
    return out;
}

FoamEmbedding foamEmbeddings(const FoamSpec& spec, const FoamGraph& fg, const FiltrationSpace& f, int nMax) {
    if (nMax < 1) throw std::invalid_argument("foamEmbeddings: nMax must be >= 1");
    const ShiftSpace& s = f.shift;
    FoamEmbedding e;
    int ell = -1;
    for (const auto& l : spec.perLambda)
        for (const auto& w : l.loops) {
            int len = static_cast<int>(w.size());
            if (ell >= 0 && len != ell) throw std::invalid_argument("foamEmbeddings: loop lengths differ; equalize them first");
            ell = len;
        }
    e.ell = ell < 0 ? 1 : ell;
    for (int N = 1; N <= nMax; ++N) {
        if (N * e.ell - 1 > f.truncation) throw std::invalid_argument("foamEmbeddings: truncation below N*ell - 1");
        if (N * e.ell > fg.tailDepth + 1) throw std::invalid_argument("foamEmbeddings: tail shorter than N*ell");
    }
    std::map<int, QMatrix> projGr, projF;
    for (int N = 1; N <= nMax; ++N) {
        int level = N * e.ell - 1;
        projGr[level] = f.projectorGr(level);
        const auto& L = f.levels[level];
        projF[level] = L.f.cols() == 0 ? QMatrix(L.dim(), L.dim()) : projector(L.f, L.gramMatrix());
    }
    std::map<int, std::vector<QMatrix>> lambdaProjections;
    for (std::size_t li = 0; li < spec.perLambda.size(); ++li) {
        const auto& l = spec.perLambda[li];
        FoamLambdaEmbedding le;
        le.dGamma = l.dGamma;
        le.dZero = l.dZero;
        std::map<int, std::vector<std::vector<Q>>> gr, fp;
        if (l.dGamma > 0) {
            std::vector<Word> gens;
            for (const auto& w : l.loops) gens.push_back(s.wordOfWalk(w));
            CohomologyEmbedding ce = embedCohomology(f, gens, nMax);
            le.rotation = ce.rotation;
            for (const auto& v : ce.vectors) {
                FoamVector fv;
                fv.lambda = static_cast<int>(li);
                fv.index = v.generator;
                fv.repetitions = v.repetitions;
                fv.level = v.level;
                fv.chi = v.chi;
                fv.phi = v.phi;
                fv.phiF = projF[v.level] * v.chi;
                gr[v.level].push_back(fv.phi);
                fp[v.level].push_back(fv.phiF);
                e.vectors.push_back(std::move(fv));
            }
        }
        for (int i = 0; i < l.dZero; ++i) {
            const Walk& tail = fg.tailWalks.at(li).at(i);
            for (int N = 1; N <= nMax; ++N) {
                int level = N * e.ell - 1;
                Word w = s.wordOfWalk(Walk(tail.begin(), tail.begin() + N * e.ell));
                FoamVector fv;
                fv.lambda = static_cast<int>(li);
                fv.component = true;
                fv.index = i;
                fv.repetitions = N;
                fv.level = level;
                fv.chi = f.indicator(level, w);
                fv.phi = projGr[level] * fv.chi;
                fv.phiF = projF[level] * fv.chi;
                if (isZero(fv.phi) && isZero(fv.phiF))
                    e.notes.push_back("lambda " + std::to_string(li) + " tail " + std::to_string(i) + ": projection at level " +
                                      std::to_string(level) + " vanishes, the cylinder is a coboundary");
                gr[level].push_back(fv.phi);
                fp[level].push_back(fv.phiF);
                e.vectors.push_back(std::move(fv));
            }
        }
        for (auto& [level, cols] : gr) {
            QMatrix b = columnBasis(QMatrix::fromColumns(cols, f.levels[level].dim()));
            le.dimGr[level] = b.cols();
            le.projection[level] = b.cols() == 0 ? QMatrix(f.levels[level].dim(), f.levels[level].dim())
                                                 : projector(b, f.levels[level].gramMatrix());
        }
        for (auto& [level, cols] : fp)
            le.dimF[level] = columnBasis(QMatrix::fromColumns(cols, f.levels[level].dim())).cols();
        e.perLambda.push_back(std::move(le));
    }
    for (std::size_t a = 0; a < e.perLambda.size(); ++a)
        for (std::size_t b = a + 1; b < e.perLambda.size(); ++b)
            for (const auto& [level, pa] : e.perLambda[a].projection) {
                auto it = e.perLambda[b].projection.find(level);
                if (it == e.perLambda[b].projection.end()) continue;
                QMatrix z = pa * it->second;
                if (!(z == QMatrix(z.rows(), z.cols()))) e.mutuallyOrthogonal = false;
            }
    return e;
}

} // namespace mumford
