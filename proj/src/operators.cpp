#include "mumford/operators.hpp"

#include "mumford/special.hpp"

#include <cmath>
#include <stdexcept>

namespace mumford {

OperatorSet buildOperators(const FiltrationSpace& f) {
    if (f.truncation < 2) throw std::invalid_argument("buildOperators: truncation must be >= 2");
    OperatorSet o;
    o.space = f;
    o.truncation = f.truncation;
    const ShiftSpace& sh = f.shift;
    int N = f.truncation, nl = sh.size();
    o.pv.assign(sh.graph.numVertices(), {});
    o.pi.assign(nl, {});
    o.s.assign(nl, {});
    o.sAdj.assign(nl, {});
    o.t.assign(nl, {});
    for (int n = 0; n <= N; ++n) {
        const auto& L = f.levels[n];
        for (int v = 0; v < sh.graph.numVertices(); ++v) {
            QMatrix m(L.dim(), L.dim());
            for (std::size_t i = 0; i < L.dim(); ++i)
                if (sh.src(L.words[i][0]) == v) m(i, i) = 1;
            o.pv[v].push_back(m);
        }
        for (int w = 0; w < nl; ++w) {
            QMatrix m(L.dim(), L.dim());
            for (std::size_t i = 0; i < L.dim(); ++i)
                if (L.words[i][0] == w) m(i, i) = 1;
            o.pi[w].push_back(m);
        }
        if (n == N) continue;
        const auto& U = f.levels[n + 1];
        QMatrix gD = L.gramMatrix(), gC = U.gramMatrix();
        for (int w = 0; w < nl; ++w) {
            QMatrix s(U.dim(), L.dim()), t(L.dim(), U.dim());
            for (std::size_t i = 0; i < L.dim(); ++i) {
                const Word& sigma = L.words[i];
                if (!sh.a[w][sigma[0]]) continue;
                Word x{w};
                x.insert(x.end(), sigma.begin(), sigma.end());
                std::size_t j = U.index.at(x);
                s(j, i) = 1;
                t(i, j) = 1;
            }
            o.sAdj[w].push_back(gramAdjoint(s, gD, gC));
            o.s[w].push_back(std::move(s));
            o.t[w].push_back(std::move(t));
        }
    }
    return o;
}

bool CKReport::ok() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

bool CKReport::cuntzKriegerOk() const {
    for (const auto& c : checks)
        if (!c.pass && c.name != "delta-commutation") return false;
    return true;
}

const RelationCheck& CKReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return c;
    throw std::out_of_range("CKReport: no check named " + name);
}

namespace {

std::string wordText(const ShiftSpace& sh, const Word& w) {
    std::string t = "[";
    for (std::size_t i = 0; i < w.size(); ++i) t += (i ? " " : "") + std::to_string(sh.letters[w[i]]);
    return t + "]";
}

std::string vectorText(const ShiftSpace& sh, const FiltrationLevel& L, const std::vector<Q>& v) {
    std::string t;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (sgn(v[i]) != 0) t += (t.empty() ? "" : " + ") + toString(v[i]) + "*chi" + wordText(sh, L.words[i]);
    return t.empty() ? "0" : t;
}

// Records the first differing column of lhs and rhs as a witness.
void compare(RelationCheck& c, const OperatorSet& o, const QMatrix& lhs, const QMatrix& rhs, int domLevel,
             int codLevel, const std::string& where) {
    ++c.checked;
    if (lhs == rhs || !c.pass) {
        if (!(lhs == rhs)) c.pass = false;
        return;
    }
    c.pass = false;
    const auto& sh = o.shift();
    const auto& D = o.space.levels[domLevel];
    const auto& C = o.space.levels[codLevel];
    for (std::size_t j = 0; j < lhs.cols(); ++j) {
        auto a = lhs.column(j), b = rhs.column(j);
        if (a != b) {
            c.witness = where + ", input chi" + wordText(sh, D.words[j]) + ": lhs = " + vectorText(sh, C, a) +
                        ", rhs = " + vectorText(sh, C, b);
            return;
        }
    }
}

}

CKReport checkCKRelations(const OperatorSet& o) {
    CKReport rep;
    const ShiftSpace& sh = o.shift();
    const auto& f = o.space;
    int N = o.truncation, nl = sh.size(), nv = sh.graph.numVertices();
    Q q(static_cast<long>(sh.q));

    RelationCheck proj{"projections"};
    for (int n = 0; n <= N; ++n) {
        std::size_t d = f.levels[n].dim();
        QMatrix sum(d, d), sumPi(d, d);
        for (int v = 0; v < nv; ++v) {
            sum = sum + o.pv[v][n];
            compare(proj, o, o.pv[v][n] * o.pv[v][n], o.pv[v][n], n, n, "P_v^2, level " + std::to_string(n));
            for (int u = v + 1; u < nv; ++u)
                compare(proj, o, o.pv[v][n] * o.pv[u][n], QMatrix(d, d), n, n, "P_u P_v, level " + std::to_string(n));
        }
        for (int w = 0; w < nl; ++w) sumPi = sumPi + o.pi[w][n];
        compare(proj, o, sum, QMatrix::identity(d), n, n, "sum of P_v, level " + std::to_string(n));
        compare(proj, o, sumPi, QMatrix::identity(d), n, n, "sum of Pi_w, level " + std::to_string(n));
    }
    rep.checks.push_back(proj);

    RelationCheck source{"source"};
    for (int w = 0; w < nl; ++w) {
        int inv = sh.letterOf(sh.graph.inv(sh.letters[w]));
        for (int n = 0; n < N; ++n) {
            QMatrix rhs = o.pv[sh.rng(w)][n];
            if (sh.alphabet == Alphabet::Walks && inv >= 0) rhs = rhs - o.pi[inv][n];
            compare(source, o, (o.sAdj[w][n] * o.s[w][n]) * q, rhs, n, n,
                    "letter " + std::to_string(sh.letters[w]) + ", level " + std::to_string(n));
        }
        ++source.clipped;
    }
    rep.checks.push_back(source);

    RelationCheck range{"range"};
    for (int v = 0; v < nv; ++v) {
        for (int n = 1; n <= N; ++n) {
            std::size_t d = f.levels[n].dim();
            QMatrix sum(d, d);
            for (int w = 0; w < nl; ++w)
                if (sh.src(w) == v) sum = sum + (o.s[w][n - 1] * o.sAdj[w][n - 1]) * q;
            compare(range, o, sum, o.pv[v][n], n, n, "vertex " + std::to_string(v) + ", level " + std::to_string(n));
        }
        ++range.clipped;
    }
    rep.checks.push_back(range);

    RelationCheck ck{"cuntz-krieger"};
    for (int w = 0; w < nl; ++w) {
        for (int n = 1; n < N; ++n) {
            std::size_t d = f.levels[n].dim();
            QMatrix sum(d, d);
            for (int x = 0; x < nl; ++x)
                if (sh.a[w][x]) sum = sum + (o.s[x][n - 1] * o.sAdj[x][n - 1]) * q;
            compare(ck, o, (o.sAdj[w][n] * o.s[w][n]) * q, sum, n, n,
                    "letter " + std::to_string(sh.letters[w]) + ", level " + std::to_string(n));
        }
        ck.clipped += 2;
    }
    rep.checks.push_back(ck);

    RelationCheck dc{"delta-commutation"};
    for (int w = 0; w < nl; ++w) {
        for (int n = 1; n < N; ++n)
            compare(dc, o, o.s[w][n] * f.levels[n].delta, f.levels[n + 1].delta * o.s[w][n - 1], n - 1, n + 1,
                    "letter " + std::to_string(sh.letters[w]) + ", level " + std::to_string(n - 1));
        dc.clipped += 2;
    }
    rep.checks.push_back(dc);
    return rep;
}

CohomologyEmbedding embedCohomology(const FiltrationSpace& f, const std::vector<Word>& generators, int nMax) {
    if (generators.empty()) throw std::invalid_argument("embedCohomology: no generator words");
    if (nMax < 1) throw std::invalid_argument("embedCohomology: nMax must be >= 1");
    CohomologyEmbedding e;
    e.genus = static_cast<int>(generators.size());
    e.ell = static_cast<int>(generators.front().size());
    for (const auto& w : generators) {
        if (static_cast<int>(w.size()) != e.ell)
            throw std::invalid_argument("embedCohomology: loop lengths differ; equalize them first");
        if (!f.shift.admissible(w) || !f.shift.a[w.back()][w.front()])
            throw std::invalid_argument("embedCohomology: generator word is not a closed admissible loop of the shift");
    }
    for (int N = 1; N <= nMax; ++N)
        if (N * e.ell - 1 > f.truncation) throw std::invalid_argument("embedCohomology: truncation below N*ell - 1");
    std::map<int, QMatrix> proj;
    for (int N = 1; N <= nMax; ++N) proj[N * e.ell - 1] = f.projectorGr(N * e.ell - 1);
    auto vectorsFor = [&](const Word& loop, int gen, std::vector<EmbeddedVector>& out) {
        out.clear();
        for (int N = 1; N <= nMax; ++N) {
            int level = N * e.ell - 1;
            Word w;
            for (int k = 0; k < N; ++k) w.insert(w.end(), loop.begin(), loop.end());
            EmbeddedVector v;
            v.generator = gen;
            v.repetitions = N;
            v.level = level;
            v.chi = f.indicator(level, w);
            v.phi = proj[level] * v.chi;
            bool zero = true;
            for (const auto& x : v.phi) zero = zero && sgn(x) == 0;
            if (zero) return false;
            out.push_back(std::move(v));
        }
        return true;
    };
    // A cyclic rotation of a loop word represents the same class; take the first
    // rotation whose cylinders survive the projection.
    std::map<int, std::vector<std::vector<Q>>> byLevel;
    for (std::size_t i = 0; i < generators.size(); ++i) {
        std::vector<EmbeddedVector> vs;
        int rot = -1;
        for (int r = 0; r < e.ell && rot < 0; ++r) {
            Word loop(generators[i].begin() + r, generators[i].end());
            loop.insert(loop.end(), generators[i].begin(), generators[i].begin() + r);
            if (vectorsFor(loop, static_cast<int>(i), vs)) rot = r;
        }
        if (rot < 0)
            throw std::runtime_error("embedCohomology: projection of every rotation of generator " + std::to_string(i) +
                                     " vanishes at some N");
        e.rotation.push_back(rot);
        for (auto& v : vs) {
            byLevel[v.level].push_back(v.phi);
            e.vectors.push_back(std::move(v));
        }
    }
    for (auto& [level, cols] : byLevel) {
        QMatrix m = QMatrix::fromColumns(cols, f.levels[level].dim());
        QMatrix b = columnBasis(m);
        e.dimPerLevel[level] = b.cols();
        e.totalRank += b.cols();
        e.projection[level] = projector(b, f.levels[level].gramMatrix());
    }
    return e;
}

AFCoreElement afCoreElement(const OperatorSet& o, const Word& word, int n, int level) {
    if (word.empty() || n < 1) throw std::invalid_argument("afCoreElement: need a nonempty word and n >= 1");
    long len = static_cast<long>(word.size()) * n;
    if (level < len || level > o.truncation) throw std::invalid_argument("afCoreElement: truncation exceeded");
    Word mu;
    for (int k = 0; k < n; ++k) mu.insert(mu.end(), word.begin(), word.end());
    std::size_t d = o.space.levels[level].dim();
    QMatrix m = QMatrix::identity(d);
    int lv = level;
    for (int x : mu) {
        m = o.sAdj[x][lv - 1] * m;
        --lv;
    }
    for (auto it = mu.rbegin(); it != mu.rend(); ++it) {
        m = o.s[*it][lv] * m;
        ++lv;
    }
    AFCoreElement a;
    a.q = m * qpow(o.q(), len);
    a.level = level;
    a.idempotent = a.q * a.q == a.q;
    a.multipliesByCylinder = a.q == QMatrix::diag(o.space.indicator(level, mu));
    a.certificate = "q^" + std::to_string(len) + " S_mu S_mu^* with |mu| = " + std::to_string(len);
    return a;
}

AFTrace afCoreTrace(const OperatorSet& o, const std::vector<Word>& generators, int i, int n) {
    int ell = static_cast<int>(generators.at(i).size());
    int level = n * ell;
    AFCoreElement a = afCoreElement(o, generators[i], n, level);
    if (!a.multipliesByCylinder) throw std::logic_error("afCoreTrace: Q is not the cylinder multiplication");
    const auto& f = o.space;
    int birth = level - 1;
    std::vector<std::vector<Q>> chiUp, chiBirth;
    for (const auto& g : generators) {
        Word w;
        for (int k = 0; k < n; ++k) w.insert(w.end(), g.begin(), g.end());
        chiUp.push_back(f.indicator(level, w));
        chiBirth.push_back(f.indicator(birth, w));
    }
    std::size_t gg = generators.size();
    // Q chi_j = sum_k C(k, j) chi_k; cylinders are disjoint so C is read off coordinates.
    QMatrix X = QMatrix::fromColumns(chiUp, f.levels[level].dim());
    QMatrix QX = a.q * X;
    QMatrix G = f.levels[level].gramMatrix();
    QMatrix C = *inverse(X.transpose() * G * X) * (X.transpose() * G * QX);
    if (!(X * C == QX)) throw std::logic_error("afCoreTrace: span of the cylinders is not invariant");
    AFTrace t;
    t.onCylinders = C.trace();
    // Transport to the Gr components at the birth level.
    QMatrix Pb = f.projectorGr(birth);
    QMatrix Xb = QMatrix::fromColumns(chiBirth, f.levels[birth].dim());
    QMatrix Phi = Pb * Xb;
    QMatrix Qb = QMatrix::diag(chiBirth[i]);
    QMatrix PQX = Pb * (Qb * Xb);
    QMatrix Gb = f.levels[birth].gramMatrix();
    auto inv = inverse(Phi.transpose() * Gb * Phi);
    if (!inv || Phi.cols() != gg) throw std::runtime_error("afCoreTrace: projected cylinders are dependent");
    QMatrix Ct = *inv * (Phi.transpose() * Gb * PQX);
    if (!(Phi * Ct == PQX)) throw std::logic_error("afCoreTrace: transported operator leaves the span");
    t.transported = Ct.trace();
    return t;
}

AFZeta zetaViaAFCore(const OperatorSet& o, const std::vector<Word>& generators, int nTrunc, double unit,
                     std::complex<double> z) {
    if (nTrunc < 1) throw std::invalid_argument("zetaViaAFCore: nTrunc must be >= 1");
    AFZeta r;
    r.value = 0;
    double g = static_cast<double>(generators.size());
    for (int n = 1; n <= nTrunc; ++n) {
        Q tr = 0;
        for (std::size_t i = 0; i < generators.size(); ++i) tr += afCoreTrace(o, generators, static_cast<int>(i), n).onCylinders;
        tr *= 2;  // the + and - copies
        r.traces.push_back(tr);
        r.value += tr.get_d() * std::exp(-z * std::log(n * unit));
    }
    r.value += 2 * g * std::exp(-z * std::log(unit)) * hurwitzZeta(z, static_cast<double>(nTrunc + 1));
    return r;
}

} // namespace mumford
