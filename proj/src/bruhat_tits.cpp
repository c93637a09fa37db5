#include "mumford/bruhat_tits.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace mumford {

PadicContext PadicContext::make(unsigned long p, int f, int precision) {
    if (p < 2) throw std::invalid_argument("prime must be >= 2");
    for (unsigned long d = 2; d * d <= p; ++d)
        if (p % d == 0) throw std::invalid_argument(std::to_string(p) + " is not prime");
    if (f < 1) throw std::invalid_argument("residue degree must be >= 1");
    if (precision < 1) throw std::invalid_argument("precision must be >= 1");
    PadicContext c;
    c.p = p;
    c.f = f;
    c.q = 1;
    for (int i = 0; i < f; ++i) c.q *= p;
    c.precision = precision;
    return c;
}

Mat2 mat2(const Q& a, const Q& b, const Q& c, const Q& d) { return {a, b, c, d}; }

Mat2 mul(const Mat2& x, const Mat2& y) {
    return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

Q det(const Mat2& m) { return m[0] * m[3] - m[1] * m[2]; }
Q trace(const Mat2& m) { return m[0] + m[3]; }

Mat2 inverse(const Mat2& m) {
    Q d = det(m);
    if (d == 0) throw std::domain_error("singular 2x2 matrix");
    return {m[3] / d, -m[1] / d, -m[2] / d, m[0] / d};
}

Mat2 scale(const Mat2& m, const Q& s) { return {m[0] * s, m[1] * s, m[2] * s, m[3] * s}; }

std::string toString(const Mat2& m) {
    std::ostringstream os;
    os << "[[" << m[0].get_str() << "," << m[1].get_str() << "],[" << m[2].get_str() << "," << m[3].get_str() << "]]";
    return os.str();
}

Mat2 LatticeClass::rep() const { return {qpow(p, a), b, Q(0), Q(1)}; }

std::string LatticeClass::key() const {
    return std::to_string(a) + ":" + b.get_str();
}

static Q unitPart(const Q& x, unsigned long p) {
    return x / qpow(p, valuation(x, p));
}

// b reduced modulo p^a Z_p to a representative sum of digits c_k p^k, k < a.
static Q reduceMod(const Q& b, long a, unsigned long p) {
    if (b == 0) return 0;
    long v = valuation(b, p);
    if (v >= a) return 0;
    Q u = unitPart(b, p);
    Z mod;
    mpz_ui_pow_ui(mod.get_mpz_t(), p, static_cast<unsigned long>(a - v));
    Z n = u.get_num(), d = u.get_den();
    Z dinv;
    if (mpz_invert(dinv.get_mpz_t(), d.get_mpz_t(), mod.get_mpz_t()) == 0)
        throw std::logic_error("reduceMod: denominator not a unit");
    Z r = (n * dinv) % mod;
    if (r < 0) r += mod;
    return qpow(p, v) * Q(r);
}

LatticeClass canonicalize(const Mat2& m, unsigned long p) {
    if (det(m) == 0) throw std::domain_error("lattice basis is not invertible");
    // columns c0 = (m0, m2), c1 = (m1, m3)
    std::array<Q, 2> c0{m[0], m[2]}, c1{m[1], m[3]};
    long v0 = valuation(c0[1], p), v1 = valuation(c1[1], p);
    std::array<Q, 2>& piv = (v0 <= v1) ? c0 : c1;
    std::array<Q, 2>& oth = (v0 <= v1) ? c1 : c0;
    if (oth[1] != 0) {
        Q r = oth[1] / piv[1];
        oth[0] -= r * piv[0];
        oth[1] = 0;
    }
    const Q& x = oth[0];
    const Q& y = piv[0];
    const Q& z = piv[1];
    long alpha = valuation(x, p), beta = valuation(z, p);
    Q u2 = unitPart(z, p);
    LatticeClass c;
    c.p = p;
    c.a = alpha - beta;
    c.b = reduceMod(y / u2 / qpow(p, beta), c.a, p);
    return c;
}

LatticeClass baseClass(unsigned long p) {
    LatticeClass c;
    c.p = p;
    return c;
}

static long minEntryValuation(const Mat2& m, unsigned long p) {
    long v = kInfVal;
    for (const auto& x : m) v = std::min(v, valuation(x, p));
    return v;
}

static long distanceOfBases(const Mat2& x, const Mat2& y, unsigned long p) {
    Mat2 b = mul(inverse(x), y);
    return valuation(det(b), p) - 2 * minEntryValuation(b, p);
}

long latticeDistance(const LatticeClass& x, const LatticeClass& y) {
    if (x.p != y.p) throw std::invalid_argument("latticeDistance: different primes");
    return distanceOfBases(x.rep(), y.rep(), x.p);
}

bool sameClassByValuation(const Mat2& x, const Mat2& y, unsigned long p) {
    return distanceOfBases(x, y, p) == 0;
}

std::vector<LatticeClass> vertexNeighbors(const LatticeClass& v, const PadicContext& ctx) {
    if (ctx.f != 1) throw std::invalid_argument("vertexNeighbors: explicit arithmetic needs f = 1");
    Mat2 r = v.rep();
    std::vector<LatticeClass> out;
    Q pq(static_cast<long>(ctx.p));
    for (unsigned long k = 0; k < ctx.p; ++k)
        out.push_back(canonicalize(mul(r, mat2(pq, Q(static_cast<long>(k)), 0, 1)), ctx.p));
    out.push_back(canonicalize(mul(r, mat2(1, 0, 0, pq)), ctx.p));
    return out;
}

LatticeClass actOnVertex(const Mat2& m, const LatticeClass& v) {
    if (det(m) == 0) throw std::domain_error("actOnVertex: singular matrix");
    return canonicalize(mul(m, v.rep()), v.p);
}

bool sameP1(const P1Point& x, const P1Point& y) { return x.a * y.b == x.b * y.a; }

P1Point parseP1(const std::string& s) {
    std::string t = s;
    t.erase(std::remove_if(t.begin(), t.end(), ::isspace), t.end());
    if (t.size() < 5 || t.front() != '[' || t.back() != ']')
        throw std::invalid_argument("P1 point must look like [a:b]: " + s);
    auto colon = t.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("P1 point must look like [a:b]: " + s);
    P1Point z{parseRational(t.substr(1, colon - 1)), parseRational(t.substr(colon + 1, t.size() - colon - 2))};
    if (z.a == 0 && z.b == 0) throw std::invalid_argument("[0:0] is not a point");
    return z;
}

std::string toString(const P1Point& z) { return "[" + z.a.get_str() + ":" + z.b.get_str() + "]"; }

std::vector<LatticeClass> halfLineOfPoint(const P1Point& z, int depth, const PadicContext& ctx) {
    if (z.a == 0 && z.b == 0) throw std::invalid_argument("halfLineOfPoint: [0:0]");
    if (depth < 0) throw std::invalid_argument("halfLineOfPoint: negative depth");
    unsigned long p = ctx.p;
    long m = std::min(valuation(z.a, p), valuation(z.b, p));
    Q s = qpow(p, -m);
    Q a = z.a * s, b = z.b * s;
    bool firstUnit = (a != 0 && valuation(a, p) == 0);
    std::vector<LatticeClass> out;
    for (int n = 0; n <= depth; ++n) {
        Q pn = qpow(p, n);
        Mat2 basis = firstUnit ? mat2(a, 0, b, pn) : mat2(a, pn, b, 0);
        out.push_back(canonicalize(basis, p));
    }
    return out;
}

LatticeClass crossroad(const P1Point& z0, const P1Point& z1, const P1Point& zInf, const PadicContext& ctx) {
    if (sameP1(z0, z1) || sameP1(z0, zInf) || sameP1(z1, zInf))
        throw std::invalid_argument("crossroad: points must be pairwise distinct");
    std::array<P1Point, 3> z{z0, z1, zInf};
    for (int depth = 4;; depth *= 2) {
        if (depth > 4 * ctx.precision) throw std::runtime_error("crossroad: precision exhausted");
        std::array<std::vector<LatticeClass>, 3> ray;
        for (int i = 0; i < 3; ++i) ray[i] = halfLineOfPoint(z[i], depth, ctx);
        auto common = [&](int i, int j) {
            std::size_t c = 0;
            while (c < ray[i].size() && ray[i][c] == ray[j][c]) ++c;
            return c;
        };
        std::size_t c01 = common(0, 1), c02 = common(0, 2), c12 = common(1, 2);
        if (std::max({c01, c02, c12}) > static_cast<std::size_t>(depth)) continue;
        if (c01 >= c02 && c01 >= c12) return ray[0][c01 - 1];
        if (c02 >= c12) return ray[0][c02 - 1];
        return ray[1][c12 - 1];
    }
}

int TreePatch::find(const LatticeClass& c) const {
    auto it = index.find(c.key());
    return it == index.end() ? -1 : it->second;
}

std::vector<int> TreePatch::neighbors(int v) const {
    std::vector<int> out;
    for (int w : graph.outEdges(v)) out.push_back(graph.rng(w));
    return out;
}

TreePatch buildTreePatch(const PadicContext& ctx, const LatticeClass& center, int radius) {
    if (radius < 0) throw std::invalid_argument("buildTreePatch: negative radius");
    if (radius > ctx.precision) throw std::invalid_argument("buildTreePatch: radius exceeds precision budget");
    if (ctx.f != 1) {
        TreePatch t = regularTreePatch(ctx.q, radius);
        t.p = ctx.p;
        return t;
    }
    TreePatch t;
    t.q = ctx.q;
    t.p = ctx.p;
    t.depth = radius;
    t.graph = DirectedGraph(1);
    t.labels.push_back(center);
    t.dist.push_back(0);
    t.index[center.key()] = 0;
    for (std::size_t i = 0; i < t.labels.size(); ++i) {
        if (t.dist[i] >= radius) continue;
        for (const auto& nb : vertexNeighbors(t.labels[i], ctx)) {
            if (t.index.count(nb.key())) continue;
            int v = t.graph.addVertex();
            t.labels.push_back(nb);
            t.dist.push_back(t.dist[i] + 1);
            t.index[nb.key()] = v;
            t.graph.addEdge(static_cast<int>(i), v);
        }
    }
    if (radius > 0)
        for (int v = 0; v < t.graph.numVertices(); ++v)
            if (t.dist[v] == radius) t.graph.setFrontier(v);
    return t;
}

TreePatch regularTreePatch(unsigned long q, int radius) {
    if (radius < 0) throw std::invalid_argument("regularTreePatch: negative radius");
    TreePatch t;
    t.q = q;
    t.depth = radius;
    t.graph = DirectedGraph(1);
    t.dist.push_back(0);
    for (int i = 0; i < t.graph.numVertices(); ++i) {
        if (t.dist[i] >= radius) continue;
        unsigned long children = (i == 0) ? q + 1 : q;
        for (unsigned long c = 0; c < children; ++c) {
            int v = t.graph.addVertex();
            t.dist.push_back(t.dist[i] + 1);
            t.graph.addEdge(i, v);
        }
    }
    if (radius > 0)
        for (int v = 0; v < t.graph.numVertices(); ++v)
            if (t.dist[v] == radius) t.graph.setFrontier(v);
    return t;
}

std::vector<std::vector<int>> patchDistances(const TreePatch& t) {
    int n = t.graph.numVertices();
    std::vector<std::vector<int>> d(n, std::vector<int>(n, -1));
    for (int s = 0; s < n; ++s) {
        std::deque<int> qu{s};
        d[s][s] = 0;
        while (!qu.empty()) {
            int x = qu.front();
            qu.pop_front();
            for (int y : t.neighbors(x))
                if (d[s][y] < 0) { d[s][y] = d[s][x] + 1; qu.push_back(y); }
        }
    }
    return d;
}

} // namespace mumford
