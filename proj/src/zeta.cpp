#include "mumford/zeta.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace mumford {

double frobeniusUnit(unsigned long q) {
    if (q < 2) throw std::invalid_argument("q must be >= 2");
    return 2 * std::numbers::pi / std::log(static_cast<double>(q));
}

double DiracSpectrum::unit() const {
    return variant == DiracVariant::Plain ? 1.0 : frobeniusUnit(q) / ell;
}

double DiracSpectrum::eigenvalue(int sign, int level) const {
    return sign > 0 ? level * unit() : -(level + 1) * unit();
}

DiracSpectrum diracSpectrum(DiracVariant variant, int ell, unsigned long q, int nMax) {
    if (ell < 1 || q < 2 || nMax < 0) throw std::invalid_argument("diracSpectrum: need ell >= 1, q >= 2, nMax >= 0");
    DiracSpectrum d;
    d.variant = variant;
    d.ell = ell;
    d.q = q;
    d.nMax = nMax;
    for (int n = 0; n <= nMax; ++n) {
        d.levels.push_back({1, n, d.eigenvalue(1, n)});
        d.levels.push_back({-1, n, d.eigenvalue(-1, n)});
    }
    d.spacing = d.unit();
    d.spacingConstant = true;
    for (int n = 1; n <= nMax; ++n) {
        if (std::abs(d.eigenvalue(1, n) - d.eigenvalue(1, n - 1) - d.spacing) > 1e-12 * (1 + n * d.spacing) ||
            std::abs(d.eigenvalue(-1, n - 1) - d.eigenvalue(-1, n) - d.spacing) > 1e-12 * (1 + n * d.spacing))
            d.spacingConstant = false;
    }
    return d;
}

double TraceTable::at(long m) const {
    if (m >= 0) {
        if (m < static_cast<long>(plus.size())) return plus[m];
        return plusTail.at(m % period);
    }
    long k = -m - 1;
    if (k < static_cast<long>(minus.size())) return minus[k];
    return minusTail.at((-m) % period);
}

TraceTable TraceTable::constant(double unit, double g, int period) {
    TraceTable t;
    t.unit = unit;
    t.period = period;
    t.plusTail.assign(period, g);
    t.minusTail.assign(period, g);
    return t;
}

TraceTable splitTraces(unsigned long q, int g, int ell) {
    if (ell < 1) throw std::invalid_argument("splitTraces: ell must be >= 1");
    TraceTable t;
    t.unit = frobeniusUnit(q) / ell;
    t.period = ell;
    t.plusTail.assign(ell, 0.0);
    t.minusTail.assign(ell, 0.0);
    t.plusTail[0] = t.minusTail[0] = g;
    return t;
}

namespace {

// Explicit range |m| <= M, then tails m = r + P k (k >= 0) per residue class.
long explicitRange(const TraceTable& t, cplx s) {
    long m = static_cast<long>(std::max(t.plus.size(), t.minus.size())) + 2 * t.period;
    long need = static_cast<long>(std::ceil(std::abs(s.imag()) / t.unit + std::abs(s.real()) / t.unit)) + 2 * t.period + 2;
    return std::max(m, need);
}

struct Tail {
    double trace;
    long first;   // first |m| of the progression beyond the explicit range
};

std::vector<Tail> tails(const TraceTable& t, long M, int sign) {
    std::vector<Tail> out;
    for (long m = M + 1; m <= M + t.period; ++m) {
        double tr = t.at(sign * m);
        if (tr != 0) out.push_back({tr, m});
    }
    return out;
}

}

ZetaValue zetaFunction(const TraceTable& t, ZetaMode mode, cplx s, cplx z, bool includeZero) {
    long M = explicitRange(t, s);
    double P = t.period;
    ZetaValue out{};
    auto term = [&](cplx x) { return std::exp(-z * std::log(x)); };
    for (int sign : {1, -1}) {
        cplx acc = 0;
        long lo = sign > 0 ? 0 : 1;
        for (long k = lo; k <= M; ++k) {
            long m = sign * k;
            double tr = t.at(m);
            if (tr == 0) continue;
            double lam = m * t.unit;
            switch (mode) {
            case ZetaMode::Abs:
                if (m != 0) acc += tr * term(std::abs(lam));
                break;
            case ZetaMode::TwoVar:
                if (m != 0 || includeZero) acc += tr * term(s + std::abs(lam));
                break;
            case ZetaMode::PlusMinus:
                acc += tr * term(s + cplx(0, lam));
                break;
            }
        }
        for (const auto& tl : tails(t, M, sign)) {
            double r = static_cast<double>(tl.first);
            switch (mode) {
            case ZetaMode::Abs:
                acc += tl.trace * term(t.unit * P) * hurwitzZeta(z, r / P);
                break;
            case ZetaMode::TwoVar:
                acc += tl.trace * term(t.unit * P) * hurwitzZeta(z, (s + t.unit * r) / (t.unit * P));
                break;
            case ZetaMode::PlusMinus: {
                cplx w(0, sign * t.unit * P);
                cplx a = (s + cplx(0, sign * t.unit * r)) / w;
                acc += tl.trace * term(w) * hurwitzZeta(z, a);
                break;
            }
            }
        }
        if (sign > 0) out.plus = acc;
        else out.minus = acc;
    }
    out.value = out.plus + out.minus;
    return out;
}

Determinant regularizedDeterminant(const TraceTable& t, cplx s, Rotation rot) {
    long M = explicitRange(t, s);
    double P = t.period;
    const double halfLog2Pi = 0.5 * std::log(2 * std::numbers::pi);
    Determinant d{};
    cplx logs[2] = {0, 0};
    for (int sign : {1, -1}) {
        cplx acc = 0;
        long lo = sign > 0 ? 0 : 1;
        for (long k = lo; k <= M; ++k) {
            long m = sign * k;
            double tr = t.at(m);
            if (tr == 0) continue;
            double lam = m * t.unit;
            cplx x = rot == Rotation::ImaginaryD ? s + cplx(0, lam) : s + std::abs(lam);
            if (std::abs(x) < 1e-13)
                throw std::domain_error("regularizedDeterminant: s hits the spectrum at level m = " + std::to_string(m));
            acc += tr * std::log(x);
        }
        for (const auto& tl : tails(t, M, sign)) {
            double r = static_cast<double>(tl.first);
            cplx w, a;
            if (rot == Rotation::ImaginaryD) {
                w = cplx(0, sign * t.unit * P);
                a = (s + cplx(0, sign * t.unit * r)) / w;
            } else {
                w = t.unit * P;
                a = (s + t.unit * r) / w;
            }
            // -d/dz [w^-z zeta(z, a)] at z = 0
            acc += tl.trace * (std::log(w) * (0.5 - a) - logGamma(a) + halfLog2Pi);
        }
        logs[sign > 0 ? 0 : 1] = acc;
    }
    d.plus = std::exp(logs[0]);
    d.minus = std::exp(logs[1]);
    d.logValue = logs[0] + logs[1];
    d.value = std::exp(d.logValue);
    return d;
}

EulerFactor EulerFactor::split(unsigned long q, int g) {
    EulerFactor e;
    e.q = q;
    if (g > 0) e.blocks.push_back({0, g});
    return e;
}

cplx EulerFactor::alphaOf(cplx lambda, unsigned long q) {
    if (std::abs(lambda) == 0) throw std::invalid_argument("alphaOf: lambda must be nonzero");
    return std::log(lambda) / std::log(static_cast<double>(q));
}

cplx eulerFactor(const EulerFactor& spec, cplx s) {
    cplx r = 1;
    double lq = std::log(static_cast<double>(spec.q));
    for (const auto& b : spec.blocks) {
        cplx x = 1.0 - std::exp((b.alpha - s) * lq);
        if (std::abs(x) < 1e-14) throw std::domain_error("eulerFactor: pole, lambda q^-s = 1");
        r *= std::pow(x, -static_cast<double>(b.d));
    }
    return r;
}

std::vector<LocalFactorRow> verifyLocalFactorTheorem(const EulerFactor& spec, const std::vector<cplx>& sGrid,
                                                     int ell, double tol) {
    std::vector<LocalFactorRow> rows;
    for (cplx s : sGrid) {
        LocalFactorRow row;
        row.s = s;
        try {
            row.closedForm = 1.0 / eulerFactor(spec, s);
            cplx det = 1;
            for (const auto& b : spec.blocks) det *= regularizedDeterminant(splitTraces(spec.q, b.d, ell), s - b.alpha).value;
            row.det = det;
            double denom = std::max(std::abs(row.closedForm), 1e-300);
            row.relError = std::abs(row.det - row.closedForm) / denom;
            row.pass = row.relError < tol;
        } catch (const std::domain_error& e) {
            row.skipped = true;
            row.note = e.what();
        }
        rows.push_back(row);
    }
    return rows;
}

std::string formatComplex(cplx z, int digits) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.*g%+.*gj", digits, z.real(), digits, z.imag());
    return buf;
}

cplx parseComplex(const std::string& text) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), ::isspace), s.end());
    if (s.empty()) throw std::invalid_argument("parseComplex: empty string");
    try {
        if (s.back() != 'j' && s.back() != 'i') return {std::stod(s), 0.0};
        std::string body = s.substr(0, s.size() - 1);
        // split at the last sign that is not an exponent sign
        std::size_t cut = std::string::npos;
        for (std::size_t k = body.size(); k-- > 1;)
            if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') { cut = k; break; }
        if (cut == std::string::npos) {
            double im = (body.empty() || body == "+") ? 1.0 : body == "-" ? -1.0 : std::stod(body);
            return {0.0, im};
        }
        std::string re = body.substr(0, cut), im = body.substr(cut);
        double imv = im == "+" ? 1.0 : im == "-" ? -1.0 : std::stod(im);
        return {std::stod(re), imv};
    } catch (const std::logic_error&) {
        throw std::invalid_argument("parseComplex: cannot parse '" + text + "'");
    }
}

} // namespace mumford
