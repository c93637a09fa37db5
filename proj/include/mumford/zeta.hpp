#pragma once

#include "mumford/special.hpp"

#include <string>
#include <vector>

namespace mumford {

enum class DiracVariant { Plain, Scaled };

struct DiracLevel {
    int sign = 1;   // +1 or -1
    int level = 0;
    double eigenvalue = 0;
};

struct DiracSpectrum {
    DiracVariant variant = DiracVariant::Plain;
    int ell = 1;
    unsigned long q = 2;
    int nMax = 0;
    std::vector<DiracLevel> levels;  // (+,0), (-,0), (+,1), (-,1), ...
    double spacing = 0;              // eigenvalue step between consecutive levels
    bool spacingConstant = false;

    double eigenvalue(int sign, int level) const;
    double unit() const;             // eigenvalue of (+, 1)
};

DiracSpectrum diracSpectrum(DiracVariant variant, int ell, unsigned long q, int nMax);

// 2 pi / log q.
double frobeniusUnit(unsigned long q);

// Traces Tr(a Pi) on the spectrum of iD, indexed by m with eigenvalue m * unit.
// m >= 0 collects the + side, m < 0 the - side. Beyond the explicit lists the
// trace depends only on |m| mod period.
struct TraceTable {
    double unit = 1;
    std::vector<double> plus;    // m = 0, 1, ...
    std::vector<double> minus;   // m = -1, -2, ...
    int period = 1;
    std::vector<double> plusTail;
    std::vector<double> minusTail;

    double at(long m) const;
    static TraceTable constant(double unit, double g, int period = 1);
};

// Traces g on every multiple of ell in units of unit/ell: the split-case table.
TraceTable splitTraces(unsigned long q, int g, int ell);

enum class ZetaMode { Abs, TwoVar, PlusMinus };

struct ZetaValue {
    cplx value;
    cplx plus;   // PlusMinus: the two half sums
    cplx minus;
};

// Abs: sum over nonzero |lambda| of t |lambda|^-z. TwoVar: sum of t (s + |lambda|)^-z,
// with the zero eigenvalue when includeZero. PlusMinus: sums of t (s + i lambda)^-z
// over lambda >= 0 and lambda < 0.
ZetaValue zetaFunction(const TraceTable& t, ZetaMode mode, cplx s, cplx z, bool includeZero = true);

struct Determinant {
    cplx value;
    cplx logValue;
    cplx plus, minus;   // exp(-zeta'_{+}), exp(-zeta'_{-})
};

enum class Rotation { ImaginaryD, AbsoluteD };

// exp(-zeta'(s, 0)) over the spectrum {s + i lambda} (or s + |lambda| for AbsoluteD).
// Throws std::domain_error naming the level when s + i lambda = 0.
Determinant regularizedDeterminant(const TraceTable& t, cplx s, Rotation rot = Rotation::ImaginaryD);

struct EulerFactor {
    struct Block {
        cplx alpha;   // q^alpha = lambda
        int d = 0;
    };
    unsigned long q = 2;
    std::vector<Block> blocks;

    static EulerFactor split(unsigned long q, int g);
    static cplx alphaOf(cplx lambda, unsigned long q);
};

// prod (1 - q^(alpha - s))^-d; throws std::domain_error at a pole.
cplx eulerFactor(const EulerFactor& spec, cplx s);

struct LocalFactorRow {
    cplx s;
    cplx det;
    cplx closedForm;      // 1 / L(s)
    double relError = 0;
    bool pass = false;
    bool skipped = false;
    std::string note;
};

// One trace block per Frobenius eigenvalue with traces d on the multiples of ell;
// each block is evaluated at s - alpha and the determinants are multiplied.
std::vector<LocalFactorRow> verifyLocalFactorTheorem(const EulerFactor& spec, const std::vector<cplx>& sGrid,
                                                     int ell = 1, double tol = 1e-8);

std::string formatComplex(cplx z, int digits = 12);
cplx parseComplex(const std::string& s);

} // namespace mumford
