#include "mumford/special.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mumford {

namespace {

// B_2k / (2k)!
constexpr double kBernoulliOverFactorial[] = {
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -6.9147085905189235e-11,
    2.3647571983376953e-12,
    -8.0450130340291012e-14,
    2.7327419231732453e-15,
    -9.2747803030588723e-17,
    3.1464008798217574e-18,
    -1.0670834040035826e-19,
};

// B_2k
constexpr double kBernoulli[] = {
    1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730, 7.0 / 6, -3617.0 / 510,
};

bool onNegativeLattice(cplx a) {
    return std::abs(a.imag()) < 1e-300 && a.real() <= 0 && std::abs(a.real() - std::round(a.real())) < 1e-12;
}

}

cplx logGamma(cplx z) {
    if (onNegativeLattice(z)) throw std::domain_error("logGamma: pole at a nonpositive integer");
    cplx shift = 0;
    while (std::abs(z) < 15.0 || z.real() < 8.0) {
        shift += std::log(z);
        z += 1.0;
    }
    const double halfLog2Pi = 0.5 * std::log(2 * std::numbers::pi);
    cplx r = (z - 0.5) * std::log(z) - z + halfLog2Pi;
    cplx zinv = 1.0 / z, z2 = zinv * zinv, p = zinv;
    for (int k = 1; k <= 8; ++k) {
        r += kBernoulli[k - 1] / (2.0 * k * (2.0 * k - 1)) * p;
        p *= z2;
    }
    return r - shift;
}

cplx hurwitzZeta(cplx s, cplx a) {
    if (std::abs(s - 1.0) < 1e-14) throw std::domain_error("hurwitzZeta: pole at s = 1");
    if (onNegativeLattice(a)) throw std::domain_error("hurwitzZeta: a on the nonpositive integer lattice");
    cplx sum = 0;
    double target = 25.0 + 1.5 * std::abs(s);
    while (std::abs(a) < target || a.real() < target * 0.5) {
        sum += std::exp(-s * std::log(a));
        a += 1.0;
    }
    cplx la = std::log(a);
    cplx pw = std::exp(-s * la);
    sum += a * pw / (s - 1.0) + 0.5 * pw;
    // B_2k/(2k)! * s(s+1)...(s+2k-2) * a^{-s-2k+1}
    cplx rising = s;
    cplx term = pw / a;
    cplx inva2 = 1.0 / (a * a);
    for (int k = 1; k <= 12; ++k) {
        cplx t = kBernoulliOverFactorial[k - 1] * rising * term;
        sum += t;
        if (std::abs(t) < 1e-17 * std::abs(sum)) break;
        rising *= (s + (2.0 * k - 1)) * (s + 2.0 * k);
        term *= inva2;
    }
    return sum;
}

ZetaDerivative zetaDerivativeAtZero(cplx a, double tol) {
    ZetaDerivative d;
    d.closedForm = logGamma(a) - 0.5 * std::log(2 * std::numbers::pi);
    const int K = 64;
    const double r = 0.5;
    cplx acc = 0;
    for (int k = 0; k < K; ++k) {
        cplx e = std::polar(1.0, 2 * std::numbers::pi * (k + 0.5) / K);
        acc += hurwitzZeta(r * e, a) / e;
    }
    d.numeric = acc / (K * r);
    d.difference = std::abs(d.numeric - d.closedForm);
    double scale = std::max(1.0, std::abs(d.closedForm));
    if (d.difference > tol * scale)
        throw std::runtime_error("zetaDerivativeAtZero: log-Gamma and contour evaluations disagree");
    return d;
}

} // namespace mumford
