#pragma once

#include <complex>

namespace mumford {

using cplx = std::complex<double>;

// Branch continued from the positive axis through log Gamma(z) = log Gamma(z+m) - sum log(z+k).
cplx logGamma(cplx z);

// Sum over n >= 0 of (a+n)^-s with principal powers, continued in s by Euler-Maclaurin.
cplx hurwitzZeta(cplx s, cplx a);

struct ZetaDerivative {
    cplx closedForm;  // log Gamma(a) - log(2 pi)/2
    cplx numeric;     // Cauchy integral of hurwitzZeta around z = 0
    double difference = 0;
};

// Throws std::runtime_error when the two evaluations disagree beyond tol.
ZetaDerivative zetaDerivativeAtZero(cplx a, double tol = 1e-9);

} // namespace mumford
