#include "mumford/zeta.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace mumford;

namespace {

constexpr double pi = std::numbers::pi;

bool near(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

} // namespace

TEST_CASE("Dirac spectrum") {
    auto p = diracSpectrum(DiracVariant::Plain, 1, 2, 4);
    CHECK(p.eigenvalue(1, 0) == 0);
    CHECK(p.eigenvalue(-1, 0) == -1);
    CHECK(p.eigenvalue(1, 3) == 3);
    CHECK(p.levels.size() == 10);
    CHECK(p.spacingConstant);
    auto s = diracSpectrum(DiracVariant::Scaled, 2, 3, 4);
    CHECK(std::abs(s.eigenvalue(1, 2) - 2 * pi / std::log(3.0)) < 1e-12);
    CHECK(std::abs(s.spacing - pi / std::log(3.0)) < 1e-12);
    CHECK(s.spacingConstant);
    CHECK(std::abs(frobeniusUnit(2) - 2 * pi / std::log(2.0)) < 1e-14);
    CHECK_THROWS(diracSpectrum(DiracVariant::Plain, 0, 2, 1));
    CHECK_THROWS(frobeniusUnit(1));
}

TEST_CASE("Hurwitz zeta") {
    CHECK(near(hurwitzZeta(2, 1), pi * pi / 6, 1e-12));
    CHECK(near(hurwitzZeta(2, 0.5), pi * pi / 2, 1e-12));
    for (double a : {0.25, 1.0, 2.5}) CHECK(near(hurwitzZeta(0, a), 0.5 - a, 1e-12));
    CHECK(near(hurwitzZeta(-1, 1), -1.0 / 12, 1e-12));
    CHECK(near(hurwitzZeta(3, 1), 1.2020569031595942, 1e-12));
    CHECK(near(hurwitzZeta(2, 2) + 1.0, hurwitzZeta(2, 1), 1e-12));
    cplx a{1, 0.5};
    CHECK(near(hurwitzZeta({3, 1}, a) - std::pow(a, cplx{-3, -1}), hurwitzZeta({3, 1}, a + 1.0), 1e-11));
    CHECK_THROWS(hurwitzZeta(1, 1));
}

TEST_CASE("zeta derivative at zero") {
    auto one = zetaDerivativeAtZero(1);
    CHECK(near(one.closedForm, -0.5 * std::log(2 * pi), 1e-12));
    CHECK(one.difference < 1e-9);
    auto half = zetaDerivativeAtZero(0.5);
    CHECK(near(half.closedForm, -0.5 * std::log(2.0), 1e-12));
    CHECK(near(half.numeric, half.closedForm, 1e-9));
    auto c = zetaDerivativeAtZero({1, 0.75});
    CHECK(near(c.closedForm, logGamma({1, 0.75}) - 0.5 * std::log(2 * pi), 1e-12));
    CHECK(near(logGamma(5), std::log(24.0), 1e-13));
}

TEST_CASE("zeta functions against direct summation") {
    double unit = frobeniusUnit(2);
    auto t = splitTraces(2, 2, 1);
    auto abs = zetaFunction(t, ZetaMode::Abs, 0, 3);
    CHECK(near(abs.value, 4 * std::pow(unit, -3.0) * 1.2020569031595942, 1e-12));
    cplx s{2, 0}, z{2.5, 0};
    cplx direct = 0;
    for (long m = -200000; m <= 200000; ++m) direct += t.at(m) * std::pow(s + std::abs(m * unit), -z);
    auto two = zetaFunction(t, ZetaMode::TwoVar, s, z);
    CHECK(near(two.value, direct, 1e-6));
    auto pm = zetaFunction(t, ZetaMode::PlusMinus, s, z);
    CHECK(near(pm.plus + pm.minus, pm.value, 1e-12));
    cplx directPlus = 0;
    for (long m = 0; m <= 200000; ++m) directPlus += t.at(m) * std::pow(s + cplx{0, m * unit}, -z);
    CHECK(near(pm.plus, directPlus, 1e-5));
    auto tt = splitTraces(2, 1, 2);
    CHECK(tt.at(1) == 0);
    CHECK(tt.at(2) == 1);
    CHECK(tt.at(-2) == 1);
    CHECK(tt.at(-3) == 0);
}

TEST_CASE("regularized determinants") {
    auto d = regularizedDeterminant(splitTraces(2, 1, 1), 2);
    CHECK(near(d.value, 0.75, 1e-10));
    auto d2 = regularizedDeterminant(splitTraces(3, 2, 1), 1);
    CHECK(near(d2.value, 4.0 / 9, 1e-10));
    cplx s{1.5, 0.7};
    auto a = regularizedDeterminant(splitTraces(2, 1, 1), s);
    auto b = regularizedDeterminant(splitTraces(2, 1, 1), std::conj(s));
    CHECK(near(a.value, std::conj(b.value), 1e-10));
    CHECK(near(a.plus * a.minus, a.value, 1e-10));
    CHECK(near(a.value, 1.0 - std::pow(2.0, -s), 1e-8));
    auto g1 = regularizedDeterminant(splitTraces(2, 1, 1), s);
    auto g3 = regularizedDeterminant(splitTraces(2, 3, 1), s);
    CHECK(near(g3.value, g1.value * g1.value * g1.value, 1e-9));
    CHECK_THROWS_AS(regularizedDeterminant(splitTraces(2, 1, 1), 0), std::domain_error);
}

TEST_CASE("Euler factors") {
    CHECK(near(eulerFactor(EulerFactor::split(2, 1), 2), 4.0 / 3, 1e-14));
    EulerFactor foam;
    foam.q = 2;
    foam.blocks.push_back({EulerFactor::alphaOf(-1, 2), 1});
    CHECK(near(eulerFactor(foam, 1), 2.0 / 3, 1e-12));
    CHECK(near(std::pow(2.0, EulerFactor::alphaOf({0, 2}, 2)), cplx{0, 2}, 1e-12));
    CHECK_THROWS_AS(eulerFactor(EulerFactor::split(2, 1), 0), std::domain_error);
    CHECK_THROWS(EulerFactor::alphaOf(0, 2));
}

TEST_CASE("local factor theorem") {
    std::vector<cplx> grid{{0.5, 0}, {1, 0}, {2, 0}, {3, 0}, {1, 1}, {2, -0.5}};
    for (int g = 1; g <= 3; ++g)
        for (const auto& r : verifyLocalFactorTheorem(EulerFactor::split(2, g), grid)) {
            CHECK(r.pass);
            CHECK(r.relError < 1e-8);
        }
    EulerFactor foam;
    foam.q = 3;
    foam.blocks.push_back({EulerFactor::alphaOf(1, 3), 1});
    foam.blocks.push_back({EulerFactor::alphaOf(-1, 3), 2});
    foam.blocks.push_back({EulerFactor::alphaOf(std::polar(std::sqrt(2.0), pi / 4), 3), 1});
    for (const auto& r : verifyLocalFactorTheorem(foam, grid)) CHECK((r.pass || r.skipped));
    for (const auto& r : verifyLocalFactorTheorem(EulerFactor::split(2, 1), grid, 2)) CHECK(r.pass);
}

TEST_CASE("absolute value rotation is a negative control") {
    auto d = regularizedDeterminant(splitTraces(2, 1, 1), 2, Rotation::AbsoluteD);
    CHECK(std::abs(d.value - 0.75) > 1e-2);
}

TEST_CASE("complex formatting") {
    for (cplx z : {cplx{1.5, -2}, cplx{0, 1}, cplx{-3, 0}, cplx{0.125, 0.25}})
        CHECK(near(parseComplex(formatComplex(z)), z, 1e-12));
    CHECK(parseComplex("2") == cplx{2, 0});
    CHECK(parseComplex("1+2j") == cplx{1, 2});
    CHECK(parseComplex("-0.5-1.5j") == cplx{-0.5, -1.5});
    CHECK_THROWS(parseComplex("abc"));
}
