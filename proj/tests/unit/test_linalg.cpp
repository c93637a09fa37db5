#include "mumford/linalg.hpp"

#include <doctest.h>

#include <random>

using namespace mumford;

namespace {

QMatrix randomMatrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo = -3, int hi = 3) {
    std::uniform_int_distribution<int> d(lo, hi);
    QMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            m(i, j) = Q(d(rng), 1 + (d(rng) + 3) % 3);
            m(i, j).canonicalize();
        }
    return m;
}

} // namespace

TEST_CASE("rational helpers") {
    CHECK(valuation(Z(48), 2) == 4);
    CHECK(valuation(Q(3, 8), 2) == -3);
    CHECK(valuation(Q(0), 5) == kInfVal);
    CHECK(qpow(2, -3) == Q(1, 8));
    CHECK(parseRational("-6/4") == Q(-3, 2));
    CHECK(toString(parseRational("10/4")) == "5/2");
    CHECK_THROWS_AS(parseRational("1.5"), std::invalid_argument);
    CHECK_THROWS_AS(parseRational("1/0"), std::invalid_argument);
}

TEST_CASE("rank and nullspace are consistent") {
    std::mt19937 rng(7);
    for (int t = 0; t < 30; ++t) {
        std::size_t r = 1 + t % 5, c = 1 + (t * 3) % 6;
        QMatrix m = randomMatrix(rng, r, c);
        QMatrix n = nullspace(m);
        CHECK(rank(m) + n.cols() == c);
        CHECK((m * n).isZero());
        CHECK(columnBasis(m).cols() == rank(m));
    }
}

TEST_CASE("inverse of a singular matrix is empty") {
    QMatrix m(2, 2);
    m(0, 0) = 1;
    m(0, 1) = 2;
    m(1, 0) = 2;
    m(1, 1) = 4;
    CHECK_FALSE(inverse(m).has_value());
    m(1, 1) = 5;
    auto inv = inverse(m);
    REQUIRE(inv.has_value());
    CHECK(m * *inv == QMatrix::identity(2));
}

TEST_CASE("projector is a G-orthogonal idempotent") {
    std::mt19937 rng(11);
    std::vector<Q> g{1, Q(1, 2), Q(1, 4), 3, Q(2, 3)};
    QMatrix G = QMatrix::diag(g);
    for (int t = 0; t < 10; ++t) {
        QMatrix b = columnBasis(randomMatrix(rng, 5, 2));
        QMatrix p = projector(b, G);
        CHECK(p * p == p);
        CHECK(p * b == b);
        // Self-adjoint for the Gram form: G P = P^T G.
        CHECK(G * p == p.transpose() * G);
        QMatrix c = orthComplement(b, G);
        CHECK(c.cols() + b.cols() == 5);
        CHECK((b.transpose() * G * c).isZero());
        CHECK((p * c).isZero());
    }
}

TEST_CASE("gram adjoint") {
    std::mt19937 rng(3);
    QMatrix a = randomMatrix(rng, 3, 2);
    QMatrix gd = QMatrix::diag({2, Q(1, 3)});
    QMatrix gc = QMatrix::diag({1, 5, Q(1, 2)});
    QMatrix adj = gramAdjoint(a, gd, gc);
    CHECK(gc * a == (gd * adj).transpose());
}
