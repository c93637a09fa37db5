#pragma once

#include "mumford/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace mumford {

// Dense matrix over Q, row-major.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols);

    static QMatrix identity(std::size_t n);
    static QMatrix diag(const std::vector<Q>& d);
    static QMatrix fromColumns(const std::vector<std::vector<Q>>& cols, std::size_t rows);

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }

    Q& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const Q& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    QMatrix transpose() const;
    QMatrix operator*(const QMatrix& o) const;
    QMatrix operator+(const QMatrix& o) const;
    QMatrix operator-(const QMatrix& o) const;
    QMatrix operator*(const Q& s) const;
    std::vector<Q> operator*(const std::vector<Q>& v) const;
    bool operator==(const QMatrix& o) const;
    bool operator!=(const QMatrix& o) const { return !(*this == o); }

    bool isZero() const;
    bool isDiagonal() const;
    std::vector<Q> column(std::size_t j) const;
    QMatrix hcat(const QMatrix& o) const;
    QMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    Q trace() const;

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<Q> a_;
};

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(QMatrix& m);
std::size_t rank(const QMatrix& m);
// Columns form a basis of the kernel.
QMatrix nullspace(const QMatrix& m);
// Maximal independent subset of the columns, in order.
QMatrix columnBasis(const QMatrix& m);
std::optional<QMatrix> inverse(const QMatrix& m);

// Basis of {x : B^T G x = 0}.
QMatrix orthComplement(const QMatrix& b, const QMatrix& g);
// G-orthogonal projector onto the column span of b (b of full column rank).
QMatrix projector(const QMatrix& b, const QMatrix& g);
// Adjoint of a : (dom, gDom) -> (cod, gCod).
QMatrix gramAdjoint(const QMatrix& a, const QMatrix& gDom, const QMatrix& gCod);

} // namespace mumford
