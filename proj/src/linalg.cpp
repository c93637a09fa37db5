#include "mumford/linalg.hpp"

#include <stdexcept>

namespace mumford {

QMatrix::QMatrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}

QMatrix QMatrix::identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

QMatrix QMatrix::diag(const std::vector<Q>& d) {
    QMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

QMatrix QMatrix::fromColumns(const std::vector<std::vector<Q>>& cols, std::size_t rows) {
    QMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw std::invalid_argument("fromColumns: ragged columns");
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

QMatrix QMatrix::transpose() const {
    QMatrix t(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
    if (c_ != o.r_) throw std::invalid_argument("matrix product: shape mismatch");
    QMatrix p(r_, o.c_);
    Q t;
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t k = 0; k < c_; ++k) {
            const Q& x = (*this)(i, k);
            if (sgn(x) == 0) continue;
            for (std::size_t j = 0; j < o.c_; ++j) {
                const Q& y = o(k, j);
                if (sgn(y) == 0) continue;
                t = x * y;
                p(i, j) += t;
            }
        }
    return p;
}

QMatrix QMatrix::operator+(const QMatrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix sum: shape mismatch");
    QMatrix s(*this);
    for (std::size_t i = 0; i < a_.size(); ++i) s.a_[i] += o.a_[i];
    return s;
}

QMatrix QMatrix::operator-(const QMatrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix difference: shape mismatch");
    QMatrix s(*this);
    for (std::size_t i = 0; i < a_.size(); ++i) s.a_[i] -= o.a_[i];
    return s;
}

QMatrix QMatrix::operator*(const Q& s) const {
    QMatrix m(*this);
    for (auto& x : m.a_) x *= s;
    return m;
}

std::vector<Q> QMatrix::operator*(const std::vector<Q>& v) const {
    if (v.size() != c_) throw std::invalid_argument("matrix-vector: shape mismatch");
    std::vector<Q> out(r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j)
            if (sgn((*this)(i, j)) != 0 && sgn(v[j]) != 0) out[i] += (*this)(i, j) * v[j];
    return out;
}

bool QMatrix::operator==(const QMatrix& o) const {
    return r_ == o.r_ && c_ == o.c_ && a_ == o.a_;
}

bool QMatrix::isZero() const {
    for (const auto& x : a_)
        if (sgn(x) != 0) return false;
    return true;
}

bool QMatrix::isDiagonal() const {
    if (r_ != c_) return false;
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j)
            if (i != j && sgn((*this)(i, j)) != 0) return false;
    return true;
}

std::vector<Q> QMatrix::column(std::size_t j) const {
    std::vector<Q> v(r_);
    for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
}

QMatrix QMatrix::hcat(const QMatrix& o) const {
    if (c_ == 0) return o;
    if (o.c_ == 0) return *this;
    if (r_ != o.r_) throw std::invalid_argument("hcat: row mismatch");
    QMatrix m(r_, c_ + o.c_);
    for (std::size_t i = 0; i < r_; ++i) {
        for (std::size_t j = 0; j < c_; ++j) m(i, j) = (*this)(i, j);
        for (std::size_t j = 0; j < o.c_; ++j) m(i, c_ + j) = o(i, j);
    }
    return m;
}

QMatrix QMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    QMatrix m(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
    return m;
}

Q QMatrix::trace() const {
    Q t = 0;
    for (std::size_t i = 0; i < std::min(r_, c_); ++i) t += (*this)(i, i);
    return t;
}

std::vector<std::size_t> rref(QMatrix& m) {
    std::vector<std::size_t> piv;
    std::size_t row = 0;
    Q f;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t sel = m.rows();
        for (std::size_t i = row; i < m.rows(); ++i)
            if (sgn(m(i, col)) != 0) { sel = i; break; }
        if (sel == m.rows()) continue;
        if (sel != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(row, j));
        Q inv = 1 / m(row, col);
        for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || sgn(m(i, col)) == 0) continue;
            f = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                if (sgn(m(row, j)) != 0) m(i, j) -= f * m(row, j);
        }
        piv.push_back(col);
        ++row;
    }
    return piv;
}

std::size_t rank(const QMatrix& m) {
    QMatrix t = m.rows() > m.cols() ? m.transpose() : m;
    return rref(t).size();
}

QMatrix nullspace(const QMatrix& m) {
    QMatrix r = m;
    auto piv = rref(r);
    std::vector<bool> isPiv(m.cols(), false);
    for (auto p : piv) isPiv[p] = true;
    std::vector<std::vector<Q>> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (isPiv[f]) continue;
        std::vector<Q> v(m.cols());
        v[f] = 1;
        for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -r(k, f);
        basis.push_back(std::move(v));
    }
    return QMatrix::fromColumns(basis, m.cols());
}

QMatrix columnBasis(const QMatrix& m) {
    QMatrix r = m;
    auto piv = rref(r);
    std::vector<std::vector<Q>> cols;
    for (auto p : piv) cols.push_back(m.column(p));
    return QMatrix::fromColumns(cols, m.rows());
}

std::optional<QMatrix> inverse(const QMatrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    std::size_t n = m.rows();
    if (m.isDiagonal()) {
        QMatrix d(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            if (sgn(m(i, i)) == 0) return std::nullopt;
            d(i, i) = 1 / m(i, i);
        }
        return d;
    }
    QMatrix aug = m.hcat(QMatrix::identity(n));
    auto piv = rref(aug);
    if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
    return aug.block(0, n, n, n);
}

QMatrix orthComplement(const QMatrix& b, const QMatrix& g) {
    if (b.cols() == 0) return QMatrix::identity(g.rows());
    return nullspace(b.transpose() * g);
}

QMatrix projector(const QMatrix& b, const QMatrix& g) {
    if (b.cols() == 0) return QMatrix(g.rows(), g.rows());
    QMatrix btg = b.transpose() * g;
    auto inv = inverse(btg * b);
    if (!inv) throw std::domain_error("projector: degenerate Gram on subspace");
    return b * (*inv * btg);
}

QMatrix gramAdjoint(const QMatrix& a, const QMatrix& gDom, const QMatrix& gCod) {
    auto inv = inverse(gDom);
    if (!inv) throw std::domain_error("gramAdjoint: degenerate Gram");
    return *inv * (a.transpose() * gCod);
}

} // namespace mumford
