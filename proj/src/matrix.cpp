#include "conelab/matrix.hpp"

#include <stdexcept>
#include <utility>

namespace conelab {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::from_columns(const std::vector<RVector>& columns, std::size_t rows) {
    Matrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].size() != rows) throw std::invalid_argument("from_columns: ragged columns");
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
}

RVector Matrix::column(std::size_t j) const {
    RVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

RVector Matrix::row(std::size_t i) const {
    return RVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool Matrix::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

bool Matrix::is_zero() const {
    for (const auto& x : data_)
        if (sgn(x) != 0) return false;
    return true;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix +: shape mismatch");
    Matrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
    return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix -: shape mismatch");
    Matrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
    return c;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix *: shape mismatch");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (sgn(a(i, k)) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

Matrix operator*(const Rational& s, const Matrix& a) {
    Matrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
    return c;
}

RVector operator*(const Matrix& a, const RVector& x) {
    if (a.cols() != x.size()) throw std::invalid_argument("matrix-vector: shape mismatch");
    RVector y = zeros(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (sgn(a(i, j)) != 0) y[i] += a(i, j) * x[j];
    return y;
}

Matrix rref(Matrix a, std::vector<std::size_t>* pivots) {
    if (pivots) pivots->clear();
    std::size_t lead_row = 0;
    for (std::size_t col = 0; col < a.cols() && lead_row < a.rows(); ++col) {
        std::size_t p = lead_row;
        while (p < a.rows() && sgn(a(p, col)) == 0) ++p;
        if (p == a.rows()) continue;
        if (p != lead_row)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(lead_row, j));
        const Rational inv = 1 / a(lead_row, col);
        for (std::size_t j = col; j < a.cols(); ++j) a(lead_row, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == lead_row || sgn(a(i, col)) == 0) continue;
            const Rational f = a(i, col);
            for (std::size_t j = col; j < a.cols(); ++j) a(i, j) -= f * a(lead_row, j);
        }
        if (pivots) pivots->push_back(col);
        ++lead_row;
    }
    return a;
}

std::size_t rank(const Matrix& a) {
    std::vector<std::size_t> pivots;
    rref(a, &pivots);
    return pivots.size();
}

std::vector<RVector> kernel(const Matrix& a) {
    std::vector<std::size_t> pivots;
    const Matrix r = rref(a, &pivots);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;

    std::vector<RVector> basis;
    for (std::size_t free = 0; free < a.cols(); ++free) {
        if (is_pivot[free]) continue;
        RVector v = zeros(a.cols());
        v[free] = 1;
        for (std::size_t row = 0; row < pivots.size(); ++row) v[pivots[row]] = -r(row, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<RVector> column_space(const Matrix& a) {
    std::vector<std::size_t> pivots;
    rref(a, &pivots);
    std::vector<RVector> basis;
    basis.reserve(pivots.size());
    for (auto p : pivots) basis.push_back(a.column(p));
    return basis;
}

std::optional<RVector> solve(const Matrix& a, const RVector& b) {
    if (a.rows() != a.cols() || b.size() != a.rows()) throw std::invalid_argument("solve: shape mismatch");
    const std::size_t n = a.rows();
    Matrix aug(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n) = b[i];
    }
    std::vector<std::size_t> pivots;
    const Matrix r = rref(std::move(aug), &pivots);
    if (pivots.size() != n || (n > 0 && pivots.back() != n - 1)) return std::nullopt;
    RVector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = r(i, n);
    return x;
}

std::optional<Matrix> inverse(const Matrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("inverse: not square");
    const std::size_t n = a.rows();
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = 1;
    }
    std::vector<std::size_t> pivots;
    const Matrix r = rref(std::move(aug), &pivots);
    if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) return std::nullopt;
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = r(i, n + j);
    return inv;
}

Rational determinant(const Matrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant: not square");
    const std::size_t n = a.rows();
    Matrix work = a;
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sgn(work(p, c)) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(work(p, j), work(c, j));
            det = -det;
        }
        det *= work(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (sgn(work(i, c)) == 0) continue;
            const Rational f = work(i, c) / work(c, c);
            for (std::size_t j = c; j < n; ++j) work(i, j) -= f * work(c, j);
        }
    }
    return det;
}

std::vector<Rational> leading_minors(const Matrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("leading_minors: not square");
    std::vector<Rational> minors;
    for (std::size_t k = 1; k <= a.rows(); ++k) {
        Matrix sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) sub(i, j) = a(i, j);
        minors.push_back(determinant(sub));
    }
    return minors;
}

bool is_positive_definite(const Matrix& s) {
    if (!s.is_symmetric()) return false;
    for (const auto& d : leading_minors(s))
        if (sgn(d) <= 0) return false;
    return true;
}

bool is_positive_semidefinite(const Matrix& s) {
    if (!s.is_symmetric()) return false;
    Matrix m = s;
    const std::size_t n = m.rows();
    for (std::size_t k = 0; k < n; ++k) {
        const int sign = sgn(m(k, k));
        if (sign < 0) return false;
        if (sign == 0) {
            for (std::size_t j = k + 1; j < n; ++j)
                if (sgn(m(k, j)) != 0) return false;
            continue;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            if (sgn(m(i, k)) == 0) continue;
            const Rational f = m(i, k) / m(k, k);
            for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return true;
}

} // namespace conelab
