#pragma once

#include "conelab/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace conelab {

/// Dense row-major matrix over the rationals.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

    static Matrix identity(std::size_t n);
    static Matrix from_columns(const std::vector<RVector>& columns, std::size_t rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    RVector column(std::size_t j) const;
    RVector row(std::size_t i) const;

    Matrix transpose() const;
    bool is_symmetric() const;
    bool is_zero() const;

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(const Rational& s, const Matrix& a);
RVector operator*(const Matrix& a, const RVector& x);

/// Reduced row echelon form; `pivots` receives the pivot column of each nonzero row.
Matrix rref(Matrix a, std::vector<std::size_t>* pivots = nullptr);
std::size_t rank(const Matrix& a);

/// Basis of {x : a x = 0}, one vector per free column (free variable set to 1).
std::vector<RVector> kernel(const Matrix& a);

/// Basis of the column space, taken from the pivot columns of `a`.
std::vector<RVector> column_space(const Matrix& a);

/// Unique solution of a x = b for square invertible a; nullopt when singular.
std::optional<RVector> solve(const Matrix& a, const RVector& b);
std::optional<Matrix> inverse(const Matrix& a);

Rational determinant(const Matrix& a);

/// Leading principal minors d_1..d_n of a square matrix.
std::vector<Rational> leading_minors(const Matrix& a);

bool is_positive_definite(const Matrix& symmetric);

/// Exact PSD test by symmetric elimination: a zero pivot forces its whole row to vanish.
bool is_positive_semidefinite(const Matrix& symmetric);

} // namespace conelab
