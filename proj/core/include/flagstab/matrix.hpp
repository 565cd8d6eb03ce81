#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "flagstab/rational.hpp"

namespace flagstab {

// Dense matrix over Q, row-major. Sizes stay small (dims up to a few
// hundred), so no sparsity or pivoting heuristics; exactness is the point.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<Rational>> rows);

    static Matrix identity(std::size_t n);
    static Matrix from_rows(std::vector<Vec> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vec row(std::size_t r) const;
    const std::vector<Rational>& flat() const { return data_; }

    bool is_zero() const;
    bool operator==(const Matrix& other) const;
    bool operator!=(const Matrix& other) const { return !(*this == other); }

    Matrix operator+(const Matrix& other) const;
    Matrix operator-(const Matrix& other) const;
    Matrix operator*(const Matrix& other) const;
    Matrix scaled(const Rational& factor) const;
    Matrix transposed() const;

    Vec apply(const Vec& v) const;  // matrix * column vector
    Rational trace() const;

    // In-place reduced row echelon form; returns pivot column per row.
    std::vector<std::size_t> rref();

    // Basis of { x : M x = 0 } as rows, already RREF-canonical.
    Matrix kernel() const;

    // det(xI - M) by Faddeev-LeVerrier, coefficients lowest degree first.
    std::vector<Rational> char_poly() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

Matrix bracket(const Matrix& a, const Matrix& b);  // ab - ba

// Matrix flattened row-major to a length rows*cols vector and back.
Vec flatten(const Matrix& m);
Matrix unflatten(const Vec& v, std::size_t n);  // n x n only

}  // namespace flagstab
