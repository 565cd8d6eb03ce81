#include "flagstab/matrix.hpp"

#include "flagstab/errors.hpp"

namespace flagstab {

Matrix::Matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw input_error("ragged matrix literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Matrix Matrix::from_rows(std::vector<Vec> rows) {
    Matrix m;
    m.rows_ = rows.size();
    m.cols_ = rows.empty() ? 0 : rows.front().size();
    m.data_.reserve(m.rows_ * m.cols_);
    for (auto& r : rows) {
        if (r.size() != m.cols_) throw input_error("ragged row list");
        for (auto& x : r) m.data_.push_back(std::move(x));
    }
    return m;
}

Vec Matrix::row(std::size_t r) const {
    return Vec(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

bool Matrix::is_zero() const {
    for (const auto& x : data_)
        if (sgn(x) != 0) return false;
    return true;
}

bool Matrix::operator==(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

Matrix Matrix::operator+(const Matrix& other) const {
    require_internal(rows_ == other.rows_ && cols_ == other.cols_, "matrix add shape mismatch");
    Matrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] + other.data_[i];
    return out;
}

Matrix Matrix::operator-(const Matrix& other) const {
    require_internal(rows_ == other.rows_ && cols_ == other.cols_, "matrix sub shape mismatch");
    Matrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - other.data_[i];
    return out;
}

Matrix Matrix::operator*(const Matrix& other) const {
    require_internal(cols_ == other.rows_, "matrix mul shape mismatch");
    Matrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& a = at(i, k);
            if (sgn(a) == 0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j) {
                const Rational& b = other.at(k, j);
                if (sgn(b) != 0) out.at(i, j) += a * b;
            }
        }
    }
    return out;
}

Matrix Matrix::scaled(const Rational& factor) const {
    Matrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] * factor;
    return out;
}

Matrix Matrix::transposed() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
}

Vec Matrix::apply(const Vec& v) const {
    require_internal(v.size() == cols_, "matrix apply shape mismatch");
    Vec out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        Rational acc;
        for (std::size_t j = 0; j < cols_; ++j) {
            const Rational& a = at(i, j);
            if (sgn(a) != 0 && sgn(v[j]) != 0) acc += a * v[j];
        }
        out[i] = acc;
    }
    return out;
}

Rational Matrix::trace() const {
    require_internal(rows_ == cols_, "trace of non-square matrix");
    Rational acc;
    for (std::size_t i = 0; i < rows_; ++i) acc += at(i, i);
    return acc;
}

std::vector<std::size_t> Matrix::rref() {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
        std::size_t p = r;
        while (p < rows_ && sgn(at(p, c)) == 0) ++p;
        if (p == rows_) continue;
        if (p != r)
            for (std::size_t j = 0; j < cols_; ++j) std::swap(at(p, j), at(r, j));
        Rational inv = 1 / at(r, c);
        for (std::size_t j = c; j < cols_; ++j) at(r, j) *= inv;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == r || sgn(at(i, c)) == 0) continue;
            Rational f = at(i, c);
            for (std::size_t j = c; j < cols_; ++j) at(i, j) -= f * at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

Matrix Matrix::kernel() const {
    Matrix red = *this;
    std::vector<std::size_t> pivots = red.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t c : pivots) is_pivot[c] = true;

    std::vector<Vec> rows;
    for (std::size_t c = 0; c < cols_; ++c) {
        if (is_pivot[c]) continue;
        Vec v(cols_);
        v[c] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -red.at(r, c);
        rows.push_back(std::move(v));
    }
    Matrix out = Matrix::from_rows(std::move(rows));
    if (out.rows_ == 0) out.cols_ = cols_;
    out.rref();
    return out;
}

std::vector<Rational> Matrix::char_poly() const {
    require_internal(rows_ == cols_, "char_poly of non-square matrix");
    const std::size_t n = rows_;
    // Faddeev-LeVerrier: M_1 = A, c_{n-k} = -tr(A M_k)/k, M_{k+1} = A M_k + c_{n-k} I.
    std::vector<Rational> coeff(n + 1);
    coeff[n] = 1;
    Matrix mk = Matrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        mk = (*this) * mk;
        Rational c = -mk.trace() / Rational(static_cast<long>(k));
        coeff[n - k] = c;
        for (std::size_t i = 0; i < n; ++i) mk.at(i, i) += c;
    }
    return coeff;
}

Matrix bracket(const Matrix& a, const Matrix& b) {
    return a * b - b * a;
}

Vec flatten(const Matrix& m) {
    return m.flat();
}

Matrix unflatten(const Vec& v, std::size_t n) {
    require_internal(v.size() == n * n, "unflatten size mismatch");
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = v[i * n + j];
    return m;
}

}  // namespace flagstab
