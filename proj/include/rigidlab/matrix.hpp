#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "rigidlab/scalar.hpp"

namespace rigidlab {

// Dense row-major matrix over a pluggable scalar. Sized for desk-scale exact
// linear algebra, not bulk numerics.
template <typename T>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const T> row(std::size_t i) const {
        return std::span<const T>(data_.data() + i * cols_, cols_);
    }

    Matrix submatrix(std::span<const std::size_t> row_idx,
                     std::span<const std::size_t> col_idx) const {
        Matrix out(row_idx.size(), col_idx.size());
        for (std::size_t i = 0; i < row_idx.size(); ++i)
            for (std::size_t j = 0; j < col_idx.size(); ++j)
                out(i, j) = (*this)(row_idx[i], col_idx[j]);
        return out;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_, cols_;
    std::vector<T> data_;
};

namespace detail {

template <typename T>
double abs_value(const T& x) {
    if constexpr (std::is_floating_point_v<T>) return std::abs(static_cast<double>(x));
    return 0.0; // unused for exact scalars
}

// Pivot choice: exact fields take the first non-zero entry (deterministic);
// floating point takes the largest magnitude in the remaining block.
template <typename T>
bool find_pivot(const Matrix<T>& m, std::size_t from_row, std::size_t col,
                std::size_t& pivot_row) {
    if constexpr (is_exact_field_v<T>) {
        for (std::size_t i = from_row; i < m.rows(); ++i) {
            if (!scalar_is_zero(m(i, col))) {
                pivot_row = i;
                return true;
            }
        }
        return false;
    } else {
        double best = 0.0;
        bool found = false;
        for (std::size_t i = from_row; i < m.rows(); ++i) {
            double a = abs_value(m(i, col));
            if (a > best) {
                best = a;
                pivot_row = i;
                found = true;
            }
        }
        return found;
    }
}

} // namespace detail

// Gaussian elimination over a field; returns rank. For floating point,
// `rel_threshold` times the largest initial magnitude decides pivot viability.
template <typename T>
std::size_t gauss_rank(Matrix<T> m, double rel_threshold = 1e-12) {
    const std::size_t nr = m.rows(), nc = m.cols();
    double cutoff = 0.0;
    if constexpr (!is_exact_field_v<T>) {
        double max_entry = 0.0;
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j)
                max_entry = std::max(max_entry, detail::abs_value(m(i, j)));
        cutoff = rel_threshold * max_entry;
    }

    std::size_t rank = 0;
    for (std::size_t col = 0; col < nc && rank < nr; ++col) {
        std::size_t piv;
        if (!detail::find_pivot(m, rank, col, piv)) continue;
        if constexpr (!is_exact_field_v<T>) {
            if (detail::abs_value(m(piv, col)) <= cutoff) continue;
        }
        m.swap_rows(rank, piv);
        const T inv_p = T(1) / m(rank, col);
        for (std::size_t i = rank + 1; i < nr; ++i) {
            if (scalar_is_zero(m(i, col))) continue;
            const T f = m(i, col) * inv_p;
            for (std::size_t j = col; j < nc; ++j) m(i, j) = m(i, j) - f * m(rank, j);
        }
        ++rank;
    }
    return rank;
}

// Determinant by ordinary elimination with division.
template <typename T>
T gauss_det(Matrix<T> m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw std::invalid_argument("gauss_det: matrix not square");
    T det = T(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv;
        if (!detail::find_pivot(m, col, col, piv)) return T(0);
        if constexpr (!is_exact_field_v<T>) {
            if (detail::abs_value(m(piv, col)) == 0.0) return T(0);
        }
        if (piv != col) {
            m.swap_rows(col, piv);
            det = -det;
        }
        det = det * m(col, col);
        const T inv_p = T(1) / m(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (scalar_is_zero(m(i, col))) continue;
            const T f = m(i, col) * inv_p;
            for (std::size_t j = col; j < n; ++j) m(i, j) = m(i, j) - f * m(col, j);
        }
    }
    return det;
}

// Fraction-free (Bareiss) elimination. Divisions are exact at every step, so
// this works over any exact field or integral domain with exact division.
template <typename T>
T bareiss_det(Matrix<T> m) {
    static_assert(is_exact_field_v<T>, "bareiss_det requires exact arithmetic");
    const std::size_t n = m.rows();
    if (n != m.cols()) throw std::invalid_argument("bareiss_det: matrix not square");
    if (n == 0) return T(1);
    T sign = T(1);
    T prev = T(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t piv;
        if (!detail::find_pivot(m, k, k, piv)) return T(0);
        if (piv != k) {
            m.swap_rows(k, piv);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
            m(i, k) = T(0);
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

template <typename T>
std::size_t bareiss_rank(Matrix<T> m) {
    static_assert(is_exact_field_v<T>, "bareiss_rank requires exact arithmetic");
    const std::size_t nr = m.rows(), nc = m.cols();
    std::size_t rank = 0;
    T prev = T(1);
    for (std::size_t col = 0; col < nc && rank < nr; ++col) {
        std::size_t piv;
        if (!detail::find_pivot(m, rank, col, piv)) continue;
        m.swap_rows(rank, piv);
        for (std::size_t i = rank + 1; i < nr; ++i) {
            for (std::size_t j = col + 1; j < nc; ++j)
                m(i, j) = (m(i, j) * m(rank, col) - m(i, col) * m(rank, j)) / prev;
            m(i, col) = T(0);
        }
        prev = m(rank, col);
        ++rank;
    }
    return rank;
}

// Row-space equality via rank of the stacked matrix.
template <typename T>
bool same_row_space(const Matrix<T>& a, const Matrix<T>& b) {
    static_assert(is_exact_field_v<T>);
    if (a.cols() != b.cols()) return false;
    Matrix<T> stacked(a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) stacked(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) stacked(a.rows() + i, j) = b(i, j);
    std::size_t ra = gauss_rank(a), rb = gauss_rank(b);
    return ra == rb && gauss_rank(stacked) == ra;
}

} // namespace rigidlab
