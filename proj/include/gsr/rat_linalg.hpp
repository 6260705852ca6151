#pragma once

#include <cstddef>
#include <vector>

#include "gsr/bigint.hpp"
#include "gsr/errors.hpp"

namespace gsr {

// Dense row-major rational matrix.
struct RatMatrix {
    size_t rows = 0, cols = 0;
    std::vector<BigRat> a;

    RatMatrix() = default;
    RatMatrix(size_t r, size_t c) : rows(r), cols(c), a(r * c, BigRat(0)) {}

    BigRat& at(size_t i, size_t j) { return a[i * cols + j]; }
    const BigRat& at(size_t i, size_t j) const { return a[i * cols + j]; }

    static RatMatrix identity(size_t n) {
        RatMatrix m(n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
};

using RatVec = std::vector<BigRat>;

inline RatVec mat_vec(const RatMatrix& m, const RatVec& x) {
    if (x.size() != m.cols) throw ShapeError("mat_vec: dimension mismatch");
    RatVec y(m.rows, BigRat(0));
    for (size_t i = 0; i < m.rows; ++i)
        for (size_t j = 0; j < m.cols; ++j)
            if (m.at(i, j) != 0) y[i] += m.at(i, j) * x[j];
    return y;
}

// In-place reduced row echelon form. Returns pivot column indices.
inline std::vector<size_t> rref(RatMatrix& m) {
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < m.cols && row < m.rows; ++col) {
        size_t p = row;
        while (p < m.rows && m.at(p, col) == 0) ++p;
        if (p == m.rows) continue;
        if (p != row)
            for (size_t j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(row, j));
        BigRat inv = BigRat(1) / m.at(row, col);
        for (size_t j = col; j < m.cols; ++j) m.at(row, j) *= inv;
        for (size_t i = 0; i < m.rows; ++i) {
            if (i == row || m.at(i, col) == 0) continue;
            BigRat f = m.at(i, col);
            for (size_t j = col; j < m.cols; ++j) m.at(i, j) -= f * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline size_t rank(RatMatrix m) { return rref(m).size(); }

// Exact inverse of a square rational matrix; throws Singular.
inline RatMatrix rational_matrix_inverse(const RatMatrix& m) {
    if (m.rows != m.cols) throw ShapeError("rational_matrix_inverse: matrix not square");
    size_t n = m.rows;
    RatMatrix aug(n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = 1;
    }
    auto pivots = rref(aug);
    if (pivots.size() != n || pivots.back() != n - 1)
        throw Singular("rational_matrix_inverse: singular matrix");
    for (size_t i = 0; i < n; ++i)
        if (pivots[i] != i) throw Singular("rational_matrix_inverse: singular matrix");
    RatMatrix inv(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
    return inv;
}

// Basis of the right kernel over Q (one vector per free column).
inline std::vector<RatVec> rational_kernel(RatMatrix m) {
    auto pivots = rref(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (size_t c : pivots) is_pivot[c] = true;
    std::vector<RatVec> basis;
    for (size_t fc = 0; fc < m.cols; ++fc) {
        if (is_pivot[fc]) continue;
        RatVec v(m.cols, BigRat(0));
        v[fc] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(r, fc);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline BigRat rational_det(RatMatrix m) {
    if (m.rows != m.cols) throw ShapeError("rational_det: matrix not square");
    size_t n = m.rows;
    BigRat det(1);
    for (size_t col = 0; col < n; ++col) {
        size_t p = col;
        while (p < n && m.at(p, col) == 0) ++p;
        if (p == n) return BigRat(0);
        if (p != col) {
            for (size_t j = 0; j < n; ++j) std::swap(m.at(p, j), m.at(col, j));
            det = -det;
        }
        det *= m.at(col, col);
        BigRat inv = BigRat(1) / m.at(col, col);
        for (size_t i = col + 1; i < n; ++i) {
            if (m.at(i, col) == 0) continue;
            BigRat f = m.at(i, col) * inv;
            for (size_t j = col; j < n; ++j) m.at(i, j) -= f * m.at(col, j);
        }
    }
    return det;
}

}  // namespace gsr
