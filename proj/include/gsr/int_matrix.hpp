#pragma once

#include <cstddef>
#include <vector>

#include "gsr/bigint.hpp"
#include "gsr/errors.hpp"

namespace gsr {

// Dense row-major integer matrix. Invariant: a.size() == rows * cols.
struct IntMatrix {
    size_t rows = 0, cols = 0;
    std::vector<BigInt> a;

    IntMatrix() = default;
    IntMatrix(size_t r, size_t c) : rows(r), cols(c), a(r * c, BigInt(0)) {}

    BigInt& at(size_t i, size_t j) { return a[i * cols + j]; }
    const BigInt& at(size_t i, size_t j) const { return a[i * cols + j]; }

    static IntMatrix identity(size_t n) {
        IntMatrix m(n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
};

using IntVec = std::vector<BigInt>;

inline IntVec mat_vec(const IntMatrix& m, const IntVec& x) {
    if (x.size() != m.cols) throw ShapeError("mat_vec: dimension mismatch");
    IntVec y(m.rows, BigInt(0));
    for (size_t i = 0; i < m.rows; ++i)
        for (size_t j = 0; j < m.cols; ++j)
            if (m.at(i, j) != 0) y[i] += m.at(i, j) * x[j];
    return y;
}

inline bool is_zero_vec(const IntVec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

inline BigInt sup_norm(const IntVec& v) {
    BigInt m(0);
    for (const auto& x : v) {
        BigInt ax = abs(x);
        if (ax > m) m = ax;
    }
    return m;
}

// First nonzero entry made positive; zero vector unchanged.
inline void sign_normalize(IntVec& v) {
    for (const auto& x : v) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : v) y = -y;
        return;
    }
}

}  // namespace gsr
