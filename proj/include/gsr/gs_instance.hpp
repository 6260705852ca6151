#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "number_field.hpp"

namespace gsr {

enum class GSMode { gelfond, synthetic };

// One transcendence-test instance. alpha, beta, gamma live in a common number
// field; the analytic quantities are their images under the sigma_index-th
// embedding. c_den simultaneously clears all three to algebraic integers.
struct GSInstance {
    NumberField field;
    size_t sigma_index = 0;
    NFElement alpha, beta, gamma;
    BigInt c_den;
    GSMode mode = GSMode::gelfond;
};

inline GSInstance make_instance(const NumberField& field, size_t sigma_index, const NFElement& alpha,
                                const NFElement& beta, const NFElement& gamma, GSMode mode) {
    if (sigma_index >= field.h) throw ShapeError("sigma index out of range");
    field.elem(alpha.coords);
    field.elem(beta.coords);
    field.elem(gamma.coords);
    // Embeddings are injective on K, so sigma(alpha) avoiding {0, 1} is the
    // same exact statement as alpha avoiding {0, 1}.
    if (alpha.is_zero() || alpha == field.one()) throw ParamError("alpha must avoid 0 and 1");
    if (mode == GSMode::gelfond && minpoly(field, beta).c.size() < 3)
        throw ParamError("beta must be irrational in gelfond mode");
    BigInt d = lcm(denominator_clearing_integer(field, alpha),
                   lcm(denominator_clearing_integer(field, beta), denominator_clearing_integer(field, gamma)));
    return GSInstance{field, sigma_index, alpha, beta, gamma, d, mode};
}

// System shape: rows indexed by vanishing conditions (k, l) with 0 <= k < n,
// 1 <= l <= m, columns by exponent pairs (a, b) with 1 <= a, b <= q.
struct AuxParams {
    size_t h = 0, m = 0, n = 0, q = 0, t = 0;

    size_t rows() const { return m * n; }
    size_t cols() const { return t; }
    size_t clearing_exponent() const { return n - 1 + 2 * m * q; }

    size_t row_of(size_t k, size_t l) const {
        if (k >= n || l < 1 || l > m) throw ShapeError("row index (k, l) out of range");
        return k * m + (l - 1);
    }
    std::pair<size_t, size_t> row_kl(size_t row) const {
        if (row >= rows()) throw ShapeError("row out of range");
        return {row / m, row % m + 1};
    }
    size_t col_of(size_t a, size_t b) const {
        if (a < 1 || a > q || b < 1 || b > q) throw ShapeError("column index (a, b) out of range");
        return (a - 1) * q + (b - 1);
    }
    std::pair<size_t, size_t> col_ab(size_t col) const {
        if (col >= cols()) throw ShapeError("column out of range");
        return {col / q + 1, col % q + 1};
    }
};

inline AuxParams derive_params(size_t h, size_t q) {
    if (h < 2) throw DegreeTooSmall("field degree must be at least 2");
    if (q < 1) throw ParamError("q must be positive");
    AuxParams p;
    p.h = h;
    p.m = 2 * h + 2;
    p.q = q;
    p.t = q * q;
    if (p.t % (2 * p.m) != 0) throw Divisibility("2m must divide q^2");
    p.n = p.t / (2 * p.m);
    return p;
}

inline AuxParams derive_params_synthetic(size_t h, size_t q, size_t m, size_t n) {
    if (h < 1 || q < 1 || m < 1 || n < 1) throw ParamError("counts must be positive");
    if (2 * m * n > q * q) throw ParamError("need 2mn <= q^2");
    return AuxParams{h, m, n, q, q * q};
}

// (a + b*beta)^k * alpha^(a*l) * gamma^(b*l), exactly in K. Also used with
// k >= n during the order search.
inline NFElement system_coefficient(const GSInstance& inst, size_t k, size_t l, size_t a, size_t b) {
    const NumberField& F = inst.field;
    NFElement ab = F.add(F.from_rational(BigRat(static_cast<long>(a))),
                         F.scalar_mul(BigRat(static_cast<long>(b)), inst.beta));
    NFElement res = F.pow_ui(ab, k);
    res = F.mul(res, F.pow_ui(inst.alpha, a * l));
    return F.mul(res, F.pow_ui(inst.gamma, b * l));
}

// True iff the t values a + b*beta are pairwise distinct (exact coordinate
// comparison). Distinctness certifies the Vandermonde determinant is nonzero.
inline bool check_injectivity(const GSInstance& inst, const AuxParams& params) {
    const NumberField& F = inst.field;
    auto lex = [](const std::vector<BigRat>& x, const std::vector<BigRat>& y) {
        for (size_t i = 0; i < x.size(); ++i) {
            int c = cmp(x[i], y[i]);
            if (c != 0) return c < 0;
        }
        return false;
    };
    std::map<std::vector<BigRat>, size_t, decltype(lex)> seen(lex);
    for (size_t a = 1; a <= params.q; ++a)
        for (size_t b = 1; b <= params.q; ++b) {
            NFElement v = F.add(F.from_rational(BigRat(static_cast<long>(a))),
                                F.scalar_mul(BigRat(static_cast<long>(b)), inst.beta));
            if (!seen.emplace(v.coords, params.col_of(a, b)).second) return false;
        }
    return true;
}

}  // namespace gsr
