#pragma once

#include <utility>
#include <vector>

#include "gsr/bigint.hpp"
#include "gsr/errors.hpp"

namespace gsr {

// Dense univariate polynomial over Q, coefficients lowest-degree-first.
// The zero polynomial is the empty sequence; otherwise the top coefficient
// is nonzero.
struct QPoly {
    std::vector<BigRat> c;

    QPoly() = default;
    explicit QPoly(std::vector<BigRat> coeffs) : c(std::move(coeffs)) { normalize(); }

    static QPoly constant(const BigRat& v) {
        QPoly p;
        if (v != 0) p.c.push_back(v);
        return p;
    }
    // x^k
    static QPoly monomial(size_t k, const BigRat& v = BigRat(1)) {
        QPoly p;
        if (v != 0) {
            p.c.assign(k + 1, BigRat(0));
            p.c[k] = v;
        }
        return p;
    }

    void normalize() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }

    bool is_zero() const { return c.empty(); }
    // degree of the zero polynomial is -1
    long degree() const { return static_cast<long>(c.size()) - 1; }
    const BigRat& leading() const { return c.back(); }
    BigRat coeff(size_t k) const { return k < c.size() ? c[k] : BigRat(0); }

    bool operator==(const QPoly& o) const { return c == o.c; }
    bool operator!=(const QPoly& o) const { return !(*this == o); }
};

inline QPoly operator+(const QPoly& a, const QPoly& b) {
    QPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), BigRat(0));
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    r.normalize();
    return r;
}

inline QPoly operator-(const QPoly& a, const QPoly& b) {
    QPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), BigRat(0));
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
    r.normalize();
    return r;
}

inline QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return QPoly{};
    QPoly r;
    r.c.assign(a.c.size() + b.c.size() - 1, BigRat(0));
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    }
    r.normalize();
    return r;
}

inline QPoly operator*(const QPoly& a, const BigRat& s) {
    if (s == 0) return QPoly{};
    QPoly r = a;
    for (auto& x : r.c) x *= s;
    return r;
}

// Euclidean division: a = q*b + r with deg r < deg b. b must be nonzero.
inline std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
    if (b.is_zero()) throw ParamError("poly divmod: division by zero polynomial");
    QPoly r = a, q;
    long db = b.degree();
    if (a.degree() >= db) q.c.assign(static_cast<size_t>(a.degree() - db) + 1, BigRat(0));
    const BigRat& lb = b.leading();
    while (!r.is_zero() && r.degree() >= db) {
        long k = r.degree() - db;
        BigRat f = r.leading() / lb;
        q.c[static_cast<size_t>(k)] = f;
        for (long i = 0; i <= db; ++i)
            r.c[static_cast<size_t>(k + i)] -= f * b.c[static_cast<size_t>(i)];
        r.normalize();
    }
    q.normalize();
    return {q, r};
}

// Monic gcd; gcd(0, 0) = 0.
inline QPoly poly_gcd(QPoly a, QPoly b) {
    while (!b.is_zero()) {
        QPoly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero() && a.leading() != 1) {
        BigRat inv = BigRat(1) / a.leading();
        for (auto& x : a.c) x *= inv;
    }
    return a;
}

inline QPoly derivative(const QPoly& p) {
    QPoly r;
    if (p.c.size() <= 1) return r;
    r.c.resize(p.c.size() - 1);
    for (size_t i = 1; i < p.c.size(); ++i) r.c[i - 1] = p.c[i] * BigRat(static_cast<long>(i));
    r.normalize();
    return r;
}

inline BigRat eval(const QPoly& p, const BigRat& x) {
    BigRat v(0);
    for (size_t i = p.c.size(); i-- > 0;) v = v * x + p.c[i];
    return v;
}

// Integer polynomial, lowest-degree-first, used by the factoring routines.
using ZPoly = std::vector<BigInt>;

inline bool has_integer_coeffs(const QPoly& p) {
    for (const auto& x : p.c)
        if (!is_integer(x)) return false;
    return true;
}

// lcm of coefficient denominators.
inline BigInt coeff_denominator_lcm(const QPoly& p) {
    BigInt l(1);
    for (const auto& x : p.c) l = lcm(l, rat_den(x));
    return l;
}

// Smallest positive integer multiple of p with integer coefficients,
// divided by the content: primitive integer image (sign of leading kept).
inline ZPoly to_primitive_zpoly(const QPoly& p) {
    ZPoly z;
    if (p.is_zero()) return z;
    BigInt l = coeff_denominator_lcm(p);
    z.resize(p.c.size());
    for (size_t i = 0; i < p.c.size(); ++i) {
        BigRat t = p.c[i] * BigRat(l);
        z[i] = rat_num(t);
    }
    BigInt g(0);
    for (const auto& x : z) g = gcd(g, x);
    if (g > 1)
        for (auto& x : z) x /= g;
    return z;
}

inline QPoly from_zpoly(const ZPoly& z) {
    QPoly p;
    p.c.reserve(z.size());
    for (const auto& x : z) p.c.emplace_back(x);
    p.normalize();
    return p;
}

}  // namespace gsr
