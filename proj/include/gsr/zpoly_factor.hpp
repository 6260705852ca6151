#pragma once

#include <bit>
#include <utility>
#include <vector>

#include "gsr/bigint.hpp"
#include "gsr/errors.hpp"
#include "gsr/poly.hpp"

// Exact irreducibility over Q for monic integer polynomials of degree <= 16:
// modular factor-degree sieve, then Hensel lifting and factor recombination
// when the sieve is inconclusive (x^4 + 1 is reducible mod every prime).

namespace gsr {
namespace detail_factor {

// ----- F_p[x], small prime p, coefficients in [0, p), lowest-first -----

using FpPoly = std::vector<long>;

inline void fp_trim(FpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline long fp_pow_scalar(long b, long e, long p) {
    long r = 1 % p;
    b %= p;
    while (e > 0) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

inline long fp_inv_scalar(long a, long p) { return fp_pow_scalar((a % p + p) % p, p - 2, p); }

inline FpPoly fp_mul(const FpPoly& a, const FpPoly& b, long p) {
    if (a.empty() || b.empty()) return {};
    FpPoly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    }
    fp_trim(c);
    return c;
}

inline FpPoly fp_sub(FpPoly a, const FpPoly& b, long p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (size_t i = 0; i < b.size(); ++i) a[i] = ((a[i] - b[i]) % p + p) % p;
    fp_trim(a);
    return a;
}

inline std::pair<FpPoly, FpPoly> fp_divmod(FpPoly a, const FpPoly& b, long p) {
    FpPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
    long inv = fp_inv_scalar(b.back(), p);
    while (a.size() >= b.size()) {
        long qc = a.back() * inv % p;
        size_t off = a.size() - b.size();
        q[off] = qc;
        for (size_t i = 0; i < b.size(); ++i) a[off + i] = ((a[off + i] - qc * b[i]) % p + p) % p;
        fp_trim(a);
    }
    fp_trim(q);
    return {q, a};
}

inline FpPoly fp_gcd(FpPoly a, FpPoly b, long p) {
    fp_trim(a);
    fp_trim(b);
    while (!b.empty()) {
        FpPoly r = fp_divmod(a, b, p).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() != 1) {
        long inv = fp_inv_scalar(a.back(), p);
        for (auto& c : a) c = c * inv % p;
    }
    return a;
}

// g = gcd(a, b) monic, s*a + t*b = g (mod p)
inline void fp_eea(const FpPoly& a, const FpPoly& b, long p, FpPoly& g, FpPoly& s, FpPoly& t) {
    FpPoly r0 = a, r1 = b, s0 = {1}, s1 = {}, t0 = {}, t1 = {1};
    fp_trim(r0);
    fp_trim(r1);
    while (!r1.empty()) {
        auto [q, r] = fp_divmod(r0, r1, p);
        r0 = std::move(r1);
        r1 = std::move(r);
        FpPoly ns = fp_sub(s0, fp_mul(q, s1, p), p);
        s0 = std::move(s1);
        s1 = std::move(ns);
        FpPoly nt = fp_sub(t0, fp_mul(q, t1, p), p);
        t0 = std::move(t1);
        t1 = std::move(nt);
    }
    long inv = fp_inv_scalar(r0.back(), p);
    g = std::move(r0);
    for (auto& c : g) c = c * inv % p;
    s = std::move(s0);
    for (auto& c : s) c = c * inv % p;
    t = std::move(t0);
    for (auto& c : t) c = c * inv % p;
}

inline FpPoly fp_derivative(const FpPoly& a, long p) {
    FpPoly d;
    for (size_t i = 1; i < a.size(); ++i) d.push_back(static_cast<long>(i % p) * a[i] % p);
    fp_trim(d);
    return d;
}

inline FpPoly fp_xpow_mod(long e, const FpPoly& f, long p) {
    FpPoly base = fp_divmod({0, 1}, f, p).second;
    FpPoly r = fp_divmod({1}, f, p).second;
    while (e > 0) {
        if (e & 1) r = fp_divmod(fp_mul(r, base, p), f, p).second;
        base = fp_divmod(fp_mul(base, base, p), f, p).second;
        e >>= 1;
    }
    return r;
}

// Full factorization of a monic squarefree f mod p into monic irreducibles
// (Berlekamp: nullity of Frobenius - id counts the factors, gcd(f, v - c)
// splits them).
inline std::vector<FpPoly> berlekamp(const FpPoly& f, long p) {
    size_t n = f.size() - 1;
    if (n == 1) return {f};
    FpPoly xp = fp_xpow_mod(p, f, p);
    std::vector<FpPoly> rows(n);
    rows[0] = {1};
    for (size_t i = 1; i < n; ++i) rows[i] = fp_divmod(fp_mul(rows[i - 1], xp, p), f, p).second;
    // A v = 0 with A[j][i] = coeff_j(x^{ip} mod f) - delta_ij
    std::vector<std::vector<long>> A(n, std::vector<long>(n, 0));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < rows[i].size(); ++j) A[j][i] = rows[i][j] % p;
        A[i][i] = ((A[i][i] - 1) % p + p) % p;
    }
    std::vector<int> col_pivot_row(n, -1);
    size_t row = 0;
    for (size_t col = 0; col < n && row < n; ++col) {
        size_t sel = row;
        while (sel < n && A[sel][col] == 0) ++sel;
        if (sel == n) continue;
        std::swap(A[sel], A[row]);
        long inv = fp_inv_scalar(A[row][col], p);
        for (size_t j = 0; j < n; ++j) A[row][j] = A[row][j] * inv % p;
        for (size_t r2 = 0; r2 < n; ++r2) {
            if (r2 == row || A[r2][col] == 0) continue;
            long fc = A[r2][col];
            for (size_t j = 0; j < n; ++j) A[r2][j] = ((A[r2][j] - fc * A[row][j]) % p + p) % p;
        }
        col_pivot_row[col] = static_cast<int>(row);
        ++row;
    }
    std::vector<FpPoly> basis;
    for (size_t col = 0; col < n; ++col) {
        if (col_pivot_row[col] != -1) continue;
        FpPoly v(n, 0);
        v[col] = 1;
        for (size_t c2 = 0; c2 < n; ++c2)
            if (col_pivot_row[c2] != -1)
                v[c2] = ((-A[static_cast<size_t>(col_pivot_row[c2])][col]) % p + p) % p;
        fp_trim(v);
        basis.push_back(v);
    }
    size_t r = basis.size();
    std::vector<FpPoly> factors = {f};
    if (r == 1) return factors;
    for (const auto& v : basis) {
        if (factors.size() == r) break;
        if (v.size() <= 1) continue;
        std::vector<FpPoly> acc;
        for (const auto& u : factors) {
            std::vector<FpPoly> pieces = {u};
            for (long c = 0; c < p; ++c) {
                FpPoly vc = v;
                vc[0] = ((vc[0] - c) % p + p) % p;
                fp_trim(vc);
                std::vector<FpPoly> np;
                for (const auto& w : pieces) {
                    if (w.size() <= 2) {
                        np.push_back(w);
                        continue;
                    }
                    FpPoly g = fp_gcd(w, vc, p);
                    if (g.size() > 1 && g.size() < w.size()) {
                        np.push_back(fp_divmod(w, g, p).first);
                        np.push_back(std::move(g));
                    } else {
                        np.push_back(w);
                    }
                }
                pieces = std::move(np);
            }
            for (auto& w : pieces) acc.push_back(std::move(w));
        }
        factors = std::move(acc);
    }
    if (factors.size() != r) throw Error("modular factor count does not match nullity");
    return factors;
}

// ----- Z/m[x] for Hensel lifting, coefficients in [0, m), lowest-first -----

using MPoly = std::vector<BigInt>;

inline void mm_trim(MPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline BigInt mod_pos(const BigInt& a, const BigInt& m) {
    BigInt r = a % m;
    if (r < 0) r += m;
    return r;
}

inline MPoly mm_red(MPoly a, const BigInt& m) {
    for (auto& c : a) c = mod_pos(c, m);
    mm_trim(a);
    return a;
}

inline MPoly mm_add(MPoly a, const MPoly& b, const BigInt& m) {
    if (a.size() < b.size()) a.resize(b.size(), BigInt(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] = mod_pos(a[i] + b[i], m);
    mm_trim(a);
    return a;
}

inline MPoly mm_sub(MPoly a, const MPoly& b, const BigInt& m) {
    if (a.size() < b.size()) a.resize(b.size(), BigInt(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] = mod_pos(a[i] - b[i], m);
    mm_trim(a);
    return a;
}

inline MPoly mm_mul(const MPoly& a, const MPoly& b, const BigInt& m) {
    if (a.empty() || b.empty()) return {};
    MPoly c(a.size() + b.size() - 1, BigInt(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    return mm_red(std::move(c), m);
}

// division by a monic divisor
inline std::pair<MPoly, MPoly> mm_divmod_monic(MPoly a, const MPoly& b, const BigInt& m) {
    if (b.empty() || b.back() != 1) throw Error("mm_divmod_monic: divisor must be monic");
    MPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, BigInt(0));
    while (a.size() >= b.size()) {
        BigInt qc = a.back();
        size_t off = a.size() - b.size();
        q[off] = qc;
        for (size_t i = 0; i < b.size(); ++i) a[off + i] = mod_pos(a[off + i] - qc * b[i], m);
        mm_trim(a);
    }
    mm_trim(q);
    return {q, a};
}

// One quadratic Hensel step: given f = g*h (mod m), s*g + t*h = 1 (mod m),
// g and h monic, produces the same relations mod m^2 with g, h still monic.
inline void hensel_step(const MPoly& f, MPoly& g, MPoly& h, MPoly& s, MPoly& t, const BigInt& m) {
    BigInt m2 = m * m;
    MPoly e = mm_sub(mm_red(f, m2), mm_mul(g, h, m2), m2);
    auto [q, r] = mm_divmod_monic(mm_mul(s, e, m2), h, m2);
    MPoly g1 = mm_add(mm_add(g, mm_mul(t, e, m2), m2), mm_mul(q, g, m2), m2);
    MPoly h1 = mm_add(h, r, m2);
    MPoly b = mm_sub(mm_add(mm_mul(s, g1, m2), mm_mul(t, h1, m2), m2), MPoly{BigInt(1)}, m2);
    auto [c, d] = mm_divmod_monic(mm_mul(s, b, m2), h1, m2);
    g = std::move(g1);
    h = std::move(h1);
    MPoly s1 = mm_sub(s, d, m2);
    MPoly t1 = mm_sub(mm_sub(t, mm_mul(t, b, m2), m2), mm_mul(c, g, m2), m2);
    s = std::move(s1);
    t = std::move(t1);
    if (g.empty() || g.back() != 1 || h.empty() || h.back() != 1)
        throw Error("hensel step lost monic normalization");
}

inline MPoly to_mpoly(const FpPoly& a) {
    MPoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    return r;
}

// Pair-split tree over a contiguous range of the modular factor list. A node
// holds the Bezout data for (product of left half, product of right half);
// its own product value comes from the parent (or from f at the root).
struct LiftNode {
    int lo = 0, mid = 0, hi = 0;
    int parent = -1;
    bool left_side = false;
    MPoly g, h, s, t;
};

inline void build_lift_tree(std::vector<LiftNode>& nodes, const std::vector<FpPoly>& fac, long p,
                            int lo, int hi, int parent, bool left_side) {
    int mid = (lo + hi) / 2;
    LiftNode nd;
    nd.lo = lo;
    nd.mid = mid;
    nd.hi = hi;
    nd.parent = parent;
    nd.left_side = left_side;
    FpPoly G = {1}, H = {1};
    for (int i = lo; i < mid; ++i) G = fp_mul(G, fac[static_cast<size_t>(i)], p);
    for (int i = mid; i < hi; ++i) H = fp_mul(H, fac[static_cast<size_t>(i)], p);
    FpPoly gg, ss, tt;
    fp_eea(G, H, p, gg, ss, tt);
    if (gg.size() != 1) throw Error("modular factors are not coprime");
    nd.g = to_mpoly(G);
    nd.h = to_mpoly(H);
    nd.s = to_mpoly(ss);
    nd.t = to_mpoly(tt);
    int my = static_cast<int>(nodes.size());
    nodes.push_back(std::move(nd));
    if (mid - lo >= 2) build_lift_tree(nodes, fac, p, lo, mid, my, true);
    if (hi - mid >= 2) build_lift_tree(nodes, fac, p, mid, hi, my, false);
}

// Lifts the factorization f = prod(fac) (mod p) to modulus m >= target
// (m a power of p); fills `lifted` in factor order and returns m.
inline BigInt hensel_lift_tree(const ZPoly& f, const std::vector<FpPoly>& fac, long p,
                               const BigInt& target, std::vector<MPoly>& lifted) {
    MPoly fz(f.begin(), f.end());
    BigInt m(p);
    if (fac.size() == 1) {
        while (m < target) m *= m;
        lifted = {mm_red(fz, m)};
        return m;
    }
    std::vector<LiftNode> nodes;
    build_lift_tree(nodes, fac, p, 0, static_cast<int>(fac.size()), -1, false);
    while (m < target) {
        // preorder: a parent is re-lifted before its children read g/h from it
        for (auto& nd : nodes) {
            const MPoly& src = nd.parent < 0
                                   ? fz
                                   : (nd.left_side ? nodes[static_cast<size_t>(nd.parent)].g
                                                   : nodes[static_cast<size_t>(nd.parent)].h);
            MPoly prod = mm_red(src, m * m);
            hensel_step(prod, nd.g, nd.h, nd.s, nd.t, m);
        }
        m *= m;
    }
    lifted.assign(fac.size(), MPoly{});
    for (const auto& nd : nodes) {
        if (nd.mid - nd.lo == 1) lifted[static_cast<size_t>(nd.lo)] = nd.g;
        if (nd.hi - nd.mid == 1) lifted[static_cast<size_t>(nd.mid)] = nd.h;
    }
    return m;
}

// representative in (-m/2, m/2]
inline BigInt sym_rep(const BigInt& a, const BigInt& m) {
    if (2 * a > m) return a - m;
    return a;
}

// exact divisibility over Z by a monic divisor
inline bool z_divides_monic(const ZPoly& f, const ZPoly& g) {
    std::vector<BigInt> a = f;
    while (!a.empty() && a.back() == 0) a.pop_back();
    while (a.size() >= g.size()) {
        BigInt qc = a.back();
        size_t off = a.size() - g.size();
        for (size_t i = 0; i < g.size(); ++i) a[off + i] -= qc * g[i];
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    return a.empty();
}

// ||f||_2 rounded up; factor coefficient bound 2^(n-1) * that (monic divisors)
inline BigInt factor_coeff_bound(const ZPoly& f) {
    BigInt s2(0);
    for (const auto& c : f) s2 += c * c;
    BigInt s = sqrt(s2);
    if (s * s < s2) s += 1;
    BigInt b = s;
    size_t n = f.size() - 1;
    for (size_t i = 1; i < n; ++i) b *= 2;
    return b;
}

}  // namespace detail_factor

// Exact irreducibility over Q of a monic integer polynomial (degree 1..16).
inline bool is_irreducible(const ZPoly& f_in) {
    using namespace detail_factor;
    ZPoly f = f_in;
    while (!f.empty() && f.back() == 0) f.pop_back();
    if (f.size() < 2) throw ParamError("irreducibility requires degree >= 1");
    if (f.back() != 1) throw ParamError("irreducibility test requires a monic polynomial");
    size_t n = f.size() - 1;
    if (n == 1) return true;
    if (n > 16) throw ParamError("irreducibility test supports degree <= 16");

    // a repeated factor is a proper factor
    {
        QPoly fq = from_zpoly(f);
        if (poly_gcd(fq, derivative(fq)).degree() > 0) return false;
    }

    static const long primes[] = {2,  3,  5,  7,  11, 13, 17, 19,  23,  29,  31,  37,  41,  43,  47,
                                  53, 59, 61, 67, 71, 73, 79, 83,  89,  97,  101, 103, 107, 109, 113,
                                  127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199};

    // bit d of `possible` stays set while some prime still allows a factor
    // of degree d (subset sums of modular factor degrees)
    unsigned possible = (1u << (n + 1)) - 1;
    const unsigned proper_mask = ((1u << n) - 1) & ~1u;  // bits 1..n-1

    std::vector<FpPoly> best_factors;
    long best_p = 0;
    int usable = 0;
    for (long p : primes) {
        FpPoly fp(f.size());
        for (size_t i = 0; i < f.size(); ++i)
            fp[i] = static_cast<long>(mpz_fdiv_ui(f[i].get_mpz_t(), static_cast<unsigned long>(p)));
        fp_trim(fp);
        if (fp.size() != f.size()) continue;  // cannot happen for monic f; defensive
        if (fp_gcd(fp, fp_derivative(fp, p), p).size() != 1) continue;  // not squarefree mod p
        auto factors = berlekamp(fp, p);
        if (factors.size() == 1) return true;
        unsigned mask = 1;
        for (const auto& g : factors) mask |= mask << (g.size() - 1);
        possible &= mask;
        if ((possible & proper_mask) == 0) return true;
        if (best_p == 0 || factors.size() < best_factors.size()) {
            best_factors = std::move(factors);
            best_p = p;
        }
        if (++usable >= 5) break;
    }
    if (best_p == 0) throw Error("no usable prime for the irreducibility test");

    // sieve inconclusive: lift past twice the factor coefficient bound and
    // test every small subset of the modular factors as a true divisor
    size_t r = best_factors.size();
    BigInt twoB = 2 * factor_coeff_bound(f);
    BigInt target(best_p);
    while (target <= twoB) target *= best_p;
    std::vector<MPoly> lifted;
    BigInt m = hensel_lift_tree(f, best_factors, best_p, target, lifted);
    for (unsigned sub = 1; sub + 1 < (1u << r); ++sub) {
        int sz = std::popcount(sub);
        if (2 * sz > static_cast<int>(r)) continue;
        if (2 * sz == static_cast<int>(r) && !(sub & 1u)) continue;
        size_t degsum = 0;
        for (size_t i = 0; i < r; ++i)
            if (sub >> i & 1u) degsum += best_factors[i].size() - 1;
        if (!(possible >> degsum & 1u)) continue;
        MPoly prod{BigInt(1)};
        for (size_t i = 0; i < r; ++i)
            if (sub >> i & 1u) prod = mm_mul(prod, lifted[i], m);
        ZPoly cand(prod.size());
        for (size_t i = 0; i < prod.size(); ++i) cand[i] = sym_rep(prod[i], m);
        if (z_divides_monic(f, cand)) return false;
    }
    return true;
}

}  // namespace gsr
