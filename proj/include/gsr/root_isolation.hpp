#pragma once

#include <algorithm>
#include <vector>

#include "gsr/bigint.hpp"
#include "gsr/cball.hpp"
#include "gsr/errors.hpp"
#include "gsr/mpfloat.hpp"
#include "gsr/poly.hpp"

// Certified complex root isolation for monic squarefree integer polynomials:
// Aberth-Ehrlich approximation followed by a Krawczyk containment proof on a
// disk around each approximation. The returned enclosures are pairwise
// disjoint, so each contains exactly one root and all roots are covered.

namespace gsr {
namespace detail_roots {

// midpoint-only complex number for the non-rigorous approximation phase
struct CNum {
    MF re, im;
    explicit CNum(mpfr_prec_t p = 64) : re(p), im(p) {}
};

inline CNum c_add(const CNum& a, const CNum& b) {
    CNum r(a.re.prec());
    mpfr_add(r.re.p(), a.re.p(), b.re.p(), MPFR_RNDN);
    mpfr_add(r.im.p(), a.im.p(), b.im.p(), MPFR_RNDN);
    return r;
}

inline CNum c_sub(const CNum& a, const CNum& b) {
    CNum r(a.re.prec());
    mpfr_sub(r.re.p(), a.re.p(), b.re.p(), MPFR_RNDN);
    mpfr_sub(r.im.p(), a.im.p(), b.im.p(), MPFR_RNDN);
    return r;
}

inline CNum c_mul(const CNum& a, const CNum& b) {
    CNum r(a.re.prec());
    mpfr_fmms(r.re.p(), a.re.p(), b.re.p(), a.im.p(), b.im.p(), MPFR_RNDN);
    mpfr_fmma(r.im.p(), a.re.p(), b.im.p(), a.im.p(), b.re.p(), MPFR_RNDN);
    return r;
}

inline CNum c_div(const CNum& a, const CNum& b) {
    mpfr_prec_t p = a.re.prec();
    CNum r(p);
    MF t(p);
    mpfr_fmma(t.p(), b.re.p(), b.re.p(), b.im.p(), b.im.p(), MPFR_RNDN);
    mpfr_fmma(r.re.p(), a.re.p(), b.re.p(), a.im.p(), b.im.p(), MPFR_RNDN);
    mpfr_div(r.re.p(), r.re.p(), t.p(), MPFR_RNDN);
    mpfr_fmms(r.im.p(), a.im.p(), b.re.p(), a.re.p(), b.im.p(), MPFR_RNDN);
    mpfr_div(r.im.p(), r.im.p(), t.p(), MPFR_RNDN);
    return r;
}

inline MF c_abs(const CNum& a) {
    MF t(a.re.prec());
    mpfr_hypot(t.p(), a.re.p(), a.im.p(), MPFR_RNDN);
    return t;
}

inline bool c_is_zero(const CNum& a) { return a.re.is_zero() && a.im.is_zero(); }

// f(z) and f'(z) by a joint Horner pass
inline void horner_pair(const ZPoly& f, const CNum& z, CNum& fz, CNum& dfz) {
    mpfr_prec_t p = z.re.prec();
    CNum b(p), d(p);
    mpfr_set_z(b.re.p(), f.back().get_mpz_t(), MPFR_RNDN);
    for (size_t i = f.size() - 1; i-- > 0;) {
        d = c_add(c_mul(d, z), b);
        b = c_mul(b, z);
        MF c(p);
        mpfr_set_z(c.p(), f[i].get_mpz_t(), MPFR_RNDN);
        mpfr_add(b.re.p(), b.re.p(), c.p(), MPFR_RNDN);
    }
    fz = b;
    dfz = d;
}

inline CBall eval_ball(const ZPoly& f, const CBall& z) {
    CBall acc = CBall::from_real_rat(BigRat(f.back()), z.prec());
    for (size_t i = f.size() - 1; i-- > 0;)
        acc = acc * z + CBall::from_real_rat(BigRat(f[i]), z.prec());
    return acc;
}

inline CBall shrink_to_prec(const CBall& b, mpfr_prec_t p) {
    CBall r(p);
    int tr = mpfr_set(r.re.p(), b.re.p(), MPFR_RNDN);
    int ti = mpfr_set(r.im.p(), b.im.p(), MPFR_RNDN);
    mpfr_set(r.rad.p(), b.rad.p(), MPFR_RNDU);
    if (tr != 0) r.add_ulp(r.re);
    if (ti != 0) r.add_ulp(r.im);
    return r;
}

// Krawczyk test on the disk D(c, radius): K = c - Y f(c) + (1 - Y f'(D))(D - c)
// with Y an exact approximate inverse of f'(c). K inside the open disk proves
// existence and uniqueness of a root in D; K is the returned enclosure.
inline bool krawczyk_certify(const ZPoly& f, const ZPoly& fp, const MF& c_re, const MF& c_im,
                             const MF& radius, mpfr_prec_t q, CBall& out) {
    CBall Z0(q);
    mpfr_set(Z0.re.p(), c_re.p(), MPFR_RNDN);
    mpfr_set(Z0.im.p(), c_im.p(), MPFR_RNDN);
    CBall D = CBall::disk(Z0.re, Z0.im, radius, q);
    CBall fpc = eval_ball(fp, Z0);
    if (fpc.contains_zero()) return false;
    CBall Yb = fpc.inv();
    CBall Y(q);
    mpfr_set(Y.re.p(), Yb.re.p(), MPFR_RNDN);
    mpfr_set(Y.im.p(), Yb.im.p(), MPFR_RNDN);
    CBall fz = eval_ball(f, Z0);
    CBall one = CBall::from_real_rat(BigRat(1), q);
    CBall fpD = eval_ball(fp, D);
    CBall K = Z0 - Y * fz + (one - Y * fpD) * (D - Z0);
    if (!K.strictly_inside(D)) return false;
    out = K;
    return true;
}

}  // namespace detail_roots

// Certified enclosures of all complex roots, sorted by (Re, Im) of the
// midpoints. Throws PrecisionExhausted if certification fails at this
// precision, ParamError for non-monic or non-squarefree input.
inline std::vector<CBall> isolate_roots(const ZPoly& f_in, mpfr_prec_t prec) {
    using namespace detail_roots;
    ZPoly f = f_in;
    while (!f.empty() && f.back() == 0) f.pop_back();
    if (f.size() < 2) throw ParamError("root isolation requires degree >= 1");
    if (f.back() != 1) throw ParamError("root isolation requires a monic polynomial");
    {
        QPoly fq = from_zpoly(f);
        if (poly_gcd(fq, derivative(fq)).degree() > 0)
            throw ParamError("root isolation requires a squarefree polynomial");
    }
    size_t h = f.size() - 1;
    if (h == 1) {
        CBall r = CBall::from_real_rat(BigRat(-f[0]), prec);
        return {r};
    }

    ZPoly fp(h);
    for (size_t i = 1; i <= h; ++i) fp[i - 1] = BigInt(static_cast<long>(i)) * f[i];

    mpfr_prec_t q = prec + 64;
    // Fujiwara bound: all roots satisfy |z| <= 2 max_k |a_{h-k}|^{1/k}
    MF R(q);
    {
        MF best(q), t(q);
        bool first = true;
        for (size_t i = 0; i < h; ++i) {
            if (f[i] == 0) continue;
            BigInt a = abs(f[i]);
            mpfr_set_z(t.p(), a.get_mpz_t(), MPFR_RNDU);
            mpfr_log2(t.p(), t.p(), MPFR_RNDU);
            mpfr_div_ui(t.p(), t.p(), static_cast<unsigned long>(h - i), MPFR_RNDU);
            if (first || mpfr_cmp(t.p(), best.p()) > 0) best = t;
            first = false;
        }
        mpfr_exp2(R.p(), best.p(), MPFR_RNDU);
        mpfr_mul_2ui(R.p(), R.p(), 1, MPFR_RNDU);
        mpfr_add_d(R.p(), R.p(), 0.125, MPFR_RNDU);
    }

    // initial ring of guesses, angles offset to dodge axis symmetry
    std::vector<CNum> z(h, CNum(q));
    {
        MF theta(q), pi(q);
        mpfr_const_pi(pi.p(), MPFR_RNDN);
        for (size_t k = 0; k < h; ++k) {
            mpfr_mul_ui(theta.p(), pi.p(), 2 * static_cast<unsigned long>(k) + 1, MPFR_RNDN);
            mpfr_div_ui(theta.p(), theta.p(), 2 * static_cast<unsigned long>(h), MPFR_RNDN);
            mpfr_add_d(theta.p(), theta.p(), 0.3, MPFR_RNDN);
            MF s(q), c(q);
            mpfr_sin_cos(s.p(), c.p(), theta.p(), MPFR_RNDN);
            mpfr_mul(z[k].re.p(), R.p(), c.p(), MPFR_RNDN);
            mpfr_mul(z[k].im.p(), R.p(), s.p(), MPFR_RNDN);
        }
    }

    // Aberth-Ehrlich until the corrections are far below the target precision
    std::vector<MF> wabs(h, MF(q));
    long max_iter = 200 + 50 * static_cast<long>(h);
    for (long it = 0; it < max_iter; ++it) {
        bool all_small = true;
        for (size_t k = 0; k < h; ++k) {
            CNum fz(q), dfz(q);
            horner_pair(f, z[k], fz, dfz);
            CNum newton(q);
            if (c_is_zero(dfz)) {
                mpfr_add_d(z[k].re.p(), z[k].re.p(), 1e-3, MPFR_RNDN);
                all_small = false;
                continue;
            }
            newton = c_div(fz, dfz);
            CNum sum(q);
            for (size_t j = 0; j < h; ++j) {
                if (j == k) continue;
                CNum diff = c_sub(z[k], z[j]);
                if (c_is_zero(diff)) {
                    mpfr_add_d(diff.re.p(), diff.re.p(), 1e-6, MPFR_RNDN);
                }
                CNum one(q);
                mpfr_set_ui(one.re.p(), 1, MPFR_RNDN);
                sum = c_add(sum, c_div(one, diff));
            }
            CNum denom(q);
            mpfr_set_ui(denom.re.p(), 1, MPFR_RNDN);
            denom = c_sub(denom, c_mul(newton, sum));
            CNum w = c_div(newton, denom);
            z[k] = c_sub(z[k], w);
            wabs[k] = c_abs(w);
            // small enough when |w| <= 2^(10-q) (1 + |z_k|)
            MF thr(q);
            mpfr_abs(thr.p(), z[k].re.p(), MPFR_RNDN);
            mpfr_add_ui(thr.p(), thr.p(), 1, MPFR_RNDN);
            mpfr_mul_2si(thr.p(), thr.p(), 10 - static_cast<long>(q), MPFR_RNDN);
            if (mpfr_cmp(wabs[k].p(), thr.p()) > 0) all_small = false;
        }
        if (all_small) break;
    }

    // disk radius per root: a quarter of the nearest-neighbor distance,
    // clamped by the accuracy the output precision can support
    std::vector<CBall> enclosures;
    enclosures.reserve(h);
    for (size_t k = 0; k < h; ++k) {
        MF sep(q);
        bool first = true;
        for (size_t j = 0; j < h; ++j) {
            if (j == k) continue;
            CNum diff = c_sub(z[k], z[j]);
            MF d = c_abs(diff);
            if (first || mpfr_cmp(d.p(), sep.p()) < 0) sep = d;
            first = false;
        }
        MF radius(CBall::RADP);
        mpfr_div_ui(radius.p(), sep.p(), 4, MPFR_RNDN);
        MF acc(CBall::RADP);
        mpfr_abs(acc.p(), z[k].re.p(), MPFR_RNDU);
        mpfr_add_ui(acc.p(), acc.p(), 1, MPFR_RNDU);
        mpfr_mul_2si(acc.p(), acc.p(), -static_cast<long>(prec) - 8, MPFR_RNDU);
        if (mpfr_cmp(acc.p(), radius.p()) < 0) radius = acc;

        CBall cert(q);
        bool ok = false;
        // a nearly-real approximation often is a real root: try the snapped
        // center first so real roots get an exactly-real midpoint
        MF snap_thr(q);
        mpfr_abs(snap_thr.p(), z[k].re.p(), MPFR_RNDN);
        mpfr_add_ui(snap_thr.p(), snap_thr.p(), 1, MPFR_RNDN);
        mpfr_mul_2si(snap_thr.p(), snap_thr.p(), -static_cast<long>(q) / 2, MPFR_RNDN);
        if (mpfr_cmpabs(z[k].im.p(), snap_thr.p()) < 0) {
            MF zero(q);
            ok = krawczyk_certify(f, fp, z[k].re, zero, radius, q, cert);
        }
        if (!ok) ok = krawczyk_certify(f, fp, z[k].re, z[k].im, radius, q, cert);
        if (!ok) throw PrecisionExhausted("root certification failed; raise the precision");
        enclosures.push_back(shrink_to_prec(cert, prec));
    }

    for (size_t i = 0; i < h; ++i)
        for (size_t j = i + 1; j < h; ++j)
            if (enclosures[i].overlaps(enclosures[j]))
                throw PrecisionExhausted("root enclosures overlap; raise the precision");

    std::sort(enclosures.begin(), enclosures.end(), [](const CBall& a, const CBall& b) {
        int c = mpfr_cmp(a.re.p(), b.re.p());
        if (c != 0) return c < 0;
        return mpfr_cmp(a.im.p(), b.im.p()) < 0;
    });
    return enclosures;
}

}  // namespace gsr
