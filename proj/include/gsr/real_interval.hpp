#pragma once

#include <algorithm>

#include "gsr/bigint.hpp"
#include "gsr/errors.hpp"
#include "gsr/mpfloat.hpp"

namespace gsr {

// Closed real interval [lo, hi] with endpoints rounded outward (lo down,
// hi up) through every operation, so the true value is always contained.
class RInterval {
  public:
    MF lo, hi;

    explicit RInterval(mpfr_prec_t prec = 64) : lo(prec), hi(prec) {}

    mpfr_prec_t prec() const { return lo.prec(); }

    static RInterval from_rat(const BigRat& q, mpfr_prec_t prec) {
        RInterval r(prec);
        mpfr_set_q(r.lo.p(), q.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(r.hi.p(), q.get_mpq_t(), MPFR_RNDU);
        return r;
    }
    static RInterval from_int(const BigInt& z, mpfr_prec_t prec) {
        return from_rat(BigRat(z), prec);
    }
    static RInterval from_long(long v, mpfr_prec_t prec) { return from_rat(BigRat(v), prec); }
    static RInterval exact(const MF& x) {
        RInterval r(x.prec());
        r.lo = x;
        r.hi = x;
        return r;
    }
    static RInterval bounds(const MF& a, const MF& b, mpfr_prec_t prec) {
        RInterval r(prec);
        mpfr_set(r.lo.p(), a.p(), MPFR_RNDD);
        mpfr_set(r.hi.p(), b.p(), MPFR_RNDU);
        if (mpfr_cmp(r.lo.p(), r.hi.p()) > 0) throw ParamError("interval bounds out of order");
        return r;
    }
    static RInterval pi(mpfr_prec_t prec) {
        RInterval r(prec);
        mpfr_const_pi(r.lo.p(), MPFR_RNDD);
        mpfr_const_pi(r.hi.p(), MPFR_RNDU);
        return r;
    }

    bool contains(const BigRat& q) const {
        return mpfr_cmp_q(lo.p(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi.p(), q.get_mpq_t()) >= 0;
    }
    bool contains_zero() const { return lo.sgn() <= 0 && hi.sgn() >= 0; }
    bool is_positive() const { return lo.sgn() > 0; }
    bool is_nonnegative() const { return lo.sgn() >= 0; }
    // certainly <=: every point of *this is <= every point of o
    bool certainly_le(const RInterval& o) const { return mpfr_cmp(hi.p(), o.lo.p()) <= 0; }
    bool certainly_lt(const RInterval& o) const { return mpfr_cmp(hi.p(), o.lo.p()) < 0; }
    bool overlaps(const RInterval& o) const {
        return mpfr_cmp(lo.p(), o.hi.p()) <= 0 && mpfr_cmp(o.lo.p(), hi.p()) <= 0;
    }

    MF width() const {
        MF w(prec());
        mpfr_sub(w.p(), hi.p(), lo.p(), MPFR_RNDU);
        return w;
    }
    MF mid() const {
        MF m(prec());
        mpfr_add(m.p(), lo.p(), hi.p(), MPFR_RNDN);
        mpfr_div_2ui(m.p(), m.p(), 1, MPFR_RNDN);
        return m;
    }
    double lo_d() const { return mpfr_get_d(lo.p(), MPFR_RNDD); }
    double hi_d() const { return mpfr_get_d(hi.p(), MPFR_RNDU); }

    RInterval neg() const {
        RInterval r(prec());
        mpfr_neg(r.lo.p(), hi.p(), MPFR_RNDD);
        mpfr_neg(r.hi.p(), lo.p(), MPFR_RNDU);
        return r;
    }
    RInterval abs_() const {
        RInterval r(prec());
        if (lo.sgn() >= 0) return *this;
        if (hi.sgn() <= 0) return neg();
        mpfr_set_zero(r.lo.p(), 1);
        if (mpfr_cmpabs(lo.p(), hi.p()) >= 0)
            mpfr_neg(r.hi.p(), lo.p(), MPFR_RNDU);
        else
            mpfr_set(r.hi.p(), hi.p(), MPFR_RNDU);
        return r;
    }

    RInterval hull(const RInterval& o) const {
        RInterval r(std::max(prec(), o.prec()));
        mpfr_min(r.lo.p(), lo.p(), o.lo.p(), MPFR_RNDD);
        mpfr_max(r.hi.p(), hi.p(), o.hi.p(), MPFR_RNDU);
        return r;
    }
    RInterval max_with(const RInterval& o) const {
        RInterval r(std::max(prec(), o.prec()));
        mpfr_max(r.lo.p(), lo.p(), o.lo.p(), MPFR_RNDD);
        mpfr_max(r.hi.p(), hi.p(), o.hi.p(), MPFR_RNDU);
        return r;
    }
};

inline RInterval operator+(const RInterval& a, const RInterval& b) {
    RInterval r(std::max(a.prec(), b.prec()));
    mpfr_add(r.lo.p(), a.lo.p(), b.lo.p(), MPFR_RNDD);
    mpfr_add(r.hi.p(), a.hi.p(), b.hi.p(), MPFR_RNDU);
    return r;
}

inline RInterval operator-(const RInterval& a, const RInterval& b) {
    RInterval r(std::max(a.prec(), b.prec()));
    mpfr_sub(r.lo.p(), a.lo.p(), b.hi.p(), MPFR_RNDD);
    mpfr_sub(r.hi.p(), a.hi.p(), b.lo.p(), MPFR_RNDU);
    return r;
}

inline RInterval operator*(const RInterval& a, const RInterval& b) {
    mpfr_prec_t p = std::max(a.prec(), b.prec());
    RInterval r(p);
    MF t(p), best_lo(p), best_hi(p);
    const mpfr_srcptr as[2] = {a.lo.p(), a.hi.p()};
    const mpfr_srcptr bs[2] = {b.lo.p(), b.hi.p()};
    bool first = true;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            mpfr_mul(t.p(), as[i], bs[j], MPFR_RNDD);
            if (first || mpfr_cmp(t.p(), best_lo.p()) < 0) best_lo = t;
            mpfr_mul(t.p(), as[i], bs[j], MPFR_RNDU);
            if (first || mpfr_cmp(t.p(), best_hi.p()) > 0) best_hi = t;
            first = false;
        }
    r.lo = best_lo;
    r.hi = best_hi;
    return r;
}

inline RInterval operator/(const RInterval& a, const RInterval& b) {
    if (b.contains_zero()) throw PrecisionExhausted("interval division by interval containing zero");
    mpfr_prec_t p = std::max(a.prec(), b.prec());
    RInterval r(p);
    MF t(p), best_lo(p), best_hi(p);
    const mpfr_srcptr as[2] = {a.lo.p(), a.hi.p()};
    const mpfr_srcptr bs[2] = {b.lo.p(), b.hi.p()};
    bool first = true;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            mpfr_div(t.p(), as[i], bs[j], MPFR_RNDD);
            if (first || mpfr_cmp(t.p(), best_lo.p()) < 0) best_lo = t;
            mpfr_div(t.p(), as[i], bs[j], MPFR_RNDU);
            if (first || mpfr_cmp(t.p(), best_hi.p()) > 0) best_hi = t;
            first = false;
        }
    r.lo = best_lo;
    r.hi = best_hi;
    return r;
}

inline RInterval sqrt_(const RInterval& a) {
    if (a.lo.sgn() < 0) throw PrecisionExhausted("interval sqrt of a possibly negative value");
    RInterval r(a.prec());
    mpfr_sqrt(r.lo.p(), a.lo.p(), MPFR_RNDD);
    mpfr_sqrt(r.hi.p(), a.hi.p(), MPFR_RNDU);
    return r;
}

inline RInterval log_(const RInterval& a) {
    if (a.lo.sgn() <= 0) throw PrecisionExhausted("interval log of a possibly nonpositive value");
    RInterval r(a.prec());
    mpfr_log(r.lo.p(), a.lo.p(), MPFR_RNDD);
    mpfr_log(r.hi.p(), a.hi.p(), MPFR_RNDU);
    return r;
}

inline RInterval log10_(const RInterval& a) {
    if (a.lo.sgn() <= 0) throw PrecisionExhausted("interval log10 of a possibly nonpositive value");
    RInterval r(a.prec());
    mpfr_log10(r.lo.p(), a.lo.p(), MPFR_RNDD);
    mpfr_log10(r.hi.p(), a.hi.p(), MPFR_RNDU);
    return r;
}

inline RInterval exp_(const RInterval& a) {
    RInterval r(a.prec());
    mpfr_exp(r.lo.p(), a.lo.p(), MPFR_RNDD);
    mpfr_exp(r.hi.p(), a.hi.p(), MPFR_RNDU);
    return r;
}

inline RInterval pow_ui(const RInterval& a, unsigned long n) {
    mpfr_prec_t p = a.prec();
    RInterval r(p);
    if (n == 0) {
        mpfr_set_ui(r.lo.p(), 1, MPFR_RNDD);
        mpfr_set_ui(r.hi.p(), 1, MPFR_RNDU);
        return r;
    }
    if (n % 2 == 1 || a.lo.sgn() >= 0) {
        mpfr_pow_ui(r.lo.p(), a.lo.p(), n, MPFR_RNDD);
        mpfr_pow_ui(r.hi.p(), a.hi.p(), n, MPFR_RNDU);
        return r;
    }
    if (a.hi.sgn() <= 0) {
        mpfr_pow_ui(r.lo.p(), a.hi.p(), n, MPFR_RNDD);
        mpfr_pow_ui(r.hi.p(), a.lo.p(), n, MPFR_RNDU);
        return r;
    }
    // even power of an interval straddling zero
    mpfr_set_zero(r.lo.p(), 1);
    MF m(p);
    if (mpfr_cmpabs(a.lo.p(), a.hi.p()) >= 0)
        mpfr_neg(m.p(), a.lo.p(), MPFR_RNDU);
    else
        mpfr_set(m.p(), a.hi.p(), MPFR_RNDU);
    mpfr_pow_ui(r.hi.p(), m.p(), n, MPFR_RNDU);
    return r;
}

// Certified three-way outcome of "a <= b" between enclosures.
enum class Cert { holds, fails, undecided };

inline Cert cert_le(const RInterval& a, const RInterval& b) {
    if (mpfr_cmp(a.hi.p(), b.lo.p()) <= 0) return Cert::holds;
    if (mpfr_cmp(a.lo.p(), b.hi.p()) > 0) return Cert::fails;
    return Cert::undecided;
}

inline const char* cert_name(Cert c) {
    switch (c) {
        case Cert::holds:
            return "holds";
        case Cert::fails:
            return "fails";
        default:
            return "undecided";
    }
}

}  // namespace gsr
