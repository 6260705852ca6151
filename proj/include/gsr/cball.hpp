#pragma once

#include <algorithm>

#include "gsr/bigint.hpp"
#include "gsr/errors.hpp"
#include "gsr/mpfloat.hpp"
#include "gsr/real_interval.hpp"

namespace gsr {

// Complex ball: midpoint at working precision, radius a 32-bit upper bound.
// Every operation keeps the true value inside the ball; midpoint rounding
// is absorbed into the radius as whole-ulp slack.
class CBall {
  public:
    static constexpr mpfr_prec_t RADP = 32;

    MF re, im;  // midpoint
    MF rad;     // radius, >= 0, finite

    explicit CBall(mpfr_prec_t prec = 64) : re(prec), im(prec), rad(RADP) {}

    mpfr_prec_t prec() const { return re.prec(); }

    static CBall from_rat(const BigRat& r, const BigRat& i, mpfr_prec_t prec) {
        CBall b(prec);
        int tr = mpfr_set_q(b.re.p(), r.get_mpq_t(), MPFR_RNDN);
        int ti = mpfr_set_q(b.im.p(), i.get_mpq_t(), MPFR_RNDN);
        if (tr != 0) b.add_ulp(b.re);
        if (ti != 0) b.add_ulp(b.im);
        return b;
    }
    static CBall from_real_rat(const BigRat& r, mpfr_prec_t prec) {
        return from_rat(r, BigRat(0), prec);
    }
    static CBall from_rinterval(const RInterval& iv, mpfr_prec_t prec) {
        CBall b(prec);
        MF m = iv.mid();
        mpfr_set(b.re.p(), m.p(), MPFR_RNDN);
        if (mpfr_cmp(b.re.p(), m.p()) != 0) b.add_ulp(b.re);
        MF t1(RADP), t2(RADP);
        mpfr_sub(t1.p(), iv.hi.p(), m.p(), MPFR_RNDU);
        mpfr_sub(t2.p(), m.p(), iv.lo.p(), MPFR_RNDU);
        mpfr_max(t1.p(), t1.p(), t2.p(), MPFR_RNDU);
        mpfr_add(b.rad.p(), b.rad.p(), t1.p(), MPFR_RNDU);
        return b;
    }
    // exact midpoint, explicit radius
    static CBall disk(const MF& c_re, const MF& c_im, const MF& radius, mpfr_prec_t prec) {
        CBall b(prec);
        mpfr_set(b.re.p(), c_re.p(), MPFR_RNDN);
        mpfr_set(b.im.p(), c_im.p(), MPFR_RNDN);
        mpfr_set(b.rad.p(), radius.p(), MPFR_RNDU);
        if (mpfr_cmp(b.re.p(), c_re.p()) != 0) b.add_ulp(b.re);
        if (mpfr_cmp(b.im.p(), c_im.p()) != 0) b.add_ulp(b.im);
        if (b.rad.sgn() < 0) throw ParamError("negative ball radius");
        return b;
    }

    void add_ulp(const MF& v) {
        if (v.is_zero()) return;
        MF t(RADP);
        mpfr_set_ui_2exp(t.p(), 1, mpfr_get_exp(v.p()) - v.prec(), MPFR_RNDU);
        mpfr_add(rad.p(), rad.p(), t.p(), MPFR_RNDU);
    }
    void grow_rad(const MF& extra) {
        mpfr_add(rad.p(), rad.p(), extra.p(), MPFR_RNDU);
    }

    bool is_exact_zero() const { return re.is_zero() && im.is_zero() && rad.is_zero(); }

    // ---- exact rational predicates (midpoints and radii are dyadic) ----

    static BigRat sq_dist(const CBall& a, const CBall& b) {
        BigRat dr = a.re.to_rat() - b.re.to_rat();
        BigRat di = a.im.to_rat() - b.im.to_rat();
        return dr * dr + di * di;
    }
    bool overlaps(const CBall& o) const {
        BigRat s = rad.to_rat() + o.rad.to_rat();
        return sq_dist(*this, o) <= s * s;
    }
    bool disjoint_from(const CBall& o) const { return !overlaps(o); }
    bool strictly_inside(const CBall& outer) const {
        BigRat s = outer.rad.to_rat() - rad.to_rat();
        if (s <= 0) return false;
        return sq_dist(*this, outer) < s * s;
    }
    bool contains_point(const BigRat& pr, const BigRat& pi) const {
        BigRat dr = re.to_rat() - pr;
        BigRat di = im.to_rat() - pi;
        BigRat r = rad.to_rat();
        return dr * dr + di * di <= r * r;
    }
    bool contains_zero() const { return contains_point(BigRat(0), BigRat(0)); }

    // ---- projections ----

    RInterval real_part() const {
        RInterval r(prec());
        mpfr_sub(r.lo.p(), re.p(), rad.p(), MPFR_RNDD);
        mpfr_add(r.hi.p(), re.p(), rad.p(), MPFR_RNDU);
        return r;
    }
    RInterval imag_part() const {
        RInterval r(prec());
        mpfr_sub(r.lo.p(), im.p(), rad.p(), MPFR_RNDD);
        mpfr_add(r.hi.p(), im.p(), rad.p(), MPFR_RNDU);
        return r;
    }
    RInterval abs_() const {
        RInterval r(prec());
        mpfr_hypot(r.lo.p(), re.p(), im.p(), MPFR_RNDD);
        mpfr_sub(r.lo.p(), r.lo.p(), rad.p(), MPFR_RNDD);
        if (r.lo.sgn() < 0) mpfr_set_zero(r.lo.p(), 1);
        mpfr_hypot(r.hi.p(), re.p(), im.p(), MPFR_RNDU);
        mpfr_add(r.hi.p(), r.hi.p(), rad.p(), MPFR_RNDU);
        return r;
    }
    // lower bound on |midpoint|, rounded down to radius precision
    MF abs_mid_lower() const {
        MF t(RADP);
        mpfr_hypot(t.p(), re.p(), im.p(), MPFR_RNDD);
        return t;
    }
    MF abs_mid_upper() const {
        MF t(RADP);
        mpfr_hypot(t.p(), re.p(), im.p(), MPFR_RNDU);
        return t;
    }

    // ---- arithmetic ----

    CBall neg() const {
        CBall r(prec());
        mpfr_neg(r.re.p(), re.p(), MPFR_RNDN);
        mpfr_neg(r.im.p(), im.p(), MPFR_RNDN);
        mpfr_set(r.rad.p(), rad.p(), MPFR_RNDU);
        return r;
    }
    CBall conj() const {
        CBall r = *this;
        mpfr_neg(r.im.p(), r.im.p(), MPFR_RNDN);
        return r;
    }

    friend CBall operator+(const CBall& a, const CBall& b) {
        CBall r(std::max(a.prec(), b.prec()));
        int tr = mpfr_add(r.re.p(), a.re.p(), b.re.p(), MPFR_RNDN);
        int ti = mpfr_add(r.im.p(), a.im.p(), b.im.p(), MPFR_RNDN);
        mpfr_add(r.rad.p(), a.rad.p(), b.rad.p(), MPFR_RNDU);
        if (tr != 0) r.add_ulp(r.re);
        if (ti != 0) r.add_ulp(r.im);
        return r;
    }
    friend CBall operator-(const CBall& a, const CBall& b) {
        CBall r(std::max(a.prec(), b.prec()));
        int tr = mpfr_sub(r.re.p(), a.re.p(), b.re.p(), MPFR_RNDN);
        int ti = mpfr_sub(r.im.p(), a.im.p(), b.im.p(), MPFR_RNDN);
        mpfr_add(r.rad.p(), a.rad.p(), b.rad.p(), MPFR_RNDU);
        if (tr != 0) r.add_ulp(r.re);
        if (ti != 0) r.add_ulp(r.im);
        return r;
    }
    friend CBall operator*(const CBall& a, const CBall& b) {
        CBall r(std::max(a.prec(), b.prec()));
        int tr = mpfr_fmms(r.re.p(), a.re.p(), b.re.p(), a.im.p(), b.im.p(), MPFR_RNDN);
        int ti = mpfr_fmma(r.im.p(), a.re.p(), b.im.p(), a.im.p(), b.re.p(), MPFR_RNDN);
        MF A = a.abs_mid_upper(), B = b.abs_mid_upper(), t(RADP);
        mpfr_mul(t.p(), A.p(), b.rad.p(), MPFR_RNDU);
        mpfr_add(r.rad.p(), r.rad.p(), t.p(), MPFR_RNDU);
        mpfr_mul(t.p(), B.p(), a.rad.p(), MPFR_RNDU);
        mpfr_add(r.rad.p(), r.rad.p(), t.p(), MPFR_RNDU);
        mpfr_mul(t.p(), a.rad.p(), b.rad.p(), MPFR_RNDU);
        mpfr_add(r.rad.p(), r.rad.p(), t.p(), MPFR_RNDU);
        if (tr != 0) r.add_ulp(r.re);
        if (ti != 0) r.add_ulp(r.im);
        return r;
    }

    CBall inv() const {
        mpfr_prec_t p = prec();
        MF ay_lo = abs_mid_lower();
        if (mpfr_cmp(ay_lo.p(), rad.p()) <= 0)
            throw PrecisionExhausted("ball inversion: ball may contain zero");
        CBall r(p);
        {
            MF t(p + 32);
            mpfr_fmma(t.p(), re.p(), re.p(), im.p(), im.p(), MPFR_RNDN);
            mpfr_div(r.re.p(), re.p(), t.p(), MPFR_RNDN);
            mpfr_div(r.im.p(), im.p(), t.p(), MPFR_RNDN);
            mpfr_neg(r.im.p(), r.im.p(), MPFR_RNDN);
        }
        // residual |m*y - 1| bounds |m - 1/y| * |y|
        MF vlo(p + 64), vhi(p + 64), rr(RADP), ri(RADP), t(RADP);
        auto abs_upper = [](const MF& lo_v, const MF& hi_v) {
            MF u(RADP);
            if (lo_v.sgn() >= 0)
                mpfr_set(u.p(), hi_v.p(), MPFR_RNDU);
            else if (hi_v.sgn() <= 0)
                mpfr_neg(u.p(), lo_v.p(), MPFR_RNDU);
            else {
                MF a(RADP), b(RADP);
                mpfr_neg(a.p(), lo_v.p(), MPFR_RNDU);
                mpfr_set(b.p(), hi_v.p(), MPFR_RNDU);
                mpfr_max(u.p(), a.p(), b.p(), MPFR_RNDU);
            }
            return u;
        };
        mpfr_fmms(vlo.p(), r.re.p(), re.p(), r.im.p(), im.p(), MPFR_RNDD);
        mpfr_sub_ui(vlo.p(), vlo.p(), 1, MPFR_RNDD);
        mpfr_fmms(vhi.p(), r.re.p(), re.p(), r.im.p(), im.p(), MPFR_RNDU);
        mpfr_sub_ui(vhi.p(), vhi.p(), 1, MPFR_RNDU);
        rr = abs_upper(vlo, vhi);
        mpfr_fmma(vlo.p(), r.re.p(), im.p(), r.im.p(), re.p(), MPFR_RNDD);
        mpfr_fmma(vhi.p(), r.re.p(), im.p(), r.im.p(), re.p(), MPFR_RNDU);
        ri = abs_upper(vlo, vhi);
        MF res(RADP);
        mpfr_hypot(res.p(), rr.p(), ri.p(), MPFR_RNDU);
        mpfr_div(res.p(), res.p(), ay_lo.p(), MPFR_RNDU);
        // propagation: |1/w - 1/y| <= rad / (|y| (|y| - rad))
        MF den(RADP);
        mpfr_sub(den.p(), ay_lo.p(), rad.p(), MPFR_RNDD);
        mpfr_mul(den.p(), den.p(), ay_lo.p(), MPFR_RNDD);
        mpfr_div(t.p(), rad.p(), den.p(), MPFR_RNDU);
        mpfr_add(r.rad.p(), res.p(), t.p(), MPFR_RNDU);
        return r;
    }

    friend CBall operator/(const CBall& a, const CBall& b) { return a * b.inv(); }

    CBall mul_rat(const BigRat& s, mpfr_prec_t p = 0) const {
        return *this * from_real_rat(s, p ? p : prec());
    }

    CBall pow_ui(unsigned long n) const {
        CBall base = *this;
        CBall acc = from_real_rat(BigRat(1), prec());
        while (n > 0) {
            if (n & 1) acc = acc * base;
            n >>= 1;
            if (n) base = base * base;
        }
        return acc;
    }

    // principal-branch exp: |e^w - e^m| <= |e^m| (e^rad - 1)
    CBall exp_() const {
        mpfr_prec_t p = prec();
        CBall r(p);
        MF er(p), s(p), c(p);
        mpfr_exp(er.p(), re.p(), MPFR_RNDN);
        mpfr_sin_cos(s.p(), c.p(), im.p(), MPFR_RNDN);
        mpfr_mul(r.re.p(), er.p(), c.p(), MPFR_RNDN);
        mpfr_mul(r.im.p(), er.p(), s.p(), MPFR_RNDN);
        MF hyp(RADP), mid_err(RADP), t(RADP);
        mpfr_hypot(hyp.p(), r.re.p(), r.im.p(), MPFR_RNDU);
        mpfr_mul_2si(mid_err.p(), hyp.p(), 3 - static_cast<long>(p), MPFR_RNDU);
        mpfr_expm1(t.p(), rad.p(), MPFR_RNDU);
        MF scale(RADP);
        mpfr_add(scale.p(), hyp.p(), mid_err.p(), MPFR_RNDU);
        mpfr_mul(t.p(), t.p(), scale.p(), MPFR_RNDU);
        mpfr_add(r.rad.p(), t.p(), mid_err.p(), MPFR_RNDU);
        return r;
    }

    // principal-branch log; the ball must stay off (-inf, 0]
    CBall log_() const {
        mpfr_prec_t p = prec();
        MF ay_lo = abs_mid_lower();
        if (mpfr_cmp(ay_lo.p(), rad.p()) <= 0)
            throw PrecisionExhausted("ball log: ball may contain zero");
        bool off_axis = mpfr_cmpabs(im.p(), rad.p()) > 0;
        bool right_half = re.sgn() > 0 && mpfr_cmp(re.p(), rad.p()) > 0;
        if (!off_axis && !right_half)
            throw PrecisionExhausted("ball log: ball may touch the branch cut");
        CBall r(p);
        MF h(p + 32);
        mpfr_hypot(h.p(), re.p(), im.p(), MPFR_RNDN);
        mpfr_log(r.re.p(), h.p(), MPFR_RNDN);
        mpfr_atan2(r.im.p(), im.p(), re.p(), MPFR_RNDN);
        MF err(RADP), t(RADP);
        mpfr_set_ui_2exp(err.p(), 1, -static_cast<long>(p) - 31, MPFR_RNDU);
        mpfr_add(r.rad.p(), r.rad.p(), err.p(), MPFR_RNDU);
        r.add_ulp(r.re);
        r.add_ulp(r.im);
        MF den(RADP);
        mpfr_sub(den.p(), ay_lo.p(), rad.p(), MPFR_RNDD);
        mpfr_div(t.p(), rad.p(), den.p(), MPFR_RNDU);
        mpfr_add(r.rad.p(), r.rad.p(), t.p(), MPFR_RNDU);
        return r;
    }

    // disk containing the convex hull of two balls
    CBall hull_with(const CBall& o) const {
        mpfr_prec_t p = std::max(prec(), o.prec());
        CBall r(p);
        mpfr_add(r.re.p(), re.p(), o.re.p(), MPFR_RNDN);
        mpfr_div_2ui(r.re.p(), r.re.p(), 1, MPFR_RNDN);
        mpfr_add(r.im.p(), im.p(), o.im.p(), MPFR_RNDN);
        mpfr_div_2ui(r.im.p(), r.im.p(), 1, MPFR_RNDN);
        MF dr(RADP), di(RADP), d(RADP);
        mpfr_sub(dr.p(), re.p(), o.re.p(), MPFR_RNDA);
        mpfr_sub(di.p(), im.p(), o.im.p(), MPFR_RNDA);
        mpfr_hypot(d.p(), dr.p(), di.p(), MPFR_RNDU);
        mpfr_div_2ui(d.p(), d.p(), 1, MPFR_RNDU);
        mpfr_max(r.rad.p(), rad.p(), o.rad.p(), MPFR_RNDU);
        mpfr_add(r.rad.p(), r.rad.p(), d.p(), MPFR_RNDU);
        r.add_ulp(r.re);
        r.add_ulp(r.im);
        return r;
    }
};

}  // namespace gsr
