#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "auxfun.hpp"
#include "cball.hpp"
#include "constants.hpp"
#include "errors.hpp"
#include "gs_instance.hpp"
#include "number_field.hpp"
#include "real_interval.hpp"

namespace gsr {

namespace detail_analytic {

// ball around i*t for a real interval t
inline CBall imag_ball(const RInterval& t, mpfr_prec_t prec) {
    CBall b(prec);
    MF m = t.mid();
    mpfr_set(b.im.p(), m.p(), MPFR_RNDN);
    if (mpfr_cmp(b.im.p(), m.p()) != 0) b.add_ulp(b.im);
    MF t1(CBall::RADP), t2(CBall::RADP);
    mpfr_sub(t1.p(), t.hi.p(), m.p(), MPFR_RNDU);
    mpfr_sub(t2.p(), m.p(), t.lo.p(), MPFR_RNDU);
    mpfr_max(t1.p(), t1.p(), t2.p(), MPFR_RNDU);
    b.grow_rad(t1);
    return b;
}

// point on the circle |z| = radius at angle theta
inline CBall circle_point(const RInterval& radius, const RInterval& theta, mpfr_prec_t prec) {
    return CBall::from_rinterval(radius, prec) * imag_ball(theta, prec).exp_();
}

inline MF hi_as_rad(const RInterval& iv) {
    MF t(CBall::RADP);
    mpfr_set(t.p(), iv.hi.p(), MPFR_RNDU);
    return t;
}

}  // namespace detail_analytic

// Embedded data for R(z) = sum_t sigma(eta_t) e^{rho_t z} at one precision.
struct REvaluator {
    CBall theta;               // embedding of the field generator
    CBall log_alpha;           // principal branch
    std::vector<CBall> coeff;  // sigma(eta_t)
    std::vector<CBall> rho;    // (a + b sigma(beta)) log sigma(alpha)
};

inline REvaluator make_R_evaluator(const GSInstance& inst, const AuxParams& params,
                                   const std::vector<NFElement>& eta, mpfr_prec_t prec) {
    if (eta.size() != params.t) throw ShapeError("eta length must equal t");
    const NumberField& F = inst.field;
    REvaluator ev;
    ev.theta = prec <= F.working_precision ? F.embeddings[inst.sigma_index]
                                           : F.refined_embeddings(prec)[inst.sigma_index];
    CBall sa = F.eval_embedding(inst.alpha, ev.theta);
    CBall sb = F.eval_embedding(inst.beta, ev.theta);
    ev.log_alpha = sa.log_();
    ev.coeff.reserve(params.t);
    ev.rho.reserve(params.t);
    for (size_t col = 0; col < params.t; ++col) {
        auto [a, b] = params.col_ab(col);
        CBall ab = CBall::from_real_rat(BigRat(static_cast<long>(a)), prec) +
                   sb.mul_rat(BigRat(static_cast<long>(b)));
        ev.rho.push_back(ab * ev.log_alpha);
        ev.coeff.push_back(F.eval_embedding(eta[col], ev.theta));
    }
    return ev;
}

inline CBall eval_R_derivative(const REvaluator& ev, size_t k, const CBall& z) {
    CBall s(z.prec());
    for (size_t t = 0; t < ev.coeff.size(); ++t)
        s = s + ev.coeff[t] * ev.rho[t].pow_ui(k) * (ev.rho[t] * z).exp_();
    return s;
}

inline CBall eval_R_derivative(const GSInstance& inst, const AuxParams& params,
                               const std::vector<NFElement>& eta, size_t k, const CBall& z,
                               mpfr_prec_t prec) {
    return eval_R_derivative(make_R_evaluator(inst, params, eta, prec), k, z);
}

// S(z) = r! R(z) (z-l0)^{-r} prod_{k != l0} ((l0-k)/(z-k))^r, the product form
// valid away from the poles 1..m.
inline CBall eval_S_on_contour(const GSInstance& inst, const AuxParams& params, const REvaluator& ev,
                               const RhoWitness& w, const CBall& z) {
    (void)inst;
    const mpfr_prec_t prec = z.prec();
    CBall Rz = eval_R_derivative(ev, 0, z);
    if (w.r == 0) return Rz;  // empty powers: S = R
    if (w.l0 < 1 || w.l0 > params.m) throw ShapeError("witness index out of range");

    std::vector<CBall> diff(params.m + 1, CBall(prec));
    for (size_t k = 1; k <= params.m; ++k) {
        diff[k] = z - CBall::from_real_rat(BigRat(static_cast<long>(k)), prec);
        if (diff[k].abs_().lo.sgn() <= 0)
            throw PoleProximity("evaluation ball touches the pole at z = " + std::to_string(k));
    }

    BigInt fac;
    mpz_fac_ui(fac.get_mpz_t(), static_cast<unsigned long>(w.r));
    BigRat scale(fac);
    for (size_t k = 1; k <= params.m; ++k) {
        if (k == w.l0) continue;
        BigInt d(static_cast<long>(w.l0) - static_cast<long>(k));
        BigInt dp;
        mpz_pow_ui(dp.get_mpz_t(), d.get_mpz_t(), w.r);
        scale *= BigRat(dp);
    }

    CBall val = Rz.mul_rat(scale, prec);
    for (size_t k = 1; k <= params.m; ++k) val = val * diff[k].inv().pow_ui(w.r);
    return val;
}

inline CBall eval_S_on_contour(const GSInstance& inst, const AuxParams& params,
                               const std::vector<NFElement>& eta, const RhoWitness& w, const CBall& z,
                               mpfr_prec_t prec) {
    return eval_S_on_contour(inst, params, make_R_evaluator(inst, params, eta, prec), w, z);
}

// Circle |z| = m(1 + r/q) centered at the origin; all poles 1..m lie strictly
// inside whenever r >= 1 (for r = 0 the integrand is entire and the circle
// degenerates to |z| = m).
struct Contour {
    BigRat radius_exact;
    RInterval radius;
    size_t subdivision = 256;
};

inline Contour make_contour(const AuxParams& params, size_t r, mpfr_prec_t prec, size_t subdivision = 256) {
    Contour c;
    c.radius_exact = make_rat(static_cast<long>(params.m) * static_cast<long>(params.q + r),
                              static_cast<long>(params.q));
    c.radius = RInterval::from_rat(c.radius_exact, prec);
    c.subdivision = subdivision;
    if (r >= 1 && c.radius_exact <= static_cast<long>(params.m))
        throw ParamError("contour radius must exceed m");
    return c;
}

using ContourFn = std::function<CBall(const CBall&)>;

// (1/2pi i) contour integral of f(z)/(z-w) over |z| = radius, for f holomorphic
// on a closed annulus around the circle (w and any other poles strictly inside
// the inner radius).  Equally spaced nodes give the trapezoid value T_N; since
// the Fourier coefficients of g(theta) = f(z(theta)) z(theta)/(z(theta)-w) decay
// as |c_k| <= M e^{-a|k|} for |Im theta| <= a, the discarded tail is at most
// 2M/(e^{aN}-1).  M is bounded by ball evaluation over an annulus cover whose
// half-width a shrinks until every patch clears the poles.  target_width <= 0
// asks for a width small relative to the result's magnitude.
inline CBall contour_integral(const ContourFn& f, const CBall& w, const Contour& contour,
                              double target_width, mpfr_prec_t prec) {
    const RInterval R = RInterval::from_rat(contour.radius_exact, prec);
    MF wabs = w.abs_().hi;
    if (mpfr_cmp(wabs.p(), R.lo.p()) >= 0) throw ParamError("pole must lie strictly inside the contour");

    const RInterval one = RInterval::from_long(1, prec);
    const RInterval api = RInterval::pi(prec);

    double a = 0.5;
    {
        double rlo = mpfr_get_d(R.lo.p(), MPFR_RNDD);
        double wv = mpfr_get_d(wabs.p(), MPFR_RNDU);
        if (wv > 0) a = std::min(a, 0.5 * std::log(rlo / wv));
    }

    const size_t K = 64;  // annulus cover patches
    MF Mbound(64);
    BigRat a_rat;
    for (int shrink = 0;; ++shrink) {
        if (shrink > 24 || a <= 0) throw WidthNotReached("no analyticity margin around the contour");
        a_rat = BigRat(a);  // dyadic, exact
        RInterval aiv = RInterval::from_rat(a_rat, prec);
        RInterval ea = exp_(aiv);
        RInterval infl = R * (ea - one) + R * ea * api / RInterval::from_long(static_cast<long>(K), prec);
        bool ok = true;
        MF mb(64);
        try {
            for (size_t j = 0; j < K && ok; ++j) {
                RInterval theta = api * RInterval::from_rat(make_rat(2 * static_cast<long>(j) + 1,
                                                                     static_cast<long>(K)), prec);
                CBall patch = detail_analytic::circle_point(R, theta, prec);
                patch.grow_rad(detail_analytic::hi_as_rad(infl));
                CBall g = f(patch) * patch * (patch - w).inv();
                MF u = g.abs_().hi;
                if (!mpfr_number_p(u.p()))
                    ok = false;
                else
                    mpfr_max(mb.p(), mb.p(), u.p(), MPFR_RNDU);
            }
        } catch (const PrecisionExhausted&) {
            ok = false;
        } catch (const PoleProximity&) {
            ok = false;
        }
        if (ok) {
            Mbound = mb;
            break;
        }
        a *= 0.5;
    }

    const RInterval Miv = RInterval::exact(Mbound);
    const RInterval two = RInterval::from_long(2, prec);
    size_t N = std::max<size_t>(contour.subdivision, 16);
    for (;;) {
        CBall sum(prec);
        for (size_t j = 0; j < N; ++j) {
            RInterval theta = api * RInterval::from_rat(make_rat(2 * static_cast<long>(j),
                                                                 static_cast<long>(N)), prec);
            CBall zj = detail_analytic::circle_point(R, theta, prec);
            sum = sum + f(zj) * zj * (zj - w).inv();
        }
        CBall result = sum.mul_rat(make_rat(1, static_cast<long>(N)), prec);
        BigRat aN = a_rat * static_cast<long>(N);
        RInterval tail = (two * Miv) / (exp_(RInterval::from_rat(aN, prec)) - one);
        result.grow_rad(detail_analytic::hi_as_rad(tail));

        double width = 2.0 * mpfr_get_d(result.rad.p(), MPFR_RNDU);
        double goal = target_width;
        if (goal <= 0) {
            double mag = mpfr_get_d(result.abs_mid_upper().p(), MPFR_RNDU);
            goal = (mag + 1.0) * std::ldexp(1.0, -static_cast<int>(prec / 3));
        }
        if (width <= goal) return result;
        if (N >= (size_t{1} << 17))
            throw WidthNotReached("contour subdivision limit hit at width " + std::to_string(width));
        N *= 2;
    }
}

inline CBall contour_integral(const ContourFn& f, long l0, const Contour& contour, double target_width,
                              mpfr_prec_t prec) {
    return contour_integral(f, CBall::from_real_rat(BigRat(l0), prec), contour, target_width, prec);
}

struct Eq7Report {
    CBall exact_rho;     // sigma(rho) from the exact witness
    CBall integral_rho;  // (log alpha)^{-r} (1/2pi i) contour integral of S(z)/(z-l0)
    bool overlap = false;
    double width_exact = 0;
    double width_integral = 0;
    double width_combined = 0;
};

// Validates rho = (log alpha)^{-r} (1/2pi i) contour integral of S(z)/(z-l0)
// on instances where gamma = alpha^beta holds exactly, so the analytic and
// algebraic values coincide.
inline Eq7Report validate_eq7_synthetic(const GSInstance& inst, const AuxParams& params,
                                        const std::vector<NFElement>& eta, const RhoWitness& w,
                                        mpfr_prec_t prec) {
    if (params.n == 0) throw ParamError("n must be positive");
    if (inst.mode != GSMode::synthetic) throw ParamError("eq7 validation requires a synthetic instance");
    REvaluator ev = make_R_evaluator(inst, params, eta, prec);
    Contour C = make_contour(params, w.r, prec);
    auto f = [&](const CBall& z) { return eval_S_on_contour(inst, params, ev, w, z); };
    double target = std::ldexp(1.0, -static_cast<int>(prec / 2));
    CBall I = contour_integral(f, static_cast<long>(w.l0), C, target, prec);

    Eq7Report rep;
    rep.exact_rho = inst.field.eval_embedding(w.rho, ev.theta);
    rep.integral_rho = ev.log_alpha.pow_ui(w.r).inv() * I;
    rep.overlap = rep.exact_rho.overlaps(rep.integral_rho);
    rep.width_exact = 2.0 * mpfr_get_d(rep.exact_rho.rad.p(), MPFR_RNDU);
    rep.width_integral = 2.0 * mpfr_get_d(rep.integral_rho.rad.p(), MPFR_RNDU);
    rep.width_combined = rep.width_exact + rep.width_integral;
    return rep;
}

struct BoundComparison {
    RInterval lhs_log10;
    RInterval rhs_log10;
    Cert holds = Cert::undecided;
};

struct BoundChainReport {
    BoundComparison r_vs_siegel;     // max|R| vs t c4^n n^{(n+1)/2} c9^{r+q}
    BoundComparison r_vs_growth;     // max|R| vs c10^r r^{(r+3)/2}
    BigRat min_separation;           // exact min over the circle of |z-k|, k = 1..m
    BigRat required_separation;      // m r / q
    bool separation_ok = false;
    BoundComparison product_vs_c11;  // pole product vs c11^r (q/r)^{mr}
    std::string product_bound_derivation;
    BoundComparison s_vs_c12;        // max|S| vs c12^r r^{(r(3-m)+3)/2}
    BoundComparison rho_vs_c13;      // contour |rho| vs c13^r r^{(r(3-m)+3)/2}
    CBall rho_contour;
};

namespace detail_analytic {

inline std::vector<CBall> contour_arc_hulls(const Contour& C, size_t arcs, mpfr_prec_t prec) {
    const RInterval R = RInterval::from_rat(C.radius_exact, prec);
    const RInterval api = RInterval::pi(prec);
    RInterval slack = R * api / RInterval::from_long(static_cast<long>(arcs), prec);
    std::vector<CBall> out;
    out.reserve(arcs);
    for (size_t j = 0; j < arcs; ++j) {
        RInterval theta = api * RInterval::from_rat(make_rat(2 * static_cast<long>(j) + 1,
                                                             static_cast<long>(arcs)), prec);
        CBall c = circle_point(R, theta, prec);
        c.grow_rad(hi_as_rad(slack));
        out.push_back(c);
    }
    return out;
}

// log10 of a nonnegative interval whose lower end may touch zero; the upper
// endpoint stays rigorous, which is all the <= comparisons use.
inline RInterval log10_upper_safe(RInterval v, mpfr_prec_t prec) {
    MF floor_(prec);
    mpfr_set_ui_2exp(floor_.p(), 1, -8 * static_cast<long>(prec), MPFR_RNDD);
    if (mpfr_cmp(v.lo.p(), floor_.p()) < 0) mpfr_set(v.lo.p(), floor_.p(), MPFR_RNDD);
    if (mpfr_cmp(v.hi.p(), v.lo.p()) < 0) mpfr_set(v.hi.p(), v.lo.p(), MPFR_RNDU);
    return log10_(v);
}

}  // namespace detail_analytic

// Step-7 bound chain, log10 throughout: |R| on the contour against the two
// explicit bounds, the exact pole separation, the pole-product bound, |S|, and
// the contour-based |rho| against the final decay bound.
inline BoundChainReport bound_chain_report(const GSInstance& inst, const AuxParams& params,
                                           const std::vector<NFElement>& eta, const RhoWitness& w,
                                           const ConstantsTable& T, mpfr_prec_t prec) {
    const long m = static_cast<long>(params.m);
    const long r = static_cast<long>(w.r);
    const long q = static_cast<long>(params.q);
    auto fl = [&](long v) { return RInterval::from_long(v, prec); };
    auto flog = [&](long v) { return log10_(fl(v)); };

    REvaluator ev = make_R_evaluator(inst, params, eta, prec);
    Contour C = make_contour(params, w.r, prec);
    const size_t arcs = std::max<size_t>(C.subdivision, 64);
    auto hulls = detail_analytic::contour_arc_hulls(C, arcs, prec);

    BoundChainReport rep;

    // (i) max |R| over the contour
    MF maxR(64), maxS(64);
    for (const CBall& hull : hulls) {
        CBall Rz = eval_R_derivative(ev, 0, hull);
        MF u = Rz.abs_().hi;
        mpfr_max(maxR.p(), maxR.p(), u.p(), MPFR_RNDU);
        CBall Sz = eval_S_on_contour(inst, params, ev, w, hull);
        u = Sz.abs_().hi;
        mpfr_max(maxS.p(), maxS.p(), u.p(), MPFR_RNDU);
    }
    rep.r_vs_siegel.lhs_log10 = detail_analytic::log10_upper_safe(RInterval::exact(maxR), prec);
    rep.r_vs_siegel.rhs_log10 = flog(static_cast<long>(params.t)) +
                                fl(static_cast<long>(params.n)) * T.at("c4").log10 +
                                RInterval::from_rat(make_rat(static_cast<long>(params.n) + 1, 2), prec) *
                                    flog(static_cast<long>(params.n)) +
                                fl(r + q) * T.at("c9").log10;
    rep.r_vs_siegel.holds = cert_le(rep.r_vs_siegel.lhs_log10, rep.r_vs_siegel.rhs_log10);

    RInterval lg_r = w.r >= 1 ? flog(r) : RInterval(prec);
    rep.r_vs_growth.lhs_log10 = rep.r_vs_siegel.lhs_log10;
    rep.r_vs_growth.rhs_log10 = fl(r) * T.at("c10").log10 +
                                RInterval::from_rat(make_rat(r + 3, 2), prec) * lg_r;
    rep.r_vs_growth.holds = cert_le(rep.r_vs_growth.lhs_log10, rep.r_vs_growth.rhs_log10);

    // (ii) every contour point satisfies |z-k| >= |z|-k = radius-k, exactly
    rep.min_separation = C.radius_exact - m;
    rep.required_separation = make_rat(m * r, q);
    rep.separation_ok = rep.min_separation >= rep.required_separation;

    // (iii) max of |z-l0|^{-r} prod_{k != l0} |(l0-k)/(z-k)|^r via the exact
    // radial separations
    rep.product_bound_derivation =
        "|z-k| >= mr/q and |l0-k| <= m give |(z-l0)^-r prod((l0-k)/(z-k))^r|"
        " <= (q/(mr))^r (mq/(mr))^((m-1)r) = (1/m)^r (q/r)^(mr)"
        " <= (q/r)^(mr), so the constant multiplying (q/r)^(mr) is 1";
    if (w.r == 0) {
        rep.product_vs_c11.lhs_log10 = RInterval(prec);
        rep.product_vs_c11.rhs_log10 = RInterval(prec);
    } else {
        RInterval lhs = RInterval(prec) - fl(r) * log10_(RInterval::from_rat(
                                              C.radius_exact - static_cast<long>(w.l0), prec));
        for (size_t k = 1; k <= params.m; ++k) {
            if (k == w.l0) continue;
            long dk = w.l0 > k ? static_cast<long>(w.l0 - k) : static_cast<long>(k - w.l0);
            lhs = lhs + fl(r) * log10_(RInterval::from_rat(
                            make_rat(dk, 1) / (C.radius_exact - static_cast<long>(k)), prec));
        }
        rep.product_vs_c11.lhs_log10 = lhs;
        rep.product_vs_c11.rhs_log10 = fl(r) * T.at("c11").log10 +
                                       fl(m * r) * log10_(RInterval::from_rat(make_rat(q, r), prec));
    }
    rep.product_vs_c11.holds = cert_le(rep.product_vs_c11.lhs_log10, rep.product_vs_c11.rhs_log10);

    // (iv) max |S| over the contour
    RInterval tail_exp = RInterval::from_rat(make_rat(r * (3 - m) + 3, 2), prec) * lg_r;
    rep.s_vs_c12.lhs_log10 = detail_analytic::log10_upper_safe(RInterval::exact(maxS), prec);
    rep.s_vs_c12.rhs_log10 = fl(r) * T.at("c12").log10 + tail_exp;
    rep.s_vs_c12.holds = cert_le(rep.s_vs_c12.lhs_log10, rep.s_vs_c12.rhs_log10);

    // (v) contour-based |rho| against the decay bound
    auto f = [&](const CBall& z) { return eval_S_on_contour(inst, params, ev, w, z); };
    CBall I = contour_integral(f, static_cast<long>(w.l0), C, -1.0, prec);
    rep.rho_contour = ev.log_alpha.pow_ui(w.r).inv() * I;
    rep.rho_vs_c13.lhs_log10 = detail_analytic::log10_upper_safe(rep.rho_contour.abs_(), prec);
    rep.rho_vs_c13.rhs_log10 = fl(r) * T.at("c13").log10 + tail_exp;
    rep.rho_vs_c13.holds = cert_le(rep.rho_vs_c13.lhs_log10, rep.rho_vs_c13.rhs_log10);
    return rep;
}

}  // namespace gsr
