#pragma once

#include <map>
#include <string>
#include <utility>

#include "cball.hpp"
#include "errors.hpp"
#include "gs_instance.hpp"
#include "number_field.hpp"
#include "real_interval.hpp"

namespace gsr {

struct ConstantEntry {
    RInterval log10;  // certified enclosure of log10 of the constant
    bool has_exact = false;
    BigRat exact;
    std::string formula;
};

struct ConstantsTable {
    BigInt c_den{1};    // clearing integer of the instance
    BigInt c_basis{1};  // basis-representation constant of the field
    std::map<std::string, ConstantEntry> entries;

    const ConstantEntry& at(const std::string& name) const {
        auto it = entries.find(name);
        if (it == entries.end()) throw ParamError("unknown constant " + name);
        return it->second;
    }
};

namespace detail_constants {

// Both arguments enclose the same real number; the intersection is a valid
// and tighter enclosure.
inline RInterval intersect_enclosures(const RInterval& a, const RInterval& b) {
    RInterval r(std::max(a.prec(), b.prec()));
    mpfr_max(r.lo.p(), a.lo.p(), b.lo.p(), MPFR_RNDD);
    mpfr_min(r.hi.p(), a.hi.p(), b.hi.p(), MPFR_RNDU);
    if (mpfr_cmp(r.lo.p(), r.hi.p()) > 0)
        throw PrecisionExhausted("enclosures of one value do not intersect");
    return r;
}

inline BigRat int_pow_rat(const BigInt& base, unsigned long e) {
    BigInt v;
    mpz_pow_ui(v.get_mpz_t(), base.get_mpz_t(), e);
    return BigRat(v);
}

}  // namespace detail_constants

inline ConstantsTable compute_constants(const GSInstance& inst, const AuxParams& params, mpfr_prec_t prec) {
    using detail_constants::int_pow_rat;
    const NumberField& F = inst.field;
    const long m = static_cast<long>(params.m);
    const long h = static_cast<long>(params.h);

    ConstantsTable T;
    T.c_den = inst.c_den;
    T.c_basis = basis_repr_constant(F);

    RInterval ha = house(F, inst.alpha).enclosure;
    RInterval hb = house(F, inst.beta).enclosure;
    RInterval hg = house(F, inst.gamma).enclosure;

    RInterval one = RInterval::from_long(1, prec);
    RInterval zero(prec);
    auto lg = [](const RInterval& x) { return log10_(x); };
    RInterval half = RInterval::from_rat(make_rat(1, 2), prec);
    RInterval log10e = one / log_(RInterval::from_long(10, prec));

    CBall sa = F.eval_embedding(inst.alpha, inst.sigma_index);
    CBall sb = F.eval_embedding(inst.beta, inst.sigma_index);
    RInterval abs_log_alpha = sa.log_().abs_();
    RInterval abs_sigma_beta = sb.abs_();

    RInterval l_cden = lg(RInterval::from_int(T.c_den, prec));
    RInterval l_beta1 = lg(one + hb);
    RInterval l_alpha = lg(ha);
    RInterval l_gamma = lg(hg);
    RInterval l_2m = lg(RInterval::from_long(2 * m, prec));

    RInterval l2 = RInterval::from_long(2 + 8 * m * m, prec) * l_cden;
    RInterval l3 = l2 + l_beta1 + half * l_2m +
                   zero.max_with(RInterval::from_long(2 * m * m, prec) * (l_alpha + l_gamma));
    // 2m*c_den^2 >= 2, so the max with 1 is always the product
    RInterval l4 = lg(RInterval::from_int(BigInt(2 * m) * T.c_den * T.c_den, prec)) + l3;
    RInterval l5 = RInterval::from_long(h * (1 + 4 * m * m), prec) * lg(RInterval::from_int(T.c_den + 1, prec));
    RInterval l6 = l_cden + l_beta1;

    RInterval cd = RInterval::from_int(T.c_den, prec);
    RInterval lit = cd * (cd * (cd * (ha * (cd * hg))));
    RInterval l7 = detail_constants::intersect_enclosures(
        RInterval::from_long(m, prec) * lg(lit),
        RInterval::from_long(m, prec) * (RInterval::from_long(4, prec) * l_cden + l_alpha + l_gamma));

    RInterval l8 = l6 + half * l_2m + RInterval::from_long(2 * m, prec) * l7 + l4 + l_2m;
    RInterval l9 = (one + abs_sigma_beta) * abs_log_alpha * RInterval::from_long(m, prec) * log10e;
    RInterval l10 = l_2m + l4 + RInterval::from_long(1 + 2 * m, prec) * l9;
    RInterval l11 = zero;
    RInterval l12 = RInterval::from_rat(make_rat(m, 2), prec) * l_2m + l10 + l11;
    RInterval l13 = lg((one / abs_log_alpha + one) * RInterval::from_long(m, prec) *
                       RInterval::from_rat(make_rat(2 * m + 1, m), prec)) +
                    l12;
    RInterval l14 = RInterval::from_long(h - 1, prec) * l8 + l13;
    RInterval l15 = l14 + l5;

    auto put = [&](const std::string& name, RInterval v, std::string formula) {
        ConstantEntry e{std::move(v), false, BigRat(0), std::move(formula)};
        if (!mpfr_number_p(e.log10.hi.p())) throw PrecisionExhausted("constant " + name + " not finite");
        T.entries.emplace(name, std::move(e));
    };
    auto put_exact = [&](const std::string& name, const BigRat& x) {
        ConstantEntry& e = T.entries.at(name);
        e.has_exact = true;
        e.exact = x;
    };

    put("c2", l2, "c_den^(2+8m^2)");
    put("c3", l3, "c2*(1+house(beta))*sqrt(2m)*max{1, house(alpha)^(2m^2)*house(gamma)^(2m^2)}");
    put("c4", l4, "max{1, 2m*c_den^2}*c3");
    put("c5", l5, "(c_den+1)^(h*(1+4m^2))");
    put("c6", l6, "c_den*(1+house(beta))");
    put("c7", l7,
        "(c_den*(c_den*(c_den*(house(alpha)*(c_den*house(gamma))))))^m = (c_den^4*house(alpha)*house(gamma))^m");
    put("c8", l8, "c6*sqrt(2m)*c7^(2m)*c4*2m");
    put("c9", l9, "exp((1+|sigma(beta)|)*|log sigma(alpha)|*m); outer bars |1+|.|| vacuous for a real value >= 0");
    put("c10", l10, "2m*c4*c9^(1+2m)");
    put("c11", l11, "1; from |(z-l0)^(-r)*prod((l0-k)/(z-k))^r| <= (1/m)^r*(q/r)^(mr) <= (q/r)^(mr)");
    put("c12", l12, "(2m)^(m/2)*c10*c11");
    put("c13", l13, "(|log sigma(alpha)|^(-1)+1)*m*(2+1/m)*c12");
    put("c14", l14, "c8^(h-1)*c13");
    put("c15", l15, "c14*c5");

    unsigned long e2 = static_cast<unsigned long>(2 + 8 * m * m);
    unsigned long e5 = static_cast<unsigned long>(h * (1 + 4 * m * m));
    BigInt cd1 = T.c_den + 1;
    if (mpz_sizeinbase(T.c_den.get_mpz_t(), 2) * e2 <= 16384) put_exact("c2", int_pow_rat(T.c_den, e2));
    if (mpz_sizeinbase(cd1.get_mpz_t(), 2) * e5 <= 16384) put_exact("c5", int_pow_rat(cd1, e5));
    put_exact("c11", BigRat(1));
    return T;
}

namespace detail_constants {

// Difference function phi(r) = ((r-3h)/2)*ln r - r*ln(c15); the contradiction
// requires phi(r) > 0 from the threshold on.
inline RInterval threshold_phi(const BigInt& r, size_t h, const RInterval& ln_c15, mpfr_prec_t prec) {
    mpfr_prec_t pe = std::max<mpfr_prec_t>(prec, mpz_sizeinbase(r.get_mpz_t(), 2) + 96);
    RInterval fr = RInterval::from_int(r, pe);
    BigRat c = make_rat(r - BigInt(3) * BigInt(static_cast<long>(h)), BigInt(2));
    return RInterval::from_rat(c, pe) * log_(fr) - fr * ln_c15;
}

// phi'(r) = (1/2)*ln r + (r-3h)/(2r) - ln(c15), increasing in r.
inline RInterval threshold_dphi(const BigInt& r, size_t h, const RInterval& ln_c15, mpfr_prec_t prec) {
    mpfr_prec_t pe = std::max<mpfr_prec_t>(prec, mpz_sizeinbase(r.get_mpz_t(), 2) + 96);
    RInterval fr = RInterval::from_int(r, pe);
    BigRat c = make_rat(r - BigInt(3) * BigInt(static_cast<long>(h)), BigInt(2) * r);
    return RInterval::from_rat(make_rat(1, 2), pe) * log_(fr) + RInterval::from_rat(c, pe) - ln_c15;
}

}  // namespace detail_constants

struct ThresholdReport {
    BigInt r_star{1};
    bool no_threshold = false;       // c15 certified below 1
    bool minimal_certified = false;  // difference at r_star - 1 certified nonpositive
    RInterval phi_at_r_star;
    RInterval dphi_at_r_star;
    bool q_required_exact = false;
    BigInt q_required{0};        // populated when representable
    RInterval log10_q_required;  // always populated
    bool n_of_q_ge_r_star = false;
    size_t n_current = 0;
    bool n_current_ge_r_star = false;
};

inline ThresholdReport contradiction_threshold(const ConstantsTable& T, size_t h, size_t m, size_t n,
                                               mpfr_prec_t precision) {
    using detail_constants::threshold_dphi;
    using detail_constants::threshold_phi;
    if (h < 1 || m < 1) throw ParamError("h and m must be positive");
    const RInterval& l15 = T.at("c15").log10;
    RInterval ln10 = log_(RInterval::from_long(10, precision));
    RInterval ln_c15 = l15 * ln10;

    ThresholdReport rep;
    rep.n_current = n;
    rep.phi_at_r_star = RInterval(precision);
    rep.dphi_at_r_star = RInterval(precision);
    rep.log10_q_required = RInterval(precision);

    if (mpfr_sgn(l15.hi.p()) < 0) {
        // c15 < 1 certified: the difference is positive at r = 1 already.
        rep.no_threshold = true;
        rep.r_star = 1;
        rep.phi_at_r_star = threshold_phi(BigInt(1), h, ln_c15, precision);
        rep.dphi_at_r_star = threshold_dphi(BigInt(1), h, ln_c15, precision);
    } else {
        // Sound threshold against the certified upper endpoint of ln(c15): any
        // r passing with the larger constant passes with the true one.
        RInterval ub = RInterval::exact(ln_c15.hi);
        auto pass = [&](const BigInt& r) {
            RInterval p = threshold_phi(r, h, ub, precision);
            RInterval d = threshold_dphi(r, h, ub, precision);
            return mpfr_sgn(p.lo.p()) > 0 && mpfr_sgn(d.lo.p()) > 0;
        };
        BigInt lo(1), hi(2);
        int guard = 0;
        while (!pass(hi)) {
            lo = hi;
            hi *= 2;
            if (++guard > 20000) throw PrecisionExhausted("threshold search did not converge");
        }
        while (hi - lo > 1) {
            BigInt mid = (lo + hi) / 2;
            if (pass(mid))
                hi = mid;
            else
                lo = mid;
        }
        rep.r_star = hi;
        rep.phi_at_r_star = threshold_phi(rep.r_star, h, ub, precision);
        rep.dphi_at_r_star = threshold_dphi(rep.r_star, h, ub, precision);
        // Minimality against the lower endpoint: the true difference at
        // r_star - 1 is at most its value with the smaller constant.
        RInterval lb = RInterval::exact(ln_c15.lo);
        RInterval prev = threshold_phi(rep.r_star - 1, h, lb, precision);
        rep.minimal_certified = mpfr_sgn(prev.hi.p()) <= 0;
    }

    // q_required = 12*m*h*ceil(c15^4), exact below 10^18, else via logs.
    RInterval l15p4 = RInterval::from_long(4, precision) * l15;
    BigInt mh12 = BigInt(12) * BigInt(static_cast<long>(m)) * BigInt(static_cast<long>(h));
    RInterval lg_mh12 = log10_(RInterval::from_int(mh12, precision));
    if (mpfr_cmp_ui(l15p4.hi.p(), 18) <= 0) {
        RInterval val = exp_(l15p4 * ln10);
        MF clo(precision), chi(precision);
        mpfr_ceil(clo.p(), val.lo.p());
        mpfr_ceil(chi.p(), val.hi.p());
        if (mpfr_cmp(clo.p(), chi.p()) != 0) throw PrecisionExhausted("ceil(c15^4) not pinned");
        BigInt ceil4;
        mpfr_get_z(ceil4.get_mpz_t(), chi.p(), MPFR_RNDN);
        if (ceil4 < 1) ceil4 = 1;
        rep.q_required_exact = true;
        rep.q_required = mh12 * ceil4;
        rep.log10_q_required = log10_(RInterval::from_int(rep.q_required, precision));
        BigRat nq = make_rat(rep.q_required * rep.q_required, BigInt(2 * static_cast<long>(m)));
        rep.n_of_q_ge_r_star = nq >= BigRat(rep.r_star);
    } else {
        // ceil adds at most a factor (1 + 10^-18) here.
        RInterval slack = RInterval::from_rat(make_rat(BigInt(1), BigInt(1) << 50), precision);
        RInterval lg_ceil = l15p4.hull(l15p4 + slack);
        rep.log10_q_required = lg_mh12 + lg_ceil;
        RInterval lhs = RInterval::from_long(2, precision) * rep.log10_q_required -
                        log10_(RInterval::from_long(2 * static_cast<long>(m), precision));
        RInterval lg_rstar = log10_(RInterval::from_int(rep.r_star, std::max<mpfr_prec_t>(
                                                                        precision,
                                                                        mpz_sizeinbase(rep.r_star.get_mpz_t(), 2) + 96)));
        rep.n_of_q_ge_r_star = mpfr_cmp(lhs.lo.p(), lg_rstar.hi.p()) >= 0;
    }
    rep.n_current_ge_r_star = BigInt(static_cast<long>(n)) >= rep.r_star;
    return rep;
}

}  // namespace gsr
