#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "constants.hpp"
#include "errors.hpp"
#include "gs_instance.hpp"
#include "number_field.hpp"
#include "siegel.hpp"

namespace gsr {

namespace detail_auxfun {

// p[i] = base^i for 0 <= i <= emax
inline std::vector<NFElement> pow_table(const NumberField& F, const NFElement& base, size_t emax) {
    std::vector<NFElement> p;
    p.reserve(emax + 1);
    p.push_back(F.one());
    for (size_t i = 1; i <= emax; ++i) p.push_back(F.mul(p.back(), base));
    return p;
}

inline std::vector<NFElement> column_bases(const GSInstance& inst, const AuxParams& params) {
    const NumberField& F = inst.field;
    std::vector<NFElement> base(params.t, F.zero());
    for (size_t col = 0; col < params.t; ++col) {
        auto [a, b] = params.col_ab(col);
        base[col] = F.add(F.from_rational(BigRat(static_cast<long>(a))),
                          F.scalar_mul(BigRat(static_cast<long>(b)), inst.beta));
    }
    return base;
}

inline void require_integer_coords(const NFElement& e, const char* what) {
    for (const BigRat& c : e.coords)
        if (rat_den(c) != 1) throw NotIntegral(std::string(what) + " has non-integer coordinates");
}

}  // namespace detail_auxfun

struct HouseReport {
    RInterval max_house;     // enclosure of the largest entry house
    RInterval max_log10;
    RInterval bound_log10;   // c3^n * n^((n-1)/2)
    Cert max_le_bound = Cert::undecided;
};

// Cleared system matrix: entry(row(k,l), col(a,b)) =
// c_den^(n-1+2mq) * (a+b*beta)^k * alpha^(a*l) * gamma^(b*l).
inline std::pair<NFMatrix, HouseReport> build_cleared_matrix(const GSInstance& inst, const AuxParams& params) {
    using detail_auxfun::pow_table;
    const NumberField& F = inst.field;
    const mpfr_prec_t prec = F.working_precision;

    BigInt cpow;
    mpz_pow_ui(cpow.get_mpz_t(), inst.c_den.get_mpz_t(), params.clearing_exponent());
    const BigRat cfac(cpow);

    auto apow = pow_table(F, inst.alpha, params.q * params.m);
    auto gpow = pow_table(F, inst.gamma, params.q * params.m);
    auto base = detail_auxfun::column_bases(inst, params);
    std::vector<NFElement> cur(params.t, F.one());

    NFMatrix M(params.rows(), params.cols(), F);
    RInterval maxh(prec);
    for (size_t k = 0; k < params.n; ++k) {
        for (size_t col = 0; col < params.t; ++col) {
            auto [a, b] = params.col_ab(col);
            for (size_t l = 1; l <= params.m; ++l) {
                NFElement e = F.scalar_mul(cfac, F.mul(cur[col], F.mul(apow[a * l], gpow[b * l])));
                detail_auxfun::require_integer_coords(e, "cleared matrix entry");
                maxh = maxh.max_with(house(F, e).enclosure);
                M.at(params.row_of(k, l), col) = std::move(e);
            }
            cur[col] = F.mul(cur[col], base[col]);
        }
    }

    ConstantsTable T = compute_constants(inst, params, prec);
    HouseReport rep;
    rep.max_house = maxh;
    rep.max_log10 = log10_(maxh);
    rep.bound_log10 = RInterval::from_long(static_cast<long>(params.n), prec) * T.at("c3").log10 +
                      RInterval::from_rat(make_rat(static_cast<long>(params.n) - 1, 2), prec) *
                          log10_(RInterval::from_long(static_cast<long>(params.n), prec));
    rep.max_le_bound = cert_le(rep.max_log10, rep.bound_log10);
    return {std::move(M), rep};
}

struct EtaSolution {
    std::vector<NFElement> eta;  // t entries, integer coordinates
    SiegelSolutionOK siegel_certificate;
    bool house_bound_ok = false;    // max house <= c4^n * n^((n+1)/2)
    RInterval max_house;
    RInterval max_house_log10;
    RInterval bound_log10;          // c4^n * n^((n+1)/2)
    RInterval bound_prelift_log10;  // c4^n * n^((n-1)/2)
};

// Solves the cleared system and verifies vanishing exactly, against both the
// cleared matrix entries and freshly computed raw coefficients (the clearing
// factor cancels, so both must vanish).
inline EtaSolution solve_coefficients(const GSInstance& inst, const AuxParams& params, const NFMatrix& M) {
    using detail_auxfun::pow_table;
    const NumberField& F = inst.field;
    const mpfr_prec_t prec = F.working_precision;
    if (M.rows != params.rows() || M.cols != params.cols()) throw ShapeError("matrix shape mismatch");

    EtaSolution sol;
    sol.siegel_certificate = siegel_OK(F, M);
    sol.eta = sol.siegel_certificate.vector;

    for (size_t row = 0; row < params.rows(); ++row) {
        NFElement s = F.zero();
        for (size_t col = 0; col < params.t; ++col) s = F.add(s, F.mul(sol.eta[col], M.at(row, col)));
        if (!s.is_zero()) throw Error("solver postcondition failed: cleared row sum nonzero");
    }

    auto apow = pow_table(F, inst.alpha, params.q * params.m);
    auto gpow = pow_table(F, inst.gamma, params.q * params.m);
    auto base = detail_auxfun::column_bases(inst, params);
    std::vector<NFElement> cur(params.t, F.one());
    for (size_t k = 0; k < params.n; ++k) {
        for (size_t l = 1; l <= params.m; ++l) {
            NFElement s = F.zero();
            for (size_t col = 0; col < params.t; ++col) {
                auto [a, b] = params.col_ab(col);
                s = F.add(s, F.mul(sol.eta[col], F.mul(cur[col], F.mul(apow[a * l], gpow[b * l]))));
            }
            if (!s.is_zero()) throw Error("solver postcondition failed: raw row sum nonzero");
        }
        for (size_t col = 0; col < params.t; ++col) cur[col] = F.mul(cur[col], base[col]);
    }

    RInterval maxh(prec);
    for (const NFElement& e : sol.eta) maxh = maxh.max_with(house(F, e).enclosure);
    sol.max_house = maxh;
    sol.max_house_log10 = log10_(maxh);

    ConstantsTable T = compute_constants(inst, params, prec);
    RInterval fn = RInterval::from_long(static_cast<long>(params.n), prec);
    RInterval lgn = log10_(fn);
    sol.bound_log10 = fn * T.at("c4").log10 +
                      RInterval::from_rat(make_rat(static_cast<long>(params.n) + 1, 2), prec) * lgn;
    sol.bound_prelift_log10 = fn * T.at("c4").log10 +
                              RInterval::from_rat(make_rat(static_cast<long>(params.n) - 1, 2), prec) * lgn;
    sol.house_bound_ok = cert_le(sol.max_house_log10, sol.bound_log10) == Cert::holds;
    return sol;
}

struct RhoWitness {
    size_t r = 0;
    size_t l0 = 0;  // 1-based
    NFElement rho;
    BigRat norm_rho;
};

// Scans k = n, n+1, ... for the first exactly nonzero derivative sum
// rho(k, l) = sum_t eta_t * (a+b*beta)^k * alpha^(a*l) * gamma^(b*l).
inline RhoWitness minimal_nonvanishing_order(const GSInstance& inst, const AuxParams& params,
                                             const std::vector<NFElement>& eta) {
    using detail_auxfun::pow_table;
    const NumberField& F = inst.field;
    if (eta.size() != params.t) throw ShapeError("eta length must equal t");

    auto apow = pow_table(F, inst.alpha, params.q * params.m);
    auto gpow = pow_table(F, inst.gamma, params.q * params.m);
    // ee[l-1][col] = eta_col * alpha^(a*l) * gamma^(b*l)
    std::vector<std::vector<NFElement>> ee(params.m, std::vector<NFElement>(params.t, F.zero()));
    for (size_t l = 1; l <= params.m; ++l)
        for (size_t col = 0; col < params.t; ++col) {
            auto [a, b] = params.col_ab(col);
            ee[l - 1][col] = F.mul(eta[col], F.mul(apow[a * l], gpow[b * l]));
        }

    auto base = detail_auxfun::column_bases(inst, params);
    std::vector<NFElement> cur(params.t, F.zero());
    for (size_t col = 0; col < params.t; ++col) cur[col] = F.pow_ui(base[col], params.n);

    const size_t cap = params.n + params.t + params.h * params.t;
    for (size_t k = params.n; k < cap; ++k) {
        for (size_t l = 1; l <= params.m; ++l) {
            NFElement s = F.zero();
            for (size_t col = 0; col < params.t; ++col) s = F.add(s, F.mul(cur[col], ee[l - 1][col]));
            if (!s.is_zero()) return RhoWitness{k, l, s, norm(F, s)};
        }
        for (size_t col = 0; col < params.t; ++col) cur[col] = F.mul(cur[col], base[col]);
    }
    throw OrderSearchExceeded("all derivative sums vanish below the search cap");
}

struct NormReport {
    size_t exponent = 0;    // r + 2mq
    BigRat norm_scaled;     // N(c_den^exponent * rho), exact
    bool scaled_ge_one = false;
    BigRat implied_lower;   // c_den^(-h*exponent)
    BigRat norm_rho_abs;    // |N(rho)|, exact
    bool rho_ge_implied = false;
};

namespace detail_auxfun {

inline NormReport norm_check_with_exponent(const GSInstance& inst, const NFElement& rho, size_t exponent) {
    const NumberField& F = inst.field;
    BigInt cpow;
    mpz_pow_ui(cpow.get_mpz_t(), inst.c_den.get_mpz_t(), exponent);
    NFElement scaled = F.scalar_mul(BigRat(cpow), rho);
    require_integer_coords(scaled, "scaled rho");
    if (!is_integral(F, scaled)) throw NotIntegral("scaled rho is not an algebraic integer");

    NormReport rep;
    rep.exponent = exponent;
    rep.norm_scaled = norm(F, scaled);
    rep.scaled_ge_one = abs(rep.norm_scaled) >= 1;
    BigInt cpow_h;
    mpz_pow_ui(cpow_h.get_mpz_t(), inst.c_den.get_mpz_t(), exponent * F.h);
    rep.implied_lower = make_rat(BigInt(1), cpow_h);
    rep.norm_rho_abs = abs(norm(F, rho));
    rep.rho_ge_implied = rep.norm_rho_abs >= rep.implied_lower;
    return rep;
}

}  // namespace detail_auxfun

inline NormReport norm_lower_bound_check(const GSInstance& inst, const AuxParams& params, const RhoWitness& w) {
    return detail_auxfun::norm_check_with_exponent(inst, w.rho, w.r + 2 * params.m * params.q);
}

struct Eq6Report {
    RInterval house_rho_log10;
    RInterval middle_log10;  // t * c4^n * n^((n-1)/2) * (c6*q)^r * c7^q
    RInterval right_log10;   // c8^r * r^(r+3/2)
    Cert house_le_middle = Cert::undecided;
    Cert middle_le_right = Cert::undecided;
};

inline Eq6Report house_rho_upper_check(const GSInstance& inst, const AuxParams& params, const RhoWitness& w,
                                       const ConstantsTable& T) {
    const mpfr_prec_t prec = inst.field.working_precision;
    auto fl = [&](size_t v) { return RInterval::from_long(static_cast<long>(v), prec); };

    Eq6Report rep;
    rep.house_rho_log10 = log10_(house(inst.field, w.rho).enclosure);
    RInterval lgn = log10_(fl(params.n));
    rep.middle_log10 = log10_(fl(params.t)) + fl(params.n) * T.at("c4").log10 +
                       RInterval::from_rat(make_rat(static_cast<long>(params.n) - 1, 2), prec) * lgn +
                       fl(w.r) * (T.at("c6").log10 + log10_(fl(params.q))) + fl(params.q) * T.at("c7").log10;
    rep.right_log10 = fl(w.r) * T.at("c8").log10 +
                      (fl(w.r) + RInterval::from_rat(make_rat(3, 2), prec)) * log10_(fl(w.r));
    rep.house_le_middle = cert_le(rep.house_rho_log10, rep.middle_log10);
    rep.middle_le_right = cert_le(rep.middle_log10, rep.right_log10);
    return rep;
}

}  // namespace gsr
