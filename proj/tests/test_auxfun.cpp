#include <catch2/catch_amalgamated.hpp>

#include "gsr/auxfun.hpp"

using namespace gsr;

namespace {

ZPoly zp(std::initializer_list<long> cs) {
    ZPoly p;
    for (long c : cs) p.emplace_back(c);
    return p;
}

// Criterion-style synthetic instance: alpha = 2, beta = 1/2, gamma = theta.
GSInstance synthetic_instance() {
    NumberField F = make_field(zp({-2, 0, 1}), 128);
    return make_instance(F, 1, F.from_rational(BigRat(2)), F.from_rational(make_rat(1, 2)), F.gen(),
                         GSMode::synthetic);
}

GSInstance demo_instance() {
    NumberField F = make_field(zp({-2, 0, 1}), 128);
    return make_instance(F, 1, F.gen(), F.gen(), F.from_rational(make_rat(3, 2)), GSMode::gelfond);
}

// Injective column map (beta irrational), so any nonzero eta has a witness.
GSInstance injective_synthetic() {
    NumberField F = make_field(zp({-2, 0, 1}), 128);
    return make_instance(F, 1, F.from_rational(BigRat(2)), F.gen(), F.from_rational(make_rat(3, 2)),
                         GSMode::synthetic);
}

}  // namespace

TEST_CASE("cleared entries carry the clearing factor") {
    NumberField F = make_field(zp({-2, 0, 1}), 128);
    GSInstance inst = make_instance(F, 1, F.from_rational(BigRat(2)), F.from_rational(make_rat(1, 2)),
                                    F.from_rational(make_rat(3, 2)), GSMode::synthetic);
    AuxParams p = derive_params_synthetic(2, 4, 2, 2);
    REQUIRE(p.clearing_exponent() == 17);
    auto [M, rep] = build_cleared_matrix(inst, p);
    // row (k=0, l=1), col (a=1, b=1): 2^17 * 2 * 3/2 = 393216
    REQUIRE(M.at(p.row_of(0, 1), p.col_of(1, 1)) == F.from_rational(BigRat(393216)));
    // row (k=1, l=1), col (a=1, b=1): 2^17 * (1 + 1/2) * 2 * 3/2 = 589824
    REQUIRE(M.at(p.row_of(1, 1), p.col_of(1, 1)) == F.from_rational(BigRat(589824)));
    REQUIRE(rep.max_le_bound == Cert::holds);
}

TEST_CASE("all-integral instance clears with factor one") {
    NumberField F = make_field(zp({-2, 0, 1}), 128);
    GSInstance inst = make_instance(F, 1, F.gen(), F.gen(), F.gen(), GSMode::gelfond);
    AuxParams p = derive_params_synthetic(2, 4, 2, 2);
    auto [M, rep] = build_cleared_matrix(inst, p);
    for (size_t k = 0; k < p.n; ++k)
        for (size_t l = 1; l <= p.m; ++l)
            for (size_t a = 1; a <= p.q; ++a)
                for (size_t b = 1; b <= p.q; ++b)
                    REQUIRE(M.at(p.row_of(k, l), p.col_of(a, b)) == system_coefficient(inst, k, l, a, b));
}

TEST_CASE("demo matrix house stays under its bound") {
    GSInstance inst = demo_instance();
    AuxParams p = derive_params(2, 12);
    auto [M, rep] = build_cleared_matrix(inst, p);
    REQUIRE(M.rows == 72);
    REQUIRE(M.cols == 144);
    REQUIRE(mpfr_number_p(rep.max_log10.hi.p()));
    REQUIRE(rep.max_le_bound == Cert::holds);
}

TEST_CASE("synthetic eta vanishes exactly on all rows") {
    GSInstance inst = synthetic_instance();
    const NumberField& F = inst.field;
    AuxParams p = derive_params_synthetic(2, 4, 2, 2);
    auto [M, hrep] = build_cleared_matrix(inst, p);
    EtaSolution sol = solve_coefficients(inst, p, M);

    REQUIRE(sol.eta.size() == 16);
    bool nonzero = false;
    for (const NFElement& e : sol.eta) {
        for (const BigRat& c : e.coords) REQUIRE(rat_den(c) == 1);
        if (!e.is_zero()) nonzero = true;
    }
    REQUIRE(nonzero);

    // independent vanishing check against raw coefficients
    for (size_t k = 0; k < p.n; ++k)
        for (size_t l = 1; l <= p.m; ++l) {
            NFElement s = F.zero();
            for (size_t a = 1; a <= p.q; ++a)
                for (size_t b = 1; b <= p.q; ++b)
                    s = F.add(s, F.mul(sol.eta[p.col_of(a, b)], system_coefficient(inst, k, l, a, b)));
            REQUIRE(s.is_zero());
        }
    REQUIRE(sol.house_bound_ok);
    REQUIRE(sol.siegel_certificate.bound_satisfied);
}

TEST_CASE("clearing factor cancellation") {
    GSInstance inst = synthetic_instance();
    const NumberField& F = inst.field;
    AuxParams p = derive_params_synthetic(2, 4, 2, 2);
    auto [M, hrep] = build_cleared_matrix(inst, p);
    EtaSolution sol = solve_coefficients(inst, p, M);
    // cleared row sums vanish iff raw row sums vanish: both are zero here
    for (size_t row = 0; row < p.rows(); ++row) {
        NFElement cleared = F.zero();
        for (size_t col = 0; col < p.t; ++col) cleared = F.add(cleared, F.mul(sol.eta[col], M.at(row, col)));
        REQUIRE(cleared.is_zero());
    }
}

TEST_CASE("order scan finds the first nonzero sum") {
    NumberField F = make_field(zp({-2, 0, 1}), 128);
    GSInstance inst = make_instance(F, 1, F.gen(), F.gen(), F.gen(), GSMode::synthetic);
    AuxParams p = derive_params_synthetic(2, 2, 1, 1);
    // eta kills row k=0: columns (a,b) = (1,2) and (2,1) both give theta^(a+b) = theta^3
    std::vector<NFElement> eta(4, F.zero());
    eta[p.col_of(1, 2)] = F.one();
    eta[p.col_of(2, 1)] = F.neg(F.one());
    // row k=0 vanishes
    NFElement s0 = F.add(F.mul(eta[p.col_of(1, 2)], system_coefficient(inst, 0, 1, 1, 2)),
                         F.mul(eta[p.col_of(2, 1)], system_coefficient(inst, 0, 1, 2, 1)));
    REQUIRE(s0.is_zero());

    RhoWitness w = minimal_nonvanishing_order(inst, p, eta);
    REQUIRE(w.r == 1);
    REQUIRE(w.l0 == 1);
    // rho = (1+2theta) theta^3 - (2+theta) theta^3 = (theta-1)*2theta = 4 - 2theta
    REQUIRE(w.rho == F.elem({make_rat(4, 1), make_rat(-2, 1)}));
    REQUIRE(w.norm_rho == 8);  // (4-2theta)(4+2theta) = 16 - 8 = 8
}

TEST_CASE("order scan cap raises a diagnosed error") {
    NumberField F = make_field(zp({-2, 0, 1}), 128);
    GSInstance inst = make_instance(F, 1, F.gen(), F.gen(), F.gen(), GSMode::synthetic);
    AuxParams p = derive_params_synthetic(2, 2, 1, 1);
    std::vector<NFElement> eta(4, F.zero());  // all sums vanish forever
    REQUIRE_THROWS_AS(minimal_nonvanishing_order(inst, p, eta), OrderSearchExceeded);
}

TEST_CASE("norm lower bound frozen examples") {
    NumberField F = make_field(zp({-2, 0, 1}), 128);
    GSInstance unit = make_instance(F, 1, F.gen(), F.gen(), F.gen(), GSMode::gelfond);  // c_den = 1
    NormReport a = detail_auxfun::norm_check_with_exponent(unit, F.gen(), 5);
    REQUIRE(a.norm_scaled == -2);
    REQUIRE(a.scaled_ge_one);
    REQUIRE(a.implied_lower == 1);
    REQUIRE(a.norm_rho_abs == 2);
    REQUIRE(a.rho_ge_implied);

    NormReport b = detail_auxfun::norm_check_with_exponent(unit, F.add(F.from_rational(BigRat(3)), F.gen()), 1);
    REQUIRE(b.norm_scaled == 7);

    // rho = theta/3 with c_den = 3 (alpha = theta/3 forces it) and exponent 1
    NFElement third = F.scalar_mul(make_rat(1, 3), F.gen());
    GSInstance scaled = make_instance(F, 1, third, F.gen(), F.gen(), GSMode::gelfond);
    REQUIRE(scaled.c_den == 9);
    GSInstance cd3 = scaled;
    cd3.c_den = 3;  // the example pins the clearing integer itself
    NormReport c = detail_auxfun::norm_check_with_exponent(cd3, third, 1);
    REQUIRE(c.norm_scaled == -2);  // N(theta) = -2
    REQUIRE(c.scaled_ge_one);
    REQUIRE(c.implied_lower == make_rat(1, 9));
    REQUIRE(c.norm_rho_abs == make_rat(2, 9));
    REQUIRE(c.rho_ge_implied);

    // insufficient clearing power is flagged
    GSInstance cd1 = scaled;
    cd1.c_den = 1;
    REQUIRE_THROWS_AS(detail_auxfun::norm_check_with_exponent(cd1, third, 1), NotIntegral);
}

TEST_CASE("non-injective columns can defeat the order scan") {
    // beta = 1/2 collides columns (1,3) and (2,1); the kernel vector the solver
    // picks is a duplicate-column difference, so every derivative sum vanishes.
    GSInstance inst = synthetic_instance();
    AuxParams p = derive_params_synthetic(2, 4, 2, 2);
    REQUIRE_FALSE(check_injectivity(inst, p));
    auto [M, hrep] = build_cleared_matrix(inst, p);
    EtaSolution sol = solve_coefficients(inst, p, M);
    REQUIRE_THROWS_AS(minimal_nonvanishing_order(inst, p, sol.eta), OrderSearchExceeded);
}

TEST_CASE("synthetic witness passes the norm check") {
    GSInstance inst = injective_synthetic();
    AuxParams p = derive_params_synthetic(2, 4, 2, 2);
    REQUIRE(check_injectivity(inst, p));
    auto [M, hrep] = build_cleared_matrix(inst, p);
    EtaSolution sol = solve_coefficients(inst, p, M);
    RhoWitness w = minimal_nonvanishing_order(inst, p, sol.eta);
    REQUIRE(w.r >= p.n);
    REQUIRE_FALSE(w.rho.is_zero());
    REQUIRE(w.norm_rho != 0);
    NormReport nr = norm_lower_bound_check(inst, p, w);
    REQUIRE(nr.exponent == w.r + 16);
    REQUIRE(nr.scaled_ge_one);
    REQUIRE(nr.rho_ge_implied);
}

TEST_CASE("eq6 report fields are populated and certified") {
    GSInstance inst = injective_synthetic();
    AuxParams p = derive_params_synthetic(2, 4, 2, 2);
    auto [M, hrep] = build_cleared_matrix(inst, p);
    EtaSolution sol = solve_coefficients(inst, p, M);
    RhoWitness w = minimal_nonvanishing_order(inst, p, sol.eta);
    ConstantsTable T = compute_constants(inst, p, 128);
    Eq6Report rep = house_rho_upper_check(inst, p, w, T);
    REQUIRE(mpfr_number_p(rep.house_rho_log10.hi.p()));
    REQUIRE(mpfr_number_p(rep.middle_log10.hi.p()));
    REQUIRE(mpfr_number_p(rep.right_log10.hi.p()));
    REQUIRE(rep.house_le_middle == Cert::holds);
}
