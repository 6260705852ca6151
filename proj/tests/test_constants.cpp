#include <catch2/catch_amalgamated.hpp>

#include "gsr/constants.hpp"

using namespace gsr;

namespace {

ZPoly zp(std::initializer_list<long> cs) {
    ZPoly p;
    for (long c : cs) p.emplace_back(c);
    return p;
}

bool within(const RInterval& iv, double lo, double hi) {
    return mpfr_cmp_d(iv.lo.p(), lo) >= 0 && mpfr_cmp_d(iv.hi.p(), hi) <= 0;
}

GSInstance demo_instance(const BigRat& gamma = make_rat(3, 2)) {
    NumberField F = make_field(zp({-2, 0, 1}), 128);
    return make_instance(F, 1, F.gen(), F.gen(), F.from_rational(gamma), GSMode::gelfond);
}

ConstantsTable table_with_c15(const RInterval& log10_c15) {
    ConstantsTable T;
    T.entries.emplace("c15", ConstantEntry{log10_c15, false, BigRat(0), ""});
    return T;
}

}  // namespace

TEST_CASE("all-integral instance collapses c2 to one") {
    NumberField F = make_field(zp({-2, 0, 1}), 128);
    GSInstance inst = make_instance(F, 1, F.gen(), F.gen(), F.gen(), GSMode::gelfond);
    REQUIRE(inst.c_den == 1);
    ConstantsTable T = compute_constants(inst, derive_params(2, 12), 128);
    REQUIRE(T.at("c2").has_exact);
    REQUIRE(T.at("c2").exact == 1);
    REQUIRE(within(T.at("c2").log10, -1e-30, 1e-30));
    // c7 = (house(alpha)*house(gamma))^6 = 2^6 = 64
    REQUIRE(within(T.at("c7").log10, 1.806, 1.807));
    REQUIRE(T.c_basis == 1);
}

TEST_CASE("clearing constant 2 at m = 6") {
    ConstantsTable T = compute_constants(demo_instance(), derive_params(2, 12), 128);
    REQUIRE(T.c_den == 2);
    REQUIRE(within(T.at("c2").log10, 87.29, 87.31));
    BigInt p290;
    mpz_pow_ui(p290.get_mpz_t(), BigInt(2).get_mpz_t(), 290);
    REQUIRE(T.at("c2").has_exact);
    REQUIRE(T.at("c2").exact == BigRat(p290));
    REQUIRE(T.at("c5").has_exact);
    BigInt p3;
    mpz_pow_ui(p3.get_mpz_t(), BigInt(3).get_mpz_t(), 290);
    REQUIRE(T.at("c5").exact == BigRat(p3));
}

TEST_CASE("constant table on the q = 12 demo instance") {
    ConstantsTable T = compute_constants(demo_instance(), derive_params(2, 12), 128);
    struct Window {
        const char* name;
        double lo, hi;
    };
    const Window w[] = {
        {"c2", 87.296, 87.302}, {"c3", 111.734, 111.740},  {"c4", 113.415, 113.421}, {"c5", 138.362, 138.368},
        {"c6", 0.681, 0.687},   {"c7", 9.181, 9.187},      {"c8", 225.930, 225.936}, {"c9", 2.177, 2.183},
        {"c10", 142.837, 142.843}, {"c12", 146.075, 146.081}, {"c13", 147.778, 147.784}, {"c14", 373.711, 373.717},
        {"c15", 512.076, 512.082}};
    for (const auto& e : w) {
        INFO(e.name);
        REQUIRE(within(T.at(e.name).log10, e.lo, e.hi));
    }
    REQUIRE(T.at("c11").has_exact);
    REQUIRE(T.at("c11").exact == 1);
    REQUIRE(within(T.at("c11").log10, -1e-30, 1e-30));
}

TEST_CASE("c12 collapses to (2m)^(m/2) when m = 2") {
    NumberField F = make_field(zp({-2, 0, 1}), 128);
    GSInstance inst = make_instance(F, 1, F.from_rational(BigRat(2)), F.from_rational(make_rat(1, 2)), F.gen(),
                                    GSMode::synthetic);
    ConstantsTable T = compute_constants(inst, derive_params_synthetic(2, 4, 2, 2), 128);
    RInterval d = T.at("c12").log10 - T.at("c10").log10 - T.at("c11").log10;
    // log10(4) = 0.60205999...
    REQUIRE(mpfr_cmp_d(d.lo.p(), 0.60206) <= 0);
    REQUIRE(mpfr_cmp_d(d.hi.p(), 0.60205) >= 0);
}

TEST_CASE("threshold for unit constant") {
    ConstantsTable T = table_with_c15(RInterval(192));  // log10(c15) = [0, 0]
    ThresholdReport rep = contradiction_threshold(T, 2, 6, 1728, 128);
    REQUIRE(rep.r_star == 7);
    REQUIRE_FALSE(rep.no_threshold);
    REQUIRE(rep.minimal_certified);
    REQUIRE(mpfr_sgn(rep.phi_at_r_star.lo.p()) > 0);
    REQUIRE(mpfr_sgn(rep.dphi_at_r_star.lo.p()) > 0);
    REQUIRE(rep.q_required_exact);
    REQUIRE(rep.q_required == 144);  // 12*6*2*ceil(1)
    REQUIRE(rep.n_of_q_ge_r_star);   // n(144) = 1728 >= 7
    REQUIRE(rep.n_current_ge_r_star);
}

TEST_CASE("threshold for constant e") {
    RInterval l15 = log10_(exp_(RInterval::from_long(1, 256)));
    ThresholdReport rep = contradiction_threshold(table_with_c15(l15), 2, 6, 12, 128);
    REQUIRE(rep.r_star == 19);
    REQUIRE(rep.minimal_certified);
    REQUIRE(rep.q_required_exact);
    REQUIRE(rep.q_required == BigInt(144) * 55);  // ceil(e^4) = 55
    REQUIRE(rep.n_of_q_ge_r_star);
    REQUIRE_FALSE(rep.n_current_ge_r_star);  // 12 < 19
}

TEST_CASE("no threshold below one") {
    RInterval l15 = log10_(RInterval::from_rat(make_rat(1, 2), 192));
    ThresholdReport rep = contradiction_threshold(table_with_c15(l15), 2, 6, 12, 128);
    REQUIRE(rep.no_threshold);
    REQUIRE(rep.r_star == 1);
    REQUIRE(mpfr_sgn(rep.phi_at_r_star.lo.p()) > 0);  // phi(1) = -ln(1/2) > 0
    REQUIRE(rep.q_required_exact);
    REQUIRE(rep.q_required == 144);  // ceil(1/16) = 1
}

TEST_CASE("difference derivative stays positive beyond the threshold") {
    RInterval ln_c15 = RInterval::from_long(1, 192);  // c15 = e
    for (long r = 19; r <= 40; ++r) {
        RInterval d = detail_constants::threshold_dphi(BigInt(r), 2, ln_c15, 192);
        REQUIRE(mpfr_sgn(d.lo.p()) > 0);
    }
}

TEST_CASE("constants grow monotonically with the gamma house") {
    AuxParams p = derive_params(2, 12);
    ConstantsTable a = compute_constants(demo_instance(make_rat(3, 2)), p, 128);
    ConstantsTable b = compute_constants(demo_instance(make_rat(5, 2)), p, 128);
    REQUIRE(a.c_den == b.c_den);
    for (const auto& [name, entry] : a.entries) {
        INFO(name);
        REQUIRE(mpfr_cmp(b.at(name).log10.hi.p(), entry.log10.hi.p()) >= 0);
    }
}

TEST_CASE("higher precision never raises an upper bound") {
    AuxParams p = derive_params(2, 12);
    ConstantsTable a = compute_constants(demo_instance(), p, 128);
    ConstantsTable b = compute_constants(demo_instance(), p, 512);
    for (const auto& [name, entry] : a.entries) {
        INFO(name);
        REQUIRE(mpfr_cmp(b.at(name).log10.hi.p(), entry.log10.hi.p()) <= 0);
    }
}

TEST_CASE("demo threshold runs symbolically") {
    ConstantsTable T = compute_constants(demo_instance(), derive_params(2, 12), 128);
    ThresholdReport rep = contradiction_threshold(T, 2, 6, 12, 128);
    REQUIRE_FALSE(rep.q_required_exact);
    REQUIRE(within(rep.log10_q_required, 2050.2, 2050.8));
    REQUIRE(rep.n_of_q_ge_r_star);
    REQUIRE_FALSE(rep.n_current_ge_r_star);
    // r* tracks exp(2 ln c15): about 3403 bits
    size_t bits = mpz_sizeinbase(rep.r_star.get_mpz_t(), 2);
    REQUIRE(bits >= 3390);
    REQUIRE(bits <= 3415);
    // the table enclosure is far too wide at this scale to certify minimality
    REQUIRE_FALSE(rep.minimal_certified);
}
