#include <catch2/catch_amalgamated.hpp>
#include <algorithm>
#include <random>

#include "gsr/root_isolation.hpp"

using namespace gsr;

namespace {

std::mt19937_64 rng(0x5eed0004);

long rnd(long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    return d(rng);
}

ZPoly zp(std::initializer_list<long> cs) {
    ZPoly z;
    for (long c : cs) z.emplace_back(c);
    return z;
}

}  // namespace

TEST_CASE("roots of x^2 - 2 straddle zero and square to 2") {
    auto roots = isolate_roots(zp({-2, 0, 1}), 128);
    REQUIRE(roots.size() == 2);
    REQUIRE(roots[0].re.sgn() < 0);
    REQUIRE(roots[1].re.sgn() > 0);
    for (const auto& r : roots) {
        RInterval re = r.real_part(), im = r.imag_part();
        REQUIRE(im.contains(BigRat(0)));
        REQUIRE((re * re).contains(BigRat(2)));
    }
    REQUIRE(roots[0].disjoint_from(roots[1]));
}

TEST_CASE("roots of x^3 - 2: conjugate pair first, real root last") {
    auto roots = isolate_roots(zp({-2, 0, 0, 1}), 128);
    REQUIRE(roots.size() == 3);
    // sorted by (Re, Im): the two conjugates share Re < 0, the real root has Re > 0
    REQUIRE(roots[0].re.sgn() < 0);
    REQUIRE(roots[1].re.sgn() < 0);
    REQUIRE(roots[2].re.sgn() > 0);
    REQUIRE(roots[0].im.sgn() < 0);
    REQUIRE(roots[1].im.sgn() > 0);
    REQUIRE(roots[2].imag_part().contains(BigRat(0)));
    for (const auto& r : roots) {
        // |z|^2 = 2^(2/3) for every root, so (re^2 + im^2)^3 contains 4
        RInterval m2 = r.real_part() * r.real_part() + r.imag_part() * r.imag_part();
        REQUIRE((m2 * m2 * m2).contains(BigRat(4)));
    }
}

TEST_CASE("purely imaginary roots of x^2 + 1") {
    auto roots = isolate_roots(zp({1, 0, 1}), 128);
    REQUIRE(roots.size() == 2);
    for (const auto& r : roots) {
        REQUIRE(r.real_part().contains(BigRat(0)));
        REQUIRE((r.imag_part() * r.imag_part()).contains(BigRat(1)));
    }
}

TEST_CASE("linear polynomial gives an exact root") {
    auto roots = isolate_roots(zp({-7, 1}), 64);
    REQUIRE(roots.size() == 1);
    REQUIRE(roots[0].contains_point(BigRat(7), BigRat(0)));
    REQUIRE(roots[0].rad.is_zero());
}

TEST_CASE("products of distinct linear factors recover every root") {
    for (int t = 0; t < 25; ++t) {
        size_t deg = static_cast<size_t>(rnd(2, 8));
        std::vector<long> rs;
        while (rs.size() < deg) {
            long v = rnd(-20, 20);
            if (std::find(rs.begin(), rs.end(), v) == rs.end()) rs.push_back(v);
        }
        QPoly f = QPoly::constant(BigRat(1));
        for (long v : rs) f = f * QPoly({BigRat(-v), BigRat(1)});
        ZPoly fz = to_primitive_zpoly(f);
        auto roots = isolate_roots(fz, 128);
        REQUIRE(roots.size() == deg);
        std::sort(rs.begin(), rs.end());
        for (size_t i = 0; i < deg; ++i) {
            REQUIRE(roots[i].contains_point(BigRat(rs[i]), BigRat(0)));
            for (size_t j = i + 1; j < deg; ++j) REQUIRE(roots[i].disjoint_from(roots[j]));
        }
    }
}

TEST_CASE("closely spaced roots of (x-1)(x-2)...(x-10)") {
    QPoly f = QPoly::constant(BigRat(1));
    for (long v = 1; v <= 10; ++v) f = f * QPoly({BigRat(-v), BigRat(1)});
    auto roots = isolate_roots(to_primitive_zpoly(f), 256);
    REQUIRE(roots.size() == 10);
    for (long v = 1; v <= 10; ++v)
        REQUIRE(roots[static_cast<size_t>(v - 1)].contains_point(BigRat(v), BigRat(0)));
}

TEST_CASE("input validation for root isolation") {
    REQUIRE_THROWS_AS(isolate_roots(zp({1, -2, 1}), 64), ParamError);  // (x-1)^2
    REQUIRE_THROWS_AS(isolate_roots(zp({1, 2}), 64), ParamError);      // not monic
    REQUIRE_THROWS_AS(isolate_roots(zp({5}), 64), ParamError);         // constant
}

TEST_CASE("mixed real and complex roots with large spread") {
    // (x^2 + 1)(x - 1000) has roots +-i and 1000
    QPoly f = QPoly({BigRat(1), BigRat(0), BigRat(1)}) * QPoly({BigRat(-1000), BigRat(1)});
    auto roots = isolate_roots(to_primitive_zpoly(f), 128);
    REQUIRE(roots.size() == 3);
    REQUIRE(roots[2].contains_point(BigRat(1000), BigRat(0)));
    REQUIRE(roots[0].real_part().contains(BigRat(0)));
    REQUIRE(roots[1].real_part().contains(BigRat(0)));
}
