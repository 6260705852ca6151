#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "gsr/cball.hpp"
#include "gsr/real_interval.hpp"

using namespace gsr;

namespace {

std::mt19937_64 rng(0x5eed0003);

long rnd(long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    return d(rng);
}

BigRat rnd_rat(long m = 50) { return make_rat(rnd(-m, m), rnd(1, 12)); }

// exact complex rational arithmetic: the oracle for ball containment
struct QC {
    BigRat re, im;
    QC operator+(const QC& o) const { return {re + o.re, im + o.im}; }
    QC operator-(const QC& o) const { return {re - o.re, im - o.im}; }
    QC operator*(const QC& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    QC inv() const {
        BigRat n = re * re + im * im;
        return {re / n, -im / n};
    }
};

}  // namespace

TEST_CASE("interval arithmetic contains exact rational results") {
    for (int t = 0; t < 300; ++t) {
        BigRat a = rnd_rat(), b = rnd_rat();
        RInterval ia = RInterval::from_rat(a, 64), ib = RInterval::from_rat(b, 64);
        REQUIRE((ia + ib).contains(a + b));
        REQUIRE((ia - ib).contains(a - b));
        REQUIRE((ia * ib).contains(a * b));
        if (b != 0 && !ib.contains_zero()) REQUIRE((ia / ib).contains(a / b));
    }
}

TEST_CASE("interval elementary functions round outward") {
    for (int t = 0; t < 100; ++t) {
        BigRat x = make_rat(rnd(1, 400), rnd(1, 20));
        RInterval ix = RInterval::from_rat(x, 96);
        REQUIRE(exp_(log_(ix)).contains(x));
        REQUIRE((sqrt_(ix) * sqrt_(ix)).contains(x));
        REQUIRE(pow_ui(ix, 3).contains(x * x * x));
    }
    RInterval neg = RInterval::from_rat(BigRat(-2), 64);
    REQUIRE_THROWS_AS(log_(neg), PrecisionExhausted);
    REQUIRE_THROWS_AS(sqrt_(neg), PrecisionExhausted);
    REQUIRE(pow_ui(neg, 2).contains(BigRat(4)));
}

TEST_CASE("even interval power straddling zero") {
    RInterval s = RInterval::from_rat(BigRat(-3), 64).hull(RInterval::from_rat(BigRat(2), 64));
    RInterval p = pow_ui(s, 2);
    REQUIRE(p.contains(BigRat(0)));
    REQUIRE(p.contains(BigRat(9)));
    REQUIRE(p.is_nonnegative());
}

TEST_CASE("ball ring operations contain the exact complex value") {
    for (int t = 0; t < 200; ++t) {
        QC a{rnd_rat(), rnd_rat()}, b{rnd_rat(), rnd_rat()};
        CBall ba = CBall::from_rat(a.re, a.im, 128), bb = CBall::from_rat(b.re, b.im, 128);
        QC s = a + b, d = a - b, m = a * b;
        REQUIRE((ba + bb).contains_point(s.re, s.im));
        REQUIRE((ba - bb).contains_point(d.re, d.im));
        REQUIRE((ba * bb).contains_point(m.re, m.im));
        if (b.re != 0 || b.im != 0) {
            QC q = a * b.inv();
            REQUIRE((ba / bb).contains_point(q.re, q.im));
        }
    }
}

TEST_CASE("ball powers contain exact rational powers") {
    for (int t = 0; t < 60; ++t) {
        QC a{rnd_rat(6), rnd_rat(6)};
        QC acc{BigRat(1), BigRat(0)};
        CBall ba = CBall::from_rat(a.re, a.im, 128);
        for (int k = 0; k < 7; ++k) acc = acc * a;
        REQUIRE(ba.pow_ui(7).contains_point(acc.re, acc.im));
    }
}

TEST_CASE("ball exp and log are mutually consistent") {
    REQUIRE(CBall::from_rat(BigRat(0), BigRat(0), 64).exp_().contains_point(BigRat(1), BigRat(0)));
    for (int t = 0; t < 60; ++t) {
        // right half plane, safely away from the branch cut
        QC z{make_rat(rnd(1, 40), rnd(1, 6)), rnd_rat(10)};
        CBall bz = CBall::from_rat(z.re, z.im, 128);
        CBall back = bz.log_().exp_();
        REQUIRE(back.contains_point(z.re, z.im));
        // exp(z) * exp(-z) = 1
        CBall one = bz.exp_() * bz.neg().exp_();
        REQUIRE(one.contains_point(BigRat(1), BigRat(0)));
    }
}

TEST_CASE("ball log rejects the branch cut but allows the left half plane") {
    CBall neg = CBall::from_rat(BigRat(-3), BigRat(0), 64);
    REQUIRE_THROWS_AS(neg.log_(), PrecisionExhausted);
    CBall origin = CBall::from_rat(BigRat(0), BigRat(0), 64);
    REQUIRE_THROWS_AS(origin.log_(), PrecisionExhausted);
    // -3 + i is fine; imag(log) is near pi - atan(1/3)
    CBall up = CBall::from_rat(BigRat(-3), BigRat(1), 128);
    RInterval arg = up.log_().imag_part();
    REQUIRE(arg.is_positive());
    REQUIRE(arg.certainly_le(RInterval::pi(128)));
}

TEST_CASE("higher precision refines the enclosure") {
    QC z{make_rat(7, 3), make_rat(-2, 5)};
    CBall lo = CBall::from_rat(z.re, z.im, 64).exp_();
    CBall hi = CBall::from_rat(z.re, z.im, 256).exp_();
    REQUIRE(lo.overlaps(hi));
    REQUIRE(mpfr_cmp(hi.rad.p(), lo.rad.p()) < 0);
    REQUIRE(hi.strictly_inside(lo));
}

TEST_CASE("containment predicates are exact") {
    CBall a = CBall::from_rat(BigRat(0), BigRat(0), 64);
    MF r1(CBall::RADP);
    mpfr_set_ui(r1.p(), 2, MPFR_RNDU);
    CBall da = CBall::disk(a.re, a.im, r1, 64);
    CBall b = CBall::from_rat(BigRat(3), BigRat(0), 64);
    MF r2(CBall::RADP);
    mpfr_set_ui(r2.p(), 1, MPFR_RNDU);
    CBall db = CBall::disk(b.re, b.im, r2, 64);
    REQUIRE(da.overlaps(db));  // touching at x = 2..3? distance 3 = 2 + 1: tangent counts
    MF r3(CBall::RADP);
    mpfr_set_d(r3.p(), 0.5, MPFR_RNDU);
    CBall dc = CBall::disk(b.re, b.im, r3, 64);
    REQUIRE(!da.overlaps(dc));
    MF r4(CBall::RADP);
    mpfr_set_ui(r4.p(), 5, MPFR_RNDU);
    CBall big = CBall::disk(a.re, a.im, r4, 64);
    REQUIRE(db.strictly_inside(big));
    REQUIRE(!big.strictly_inside(db));
}

TEST_CASE("hull contains both balls and the segment between centers") {
    CBall a = CBall::from_rat(BigRat(-2), BigRat(1), 64);
    CBall b = CBall::from_rat(BigRat(4), BigRat(-1), 64);
    CBall h = a.hull_with(b);
    REQUIRE(h.contains_point(BigRat(-2), BigRat(1)));
    REQUIRE(h.contains_point(BigRat(4), BigRat(-1)));
    REQUIRE(h.contains_point(BigRat(1), BigRat(0)));  // midpoint of segment
}

TEST_CASE("abs encloses the true modulus") {
    for (int t = 0; t < 100; ++t) {
        QC z{rnd_rat(), rnd_rat()};
        CBall bz = CBall::from_rat(z.re, z.im, 96);
        RInterval a = bz.abs_();
        BigRat m2 = z.re * z.re + z.im * z.im;
        REQUIRE((a * a).contains(m2));
    }
}
