#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "gsr/number_field.hpp"

using namespace gsr;

namespace {

std::mt19937_64 rng(0x5eed0005);

long rnd(long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    return d(rng);
}

BigRat rnd_rat(long m = 20) { return make_rat(rnd(-m, m), rnd(1, 6)); }

NFElement rnd_elem(const NumberField& F, long m = 20) {
    NFElement e = F.zero();
    for (auto& c : e.coords) c = rnd_rat(m);
    return e;
}

NFElement rnd_int_elem(const NumberField& F, long m = 20) {
    NFElement e = F.zero();
    for (auto& c : e.coords) c = BigRat(rnd(-m, m));
    return e;
}

// exact: the enclosure lies inside the rational window [lo, hi]
bool within(const RInterval& iv, const BigRat& lo, const BigRat& hi) {
    return mpfr_cmp_q(iv.lo.p(), lo.get_mpq_t()) >= 0 &&
           mpfr_cmp_q(iv.hi.p(), hi.get_mpq_t()) <= 0;
}

// Horner evaluation of a rational polynomial at a field element, exact
NFElement eval_poly_at_elem(const NumberField& F, const QPoly& p, const NFElement& a) {
    NFElement acc = F.zero();
    for (size_t i = p.c.size(); i-- > 0;) acc = F.add(F.mul(acc, a), F.from_rational(p.c[i]));
    return acc;
}

ZPoly zp(std::initializer_list<long> v) {
    ZPoly p;
    for (long x : v) p.emplace_back(x);
    return p;
}

QPoly qp(std::initializer_list<BigRat> v) { return QPoly(std::vector<BigRat>(v)); }

}  // namespace

TEST_CASE("field construction certifies the embeddings") {
    NumberField F = make_field(zp({-2, 0, 1}), 128);
    REQUIRE(F.h == 2);
    REQUIRE(F.working_precision == 128);
    REQUIRE(F.embeddings[0].real_part().hi.sgn() < 0);
    REQUIRE(F.embeddings[1].real_part().lo.sgn() > 0);
    for (const auto& e : F.embeddings) REQUIRE(e.pow_ui(2).contains_point(BigRat(2), BigRat(0)));
    REQUIRE(F.totally_real());

    NumberField C = make_field(zp({-2, 0, 0, 1}), 128);
    REQUIRE(C.h == 3);
    REQUIRE(!C.totally_real());
    REQUIRE(C.embeddings[0].imag_part().hi.sgn() < 0);
    REQUIRE(C.embeddings[1].imag_part().lo.sgn() > 0);
    REQUIRE(C.embeddings[2].im.is_zero());
}

TEST_CASE("field construction rejects bad polynomials") {
    REQUIRE_THROWS_AS(make_field(zp({-1, 0, 1}), 128), Reducible);   // (x-1)(x+1)
    REQUIRE_THROWS_AS(make_field(zp({4, -4, 1}), 128), Reducible);   // (x-2)^2
    REQUIRE_THROWS_AS(make_field(zp({-2, 0, 2}), 128), ParamError);  // not monic
    REQUIRE_THROWS_AS(make_field(zp({5}), 128), ParamError);         // constant
}

TEST_CASE("degree one fields collapse to the rationals") {
    NumberField F = make_field(zp({-5, 1}), 128);
    REQUIRE(F.h == 1);
    REQUIRE(F.gen() == F.from_rational(BigRat(5)));
    REQUIRE(F.embeddings[0].contains_point(BigRat(5), BigRat(0)));
    REQUIRE(F.embeddings[0].rad.is_zero());
    REQUIRE(norm(F, F.gen()) == 5);
    REQUIRE(basis_repr_constant(F) == 1);
}

TEST_CASE("field arithmetic is exact") {
    NumberField F = make_field(zp({-2, 0, 1}), 128);
    NFElement t = F.gen();
    REQUIRE(F.mul(t, t) == F.from_rational(BigRat(2)));
    NFElement a = F.add(F.one(), t);  // 1 + theta
    REQUIRE(F.inv(a) == F.elem({BigRat(-1), BigRat(1)}));
    REQUIRE(F.mul(a, F.inv(a)) == F.one());
    REQUIRE(F.pow_ui(a, 2) == F.elem({BigRat(3), BigRat(2)}));
    REQUIRE(F.div(F.one(), a) == F.inv(a));
    REQUIRE_THROWS_AS(F.inv(F.zero()), ParamError);
    for (int i = 0; i < 30; ++i) {
        NFElement x = rnd_elem(F);
        if (x.is_zero()) continue;
        REQUIRE(F.mul(x, F.inv(x)) == F.one());
    }
}

TEST_CASE("norms of frozen elements") {
    NumberField F = make_field(zp({-2, 0, 1}), 128);
    REQUIRE(norm(F, F.gen()) == -2);
    REQUIRE(norm(F, F.add(F.from_rational(BigRat(3)), F.gen())) == 7);
    REQUIRE(norm(F, F.zero()) == 0);
    REQUIRE(trace(F, F.gen()) == 0);
    REQUIRE(trace(F, F.add(F.from_rational(BigRat(3)), F.gen())) == 6);
    NumberField C = make_field(zp({-2, 0, 0, 1}), 128);
    REQUIRE(norm(C, C.gen()) == 2);
}

TEST_CASE("norm is multiplicative and matches the embedding product") {
    for (auto poly : {zp({-2, 0, 1}), zp({-2, 0, 0, 1})}) {
        NumberField F = make_field(poly, 128);
        for (int i = 0; i < 40; ++i) {
            NFElement a = rnd_elem(F), b = rnd_elem(F);
            REQUIRE(norm(F, F.mul(a, b)) == norm(F, a) * norm(F, b));
            CBall prod = F.eval_embedding(a, size_t{0});
            for (size_t j = 1; j < F.h; ++j) prod = prod * F.eval_embedding(a, j);
            REQUIRE(prod.contains_point(norm(F, a), BigRat(0)));
        }
    }
}

TEST_CASE("minimal polynomials of frozen elements") {
    NumberField F = make_field(zp({-2, 0, 1}), 128);
    NFElement t = F.gen();
    REQUIRE(minpoly(F, t) == qp({BigRat(-2), BigRat(0), BigRat(1)}));
    REQUIRE(minpoly(F, F.add(F.one(), t)) == qp({BigRat(-1), BigRat(-2), BigRat(1)}));
    REQUIRE(minpoly(F, F.from_rational(BigRat(5))) == qp({BigRat(-5), BigRat(1)}));
    REQUIRE(minpoly(F, F.zero()) == qp({BigRat(0), BigRat(1)}));
    NFElement half = F.scalar_mul(make_rat(1, 2), F.add(F.one(), t));  // (1+theta)/2
    REQUIRE(minpoly(F, half) == qp({make_rat(-1, 4), BigRat(-1), BigRat(1)}));
}

TEST_CASE("minimal polynomial annihilates its element") {
    for (auto poly : {zp({-2, 0, 1}), zp({-2, 0, 0, 1})}) {
        NumberField F = make_field(poly, 128);
        for (int i = 0; i < 25; ++i) {
            NFElement a = rnd_elem(F);
            QPoly mp = minpoly(F, a);
            REQUIRE(eval_poly_at_elem(F, mp, a).is_zero());
            REQUIRE(static_cast<size_t>(mp.degree()) <= F.h);
            REQUIRE(F.h % static_cast<size_t>(mp.degree()) == 0);
        }
    }
}

TEST_CASE("house of frozen elements") {
    NumberField F = make_field(zp({-2, 0, 1}), 128);
    HouseValue h1 = house(F, F.add(F.one(), F.gen()));
    REQUIRE(within(h1.enclosure, make_rat(2414, 1000), make_rat(2415, 1000)));
    HouseValue h2 = house(F, F.gen());
    REQUIRE(within(h2.enclosure, make_rat(1414, 1000), make_rat(1415, 1000)));
    HouseValue h0 = house(F, F.zero());
    REQUIRE(h0.enclosure.contains(BigRat(0)));
    REQUIRE(h0.enclosure.hi.sgn() == 0);

    NumberField C = make_field(zp({-2, 0, 0, 1}), 128);
    HouseValue h3 = house_via_minpoly(C, C.gen());
    REQUIRE(within(h3.enclosure, make_rat(1259, 1000), make_rat(1260, 1000)));
    REQUIRE(h3.enclosure.overlaps(house(C, C.gen()).enclosure));
}

TEST_CASE("house agrees with the minimal polynomial route") {
    for (auto poly : {zp({-2, 0, 1}), zp({-2, 0, 0, 1})}) {
        NumberField F = make_field(poly, 128);
        for (int i = 0; i < 30; ++i) {
            NFElement a = rnd_elem(F, 10);
            REQUIRE(house(F, a).enclosure.overlaps(house_via_minpoly(F, a).enclosure));
        }
    }
}

TEST_CASE("house is subadditive and submultiplicative") {
    for (auto poly : {zp({-2, 0, 1}), zp({-2, 0, 0, 1})}) {
        NumberField F = make_field(poly, 128);
        for (int i = 0; i < 40; ++i) {
            NFElement a = rnd_elem(F), b = rnd_elem(F);
            RInterval ha = house(F, a).enclosure, hb = house(F, b).enclosure;
            RInterval hs = house(F, F.add(a, b)).enclosure;
            RInterval hm = house(F, F.mul(a, b)).enclosure;
            REQUIRE(mpfr_cmp(hs.lo.p(), (ha + hb).hi.p()) <= 0);
            REQUIRE(mpfr_cmp(hm.lo.p(), (ha * hb).hi.p()) <= 0);
        }
    }
}

TEST_CASE("denominator clearing reaches an algebraic integer") {
    NumberField F = make_field(zp({-2, 0, 1}), 128);
    NFElement a = F.scalar_mul(make_rat(1, 3), F.gen());  // theta / 3
    BigInt d = denominator_clearing_integer(F, a);
    REQUIRE(d == 9);
    REQUIRE(minpoly(F, F.scalar_mul(BigRat(d), a)) == qp({BigRat(-18), BigRat(0), BigRat(1)}));
    REQUIRE(is_integral(F, F.scalar_mul(BigRat(d), a)));
    for (auto poly : {zp({-2, 0, 1}), zp({-2, 0, 0, 1})}) {
        NumberField K = make_field(poly, 128);
        for (int i = 0; i < 25; ++i) {
            NFElement x = rnd_elem(K, 8);
            BigInt c = denominator_clearing_integer(K, x);
            REQUIRE(c >= 1);
            REQUIRE(is_integral(K, K.scalar_mul(BigRat(c), x)));
        }
    }
}

TEST_CASE("integrality test uses the minimal polynomial") {
    NumberField F = make_field(zp({-2, 0, 1}), 128);
    NFElement half = F.scalar_mul(make_rat(1, 2), F.add(F.one(), F.gen()));
    REQUIRE(!is_integral(F, half));
    REQUIRE(is_integral(F, F.add(F.one(), F.gen())));
    REQUIRE(is_integral(F, F.zero()));
    REQUIRE(denominator_clearing_integer(F, half) == 4);
}

TEST_CASE("integral elements have norm at least one and at most house^h") {
    for (auto poly : {zp({-2, 0, 1}), zp({-2, 0, 0, 1})}) {
        NumberField F = make_field(poly, 128);
        for (int i = 0; i < 40; ++i) {
            NFElement a = rnd_int_elem(F);
            if (a.is_zero()) continue;
            BigRat n = norm(F, a);
            REQUIRE(is_integer(n));
            BigRat an = abs(n);
            REQUIRE(an >= 1);
            RInterval hp = pow_ui(house(F, a).enclosure, static_cast<unsigned long>(F.h));
            REQUIRE(mpfr_cmp_q(hp.hi.p(), an.get_mpq_t()) >= 0);
        }
    }
}

TEST_CASE("basis representation constant is one for the sample fields") {
    REQUIRE(basis_repr_constant(make_field(zp({-2, 0, 1}), 128)) == 1);
    REQUIRE(basis_repr_constant(make_field(zp({-1, -1, 1}), 128)) == 1);
    REQUIRE(basis_repr_constant(make_field(zp({-2, 0, 0, 1}), 128)) == 1);
}

TEST_CASE("coordinates are bounded by the representation constant times the house") {
    for (auto poly : {zp({-2, 0, 1}), zp({-2, 0, 0, 1})}) {
        NumberField F = make_field(poly, 128);
        BigInt c = basis_repr_constant(F);
        for (int i = 0; i < 100; ++i) {
            NFElement a = rnd_elem(F);
            RInterval bound = RInterval::from_int(c, 128) * house(F, a).enclosure;
            for (const auto& coord : a.coords) {
                BigRat ac = abs(coord);
                REQUIRE(mpfr_cmp_q(bound.hi.p(), ac.get_mpq_t()) >= 0);
            }
        }
    }
}

TEST_CASE("refined embeddings match the originals and tighten") {
    NumberField F = make_field(zp({-2, 0, 0, 1}), 128);
    auto fine = F.refined_embeddings(512);
    REQUIRE(fine.size() == F.h);
    for (size_t i = 0; i < F.h; ++i) {
        REQUIRE(fine[i].overlaps(F.embeddings[i]));
        REQUIRE(mpfr_cmp(fine[i].rad.p(), F.embeddings[i].rad.p()) < 0);
        REQUIRE(fine[i].pow_ui(3).contains_point(BigRat(2), BigRat(0)));
    }
}
