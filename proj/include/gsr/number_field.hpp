#pragma once

#include <utility>
#include <vector>

#include "gsr/bigint.hpp"
#include "gsr/cball.hpp"
#include "gsr/errors.hpp"
#include "gsr/poly.hpp"
#include "gsr/rat_linalg.hpp"
#include "gsr/real_interval.hpp"
#include "gsr/root_isolation.hpp"
#include "gsr/zpoly_factor.hpp"

namespace gsr {

// Element of a number field in the power basis 1, theta, ..., theta^(h-1).
struct NFElement {
    std::vector<BigRat> coords;
    bool operator==(const NFElement& o) const { return coords == o.coords; }
    bool operator!=(const NFElement& o) const { return !(*this == o); }
    bool is_zero() const {
        for (const auto& c : coords)
            if (c != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (size_t i = 1; i < coords.size(); ++i)
            if (coords[i] != 0) return false;
        return true;
    }
};

// Real enclosure of the house (largest conjugate modulus).
struct HouseValue {
    RInterval enclosure;
};

namespace detail_field {

// extended Euclid over Q[x]: s*a + t*b = g (g the monic gcd)
inline void qpoly_eea(const QPoly& a, const QPoly& b, QPoly& g, QPoly& s, QPoly& t) {
    QPoly r0 = a, r1 = b;
    QPoly s0 = QPoly::constant(BigRat(1)), s1;
    QPoly t0, t1 = QPoly::constant(BigRat(1));
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        QPoly ns = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(ns);
        QPoly nt = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(nt);
    }
    if (r0.is_zero()) {
        g = r0;
        s = s0;
        t = t0;
        return;
    }
    BigRat inv = BigRat(1) / r0.leading();
    g = r0 * inv;
    s = s0 * inv;
    t = t0 * inv;
}

}  // namespace detail_field

// Q[x]/(poly) for a monic integer irreducible poly, together with certified
// enclosures of all complex embeddings of theta, sorted by (Re, Im).
class NumberField {
  public:
    ZPoly poly;
    size_t h = 0;
    mpfr_prec_t working_precision = 64;
    std::vector<CBall> embeddings;

    bool totally_real() const {
        for (const auto& e : embeddings)
            if (!e.im.is_zero()) return false;
        return true;
    }

    QPoly field_poly_q() const { return from_zpoly(poly); }

    // ---- element constructors ----

    NFElement zero() const { return NFElement{std::vector<BigRat>(h, BigRat(0))}; }
    NFElement one() const { return from_rational(BigRat(1)); }
    NFElement from_rational(const BigRat& q) const {
        NFElement e = zero();
        e.coords[0] = q;
        return e;
    }
    NFElement gen() const {
        if (h == 1) {
            // theta is the rational root itself
            return from_rational(BigRat(-poly[0]));
        }
        NFElement e = zero();
        e.coords[1] = 1;
        return e;
    }
    NFElement elem(std::vector<BigRat> coords) const {
        if (coords.size() != h) throw ShapeError("element coordinate count differs from degree");
        return NFElement{std::move(coords)};
    }
    NFElement from_qpoly(const QPoly& p) const {
        QPoly r = divmod(p, field_poly_q()).second;
        NFElement e = zero();
        for (size_t i = 0; i < r.c.size(); ++i) e.coords[i] = r.c[i];
        return e;
    }
    QPoly to_qpoly(const NFElement& a) const { return QPoly(a.coords); }

    // ---- exact arithmetic ----

    NFElement add(const NFElement& a, const NFElement& b) const {
        NFElement r = zero();
        for (size_t i = 0; i < h; ++i) r.coords[i] = a.coords[i] + b.coords[i];
        return r;
    }
    NFElement sub(const NFElement& a, const NFElement& b) const {
        NFElement r = zero();
        for (size_t i = 0; i < h; ++i) r.coords[i] = a.coords[i] - b.coords[i];
        return r;
    }
    NFElement neg(const NFElement& a) const {
        NFElement r = zero();
        for (size_t i = 0; i < h; ++i) r.coords[i] = -a.coords[i];
        return r;
    }
    NFElement scalar_mul(const BigRat& s, const NFElement& a) const {
        NFElement r = zero();
        for (size_t i = 0; i < h; ++i) r.coords[i] = s * a.coords[i];
        return r;
    }
    NFElement mul(const NFElement& a, const NFElement& b) const {
        return from_qpoly(to_qpoly(a) * to_qpoly(b));
    }
    NFElement inv(const NFElement& a) const {
        if (a.is_zero()) throw ParamError("inverse of the zero element");
        QPoly g, s, t;
        detail_field::qpoly_eea(to_qpoly(a), field_poly_q(), g, s, t);
        if (g.degree() != 0) throw Error("gcd with the field polynomial is not constant");
        return from_qpoly(s * (BigRat(1) / g.c[0]));
    }
    NFElement div(const NFElement& a, const NFElement& b) const { return mul(a, inv(b)); }
    NFElement pow_ui(const NFElement& a, unsigned long n) const {
        NFElement acc = one(), base = a;
        while (n > 0) {
            if (n & 1) acc = mul(acc, base);
            n >>= 1;
            if (n) base = mul(base, base);
        }
        return acc;
    }

    // matrix of multiplication by a in the power basis (column j = a * theta^j)
    RatMatrix mult_matrix(const NFElement& a) const {
        RatMatrix M(h, h);
        NFElement cur = a;
        for (size_t j = 0; j < h; ++j) {
            for (size_t i = 0; i < h; ++i) M.at(i, j) = cur.coords[i];
            if (j + 1 < h) cur = mul(cur, gen());
        }
        return M;
    }

    // ---- embeddings ----

    CBall eval_embedding(const NFElement& a, const CBall& theta) const {
        mpfr_prec_t p = theta.prec();
        CBall acc = CBall::from_real_rat(a.coords[h - 1], p);
        for (size_t i = h - 1; i-- > 0;)
            acc = acc * theta + CBall::from_real_rat(a.coords[i], p);
        return acc;
    }
    CBall eval_embedding(const NFElement& a, size_t index) const {
        if (index >= h) throw ShapeError("embedding index out of range");
        return eval_embedding(a, embeddings[index]);
    }

    // re-isolates at a higher precision and matches each refined enclosure to
    // the original embedding whose ball it alone intersects
    std::vector<CBall> refined_embeddings(mpfr_prec_t prec2) const {
        std::vector<CBall> fresh = isolate_roots(poly, prec2);
        std::vector<CBall> matched(h, CBall(prec2));
        std::vector<bool> used(h, false);
        for (const auto& nb : fresh) {
            long hit = -1;
            for (size_t i = 0; i < h; ++i) {
                if (nb.overlaps(embeddings[i])) {
                    if (hit >= 0) throw PrecisionExhausted("embedding refinement is ambiguous");
                    hit = static_cast<long>(i);
                }
            }
            if (hit < 0 || used[static_cast<size_t>(hit)])
                throw PrecisionExhausted("embedding refinement lost a root");
            matched[static_cast<size_t>(hit)] = nb;
            used[static_cast<size_t>(hit)] = true;
        }
        return matched;
    }
};

inline NumberField make_field(const ZPoly& poly_in, mpfr_prec_t precision) {
    ZPoly poly = poly_in;
    while (!poly.empty() && poly.back() == 0) poly.pop_back();
    if (poly.size() < 2) throw ParamError("field polynomial must have degree >= 1");
    if (poly.back() != 1) throw ParamError("field polynomial must be monic");
    if (!is_irreducible(poly)) throw Reducible("field polynomial is reducible over Q");
    NumberField F;
    F.poly = poly;
    F.h = poly.size() - 1;
    F.working_precision = precision;
    F.embeddings = isolate_roots(poly, precision);
    return F;
}

// ---- invariants of elements ----

inline BigRat norm(const NumberField& F, const NFElement& a) {
    return rational_det(F.mult_matrix(a));
}

inline BigRat trace(const NumberField& F, const NFElement& a) {
    RatMatrix M = F.mult_matrix(a);
    BigRat t(0);
    for (size_t i = 0; i < F.h; ++i) t += M.at(i, i);
    return t;
}

// monic minimal polynomial: the first linear dependency among 1, a, a^2, ...
inline QPoly minpoly(const NumberField& F, const NFElement& a) {
    std::vector<NFElement> pow{F.one()};
    for (size_t d = 1; d <= F.h; ++d) {
        pow.push_back(F.mul(pow.back(), a));
        RatMatrix sys(F.h, d + 1);
        for (size_t j = 0; j < d; ++j)
            for (size_t i = 0; i < F.h; ++i) sys.at(i, j) = pow[j].coords[i];
        for (size_t i = 0; i < F.h; ++i) sys.at(i, d) = pow[d].coords[i];
        auto pivots = rref(sys);
        bool consistent = true;
        for (size_t c : pivots)
            if (c == d) consistent = false;
        if (!consistent) continue;
        std::vector<BigRat> coeffs(d + 1, BigRat(0));
        coeffs[d] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) coeffs[pivots[r]] = -sys.at(r, d);
        return QPoly(coeffs);
    }
    throw Error("no linear dependency among element powers up to the field degree");
}

inline bool is_integral(const NumberField& F, const NFElement& a) {
    return has_integer_coeffs(minpoly(F, a));
}

// lcm of the denominators of the minimal polynomial; that multiple of the
// element is an algebraic integer
inline BigInt denominator_clearing_integer(const NumberField& F, const NFElement& a) {
    return coeff_denominator_lcm(minpoly(F, a));
}

inline HouseValue house(const NumberField& F, const NFElement& a) {
    RInterval m = F.eval_embedding(a, size_t{0}).abs_();
    for (size_t i = 1; i < F.h; ++i) m = m.max_with(F.eval_embedding(a, i).abs_());
    return HouseValue{m};
}

// house through the roots of the minimal polynomial: substitute x = y/D with
// D the denominator-clearing integer to reach a monic integer polynomial
inline HouseValue house_via_minpoly(const NumberField& F, const NFElement& a) {
    QPoly p = minpoly(F, a);
    size_t d = static_cast<size_t>(p.degree());
    if (d == 0) throw Error("minimal polynomial is constant");
    BigInt D = coeff_denominator_lcm(p);
    ZPoly q(d + 1);
    BigInt Dk(1);
    for (size_t i = d + 1; i-- > 0;) {
        BigRat scaled = p.c[i] * BigRat(Dk);
        if (!is_integer(scaled)) throw Error("denominator clearing failed");
        q[i] = rat_num(scaled);
        Dk *= D;
    }
    auto roots = isolate_roots(q, F.working_precision);
    RInterval m = roots[0].abs_();
    for (size_t i = 1; i < roots.size(); ++i) m = m.max_with(roots[i].abs_());
    RInterval Div = RInterval::from_int(D, F.working_precision);
    return HouseValue{m / Div};
}

namespace detail_field {

// One attempt at the basis representation constant with given embeddings.
// Row j of the inverse embedding matrix consists of the conjugates of
// g_j = q_j / f'(theta), where f(x)/(x - theta) = sum q_j x^j. The constant
// is ceil(max_j sum_i |sigma_i(g_j)|). Exact shortcuts: rational g_j;
// totally real fields with certified sign pattern (the sum is then a trace);
// |trace| as a lower clamp in the general case.
inline BigInt basis_repr_attempt(const NumberField& F, const std::vector<CBall>& emb) {
    size_t h = F.h;
    std::vector<NFElement> q(h);
    q[h - 1] = F.one();
    for (size_t j = h - 1; j >= 1; --j)
        q[j - 1] = F.add(F.from_rational(BigRat(F.poly[j])), F.mul(F.gen(), q[j]));
    NFElement fp = F.zero();
    for (size_t i = 1; i <= h; ++i) {
        NFElement term = F.scalar_mul(BigRat(F.poly[i]) * BigRat(static_cast<long>(i)),
                                      F.pow_ui(F.gen(), i - 1));
        fp = F.add(fp, term);
    }
    NFElement fpinv = F.inv(fp);
    bool real_field = true;
    for (const auto& e : emb)
        if (!e.im.is_zero()) real_field = false;

    BigRat max_lo(0), max_hi(0);
    for (size_t j = 0; j < h; ++j) {
        NFElement g = F.mul(q[j], fpinv);
        BigRat lo, hi;
        if (g.is_rational()) {
            BigRat v = abs(g.coords[0]) * BigRat(static_cast<long>(h));
            lo = hi = v;
        } else {
            std::vector<CBall> vals;
            vals.reserve(h);
            for (size_t i = 0; i < h; ++i) vals.push_back(F.eval_embedding(g, emb[i]));
            BigRat tr = trace(F, g);
            bool all_nonneg = real_field, all_nonpos = real_field;
            RInterval sum(emb[0].prec());
            for (const auto& v : vals) {
                sum = sum + v.abs_();
                if (real_field) {
                    RInterval rp = v.real_part();
                    if (!rp.is_nonnegative()) all_nonneg = false;
                    if (rp.hi.sgn() > 0) all_nonpos = false;
                }
            }
            if (all_nonneg) {
                lo = hi = tr;
            } else if (all_nonpos) {
                lo = hi = -tr;
            } else {
                lo = sum.lo.to_rat();
                hi = sum.hi.to_rat();
                BigRat atr = abs(tr);
                if (lo < atr) lo = atr;  // triangle inequality
                if (hi < lo) hi = lo;
            }
        }
        if (lo > max_lo) max_lo = lo;
        if (hi > max_hi) max_hi = hi;
    }
    BigInt clo = ceil_rat(max_lo), chi = ceil_rat(max_hi);
    if (clo != chi) throw PrecisionExhausted("basis representation constant is ambiguous");
    return chi;
}

}  // namespace detail_field

// smallest integer c with |coordinate| <= c * house for all elements: the
// ceiling of the largest absolute row sum of the inverse embedding matrix
inline BigInt basis_repr_constant(const NumberField& F) {
    for (int attempt = 0;; ++attempt) {
        try {
            std::vector<CBall> emb =
                attempt == 0
                    ? F.embeddings
                    : F.refined_embeddings(F.working_precision << attempt);
            return detail_field::basis_repr_attempt(F, emb);
        } catch (const PrecisionExhausted&) {
            if (attempt >= 3) throw;
        }
    }
}

}  // namespace gsr
