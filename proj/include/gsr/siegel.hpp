#pragma once

#include <utility>
#include <vector>

#include "gsr/bigint.hpp"
#include "gsr/errors.hpp"
#include "gsr/hnf_kernel.hpp"
#include "gsr/int_matrix.hpp"
#include "gsr/lll.hpp"
#include "gsr/number_field.hpp"
#include "gsr/rat_linalg.hpp"
#include "gsr/real_interval.hpp"

namespace gsr {

// Small nonzero integer kernel vector together with the pigeonhole bound it
// is measured against. bound_satisfied means achieved <= claimed is provable
// from the enclosures.
struct SiegelSolution {
    IntVec vector;
    RInterval claimed_bound;
    RInterval achieved;  // sup norm
    bool bound_satisfied = false;
};

// Matrix over a number field, row-major.
struct NFMatrix {
    size_t rows = 0, cols = 0;
    std::vector<NFElement> a;

    NFMatrix() = default;
    NFMatrix(size_t r, size_t c, const NumberField& F) : rows(r), cols(c), a(r * c, F.zero()) {}

    NFElement& at(size_t i, size_t j) { return a[i * cols + j]; }
    const NFElement& at(size_t i, size_t j) const { return a[i * cols + j]; }
};

// Kernel vector with entries in Z[theta], measured by the house.
struct SiegelSolutionOK {
    std::vector<NFElement> vector;
    IntVec flat;  // the same vector, coordinates interleaved per element
    RInterval claimed_bound;
    RInterval achieved;  // largest house among the entries
    bool bound_satisfied = false;
    std::vector<IntVec> reduced_basis;  // whole reduced kernel, for fallbacks
};

namespace detail_siegel {

// base^e for a nonnegative interval base and positive rational exponent
inline RInterval pow_rat_nonneg(const RInterval& base, const BigRat& e, mpfr_prec_t prec) {
    if (e <= 0) throw ParamError("exponent must be positive");
    if (is_integer(e)) {
        unsigned long n = static_cast<unsigned long>(rat_num(e).get_ui());
        return pow_ui(base, n);
    }
    RInterval ee = RInterval::from_rat(e, prec);
    if (base.lo.sgn() > 0) return exp_(log_(base) * ee);
    RInterval r(prec);
    mpfr_set_zero(r.lo.p(), 1);
    if (base.hi.sgn() <= 0) {
        mpfr_set_zero(r.hi.p(), 1);
        return r;
    }
    RInterval top = exp_(log_(RInterval::exact(base.hi)) * ee);
    r.hi = top.hi;
    return r;
}

inline bool lex_less(const IntVec& a, const IntVec& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return true;
        if (a[i] > b[i]) return false;
    }
    return false;
}

// exhaustive sweep over small coefficient combinations of the basis, used
// when no reduced basis vector provably meets the bound
inline std::vector<IntVec> coefficient_box(const std::vector<IntVec>& basis, long radius,
                                           size_t node_cap) {
    size_t d = basis.size(), n = basis[0].size();
    while (radius > 1) {
        double nodes = 1;
        for (size_t i = 0; i < d; ++i) nodes *= 2.0 * static_cast<double>(radius) + 1.0;
        if (nodes <= static_cast<double>(node_cap)) break;
        --radius;
    }
    std::vector<IntVec> out;
    std::vector<long> c(d, -radius);
    while (true) {
        IntVec v(n, BigInt(0));
        bool nonzero = false;
        for (size_t i = 0; i < d; ++i) {
            if (c[i] == 0) continue;
            nonzero = true;
            for (size_t j = 0; j < n; ++j) v[j] += BigInt(c[i]) * basis[i][j];
        }
        if (nonzero && !is_zero_vec(v)) out.push_back(std::move(v));
        size_t k = 0;
        while (k < d && c[k] == radius) c[k++] = -radius;
        if (k == d) break;
        ++c[k];
        if (out.size() > node_cap) break;
    }
    return out;
}

}  // namespace detail_siegel

// Nonzero integer solution of A x = 0 with sup norm measured against
// (N * max(1, max|a_ij|))^(M/(N-M)) for an M x N system, M < N.
inline SiegelSolution siegel_int(const IntMatrix& A) {
    if (A.rows >= A.cols) throw ShapeError("system needs fewer equations than unknowns");
    size_t M = A.rows, N = A.cols;
    BigInt Abound(1);
    for (const auto& x : A.a)
        if (abs(x) > Abound) Abound = abs(x);

    auto kernel = integer_kernel_basis(A);
    auto reduced = lattice_reduce(kernel);
    std::vector<IntVec> candidates = reduced;
    for (auto& v : candidates) sign_normalize(v);

    auto better = [](const IntVec& x, const IntVec& y) {
        BigInt sx = sup_norm(x), sy = sup_norm(y);
        if (sx != sy) return sx < sy;
        return detail_siegel::lex_less(x, y);
    };
    IntVec best = candidates[0];
    for (const auto& v : candidates)
        if (better(v, best)) best = v;

    BigInt base = BigInt(static_cast<long>(N)) * Abound;
    BigRat e = make_rat(static_cast<long>(M), static_cast<long>(N - M));
    mpfr_prec_t prec = std::max<mpfr_prec_t>(192, static_cast<mpfr_prec_t>(bit_length(base)) + 16);
    RInterval claimed =
        detail_siegel::pow_rat_nonneg(RInterval::from_int(base, prec), e, prec);

    auto measure = [&](const IntVec& v) { return RInterval::from_int(sup_norm(v), prec); };
    RInterval achieved = measure(best);
    if (!achieved.certainly_le(claimed)) {
        auto extra = detail_siegel::coefficient_box(reduced, 8, 2000000);
        for (auto& v : extra) {
            sign_normalize(v);
            if (better(v, best)) best = v;
        }
        achieved = measure(best);
    }
    SiegelSolution s;
    s.vector = std::move(best);
    s.claimed_bound = claimed;
    s.achieved = achieved;
    s.bound_satisfied = s.achieved.certainly_le(s.claimed_bound);
    return s;
}

// Replaces every entry by its multiplication matrix in the power basis and
// clears denominators row by row, so integer solutions of the flattened
// system are exactly the Z[theta] solutions of the original one.
inline IntMatrix flatten_OK_system(const NumberField& F, const NFMatrix& A) {
    size_t h = F.h;
    for (size_t i = 0; i < A.rows; ++i)
        for (size_t j = 0; j < A.cols; ++j)
            for (const BigRat& c : A.at(i, j).coords)
                if (rat_den(c) != 1)
                    throw NotIntegral("system entry has non-integer power-basis coordinates");
    IntMatrix out(A.rows * h, A.cols * h);
    for (size_t i = 0; i < A.rows; ++i)
        for (size_t j = 0; j < A.cols; ++j) {
            RatMatrix B = F.mult_matrix(A.at(i, j));
            for (size_t r = 0; r < h; ++r)
                for (size_t c = 0; c < h; ++c) out.at(i * h + r, j * h + c) = rat_num(B.at(r, c));
        }
    return out;
}

// Nonzero solution over Z[theta] of a p x q system with entries in the
// field, p < q, measured by house against
// c1 * (1 + (c1 * q * maxhouse)^(p/(q-p))) with c1 the basis representation
// constant.
inline SiegelSolutionOK siegel_OK(const NumberField& F, const NFMatrix& A) {
    if (A.rows >= A.cols) throw ShapeError("system needs fewer equations than unknowns");
    size_t p = A.rows, q = A.cols, h = F.h;

    IntMatrix flat = flatten_OK_system(F, A);
    auto kernel = integer_kernel_basis(flat);
    auto reduced = lattice_reduce(kernel);
    std::vector<IntVec> candidates = reduced;
    for (auto& v : candidates) sign_normalize(v);

    mpfr_prec_t prec = std::max<mpfr_prec_t>(F.working_precision, 128);
    auto regroup = [&](const IntVec& v) {
        std::vector<NFElement> elems;
        elems.reserve(q);
        for (size_t j = 0; j < q; ++j) {
            NFElement e = F.zero();
            for (size_t k = 0; k < h; ++k) e.coords[k] = BigRat(v[j * h + k]);
            elems.push_back(std::move(e));
        }
        return elems;
    };
    auto house_of = [&](const std::vector<NFElement>& elems) {
        RInterval m(prec);
        for (const auto& e : elems) m = m.max_with(house(F, e).enclosure);
        return m;
    };
    auto better = [&](const IntVec& x, const IntVec& y) {
        BigInt sx = sup_norm(x), sy = sup_norm(y);
        if (sx != sy) return sx < sy;
        RInterval hx = house_of(regroup(x)), hy = house_of(regroup(y));
        int c = mpfr_cmp(hx.hi.p(), hy.hi.p());
        if (c != 0) return c < 0;
        return detail_siegel::lex_less(x, y);
    };
    IntVec best = candidates[0];
    for (const auto& v : candidates)
        if (better(v, best)) best = v;

    BigInt c1 = basis_repr_constant(F);
    RInterval Ahouse(prec);
    for (const auto& entry : A.a) Ahouse = Ahouse.max_with(house(F, entry).enclosure);
    BigRat e = make_rat(static_cast<long>(p), static_cast<long>(q - p));
    RInterval base = RInterval::from_int(c1 * BigInt(static_cast<long>(q)), prec) * Ahouse;
    RInterval one = RInterval::from_long(1, prec);
    RInterval claimed = RInterval::from_int(c1, prec) *
                        (one + detail_siegel::pow_rat_nonneg(base, e, prec));

    std::vector<NFElement> elems = regroup(best);
    RInterval achieved = house_of(elems);
    if (!achieved.certainly_le(claimed)) {
        auto extra = detail_siegel::coefficient_box(reduced, 8, 500000);
        for (auto& v : extra) {
            sign_normalize(v);
            if (better(v, best)) best = v;
        }
        elems = regroup(best);
        achieved = house_of(elems);
    }
    SiegelSolutionOK s;
    s.vector = std::move(elems);
    s.flat = std::move(best);
    s.claimed_bound = claimed;
    s.achieved = achieved;
    s.bound_satisfied = s.achieved.certainly_le(s.claimed_bound);
    s.reduced_basis = std::move(reduced);
    return s;
}

}  // namespace gsr
