#pragma once

#include <cstdlib>
#include <utility>
#include <vector>

#include "gsr/int_matrix.hpp"
#include "gsr/lll.hpp"

namespace gsr {

namespace detail_kernel {

// Column-style Hermite elimination with nearest-integer Euclidean pivoting:
// unimodular column operations reduce A to [H | 0]; the transform columns
// under the zero block are the kernel. Suited to small systems, where the
// multiplier growth stays harmless.
inline std::vector<IntVec> kernel_by_euclid(const std::vector<IntVec>& B, size_t N) {
    // U holds the column transform: column j of U is the preimage of working
    // column j. Stored column-major.
    std::vector<IntVec> U(N, IntVec(N, BigInt(0)));
    for (size_t j = 0; j < N; ++j) U[j][j] = 1;
    size_t r = 0;  // number of pivot columns fixed so far
    for (size_t i = 0; i < B.size(); ++i) {
        // v[j] = row_i . U[j] for active columns j in [r, N)
        std::vector<BigInt> v(N, BigInt(0));
        for (size_t j = r; j < N; ++j) {
            BigInt s(0);
            for (size_t k = 0; k < N; ++k)
                if (U[j][k] != 0) s += B[i][k] * U[j][k];
            v[j] = s;
        }
        // Euclidean elimination across active columns until at most one
        // nonzero value remains.
        while (true) {
            size_t jmin = N;
            for (size_t j = r; j < N; ++j) {
                if (v[j] == 0) continue;
                if (jmin == N || mpz_cmpabs(v[j].get_mpz_t(), v[jmin].get_mpz_t()) < 0) jmin = j;
            }
            if (jmin == N) break;  // row already annihilated by all columns
            bool others = false;
            for (size_t j = r; j < N; ++j) {
                if (j == jmin || v[j] == 0) continue;
                others = true;
                BigInt q = div_round_nearest(v[j], v[jmin]);
                if (q != 0) {
                    for (size_t k = 0; k < N; ++k)
                        if (U[jmin][k] != 0) U[j][k] -= q * U[jmin][k];
                    v[j] -= q * v[jmin];
                }
            }
            if (!others) {
                // pivot found: move it to position r and retire it
                std::swap(U[jmin], U[r]);
                std::swap(v[jmin], v[r]);
                ++r;
                break;
            }
        }
    }
    std::vector<IntVec> kernel;
    kernel.reserve(N - r);
    for (size_t j = r; j < N; ++j) kernel.push_back(std::move(U[j]));
    return kernel;
}

// Column-style Hermite elimination with LLL-bounded multipliers, one row at a
// time. K is a basis of the kernel of the rows imposed so far (initially the
// identity). For each new row with values s_j = row . K_j not all zero, the
// augmented vectors (K_j | w s_j) are LLL-reduced; basis vectors whose last
// coordinate stays nonzero play the Hermite pivot role (nonzero on this row,
// zero on all earlier ones) and are dropped, the rest form the refined kernel.
//
// Exactness certificate: x -> (x, w s(x)) maps the module spanned by K
// bijectively onto the augmented lattice, so the LLL output is a basis of it.
// When exactly one basis vector keeps a nonzero last coordinate, writing any
// (y, 0) in that basis forces the pivot coefficient to zero, hence the
// remaining vectors span {x in span(K) : s(x) = 0} completely, not a
// finite-index sublattice. The count can only fall short when the weight w is
// too small for the reduction to sink s; doubling the weight budget restores
// it, and the count test certifies every accepted step.
inline std::vector<IntVec> kernel_by_row_lll(std::vector<IntVec> B, size_t N) {
    // Row reduction first: unimodular row operations and content stripping
    // preserve the kernel and shrink the entries every later step multiplies.
    if (B.size() > 1) {
        try {
            B = IntegralLLL(B, 75).run();
        } catch (const DependentInput&) {
            // dependent rows are harmless below: they impose s = 0 and are
            // skipped
        }
    }

    std::vector<IntVec> K(N, IntVec(N, BigInt(0)));
    for (size_t j = 0; j < N; ++j) K[j][j] = 1;
    for (const IntVec& row : B) {
        const size_t nk = K.size();
        if (nk == 0) break;
        std::vector<BigInt> s(nk, BigInt(0));
        BigInt gs(0);
        for (size_t j = 0; j < nk; ++j) {
            for (size_t c = 0; c < N; ++c)
                if (row[c] != 0 && K[j][c] != 0) s[j] += row[c] * K[j][c];
            gs = gcd(gs, s[j]);
        }
        if (gs == 0) continue;  // row dependent on those already imposed
        if (gs > 1)
            for (auto& x : s) x /= gs;

        size_t kbits = 1;
        for (const auto& v : K)
            for (const auto& x : v) kbits = std::max(kbits, bit_length(x));
        size_t wbits = kbits + 8;
        for (int attempt = 0;; ++attempt) {
            BigInt w(1);
            mpz_mul_2exp(w.get_mpz_t(), w.get_mpz_t(), static_cast<mp_bitcnt_t>(wbits));
            std::vector<IntVec> V(nk, IntVec(N + 1, BigInt(0)));
            for (size_t j = 0; j < nk; ++j) {
                for (size_t c = 0; c < N; ++c) V[j][c] = K[j][c];
                V[j][N] = w * s[j];
            }
            auto W = IntegralLLL(std::move(V), 75).run();
            std::vector<IntVec> NK;
            NK.reserve(nk - 1);
            for (auto& v : W) {
                if (v[N] != 0) continue;
                NK.emplace_back(v.begin(), v.begin() + static_cast<long>(N));
            }
            if (NK.size() == nk - 1) {
                K = std::move(NK);
                break;
            }
            if (attempt >= 8) throw Error("kernel elimination: pivot count check failed");
            wbits += 64;
        }
    }
    return K;
}

}  // namespace detail_kernel

// Basis of the integer kernel {x : A x = 0}, computed by column-style Hermite
// elimination (unimodular column operations; pivot columns retire, columns
// annihilating every row remain). Small systems use direct Euclidean
// pivoting; larger ones the row-at-a-time LLL-controlled variant, whose
// multiplier control keeps entries near the natural size. Any input shape is
// accepted; the returned vectors are sign-normalized (first nonzero entry
// positive) and form a Z-basis of the kernel module.
inline std::vector<IntVec> integer_kernel_basis(const IntMatrix& A) {
    size_t M = A.rows, N = A.cols;
    // Working copy with content-stripped rows (kernel-preserving) to slow
    // entry growth; zero rows dropped.
    std::vector<IntVec> B;
    B.reserve(M);
    for (size_t i = 0; i < M; ++i) {
        IntVec row(N);
        BigInt g(0);
        for (size_t j = 0; j < N; ++j) {
            row[j] = A.at(i, j);
            g = gcd(g, row[j]);
        }
        if (g == 0) continue;
        if (g > 1)
            for (auto& x : row) x /= g;
        B.push_back(std::move(row));
    }

    std::vector<IntVec> kernel = (N >= 96 && !B.empty())
                                     ? detail_kernel::kernel_by_row_lll(std::move(B), N)
                                     : detail_kernel::kernel_by_euclid(B, N);
    for (auto& v : kernel) sign_normalize(v);
    return kernel;
}

}  // namespace gsr
