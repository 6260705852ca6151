#pragma once

#include <algorithm>
#include <vector>

#include "gsr/int_matrix.hpp"

namespace gsr {

// Exact integral LLL with Lovasz parameter delta_num/100. All Gram-Schmidt
// data is kept as integers (d[i] = Gram determinant of the first i vectors,
// lambda[i][j] = d[j+1] * mu_{ij} in 0-based indexing), so the exchange
// condition is decided exactly and every division below is exact. Input
// vectors must be linearly independent; the output basis generates the same
// lattice (only integer row operations and swaps are applied) and is
// size-reduced. The inner loops write through raw mpz calls with scratch
// registers; the lambda updates dominate the running time on large bases.
class IntegralLLL {
  public:
    explicit IntegralLLL(std::vector<IntVec> basis, long delta_num = 99)
        : b_(std::move(basis)), dn_(delta_num) {
        if (dn_ <= 25 || dn_ > 100) throw ParamError("lll delta numerator out of (25, 100]");
        n_ = b_.size();
        if (n_ == 0) return;
        dim_ = b_[0].size();
        for (const auto& v : b_)
            if (v.size() != dim_) throw ShapeError("lattice_reduce: ragged basis");
        // Ascending initial order keeps the incremental Gram data small.
        std::vector<BigInt> norms(n_, BigInt(0));
        for (size_t i = 0; i < n_; ++i)
            for (const auto& t : b_[i])
                if (t != 0) norms[i] += t * t;
        std::vector<size_t> order(n_);
        for (size_t i = 0; i < n_; ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](size_t x, size_t y) { return norms[x] < norms[y]; });
        std::vector<IntVec> sorted(n_);
        for (size_t i = 0; i < n_; ++i) sorted[i] = std::move(b_[order[i]]);
        b_ = std::move(sorted);
        d_.assign(n_ + 1, BigInt(1));
        lam_.assign(n_, std::vector<BigInt>(n_, BigInt(0)));
    }

    std::vector<IntVec> run() {
        if (n_ == 0) return {};
        size_t kmax = 0;
        gso_row(0);
        size_t k = 1;
        while (k < n_) {
            if (k > kmax) {
                kmax = k;
                gso_row(k);
            }
            reduce(k, k - 1);
            // swap iff 100 (d[k+1] d[k-1] + lam^2) < dn d[k]^2
            mpz_mul(t1_.get_mpz_t(), d_[k + 1].get_mpz_t(), d_[k - 1].get_mpz_t());
            mpz_addmul(t1_.get_mpz_t(), lam_[k][k - 1].get_mpz_t(), lam_[k][k - 1].get_mpz_t());
            mpz_mul_ui(t1_.get_mpz_t(), t1_.get_mpz_t(), 100);
            mpz_mul(t2_.get_mpz_t(), d_[k].get_mpz_t(), d_[k].get_mpz_t());
            mpz_mul_ui(t2_.get_mpz_t(), t2_.get_mpz_t(), static_cast<unsigned long>(dn_));
            if (mpz_cmp(t1_.get_mpz_t(), t2_.get_mpz_t()) < 0) {
                swap_step(k, kmax);
                ++swaps_;
                k = (k > 1) ? k - 1 : 1;
            } else {
                for (size_t l = k - 1; l-- > 0;) reduce(k, l);
                ++k;
            }
        }
        return std::move(b_);
    }

    size_t swaps() const { return swaps_; }

  private:
    void dot(BigInt& out, const IntVec& x, const IntVec& y) const {
        mpz_set_ui(out.get_mpz_t(), 0);
        for (size_t i = 0; i < dim_; ++i) {
            const mpz_srcptr xp = x[i].get_mpz_t(), yp = y[i].get_mpz_t();
            if (mpz_sgn(xp) != 0 && mpz_sgn(yp) != 0) mpz_addmul(out.get_mpz_t(), xp, yp);
        }
    }

    // Incremental integral Gram-Schmidt for row k; d_[k+1] <= 0 detects
    // dependence.
    void gso_row(size_t k) {
        for (size_t j = 0; j <= k; ++j) {
            dot(u_, b_[k], b_[j]);
            for (size_t i = 0; i < j; ++i) {
                // u = (d[i+1] u - lam[k][i] lam[j][i]) / d[i]
                mpz_mul(t1_.get_mpz_t(), d_[i + 1].get_mpz_t(), u_.get_mpz_t());
                mpz_submul(t1_.get_mpz_t(), lam_[k][i].get_mpz_t(), lam_[j][i].get_mpz_t());
                mpz_divexact(u_.get_mpz_t(), t1_.get_mpz_t(), d_[i].get_mpz_t());
            }
            if (j < k)
                mpz_set(lam_[k][j].get_mpz_t(), u_.get_mpz_t());
            else {
                mpz_set(d_[k + 1].get_mpz_t(), u_.get_mpz_t());
                if (mpz_sgn(d_[k + 1].get_mpz_t()) <= 0)
                    throw DependentInput("lattice_reduce: input vectors are dependent");
            }
        }
    }

    void reduce(size_t k, size_t l) {
        mpz_mul_2exp(t1_.get_mpz_t(), lam_[k][l].get_mpz_t(), 1);
        if (mpz_cmpabs(t1_.get_mpz_t(), d_[l + 1].get_mpz_t()) <= 0) return;
        BigInt q = div_round_nearest(lam_[k][l], d_[l + 1]);
        const mpz_srcptr qp = q.get_mpz_t();
        for (size_t i = 0; i < dim_; ++i)
            if (mpz_sgn(b_[l][i].get_mpz_t()) != 0)
                mpz_submul(b_[k][i].get_mpz_t(), qp, b_[l][i].get_mpz_t());
        for (size_t i = 0; i < l; ++i)
            if (mpz_sgn(lam_[l][i].get_mpz_t()) != 0)
                mpz_submul(lam_[k][i].get_mpz_t(), qp, lam_[l][i].get_mpz_t());
        mpz_submul(lam_[k][l].get_mpz_t(), qp, d_[l + 1].get_mpz_t());
    }

    void swap_step(size_t k, size_t kmax) {
        std::swap(b_[k], b_[k - 1]);
        for (size_t j = 0; j + 1 < k; ++j)
            mpz_swap(lam_[k][j].get_mpz_t(), lam_[k - 1][j].get_mpz_t());
        // B = (d[k-1] d[k+1] + lam^2) / d[k]
        const mpz_srcptr lam = lam_[k][k - 1].get_mpz_t();
        mpz_mul(t1_.get_mpz_t(), d_[k - 1].get_mpz_t(), d_[k + 1].get_mpz_t());
        mpz_addmul(t1_.get_mpz_t(), lam, lam);
        mpz_divexact(t3_.get_mpz_t(), t1_.get_mpz_t(), d_[k].get_mpz_t());
        for (size_t i = k + 1; i <= kmax; ++i) {
            // t = lam[i][k]
            // lam[i][k]   = (d[k+1] lam[i][k-1] - lam t) / d[k]
            // lam[i][k-1] = (B t + lam lam[i][k]) / d[k+1]
            mpz_set(t4_.get_mpz_t(), lam_[i][k].get_mpz_t());
            mpz_mul(t1_.get_mpz_t(), d_[k + 1].get_mpz_t(), lam_[i][k - 1].get_mpz_t());
            mpz_submul(t1_.get_mpz_t(), lam, t4_.get_mpz_t());
            mpz_divexact(lam_[i][k].get_mpz_t(), t1_.get_mpz_t(), d_[k].get_mpz_t());
            mpz_mul(t1_.get_mpz_t(), t3_.get_mpz_t(), t4_.get_mpz_t());
            mpz_addmul(t1_.get_mpz_t(), lam, lam_[i][k].get_mpz_t());
            mpz_divexact(lam_[i][k - 1].get_mpz_t(), t1_.get_mpz_t(), d_[k + 1].get_mpz_t());
        }
        mpz_set(d_[k].get_mpz_t(), t3_.get_mpz_t());
    }

    std::vector<IntVec> b_;
    std::vector<BigInt> d_;
    std::vector<std::vector<BigInt>> lam_;
    BigInt u_, t1_, t2_, t3_, t4_;
    size_t n_ = 0, dim_ = 0, swaps_ = 0;
    long dn_;
};

// LLL reduction (delta = 99/100) of an independent generating set.
// Throws DependentInput when the input is not a basis.
inline std::vector<IntVec> lattice_reduce(const std::vector<IntVec>& basis) {
    return IntegralLLL(basis).run();
}

}  // namespace gsr
