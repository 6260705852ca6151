#pragma once

#include <mpfr.h>

#include <string>

#include "gsr/bigint.hpp"

namespace gsr {

// RAII wrapper around mpfr_t. Copies preserve the source precision, so
// copying never rounds.
class MF {
    mpfr_t x_;

  public:
    explicit MF(mpfr_prec_t prec = 64) {
        mpfr_init2(x_, prec);
        mpfr_set_zero(x_, 1);
    }
    MF(const MF& o) {
        mpfr_init2(x_, mpfr_get_prec(o.x_));
        mpfr_set(x_, o.x_, MPFR_RNDN);
    }
    MF(MF&& o) noexcept {
        mpfr_init2(x_, MPFR_PREC_MIN);
        mpfr_swap(x_, o.x_);
    }
    MF& operator=(const MF& o) {
        if (this != &o) {
            mpfr_set_prec(x_, mpfr_get_prec(o.x_));
            mpfr_set(x_, o.x_, MPFR_RNDN);
        }
        return *this;
    }
    MF& operator=(MF&& o) noexcept {
        mpfr_swap(x_, o.x_);
        return *this;
    }
    ~MF() { mpfr_clear(x_); }

    mpfr_ptr p() { return x_; }
    mpfr_srcptr p() const { return x_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(x_); }

    bool is_zero() const { return mpfr_zero_p(x_) != 0; }
    int sgn() const { return mpfr_sgn(x_); }
    double d() const { return mpfr_get_d(x_, MPFR_RNDN); }

    // exact value as a rational (finite values only)
    BigRat to_rat() const {
        mpq_t q;
        mpq_init(q);
        mpfr_get_q(q, x_);
        BigRat r(q);
        mpq_clear(q);
        return r;
    }

    std::string str(size_t digits = 20) const {
        mpfr_exp_t e;
        char* s = mpfr_get_str(nullptr, &e, 10, digits, x_, MPFR_RNDN);
        std::string body(s);
        mpfr_free_str(s);
        bool neg = !body.empty() && body[0] == '-';
        std::string mant = neg ? body.substr(1) : body;
        std::string out = (neg ? "-" : "");
        out += "0." + mant + "e" + std::to_string(e);
        return out;
    }
};

}  // namespace gsr
