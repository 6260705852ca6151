#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace gsr {

// Arbitrary-precision integers and rationals. BigRat is kept canonical
// (denominator > 0, gcd(num, den) = 1) by construction: every path that can
// denormalize calls canonicalize().
using BigInt = mpz_class;
using BigRat = mpq_class;

inline BigRat make_rat(const BigInt& num, const BigInt& den) {
    BigRat r(num, den);
    r.canonicalize();
    return r;
}

inline BigRat make_rat(long num, long den = 1) {
    BigRat r(num, den);
    r.canonicalize();
    return r;
}

inline BigInt rat_num(const BigRat& r) { return r.get_num(); }
inline BigInt rat_den(const BigRat& r) { return r.get_den(); }

inline bool is_integer(const BigRat& r) { return r.get_den() == 1; }

inline BigInt gcd(const BigInt& a, const BigInt& b) {
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
    BigInt l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

// g = gcd(a, b) = s*a + t*b.
inline void ext_gcd(const BigInt& a, const BigInt& b, BigInt& g, BigInt& s, BigInt& t) {
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

inline BigInt pow_int(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline BigRat pow_rat(const BigRat& base, long e) {
    if (e == 0) return BigRat(1);
    BigRat b = base;
    bool inv = e < 0;
    unsigned long n = inv ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    BigRat num, den;
    mpz_pow_ui(num.get_num_mpz_t(), b.get_num_mpz_t(), n);
    mpz_set_ui(num.get_den_mpz_t(), 1);
    mpz_pow_ui(den.get_num_mpz_t(), b.get_den_mpz_t(), n);
    mpz_set_ui(den.get_den_mpz_t(), 1);
    BigRat r = inv ? den / num : num / den;
    r.canonicalize();
    return r;
}

inline BigInt factorial(unsigned long n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

// Nearest integer to a/b, b > 0; halves round toward +infinity.
inline BigInt div_round_nearest(const BigInt& a, const BigInt& b) {
    BigInt q, t = 2 * a + b, d = 2 * b;
    mpz_fdiv_q(q.get_mpz_t(), t.get_mpz_t(), d.get_mpz_t());
    return q;
}

inline BigInt round_rat(const BigRat& r) { return div_round_nearest(r.get_num(), r.get_den()); }

inline BigInt ceil_rat(const BigRat& r) {
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

inline BigInt floor_rat(const BigRat& r) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

inline size_t bit_length(const BigInt& a) { return mpz_sizeinbase(a.get_mpz_t(), 2); }

}  // namespace gsr
