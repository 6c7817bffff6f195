#pragma once

#include <gmpxx.h>

#include <string>

#include "gv/error.hpp"

namespace gv {

// Exact rational coefficients. GMP keeps mpq values canonical under
// arithmetic as long as inputs are canonical, so construction goes through
// make_rat which canonicalizes explicitly.
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
    if (den == 0) throw ArithmeticError("rational with zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

inline Rat make_rat(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw ArithmeticError("rational with zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline double rat_to_double(const Rat& r) { return r.get_d(); }

// r^k for integer k; negative k requires r != 0.
inline Rat rat_pow(const Rat& r, long k) {
    if (k == 0) return Rat(1);
    if (r == 0) {
        if (k < 0) throw ArithmeticError("zero rational raised to negative power");
        return Rat(0);
    }
    const bool invert = k < 0;
    const unsigned long e = invert ? static_cast<unsigned long>(-(k + 1)) + 1ul
                                   : static_cast<unsigned long>(k);
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), r.get_num().get_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), r.get_den().get_mpz_t(), e);
    return invert ? make_rat(den, num) : make_rat(num, den);
}

} // namespace gv
