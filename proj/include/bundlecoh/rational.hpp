#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace bundlecoh {

// Exact arithmetic everywhere: arbitrary-precision integers and reduced
// rationals with positive denominator (GMP canonical form).
using Int = mpz_class;
using Rational = mpq_class;

inline Rational rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational rational(const Int& num, const Int& den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Parses "p", "-p", or "p/q".
inline Rational rational_from_string(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Int& z) { return z.get_str(); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

// Floor of p/q as an Int.
inline Int rational_floor(const Rational& q) {
    Int f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return f;
}

// Fractional part in [0,1).
inline Rational frac_part(const Rational& q) {
    return q - Rational(rational_floor(q));
}

inline long to_long(const Int& z) {
    if (!z.fits_slong_p()) throw std::overflow_error("Int does not fit in long");
    return z.get_si();
}

}  // namespace bundlecoh
